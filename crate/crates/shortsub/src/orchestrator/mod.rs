//! Combines the case solvers into exact SUS, SES and SAS answers.

mod binary;
mod debruijn;

pub use binary::{block_width, to_binary, CoordinateMap};
pub use debruijn::{de_bruijn, full_length, DeBruijnError, DeBruijnSpec, DEFAULT_CAP};

use crate::baseline::{better, occurs, ses_linear, sus_linear, SubstringAnswer};
use crate::medium::{medium_case_exclusive, medium_case_sus};
use crate::packed::PackedString;
use crate::runs::{periodic_case_exclusive, periodic_case_sus};
use crate::shortcase::{short_case_exclusive, short_case_sus};
use crate::treesus::{long_case_exclusive, long_case_sus};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrchestratorError {
    #[error("empty string")]
    EmptyString,
    #[error("letter {letter} is outside the alphabet of size {sigma}")]
    LetterOutsideAlphabet { letter: u32, sigma: u32 },
    #[error(transparent)]
    DeBruijn(#[from] DeBruijnError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseThresholds {
    pub ell_short: usize,
    pub tau_medium: usize,
    pub beta_medium: usize,
    pub tau_long: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Overrides {
    pub ell_short: Option<usize>,
    pub tau_medium: Option<usize>,
    pub beta_medium: Option<usize>,
    pub tau_long: Option<usize>,
}

impl CaseThresholds {
    pub fn defaults(n: usize, sigma: u32) -> CaseThresholds {
        let n = n.max(1) as f64;
        let log2 = n.log2();
        let log_sigma = n.ln() / (sigma.max(2) as f64).ln();
        let tau_long = (log2.powi(4) / 3.0).floor() as usize;
        CaseThresholds {
            ell_short: (log_sigma / 5.0).floor() as usize,
            tau_medium: (log_sigma / 15.0).floor() as usize,
            beta_medium: 2f64.powf(log2.sqrt()).floor() as usize,
            tau_long: tau_long.min(n as usize / 6),
        }
    }

    pub fn resolve(n: usize, sigma: u32, ov: &Overrides) -> CaseThresholds {
        let d = CaseThresholds::defaults(n, sigma);
        CaseThresholds {
            ell_short: ov.ell_short.unwrap_or(d.ell_short),
            tau_medium: ov.tau_medium.unwrap_or(d.tau_medium),
            beta_medium: ov.beta_medium.unwrap_or(d.beta_medium),
            tau_long: ov.tau_long.unwrap_or(d.tau_long),
        }
    }

    fn medium_active(&self) -> bool {
        self.tau_medium >= 1 && self.beta_medium >= 3 * self.tau_medium
    }

    /// Whether every period of length `len` falls into some case window.
    pub fn covers(&self, len: usize) -> bool {
        if len <= self.ell_short {
            return true;
        }
        // periods [1, low] and [high, len] are covered
        let mut low = 0;
        let mut high = usize::MAX;
        let (tm, tl) = (self.tau_medium, self.tau_long);
        if self.medium_active() && (3 * tm..=self.beta_medium).contains(&len) {
            high = high.min(tm / 3 + 1);
        }
        if tl >= 1 && len >= 3 * tl {
            high = high.min(tl / 3 + 1);
        }
        for tau in [tm, tl] {
            if tau >= 3 && len >= 3 * tau {
                low = low.max(tau / 3);
            }
        }
        low >= len || low + 1 >= high
    }

    /// Maximal length ranges `[lo, hi]` within `1..=max_len` that some period leaves uncovered.
    pub fn uncovered(&self, max_len: usize) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for len in 1..=max_len {
            if self.covers(len) {
                continue;
            }
            match out.last_mut() {
                Some(w) if w.1 + 1 == len => w.1 = len,
                _ => out.push((len, len)),
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseUsed {
    Short,
    Medium,
    PeriodicMedium,
    Long,
    PeriodicLong,
    Baseline,
}

impl CaseUsed {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseUsed::Short => "short",
            CaseUsed::Medium => "medium",
            CaseUsed::PeriodicMedium => "periodic_medium",
            CaseUsed::Long => "long",
            CaseUsed::PeriodicLong => "periodic_long",
            CaseUsed::Baseline => "baseline",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Outcome {
    pub answer: SubstringAnswer,
    pub case_used: CaseUsed,
    pub thresholds: CaseThresholds,
    /// length windows served by the baseline
    pub uncovered: Vec<(usize, usize)>,
}

fn merge(cands: impl IntoIterator<Item = (CaseUsed, Option<SubstringAnswer>)>) -> Option<(SubstringAnswer, CaseUsed)> {
    let mut best: Option<(SubstringAnswer, CaseUsed)> = None;
    for (case, a) in cands {
        if let Some(a) = a {
            if better(best.map(|b| b.0), Some(a)) != best.map(|b| b.0) {
                best = Some((a, case));
            }
        }
    }
    best
}

pub fn sus(s: &PackedString, ov: &Overrides) -> Result<Outcome, OrchestratorError> {
    sus_with(s, &CaseThresholds::resolve(s.len(), s.sigma(), ov))
}

pub fn sus_with(s: &PackedString, th: &CaseThresholds) -> Result<Outcome, OrchestratorError> {
    if s.is_empty() {
        return Err(OrchestratorError::EmptyString);
    }
    let uncovered = th.uncovered(s.len());
    let (tm, tl) = (th.tau_medium, th.tau_long);
    let medium = th.medium_active().then(|| medium_case_sus(s, tm, th.beta_medium)).flatten();
    let cands = [
        (CaseUsed::Short, short_case_sus(s, th.ell_short)),
        (CaseUsed::Medium, medium),
        (CaseUsed::PeriodicMedium, periodic_case_sus(s, tm)),
        (CaseUsed::Long, long_case_sus(s, tl)),
        (CaseUsed::PeriodicLong, periodic_case_sus(s, tl)),
        (CaseUsed::Baseline, (!uncovered.is_empty()).then(|| sus_linear(s))),
    ];
    let (answer, case_used) = merge(cands).expect("the whole string is unique");
    Ok(Outcome { answer, case_used, thresholds: *th, uncovered })
}

pub fn exclusive(s1: &PackedString, s2: &PackedString, ov: &Overrides) -> Result<Option<Outcome>, OrchestratorError> {
    let th = CaseThresholds::resolve(s1.len() + s2.len(), s1.sigma().max(s2.sigma()), ov);
    exclusive_with(s1, s2, &th)
}

pub fn exclusive_with(s1: &PackedString, s2: &PackedString, th: &CaseThresholds) -> Result<Option<Outcome>, OrchestratorError> {
    if s1.is_empty() {
        return Err(OrchestratorError::EmptyString);
    }
    if occurs(&s2.to_vec(), &s1.to_vec()) {
        return Ok(None);
    }
    let uncovered = th.uncovered(s1.len());
    let (tm, tl) = (th.tau_medium, th.tau_long);
    let medium = th.medium_active().then(|| medium_case_exclusive(s1, s2, tm, th.beta_medium)).flatten();
    let cands = [
        (CaseUsed::Short, short_case_exclusive(s1, s2, th.ell_short)),
        (CaseUsed::Medium, medium),
        (CaseUsed::PeriodicMedium, periodic_case_exclusive(s1, s2, tm)),
        (CaseUsed::Long, long_case_exclusive(s1, s2, tl)),
        (CaseUsed::PeriodicLong, periodic_case_exclusive(s1, s2, tl)),
        (CaseUsed::Baseline, if uncovered.is_empty() { None } else { ses_linear(s1, s2) }),
    ];
    let (answer, case_used) = merge(cands).expect("s1 itself is exclusive");
    Ok(Some(Outcome { answer, case_used, thresholds: *th, uncovered }))
}

/// Smallest k with sigma^k > n.
pub fn sas_bound(n: usize, sigma: u32) -> usize {
    let mut k = 0;
    let mut p: u64 = 1;
    while p <= n as u64 {
        p = p.saturating_mul(sigma as u64);
        k += 1;
    }
    k
}

/// A shortest string over `[0, sigma)` absent from `s`.
///
/// The answer is `S[start..=end_inclusive]` followed by the extension letter;
/// a length-1 answer is encoded with `start = 0, end_inclusive = -1`.
pub fn sas(s: &PackedString, sigma: u32, ov: &Overrides) -> Result<Outcome, OrchestratorError> {
    if s.is_empty() {
        return Err(OrchestratorError::EmptyString);
    }
    let text = s.to_vec();
    if let Some(&letter) = text.iter().find(|&&c| c >= sigma) {
        return Err(OrchestratorError::LetterOutsideAlphabet { letter, sigma });
    }
    let n = text.len();
    if sigma == 1 {
        let th = CaseThresholds::resolve(n, 1, ov);
        let answer = SubstringAnswer::extended(0, n as i64 - 1, 0);
        return Ok(Outcome { answer, case_used: CaseUsed::Baseline, thresholds: th, uncovered: Vec::new() });
    }
    let k = sas_bound(n, sigma);
    let spec = |order: usize, prefix: Option<usize>| DeBruijnSpec { sigma, k: order, prefix };
    let mut found = None;
    if k >= 2 {
        // every string of length k-1 occurs in the order k-1 sequence
        let d = de_bruijn(spec(k - 1, None))?;
        found = exclusive(&d, s, ov)?.filter(|o| o.answer.length < k).map(|o| (d, o));
    }
    let (d, out) = match found {
        Some(x) => x,
        None => {
            // sigma^k > n, so the first n + 1 letters already hold n - k + 2 distinct k-mers
            let full = full_length(sigma, k);
            let prefix = if full <= 4 * n as u64 + k as u64 { None } else { Some(n + 1) };
            let d = de_bruijn(spec(k, prefix))?;
            let o = exclusive(&d, s, ov)?.expect("a length-k string is absent");
            assert_eq!(o.answer.length, k, "shorter strings were all present");
            (d, o)
        }
    };
    let w = out.answer.letters(&d.to_vec());
    let m = w.len();
    let c = w[m - 1];
    let answer = if m == 1 {
        SubstringAnswer::extended(0, -1, c)
    } else {
        let i = text.windows(m - 1).position(|x| x == &w[..m - 1]).expect("proper prefixes of a minimal absent string occur");
        SubstringAnswer::extended(i, (i + m - 2) as i64, c)
    };
    Ok(Outcome { answer, ..out })
}
