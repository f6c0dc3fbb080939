//! String synchronizing sets.
//!
//! Position `i` is an anchor when, among the non-periodic `tau`-windows
//! starting in `[i, i + tau]`, the minimal one (by a hashed order with exact
//! tie-breaking) has the same content as the window at `i` or at `i + tau`.
//! Windows with period at most `tau / 3` never take part in the minimum.

use crate::baseline::period;
use crate::packed::{Lce, PackedString};
use crate::runs::{compute_runs_letters, Fingerprints};
use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};
use thiserror::Error;

pub const VERIFY_CAP: usize = 2000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SyncError {
    #[error("tau {tau} out of range for length {n}")]
    TauOutOfRange { tau: usize, n: usize },
    #[error("input length {n} exceeds verifier cap {cap}")]
    CapExceeded { n: usize, cap: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyncSet {
    pub tau: usize,
    pub anchors: Vec<usize>,
}

impl SyncSet {
    pub fn len(&self) -> usize {
        self.anchors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.anchors.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.anchors.binary_search(&i).is_ok()
    }
}

pub fn build_sync(s: &PackedString, tau: usize) -> Result<SyncSet, SyncError> {
    build_sync_letters(&s.to_vec(), tau)
}

pub fn build_sync_letters(text: &[u32], tau: usize) -> Result<SyncSet, SyncError> {
    let n = text.len();
    if tau == 0 {
        return Err(SyncError::TauOutOfRange { tau, n });
    }
    if n < 2 * tau {
        return Ok(SyncSet { tau, anchors: Vec::new() });
    }
    let lce = Lce::new(text);
    build_with(text, tau, &lce)
}

/// Builds the set reusing an LCE structure over `text`.
pub fn build_with(text: &[u32], tau: usize, lce: &Lce) -> Result<SyncSet, SyncError> {
    let n = text.len();
    if tau == 0 {
        return Err(SyncError::TauOutOfRange { tau, n });
    }
    if n < 2 * tau {
        return Ok(SyncSet { tau, anchors: Vec::new() });
    }
    let windows = n - tau + 1;
    // windows lying inside a run with period <= tau/3
    let mut periodic = vec![false; windows];
    for run in compute_runs_letters(text) {
        if 3 * run.period <= tau && run.len() >= tau {
            for j in run.start..=run.end_inclusive + 1 - tau {
                periodic[j] = true;
            }
        }
    }
    let fp = Fingerprints::new(text);
    let key: Vec<u64> = (0..windows).map(|j| mix(fp.get(j, j + tau))).collect();
    let order = |a: usize, b: usize| key[a].cmp(&key[b]).then_with(|| lce.cmp_fragments(a, tau, b, tau));
    let same = |a: usize, b: usize| key[a] == key[b] && lce.lce(a, b) >= tau;

    let mut anchors = Vec::new();
    let mut deque: VecDeque<usize> = VecDeque::new();
    let mut pushed = 0usize;
    for i in 0..=n - 2 * tau {
        while pushed <= i + tau {
            let j = pushed;
            if !periodic[j] {
                while deque.back().is_some_and(|&b| order(j, b) != Ordering::Greater) {
                    deque.pop_back();
                }
                deque.push_back(j);
            }
            pushed += 1;
        }
        while deque.front().is_some_and(|&f| f < i) {
            deque.pop_front();
        }
        let Some(&m) = deque.front() else { continue };
        if (!periodic[i] && same(m, i)) || (!periodic[i + tau] && same(m, i + tau)) {
            anchors.push(i);
        }
    }
    Ok(SyncSet { tau, anchors })
}

fn mix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    Range,
    Consistency,
    Density,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub positions: Vec<usize>,
    /// the offending window, half-open
    pub window: (usize, usize),
}

/// Checks both axioms by brute force.
pub fn verify_sync(text: &[u32], set: &SyncSet) -> Result<Vec<Violation>, SyncError> {
    let n = text.len();
    if n > VERIFY_CAP {
        return Err(SyncError::CapExceeded { n, cap: VERIFY_CAP });
    }
    let tau = set.tau;
    let mut out = Vec::new();
    for (k, &a) in set.anchors.iter().enumerate() {
        if a + 2 * tau > n || (k > 0 && set.anchors[k - 1] >= a) {
            out.push(Violation { axiom: Axiom::Range, positions: vec![a], window: (a, a + 2 * tau) });
        }
    }
    if tau == 0 || n < 2 * tau {
        return Ok(out);
    }
    let member: Vec<bool> = (0..=n - 2 * tau).map(|i| set.contains(i)).collect();
    let mut groups: HashMap<&[u32], Vec<usize>> = HashMap::new();
    for i in 0..=n - 2 * tau {
        groups.entry(&text[i..i + 2 * tau]).or_default().push(i);
    }
    let mut bad: Vec<Vec<usize>> = groups
        .into_values()
        .filter(|g| g.iter().any(|&i| member[i]) && g.iter().any(|&i| !member[i]))
        .collect();
    bad.sort();
    for g in bad {
        let w = (g[0], g[0] + 2 * tau);
        out.push(Violation { axiom: Axiom::Consistency, positions: g, window: w });
    }
    if n + 1 >= 3 * tau {
        for i in 0..=n + 1 - 3 * tau {
            let empty = !(i..i + tau).any(|j| j < member.len() && member[j]);
            let periodic = 3 * period(&text[i..i + 3 * tau - 1]) <= tau;
            if empty != periodic {
                out.push(Violation { axiom: Axiom::Density, positions: vec![i], window: (i, i + 3 * tau - 1) });
            }
        }
    }
    Ok(out)
}
