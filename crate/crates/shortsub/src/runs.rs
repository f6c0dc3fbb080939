//! Maximal runs, Lyndon representations and the periodic case.

use crate::baseline::{better, SubstringAnswer};
use crate::packed::{Fragment, Lce, PackedString};
use crate::skyline::{self, Point2};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RunsError {
    #[error("point ({x}, {y}) outside [0, {max}]^2")]
    PointOutOfDomain { x: u64, y: u64, max: u64 },
}

/// A maximal run `P . root^e . T` with `|P| = alpha`, `|T| = beta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RunRecord {
    pub start: usize,
    pub end_inclusive: usize,
    pub period: usize,
    pub lyndon_root: Fragment,
    pub exponent: usize,
    pub alpha: usize,
    pub beta: usize,
}

impl RunRecord {
    pub fn len(&self) -> usize {
        self.end_inclusive + 1 - self.start
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// First position inside this run where `cand` starts, if `cand` fits.
    pub fn locate(&self, cand: &CandidateRun) -> Option<usize> {
        let r = self.period;
        let base = self.start + self.alpha;
        let mut t = base as i64 - cand.alpha as i64;
        if t < self.start as i64 {
            t += r as i64;
        }
        let t = t as usize;
        (t + cand.len() <= self.end_inclusive + 1).then_some(t)
    }
}

/// Start of the lexicographically minimal rotation of `s`, leftmost on ties.
pub fn min_rotation(s: &[u32]) -> usize {
    let n = s.len();
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        let (a, b) = (s[(i + k) % n], s[(j + k) % n]);
        if a == b {
            k += 1;
            continue;
        }
        if a > b {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    i.min(j).min(n.saturating_sub(1))
}

/// Lyndon representation of the run `text[start..=end]` with period `p`.
pub fn lyndon_repr(text: &[u32], start: usize, end_inclusive: usize, p: usize) -> RunRecord {
    let alpha = min_rotation(&text[start..start + p]);
    let len = end_inclusive + 1 - start;
    RunRecord {
        start,
        end_inclusive,
        period: p,
        lyndon_root: Fragment::new(start + alpha, start + alpha + p),
        exponent: (len - alpha) / p,
        alpha,
        beta: (len - alpha) % p,
    }
}

fn nsv(rank: &[usize]) -> Vec<usize> {
    let n = rank.len();
    let mut out = vec![n; n];
    let mut stack: Vec<usize> = Vec::new();
    for i in 0..n {
        while let Some(&j) = stack.last() {
            if rank[i] < rank[j] {
                out[j] = i;
                stack.pop();
            } else {
                break;
            }
        }
        stack.push(i);
    }
    out
}

pub fn compute_runs(s: &PackedString) -> Vec<RunRecord> {
    compute_runs_letters(&s.to_vec())
}

/// All maximal runs, sorted by start then end.
pub fn compute_runs_letters(text: &[u32]) -> Vec<RunRecord> {
    let n = text.len();
    if n < 2 {
        return Vec::new();
    }
    let fwd = Lce::new(text);
    let rev_text: Vec<u32> = text.iter().rev().copied().collect();
    let rev = Lce::new(&rev_text);
    let top = *text.iter().max().unwrap();
    let inv_text: Vec<u32> = text.iter().map(|&c| top - c).collect();
    let inv = Lce::new(&inv_text);
    let mut found: HashMap<(usize, usize), usize> = HashMap::new();
    for isa in [fwd.isa(), inv.isa()] {
        let next = nsv(isa);
        for i in 0..n {
            let p = next[i] - i;
            if i + p >= n {
                continue;
            }
            let right = fwd.lce(i, i + p);
            // common extension to the left of i and i+p
            let left = if i == 0 { 0 } else { rev.lce(n - i, n - i - p) };
            let start = i - left;
            let end = i + p + right - 1;
            if end + 1 - start >= 2 * p {
                found.entry((start, end)).or_insert(p);
            }
        }
    }
    let mut out: Vec<RunRecord> = found.into_iter().map(|((s, e), p)| lyndon_repr(text, s, e, p)).collect();
    out.sort_by_key(|r| (r.start, r.end_inclusive));
    out
}

/// Runs of length at least `3 tau - 1` and period at most `tau / 3`.
pub fn tau_runs(runs: &[RunRecord], tau: usize) -> Vec<RunRecord> {
    runs.iter()
        .filter(|r| r.len() + 1 >= 3 * tau && 3 * r.period <= tau)
        .copied()
        .collect()
}

/// Runs sharing one Lyndon root.
#[derive(Debug, Clone)]
pub struct RootGroup {
    pub root: Fragment,
    pub members: Vec<RunRecord>,
    pub e_max: usize,
}

impl RootGroup {
    pub fn r(&self) -> usize {
        self.root.len()
    }
}

const MOD: u64 = (1 << 61) - 1;
const BASE: u64 = 0x5bd1_e995_1234_5677 % MOD;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MOD as u128) as u64
}

/// Karp-Rabin prefix hashes of a text.
pub(crate) struct Fingerprints {
    prefix: Vec<u64>,
    pow: Vec<u64>,
}

impl Fingerprints {
    pub(crate) fn new(text: &[u32]) -> Fingerprints {
        let mut prefix = vec![0u64; text.len() + 1];
        let mut pow = vec![1u64; text.len() + 1];
        for (i, &c) in text.iter().enumerate() {
            prefix[i + 1] = (mulmod(prefix[i], BASE) + c as u64 + 1) % MOD;
            pow[i + 1] = mulmod(pow[i], BASE);
        }
        Fingerprints { prefix, pow }
    }

    pub(crate) fn get(&self, start: usize, end: usize) -> u64 {
        (self.prefix[end] + MOD - mulmod(self.prefix[start], self.pow[end - start])) % MOD
    }
}

/// Groups runs by Lyndon root, checking fingerprint matches letter by letter.
pub fn group_by_root(text: &[u32], runs: &[RunRecord]) -> Vec<RootGroup> {
    let fp = Fingerprints::new(text);
    let mut index: HashMap<(usize, u64), Vec<usize>> = HashMap::new();
    let mut groups: Vec<RootGroup> = Vec::new();
    for run in runs {
        let f = run.lyndon_root;
        let key = (f.len(), fp.get(f.start, f.end_exclusive));
        let slot = index.entry(key).or_default();
        let hit = slot
            .iter()
            .copied()
            .find(|&g| text[groups[g].root.start..groups[g].root.end_exclusive] == text[f.start..f.end_exclusive]);
        match hit {
            Some(g) => {
                groups[g].e_max = groups[g].e_max.max(run.exponent);
                groups[g].members.push(*run);
            }
            None => {
                slot.push(groups.len());
                groups.push(RootGroup { root: f, members: vec![*run], e_max: run.exponent });
            }
        }
    }
    groups
}

/// Points of a run relative to the group's maximum exponent.
pub fn map_h(run: &RunRecord, e_max: usize, r: usize) -> Vec<Point2> {
    if run.exponent > e_max {
        return Vec::new();
    }
    map_h_ext(run, e_max as i64, r)
}

/// Like [`map_h`], but relative to any reference exponent `e_ref`; runs with
/// a larger exponent cover more of the domain.
pub fn map_h_ext(run: &RunRecord, e_ref: i64, r: usize) -> Vec<Point2> {
    let (a, b, r) = (run.alpha as u64, run.beta as u64, r as u64);
    let top = 2 * r - 1;
    let e = run.exponent as i64;
    match e - e_ref {
        d if d < -2 => Vec::new(),
        -2 => vec![Point2::new(a, b)],
        -1 => vec![Point2::new(r + a, b), Point2::new(a, r + b)],
        0 => vec![Point2::new(top, b), Point2::new(a, top), Point2::new(r + a, r + b)],
        1 => vec![Point2::new(top, r + b), Point2::new(r + a, top)],
        _ => vec![Point2::new(top, top)],
    }
}

/// The string `suffix(root, alpha) . root^exponent . prefix(root, beta)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CandidateRun {
    pub root: Fragment,
    pub exponent: usize,
    pub alpha: usize,
    pub beta: usize,
}

impl CandidateRun {
    pub fn len(&self) -> usize {
        self.root.len() * self.exponent + self.alpha + self.beta
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn letters(&self, text: &[u32]) -> Vec<u32> {
        let root = &text[self.root.start..self.root.end_exclusive];
        let r = root.len();
        (0..self.len()).map(|k| root[(k + r - self.alpha) % r]).collect()
    }
}

/// The candidate string encoded by a point of `[0, 2r-1]^2`.
pub fn map_g(p: Point2, root: Fragment, e_ref: usize) -> Result<CandidateRun, RunsError> {
    let r = root.len() as u64;
    if p.x > 2 * r - 1 || p.y > 2 * r - 1 || e_ref < 2 {
        return Err(RunsError::PointOutOfDomain { x: p.x, y: p.y, max: 2 * r - 1 });
    }
    let exponent = e_ref - 2 + (p.x >= r) as usize + (p.y >= r) as usize;
    Ok(CandidateRun { root, exponent, alpha: (p.x % r) as usize, beta: (p.y % r) as usize })
}

/// Number of occurrences of the run-shaped string `(e, alpha, beta)` inside
/// the run `(e2, alpha2, beta2)` with the same root.
pub fn occurrences_in(e: usize, a: usize, b: usize, e2: usize, a2: usize, b2: usize) -> usize {
    let need = (a > a2) as i64 + (b > b2) as i64;
    let slack = e2 as i64 - e as i64;
    if slack < need {
        0
    } else {
        (slack - need + 1) as usize
    }
}

fn all_runs_grouped(text: &[u32], tau: usize) -> Vec<RootGroup> {
    let runs = tau_runs(&compute_runs_letters(text), tau);
    group_by_root(text, &runs)
}

/// Shortest unique substring of length at least `3 tau` and period at most `tau / 3`.
pub fn periodic_case_sus(s: &PackedString, tau: usize) -> Option<SubstringAnswer> {
    if tau < 3 {
        return None;
    }
    let text = s.to_vec();
    let mut best = None;
    for g in all_runs_grouped(&text, tau) {
        best = better(best, group_sus(&g, tau));
    }
    best
}

fn group_sus(g: &RootGroup, tau: usize) -> Option<SubstringAnswer> {
    let r = g.r();
    let mut tagged: Vec<(Point2, usize)> = Vec::new();
    for (k, run) in g.members.iter().enumerate() {
        tagged.extend(map_h(run, g.e_max, r).into_iter().map(|p| (p, k)));
    }
    tagged.sort_by(|a, b| b.0.x.cmp(&a.0.x).then(b.0.y.cmp(&a.0.y)));
    let points: Vec<Point2> = tagged.iter().map(|t| t.0).collect();
    let base = r as i128 * (g.e_max as i128 - 2);
    let floor = (3 * tau as i128 - base).max(0) as u128;
    let (sum, hits) = skyline::min_skyline_sum_at_least(&points, floor).ok()??;
    let length = (base + sum as i128) as usize;
    let mut best: Option<usize> = None;
    for iv in hits {
        let run = &g.members[tagged[iv.dominator].1];
        let Some((lo, hi)) = iv.diagonal(sum) else { continue };
        for x in lo..=hi {
            let p = Point2::new(x, (sum - x as u128) as u64);
            let cand = map_g(p, g.root, g.e_max).ok()?;
            debug_assert_eq!(cand.len(), length);
            if let Some(t) = run.locate(&cand) {
                best = Some(best.map_or(t, |b| b.min(t)));
            }
        }
    }
    best.map(|t| SubstringAnswer::fragment(t, length))
}

/// Shortest substring of `s1` absent from `s2` with length at least `3 tau`
/// and period at most `tau / 3`.
pub fn periodic_case_exclusive(s1: &PackedString, s2: &PackedString, tau: usize) -> Option<SubstringAnswer> {
    if tau < 3 {
        return None;
    }
    let t1 = s1.to_vec();
    let t2 = s2.to_vec();
    let g1 = all_runs_grouped(&t1, tau);
    let g2 = all_runs_grouped(&t2, tau);
    let fp1 = Fingerprints::new(&t1);
    let fp2 = Fingerprints::new(&t2);
    let mut index: HashMap<(usize, u64), Vec<usize>> = HashMap::new();
    for (k, g) in g2.iter().enumerate() {
        let f = g.root;
        index.entry((f.len(), fp2.get(f.start, f.end_exclusive))).or_default().push(k);
    }
    let mut best = None;
    for g in &g1 {
        let f = g.root;
        let key = (f.len(), fp1.get(f.start, f.end_exclusive));
        let partner = index.get(&key).and_then(|v| {
            v.iter().map(|&k| &g2[k]).find(|h| t2[h.root.start..h.root.end_exclusive] == t1[f.start..f.end_exclusive])
        });
        let empty = Vec::new();
        let others = partner.map_or(&empty, |h| &h.members);
        // (e, alpha, beta) are relative to the minimal rotation, so they compare across strings
        best = better(best, group_exclusive(g, others, tau));
    }
    best
}

fn group_exclusive(g: &RootGroup, others: &[RunRecord], tau: usize) -> Option<SubstringAnswer> {
    let r = g.r();
    let e1 = g.e_max;
    let e2 = others.iter().map(|m| m.exponent).max().unwrap_or(0);
    let e_lo = (3 * tau + 2).saturating_sub(2 * r).div_ceil(r);
    let mut e_ref = (e2 + 1).max(e_lo + 2);
    let mut best: Option<SubstringAnswer> = None;
    let mut stop_after: Option<usize> = None;
    while e_ref <= e1 + 2 {
        if stop_after.is_some_and(|s| e_ref > s) {
            break;
        }
        let mut p1: Vec<Point2> = g.members.iter().flat_map(|m| map_h_ext(m, e_ref as i64, r)).collect();
        let mut p2: Vec<Point2> = others.iter().flat_map(|m| map_h_ext(m, e_ref as i64, r)).collect();
        skyline::sort_points(&mut p1);
        skyline::sort_points(&mut p2);
        let base = r as i128 * (e_ref as i128 - 2);
        let floor = (3 * tau as i128 - base).max(0) as u128;
        if let Some((sum, hits)) = skyline::min_exclusive_sum_at_least(&p1, &p2, floor).ok().flatten() {
            let length = (base + sum as i128) as usize;
            for iv in hits {
                let Some((lo, hi)) = iv.diagonal(sum) else { continue };
                for x in lo..=hi {
                    let p = Point2::new(x, (sum - x as u128) as u64);
                    let cand = map_g(p, g.root, e_ref).ok()?;
                    // leftmost occurrence over every s1 run holding the candidate
                    for m in &g.members {
                        if occurrences_in(cand.exponent, cand.alpha, cand.beta, m.exponent, m.alpha, m.beta) > 0 {
                            if let Some(t) = m.locate(&cand) {
                                best = better(best, Some(SubstringAnswer::fragment(t, length)));
                            }
                        }
                    }
                }
            }
            stop_after.get_or_insert(e_ref + 3);
        }
        e_ref += 3;
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab(s: &str) -> Vec<u32> {
        s.bytes().map(|b| (b - b'a') as u32).collect()
    }

    #[test]
    fn worked_run() {
        let t = ab("abaaabaaabaaabab");
        let runs = compute_runs_letters(&t);
        let r = runs.iter().find(|r| r.start == 0 && r.end_inclusive == 14).unwrap();
        assert_eq!(r.period, 4);
        assert_eq!(&t[r.lyndon_root.start..r.lyndon_root.end_exclusive], &ab("aaab")[..]);
        assert_eq!((r.exponent, r.alpha, r.beta), (3, 2, 1));
    }

    #[test]
    fn unary_run() {
        let runs = compute_runs_letters(&[0; 4]);
        assert_eq!(runs.len(), 1);
        assert_eq!((runs[0].period, runs[0].exponent, runs[0].alpha, runs[0].beta), (1, 4, 0, 0));
    }

    fn rec(e: usize, a: usize, b: usize) -> RunRecord {
        RunRecord { start: 0, end_inclusive: 0, period: 2, lyndon_root: Fragment::new(0, 2), exponent: e, alpha: a, beta: b }
    }

    #[test]
    fn worked_h_values() {
        let p = |v: &[(u64, u64)]| v.iter().map(|&(x, y)| Point2::new(x, y)).collect::<Vec<_>>();
        let mut h1 = map_h(&rec(6, 1, 1), 6, 2);
        h1.sort();
        let mut want = p(&[(3, 1), (1, 3), (3, 3)]);
        want.sort();
        assert_eq!(h1, want);
        assert_eq!(map_h(&rec(5, 0, 1), 6, 2), p(&[(2, 1), (0, 3)]));
        assert_eq!(map_h(&rec(4, 1, 0), 6, 2), p(&[(1, 0)]));
        assert!(map_h(&rec(3, 1, 0), 6, 2).is_empty());
    }

    #[test]
    fn worked_g_value() {
        let c = map_g(Point2::new(2, 2), Fragment::new(0, 2), 6).unwrap();
        assert_eq!((c.exponent, c.alpha, c.beta), (6, 0, 0));
        assert_eq!(c.letters(&ab("ab")), ab("abababababab"));
        let c = map_g(Point2::new(0, 0), Fragment::new(0, 2), 6).unwrap();
        assert_eq!(c.exponent, 4);
        assert!(map_g(Point2::new(4, 0), Fragment::new(0, 2), 6).is_err());
    }

    #[test]
    fn worked_skyline_of_group() {
        let mut pts: Vec<Point2> = [rec(6, 1, 1), rec(5, 0, 1), rec(4, 1, 0)].iter().flat_map(|r| map_h(r, 6, 2)).collect();
        skyline::sort_points(&mut pts);
        let q = skyline::min_skyline_point(&pts).unwrap().unwrap();
        assert_eq!(q.x + q.y, 4);
    }

    #[test]
    fn tau_filter() {
        let mk = |len: usize, p: usize| RunRecord { end_inclusive: len - 1, period: p, ..rec(1, 0, 0) };
        assert_eq!(tau_runs(&[mk(8, 1)], 3).len(), 1);
        assert_eq!(tau_runs(&[mk(8, 2)], 3).len(), 0);
    }

    #[test]
    fn minimal_rotation() {
        assert_eq!(min_rotation(&ab("abaa")), 2);
        assert_eq!(min_rotation(&ab("ba")), 1);
        assert_eq!(min_rotation(&ab("aaa")), 0);
    }
}
