//! Medium aperiodic case: shortest unique string pairs over run-anchored
//! prefix families and sync-anchored families with short first components.

mod wavelet;

pub use wavelet::{first_component_trie, wavelet_lcp_traversal, WaveletNodeView};

use crate::baseline::{better, SubstringAnswer};
use crate::packed::{Lce, PackedString, Rmq};
use crate::runs::{compute_runs_letters, tau_runs};
use crate::sync::build_with;
use std::collections::{BTreeSet, HashMap};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MediumError {
    #[error("no string has color 0")]
    NoZeroColored,
}

/// Largest LCP of each entry with any other entry of a sorted list.
pub fn neighbor_max(lcps: &[usize], t: usize) -> usize {
    let next = lcps.get(t + 1).copied().unwrap_or(0);
    if t == 0 {
        next
    } else {
        lcps[t].max(next)
    }
}

/// Shortest prefix of one string that no other string of the sorted list has.
/// `lens[t]` is the length of the t-th string, `lcps` as in [`WaveletNodeView`].
pub fn shortest_unique_prefix(lens: &[usize], lcps: &[usize]) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for t in 0..lens.len() {
        let m = neighbor_max(lcps, t);
        if m < lens[t] && best.is_none_or(|(_, b)| m + 1 < b) {
            best = Some((t, m + 1));
        }
    }
    best
}

/// Shortest prefix of a color-0 string that is not a prefix of any color-1 string.
pub fn shortest_exclusive_prefix(lens: &[usize], lcps: &[usize], colors: &[bool]) -> Result<Option<(usize, usize)>, MediumError> {
    if !colors.iter().any(|&c| !c) {
        return Err(MediumError::NoZeroColored);
    }
    let m = exclusive_reach(lcps, colors);
    let mut best: Option<(usize, usize)> = None;
    for t in 0..lens.len() {
        if !colors[t] && m[t] < lens[t] && best.is_none_or(|(_, b)| m[t] + 1 < b) {
            best = Some((t, m[t] + 1));
        }
    }
    Ok(best)
}

// per entry, the largest LCP with a color-1 entry (0 when there is none)
pub fn exclusive_reach(lcps: &[usize], colors: &[bool]) -> Vec<usize> {
    let n = colors.len();
    let mut out = vec![0usize; n];
    let mut run: Option<usize> = None;
    for t in 0..n {
        if t > 0 {
            run = run.map(|r| r.min(lcps[t]));
        }
        out[t] = run.unwrap_or(0);
        if colors[t] {
            run = Some(usize::MAX);
        }
    }
    run = None;
    for t in (0..n).rev() {
        out[t] = out[t].max(run.unwrap_or(0));
        if colors[t] {
            run = Some(usize::MAX);
        }
        run = run.map(|r| r.min(lcps[t]));
    }
    out
}

/// Pairs whose first components are prefixes of one string, so only their lengths matter.
#[derive(Debug, Clone)]
pub struct PrefixFamily {
    pub u_len: Vec<usize>,
    /// element ids sorted by second component
    pub v_order: Vec<usize>,
    /// LCPs of consecutive second components along `v_order`, first entry 0
    pub v_lcp: Vec<usize>,
    pub v_len: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuspSolution {
    pub l1: usize,
    pub l2: usize,
    pub witness: usize,
}

/// `maxLCP[i]`: largest LCP of `V_i` with a `V_j`, `j != i`, whose `U_j` is at least as long.
pub fn max_lcp_array(fam: &PrefixFamily) -> Vec<usize> {
    let n = fam.v_order.len();
    let mut out = vec![0usize; n];
    if n < 2 {
        return out;
    }
    let rmq = Rmq::new(fam.v_lcp.clone());
    let len_at = |t: usize| fam.u_len[fam.v_order[t]];
    let mut stack: Vec<usize> = Vec::new();
    for t in 0..n {
        while stack.last().is_some_and(|&s| len_at(s) < len_at(t)) {
            stack.pop();
        }
        if let Some(&s) = stack.last() {
            out[fam.v_order[t]] = rmq.min(s + 1, t);
        }
        stack.push(t);
    }
    stack.clear();
    for t in (0..n).rev() {
        while stack.last().is_some_and(|&s| len_at(s) < len_at(t)) {
            stack.pop();
        }
        if let Some(&s) = stack.last() {
            let id = fam.v_order[t];
            out[id] = out[id].max(rmq.min(t + 1, s));
        }
        stack.push(t);
    }
    out
}

/// Minimal `l1 + l2` such that one pair is separated from every other one,
/// either on the first component (shorter than `l1`) or on the second.
pub fn susp_prefix_family(fam: &PrefixFamily) -> Option<SuspSolution> {
    let tb = vec![0usize; fam.u_len.len()];
    sweep(fam, 0, false, usize::MAX, &tb).map(|(s, _)| s)
}

fn thresholds(fam: &PrefixFamily) -> Vec<Vec<usize>> {
    let mut ids: Vec<usize> = (0..fam.u_len.len()).collect();
    ids.sort_by_key(|&i| std::cmp::Reverse(fam.u_len[i]));
    ids.chunk_by(|&a, &b| fam.u_len[a] == fam.u_len[b]).map(|g| g.to_vec()).collect()
}

// the l1 range served by group `g` of `groups` (descending lengths)
fn l1_range(fam: &PrefixFamily, groups: &[Vec<usize>], g: usize, min_l1: usize) -> Option<usize> {
    let top = fam.u_len[groups[g][0]];
    let lo = groups.get(g + 1).map_or(0, |n| fam.u_len[n[0]] + 1);
    let l1 = lo.max(min_l1);
    (l1 <= top).then_some(l1)
}

// best (solution, start key) minimizing (l1 + l2, tb[witness] - l1)
fn sweep(fam: &PrefixFamily, min_l1: usize, cap: bool, max_total: usize, tb: &[usize]) -> Option<(SuspSolution, i64)> {
    let n = fam.u_len.len();
    if n == 0 {
        return None;
    }
    let rmq = Rmq::new(fam.v_lcp.clone());
    let mut rank = vec![0usize; n];
    for (t, &i) in fam.v_order.iter().enumerate() {
        rank[i] = t;
    }
    let lcp = |a: usize, b: usize| {
        let (x, y) = (rank[a].min(rank[b]), rank[a].max(rank[b]));
        rmq.min(x + 1, y)
    };
    let key = |m: usize, i: usize| if cap && m >= fam.v_len[i] { usize::MAX } else { m };
    let mut m = vec![0usize; n];
    let mut active: BTreeSet<usize> = BTreeSet::new();
    let mut ranked: BTreeSet<(usize, usize, usize)> = BTreeSet::new();
    let mut best: Option<(usize, i64, SuspSolution)> = None;
    let groups = thresholds(fam);
    for g in 0..groups.len() {
        for &e in &groups[g] {
            let r = rank[e];
            let pred = active.range(..r).next_back().map(|&t| fam.v_order[t]);
            let succ = active.range(r + 1..).next().map(|&t| fam.v_order[t]);
            for nb in [pred, succ].into_iter().flatten() {
                let l = lcp(nb, e);
                m[e] = m[e].max(l);
                if l > m[nb] {
                    ranked.remove(&(key(m[nb], nb), tb[nb], nb));
                    m[nb] = l;
                    ranked.insert((key(m[nb], nb), tb[nb], nb));
                }
            }
            active.insert(r);
            ranked.insert((key(m[e], e), tb[e], e));
        }
        let Some(l1) = l1_range(fam, &groups, g, min_l1) else { continue };
        let &(k, _, w) = ranked.first().expect("nonempty");
        if k == usize::MAX || l1 + k + 1 > max_total {
            continue;
        }
        let cand = (l1 + k + 1, tb[w] as i64 - l1 as i64, SuspSolution { l1, l2: k + 1, witness: w });
        if best.is_none_or(|b| (cand.0, cand.1) < (b.0, b.1)) {
            best = Some(cand);
        }
    }
    best.map(|(_, s, sol)| (sol, s))
}

// colored sweep: color-0 witnesses must avoid every active color-1 pair
fn sweep_exclusive(fam: &PrefixFamily, colors: &[bool], min_l1: usize, max_total: usize, tb: &[usize]) -> Option<(SuspSolution, i64)> {
    let n = fam.u_len.len();
    let mut active = vec![false; n];
    let mut best: Option<(usize, i64, SuspSolution)> = None;
    let groups = thresholds(fam);
    for g in 0..groups.len() {
        for &e in &groups[g] {
            active[e] = true;
        }
        let Some(l1) = l1_range(fam, &groups, g, min_l1) else { continue };
        // the active sublist in second-component order
        let mut ids = Vec::new();
        let mut lcps = Vec::new();
        let mut run = usize::MAX;
        for (t, &i) in fam.v_order.iter().enumerate() {
            if t > 0 {
                run = run.min(fam.v_lcp[t]);
            }
            if active[i] {
                lcps.push(if ids.is_empty() { 0 } else { run });
                ids.push(i);
                run = usize::MAX;
            }
        }
        let cols: Vec<bool> = ids.iter().map(|&i| colors[i]).collect();
        let reach = exclusive_reach(&lcps, &cols);
        for (t, &i) in ids.iter().enumerate() {
            if cols[t] || reach[t] >= fam.v_len[i] || l1 + reach[t] + 1 > max_total {
                continue;
            }
            let cand = (l1 + reach[t] + 1, tb[i] as i64 - l1 as i64, SuspSolution { l1, l2: reach[t] + 1, witness: i });
            if best.is_none_or(|b| (cand.0, cand.1) < (b.0, b.1)) {
                best = Some(cand);
            }
        }
    }
    best.map(|(_, s, sol)| (sol, s))
}

// second components `text[start .. start + len)`, sorted, with consecutive LCPs
fn sorted_seconds(lce: &Lce, starts: &[usize], lens: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut order: Vec<usize> = (0..starts.len()).collect();
    order.sort_by(|&a, &b| lce.cmp_fragments(starts[a], lens[a], starts[b], lens[b]).then(a.cmp(&b)));
    let mut lcps = vec![0usize; order.len()];
    for t in 1..order.len() {
        let (a, b) = (order[t - 1], order[t]);
        lcps[t] = lce.lce(starts[a], starts[b]).min(lens[a]).min(lens[b]);
    }
    (order, lcps)
}

/// Where each part of the searched text lives: `s1` is `text[..n1)`, `s2` follows a separator.
struct Layout {
    n1: usize,
    exclusive: bool,
}

impl Layout {
    fn end_of(&self, i: usize, n: usize) -> usize {
        if self.exclusive && i < self.n1 {
            self.n1
        } else {
            n
        }
    }

    fn in_s2(&self, i: usize) -> bool {
        self.exclusive && i > self.n1
    }
}

// candidates starting inside a tau-run and leaving it
fn branch_runs(text: &[u32], lce: &Lce, lay: &Layout, tau: usize, beta: usize) -> Option<SubstringAnswer> {
    let n = text.len();
    let runs = tau_runs(&compute_runs_letters(text), tau);
    let mut families: HashMap<&[u32], Vec<usize>> = HashMap::new();
    for (k, r) in runs.iter().enumerate() {
        let b = r.end_inclusive;
        families.entry(&text[b + 1 - r.period..=b]).or_default().push(k);
    }
    let mut best: Option<(usize, i64)> = None;
    for members in families.values() {
        let starts: Vec<usize> = members.iter().map(|&k| runs[k].end_inclusive + 1).collect();
        let lens: Vec<usize> = starts.iter().map(|&s| beta.min(lay.end_of(s - 1, n) - s)).collect();
        let (v_order, v_lcp) = sorted_seconds(lce, &starts, &lens);
        let fam = PrefixFamily { u_len: members.iter().map(|&k| runs[k].len()).collect(), v_order, v_lcp, v_len: lens };
        let colors: Vec<bool> = members.iter().map(|&k| lay.in_s2(runs[k].start)).collect();
        let hit = if lay.exclusive {
            sweep_exclusive(&fam, &colors, 3 * tau - 1, beta, &starts)
        } else {
            sweep(&fam, 3 * tau - 1, true, beta, &starts)
        };
        if let Some((sol, start)) = hit {
            if best.is_none_or(|b| (sol.l1 + sol.l2, start) < b) {
                best = Some((sol.l1 + sol.l2, start));
            }
        }
    }
    best.map(|(len, start)| SubstringAnswer::fragment(start as usize, len))
}

// candidates whose (3 tau - 1)-prefix is aperiodic, anchored at their first sync position
fn branch_sync(text: &[u32], lce: &Lce, lay: &Layout, tau: usize, beta: usize) -> Option<SubstringAnswer> {
    let n = text.len();
    let sync = build_with(text, tau, lce).ok()?;
    let anchors: Vec<usize> = sync
        .anchors
        .into_iter()
        .filter(|&a| !lay.exclusive || a + 2 * tau <= lay.n1 || a > lay.n1)
        .collect();
    if anchors.is_empty() {
        return None;
    }
    let mut firsts: Vec<Vec<u32>> = Vec::with_capacity(anchors.len());
    for (k, &i) in anchors.iter().enumerate() {
        let mut lo = (i + 1).saturating_sub(tau);
        if k > 0 {
            lo = lo.max(anchors[k - 1] + 1);
        }
        if lay.in_s2(i) {
            lo = lo.max(lay.n1 + 1);
        }
        firsts.push(text[lo..i].iter().rev().copied().collect());
    }
    let lens: Vec<usize> = anchors.iter().map(|&i| beta.min(lay.end_of(i, n) - i)).collect();
    let (order, lcps) = sorted_seconds(lce, &anchors, &lens);
    let first: Vec<&[u32]> = firsts.iter().map(|f| f.as_slice()).collect();
    let colors: Vec<bool> = anchors.iter().map(|&i| lay.in_s2(i)).collect();
    let floor = 3 * tau;
    let mut best: Option<(usize, usize)> = None;
    wavelet_lcp_traversal(&first, &order, &lcps, lay.exclusive.then_some(&colors[..]), |v| {
        let Some((lo, hi)) = v.prefix_range else { return };
        let reach: Vec<usize> = match v.origin {
            Some(g) => exclusive_reach(v.lcps, g),
            None => (0..v.order.len()).map(|t| neighbor_max(v.lcps, t)).collect(),
        };
        for (t, &e) in v.order.iter().enumerate() {
            if v.origin.is_some_and(|g| g[t]) {
                continue;
            }
            let m = reach[t];
            let vlen = lens[e];
            if m >= vlen {
                continue;
            }
            let a = lo.max(floor.saturating_sub(vlen));
            if a > hi {
                continue;
            }
            let total = (a + m + 1).max(floor);
            if total > beta {
                continue;
            }
            let l1 = if total == floor { hi.min(floor - m - 1) } else { a };
            let start = anchors[e] - l1;
            if best.is_none_or(|b| (total, start) < b) {
                best = Some((total, start));
            }
        }
    });
    best.map(|(len, start)| SubstringAnswer::fragment(start, len))
}

/// Shortest unique substring with length in `[3 tau, beta]` and period above `tau / 3`.
pub fn medium_case_sus(s: &PackedString, tau: usize, beta: usize) -> Option<SubstringAnswer> {
    if tau == 0 || beta < 3 * tau || s.len() < 3 * tau {
        return None;
    }
    let text = s.to_vec();
    let lce = Lce::new(&text);
    let lay = Layout { n1: text.len(), exclusive: false };
    better(branch_runs(&text, &lce, &lay, tau, beta), branch_sync(&text, &lce, &lay, tau, beta))
}

/// Shortest substring of `s1` absent from `s2` with length in `[3 tau, beta]`
/// and period above `tau / 3`.
pub fn medium_case_exclusive(s1: &PackedString, s2: &PackedString, tau: usize, beta: usize) -> Option<SubstringAnswer> {
    if tau == 0 || beta < 3 * tau || s1.len() < 3 * tau {
        return None;
    }
    let mut text = s1.to_vec();
    let n1 = text.len();
    text.push(s1.sigma().max(s2.sigma()));
    text.extend(s2.to_vec());
    let lce = Lce::new(&text);
    let lay = Layout { n1, exclusive: true };
    better(branch_runs(&text, &lce, &lay, tau, beta), branch_sync(&text, &lce, &lay, tau, beta))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lcp(a: &str, b: &str) -> usize {
        a.bytes().zip(b.bytes()).take_while(|(x, y)| x == y).count()
    }

    fn list(words: &[&str]) -> (Vec<usize>, Vec<usize>) {
        let lens = words.iter().map(|w| w.len()).collect();
        let lcps = (0..words.len()).map(|t| if t == 0 { 0 } else { lcp(words[t - 1], words[t]) }).collect();
        (lens, lcps)
    }

    #[test]
    fn unique_prefix_example() {
        let words = ["a", "abacus", "abasia", "abate", "abstract"];
        let (lens, lcps) = list(&words);
        assert_eq!(lcps, vec![0, 1, 3, 3, 2]);
        let m: Vec<usize> = (0..5).map(|t| neighbor_max(&lcps, t)).collect();
        assert_eq!(m, vec![1, 3, 3, 3, 2]);
        let (t, l) = shortest_unique_prefix(&lens, &lcps).unwrap();
        assert_eq!(&words[t][..l], "abs");
        assert_eq!(shortest_unique_prefix(&[3, 3], &[0, 3]), None);
    }

    #[test]
    fn exclusive_prefix_example() {
        let words = ["ape", "apple", "bacon", "band", "bank"];
        let (lens, lcps) = list(&words);
        let colors = [false, true, false, false, true];
        let (t, l) = shortest_exclusive_prefix(&lens, &lcps, &colors).unwrap().unwrap();
        assert_eq!((&words[t][..l], l), ("ape", 3));
        assert_eq!(exclusive_reach(&lcps, &colors), vec![2, 0, 2, 3, 0]);
        assert_eq!(shortest_exclusive_prefix(&lens, &lcps, &[true; 5]), Err(MediumError::NoZeroColored));
        assert_eq!(shortest_exclusive_prefix(&lens, &lcps, &[false; 5]).unwrap(), Some((0, 1)));
    }

    #[test]
    fn max_lcp_equal_lengths() {
        let fam = PrefixFamily { u_len: vec![4, 4, 4], v_order: vec![0, 1, 2], v_lcp: vec![0, 2, 5], v_len: vec![9, 9, 9] };
        assert_eq!(max_lcp_array(&fam), vec![2, 5, 5]);
        let one = PrefixFamily { u_len: vec![3], v_order: vec![0], v_lcp: vec![0], v_len: vec![2] };
        assert_eq!(max_lcp_array(&one), vec![0]);
        assert_eq!(susp_prefix_family(&one), Some(SuspSolution { l1: 0, l2: 1, witness: 0 }));
    }

    #[test]
    fn longer_first_component_is_not_a_witness_below_its_threshold() {
        // U lengths 5 and 10, V = "aab" and "aaa"
        let fam = PrefixFamily { u_len: vec![5, 10], v_order: vec![1, 0], v_lcp: vec![0, 2], v_len: vec![3, 3] };
        let s = susp_prefix_family(&fam).unwrap();
        assert_eq!(s.l1 + s.l2, 3);
    }
}
