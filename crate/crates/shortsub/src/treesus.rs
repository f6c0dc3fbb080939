//! The long aperiodic case: anchored tries, heavy paths and Two Trees SUS.

use crate::baseline::{CompactTree, SubstringAnswer};
use crate::packed::{Lce, PackedString};
use crate::skyline::{self, Point2, INF};
use crate::sync::{build_with, SyncSet};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeSusError {
    #[error("node {node} does not outweigh its parent")]
    WeightMonotonicityViolation { node: usize },
    #[error("k must be positive")]
    InvalidK,
    #[error("no anchors to build tries from")]
    EmptySyncSet,
    #[error("malformed tree: {0}")]
    Malformed(String),
}

/// Rooted tree at node 0 with weights increasing downwards and labeled leaves.
#[derive(Debug, Clone)]
pub struct WeightedTree {
    parent: Vec<usize>,
    weight: Vec<u64>,
    label: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
}

impl WeightedTree {
    /// `parent[0]` must be 0 and every other node must reach 0 through parents.
    pub fn new(parent: Vec<usize>, weight: Vec<u64>, label: Vec<Option<usize>>) -> Result<WeightedTree, TreeSusError> {
        let n = parent.len();
        if n == 0 || weight.len() != n || label.len() != n || parent[0] != 0 {
            return Err(TreeSusError::Malformed("sizes or root".into()));
        }
        let mut children = vec![Vec::new(); n];
        for v in 1..n {
            if parent[v] >= n || parent[v] == v {
                return Err(TreeSusError::Malformed(format!("parent of {v}")));
            }
            children[parent[v]].push(v);
            if weight[v] <= weight[parent[v]] {
                return Err(TreeSusError::WeightMonotonicityViolation { node: v });
            }
        }
        let t = WeightedTree { parent, weight, label, children };
        if t.preorder().len() != n {
            return Err(TreeSusError::Malformed("not connected".into()));
        }
        for v in 0..n {
            if t.label[v].is_some() && !t.children[v].is_empty() {
                return Err(TreeSusError::Malformed(format!("labeled internal node {v}")));
            }
        }
        Ok(t)
    }

    fn from_compact(ct: &CompactTree) -> WeightedTree {
        let parent = ct.nodes().iter().map(|n| n.parent).collect();
        let weight = ct.nodes().iter().map(|n| n.sd as u64).collect();
        let label = ct.nodes().iter().map(|n| n.leaf).collect();
        let children = ct.nodes().iter().map(|n| n.children.clone()).collect();
        WeightedTree { parent, weight, label, children }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn parent(&self, v: usize) -> usize {
        self.parent[v]
    }

    pub fn weight(&self, v: usize) -> u64 {
        self.weight[v]
    }

    pub fn label(&self, v: usize) -> Option<usize> {
        self.label[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn preorder(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack = vec![0usize];
        while let Some(v) = stack.pop() {
            out.push(v);
            stack.extend(self.children[v].iter().rev());
        }
        out
    }

    /// Labels in the subtree of `v`.
    pub fn leaves_below(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            out.extend(self.label[x]);
            stack.extend(&self.children[x]);
        }
        out
    }

    /// Inserts unary nodes so that every root-to-leaf path has a node of weight `w`
    /// (when its leaf is deeper than `w`).
    pub fn make_explicit(&mut self, w: u64) {
        let n = self.len();
        for v in 1..n {
            let p = self.parent[v];
            if self.weight[p] < w && w < self.weight[v] {
                let id = self.parent.len();
                self.parent.push(p);
                self.weight.push(w);
                self.label.push(None);
                self.children.push(vec![v]);
                let slot = self.children[p].iter().position(|&c| c == v).unwrap();
                self.children[p][slot] = id;
                self.parent[v] = id;
            }
        }
    }
}

/// Heavy-light decomposition; heavy child has the most descendants, ties go to
/// the child holding the smaller leaf label.
#[derive(Debug, Clone)]
pub struct HeavyPathDecomp {
    pub path_of: Vec<usize>,
    /// nodes of each path, top-down
    pub paths: Vec<Vec<usize>>,
}

impl HeavyPathDecomp {
    pub fn new(t: &WeightedTree) -> HeavyPathDecomp {
        let order = t.preorder();
        let mut size = vec![1usize; t.len()];
        let mut min_label = vec![usize::MAX; t.len()];
        for &v in order.iter().rev() {
            min_label[v] = min_label[v].min(t.label[v].unwrap_or(usize::MAX));
            for &c in &t.children[v] {
                size[v] += size[c];
                min_label[v] = min_label[v].min(min_label[c]);
            }
        }
        let mut path_of = vec![usize::MAX; t.len()];
        let mut paths: Vec<Vec<usize>> = Vec::new();
        for &v in &order {
            if path_of[v] != usize::MAX {
                continue;
            }
            let id = paths.len();
            let mut path = Vec::new();
            let mut x = v;
            loop {
                path_of[x] = id;
                path.push(x);
                let Some(&h) = t.children[x].iter().min_by_key(|&&c| (std::cmp::Reverse(size[c]), min_label[c])) else { break };
                x = h;
            }
            paths.push(path);
        }
        HeavyPathDecomp { path_of, paths }
    }

    pub fn head(&self, path: usize) -> usize {
        self.paths[path][0]
    }

    /// Heavy paths met on the way from `node` to the root, with the lowest
    /// node of each, bottom-up.
    pub fn chain(&self, t: &WeightedTree, mut node: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        loop {
            let p = self.path_of[node];
            out.push((p, node));
            let head = self.head(p);
            if head == 0 {
                return out;
            }
            node = t.parent[head];
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwoTreesAnswer {
    pub u: usize,
    pub v: usize,
    pub value: u64,
}

struct Tuple {
    h1: usize,
    h2: usize,
    d1: u64,
    d2: u64,
    label: usize,
}

fn leaf_index(t: &WeightedTree) -> HashMap<usize, usize> {
    (0..t.len()).filter_map(|v| t.label[v].map(|l| (l, v))).collect()
}

fn tuples(
    t1: &WeightedTree,
    t2: &WeightedTree,
    d1: &HeavyPathDecomp,
    d2: &HeavyPathDecomp,
    cap: &dyn Fn(usize, bool) -> u64,
) -> Vec<Tuple> {
    let l2 = leaf_index(t2);
    let mut out = Vec::new();
    let mut leaves1: Vec<(usize, usize)> = leaf_index(t1).into_iter().collect();
    leaves1.sort();
    for (label, a) in leaves1 {
        let Some(&b) = l2.get(&label) else { continue };
        let c1 = d1.chain(t1, a);
        let c2 = d2.chain(t2, b);
        for (k1, &(h1, x1)) in c1.iter().enumerate() {
            let w1 = if k1 == 0 { t1.weight[x1].min(cap(label, false)) } else { t1.weight[x1] };
            for (k2, &(h2, x2)) in c2.iter().enumerate() {
                let w2 = if k2 == 0 { t2.weight[x2].min(cap(label, true)) } else { t2.weight[x2] };
                out.push(Tuple { h1, h2, d1: w1, d2: w2, label });
            }
        }
    }
    out.sort_by(|a, b| (a.h1, a.h2, std::cmp::Reverse(a.d1)).cmp(&(b.h1, b.h2, std::cmp::Reverse(b.d1))));
    out
}

/// Number of (heavy path pair, label) tuples the solver generates.
pub fn tuple_count(t1: &WeightedTree, t2: &WeightedTree) -> usize {
    let d1 = HeavyPathDecomp::new(t1);
    let d2 = HeavyPathDecomp::new(t2);
    tuples(t1, t2, &d1, &d2, &|_, _| u64::MAX).len()
}

fn groups(tuples: &[Tuple]) -> impl Iterator<Item = &[Tuple]> {
    tuples.chunk_by(|a, b| a.h1 == b.h1 && a.h2 == b.h2)
}

// smallest coordinate a path covers: nodes on it sit at depths (w(parent(head)), ..]
fn path_floor(t: &WeightedTree, d: &HeavyPathDecomp, path: usize, root_floor: u64) -> u64 {
    let head = d.head(path);
    if head == 0 {
        root_floor
    } else {
        t.weight[t.parent[head]] + 1
    }
}

fn node_at(t: &WeightedTree, d: &HeavyPathDecomp, path: usize, x: u64) -> usize {
    let p = &d.paths[path];
    let k = p.partition_point(|&v| t.weight[v] < x);
    p[k.min(p.len() - 1)]
}

/// Pairs `(u, v)` with exactly one common leaf label and `w(v) >= k`,
/// minimizing `w(parent(u)) + max(w(parent(v)), k - 1)`; the root is its own parent.
pub fn two_trees_sus(t1: &WeightedTree, t2: &WeightedTree, k: u64) -> Result<Option<TwoTreesAnswer>, TreeSusError> {
    if k == 0 {
        return Err(TreeSusError::InvalidK);
    }
    let hd1 = HeavyPathDecomp::new(t1);
    let hd2 = HeavyPathDecomp::new(t2);
    let all = tuples(t1, t2, &hd1, &hd2, &|_, _| u64::MAX);
    let mut best: Option<TwoTreesAnswer> = None;
    let mut offer = |a: TwoTreesAnswer| {
        if best.is_none_or(|b| a.value < b.value) {
            best = Some(a);
        }
    };
    for g in groups(&all) {
        let (h1, h2) = (g[0].h1, g[0].h2);
        let lo1 = path_floor(t1, &hd1, h1, t1.weight[0] + 1);
        let lo2 = path_floor(t2, &hd2, h2, t2.weight[0] + 1);
        let mut pts: Vec<Point2> = Vec::with_capacity(g.len() + 2);
        if k - 1 >= lo2 {
            pts.push(Point2::new(INF, k - 1 - lo2));
            pts.push(Point2::new(INF, k - 1 - lo2));
        }
        pts.extend(g.iter().filter(|t| t.d1 >= lo1 && t.d2 >= lo2).map(|t| Point2::new(t.d1 - lo1, t.d2 - lo2)));
        let Some(q) = skyline::min_skyline_point(&pts).expect("sorted by construction") else { continue };
        let (x, y) = (q.x + lo1, q.y + lo2);
        offer(TwoTreesAnswer { u: node_at(t1, &hd1, h1, x), v: node_at(t2, &hd2, h2, y), value: x - 1 + y - 1 });
    }
    // pairs involving a root, which the per-path instances skip
    let shared1 = shared_counts(t1, t2);
    let shared2 = shared_counts(t2, t1);
    if shared2[0] == 1 && t2.weight[0] >= k {
        offer(TwoTreesAnswer { u: 0, v: 0, value: t1.weight[0] + t2.weight[0] });
    }
    for v in 1..t2.len() {
        if shared2[v] == 1 && t2.weight[v] >= k {
            offer(TwoTreesAnswer { u: 0, v, value: t1.weight[0] + t2.weight[t2.parent[v]].max(k - 1) });
        }
    }
    if t2.weight[0] >= k {
        for u in 1..t1.len() {
            if shared1[u] == 1 {
                offer(TwoTreesAnswer { u, v: 0, value: t1.weight[t1.parent[u]] + t2.weight[0] });
            }
        }
    }
    Ok(best)
}

// per node of `a`, how many of its leaf labels also label a leaf of `b`
fn shared_counts(a: &WeightedTree, b: &WeightedTree) -> Vec<usize> {
    let lb = leaf_index(b);
    let mut c = vec![0usize; a.len()];
    for &v in a.preorder().iter().rev() {
        c[v] += a.label[v].is_some_and(|l| lb.contains_key(&l)) as usize;
        if v != 0 {
            let p = a.parent[v];
            c[p] += c[v];
        }
    }
    c
}

/// Tries over anchor contexts: `fwd` holds `S[i..n)`, `rev` holds `S[0..i)` reversed.
/// Leaf labels index `anchors`.
#[derive(Debug, Clone)]
pub struct AnchoredTriePair {
    pub fwd: WeightedTree,
    pub rev: WeightedTree,
    pub anchors: Vec<usize>,
    /// real lengths of the inserted strings, per label
    pub fwd_len: Vec<usize>,
    pub rev_len: Vec<usize>,
}

pub fn build_tries(s: &PackedString, sync: &SyncSet, k: usize) -> Result<AnchoredTriePair, TreeSusError> {
    let text = s.to_vec();
    let n = text.len();
    let fwd = Lce::new(&text);
    let rtext: Vec<u32> = text.iter().rev().copied().collect();
    let rev = Lce::new(&rtext);
    let fwd_len = sync.anchors.iter().map(|&a| n - a).collect();
    let rev_len = sync.anchors.iter().map(|&a| a).collect();
    tries_from(&fwd, &rev, sync.anchors.clone(), fwd_len, rev_len, k)
}

fn tries_from(
    fwd: &Lce,
    rev: &Lce,
    anchors: Vec<usize>,
    fwd_len: Vec<usize>,
    rev_len: Vec<usize>,
    k: usize,
) -> Result<AnchoredTriePair, TreeSusError> {
    if anchors.is_empty() {
        return Err(TreeSusError::EmptySyncSet);
    }
    let n = fwd.len();
    let build = |lce: &Lce, start: &dyn Fn(usize) -> usize, len: &[usize]| {
        let mut ids: Vec<usize> = (0..anchors.len()).collect();
        ids.sort_by(|&a, &b| lce.cmp_suffix(start(a), start(b)).then(a.cmp(&b)));
        let depths: Vec<usize> = ids.iter().map(|&i| len[i] + 1).collect();
        let mut lcps = vec![0usize; ids.len()];
        for r in 1..ids.len() {
            let (a, b) = (ids[r - 1], ids[r]);
            lcps[r] = lce.lce(start(a), start(b)).min(len[a]).min(len[b]);
        }
        WeightedTree::from_compact(&CompactTree::from_sorted(&depths, &lcps, &ids))
    };
    let mut tf = build(fwd, &|i| anchors[i], &fwd_len);
    let tr = build(rev, &|i| n - anchors[i], &rev_len);
    if k >= 1 {
        tf.make_explicit(k as u64 - 1);
    }
    Ok(AnchoredTriePair { fwd: tf, rev: tr, anchors, fwd_len, rev_len })
}

// (length, left extension x, label) of the best hit: smallest length, then leftmost start
fn depth_search(p: &AnchoredTriePair, k: u64, min_sum: u128, s2: Option<&[bool]>) -> Option<(usize, usize)> {
    let (t1, t2) = (&p.rev, &p.fwd);
    let hd1 = HeavyPathDecomp::new(t1);
    let hd2 = HeavyPathDecomp::new(t2);
    let cap = |label: usize, right: bool| if right { p.fwd_len[label] as u64 } else { p.rev_len[label] as u64 };
    let all = tuples(t1, t2, &hd1, &hd2, &cap);
    let mut best: Option<(usize, usize)> = None;
    for g in groups(&all) {
        let lo1 = path_floor(t1, &hd1, g[0].h1, 0);
        let lo2 = path_floor(t2, &hd2, g[0].h2, 0);
        let keep: Vec<&Tuple> = g.iter().filter(|t| t.d1 >= lo1 && t.d2 >= lo2).collect();
        let pad = (k - 1 >= lo2).then(|| Point2::new(INF, k - 1 - lo2));
        let floor = min_sum.saturating_sub(lo1 as u128 + lo2 as u128);
        let pt = |t: &Tuple| Point2::new(t.d1 - lo1, t.d2 - lo2);
        let (labels, hit) = match s2 {
            None => {
                let mut pts: Vec<Point2> = pad.into_iter().chain(pad).collect();
                let off = pts.len();
                pts.extend(keep.iter().map(|t| pt(t)));
                let labels: Vec<usize> = keep.iter().map(|t| t.label).collect();
                let hit = skyline::min_skyline_sum_at_least(&pts, floor).expect("sorted");
                let hit = hit.map(|(s, ivs)| (s, ivs.into_iter().map(|mut iv| {
                    iv.dominator -= off;
                    iv
                }).collect::<Vec<_>>()));
                (labels, hit)
            }
            Some(is_s2) => {
                let p1: Vec<&Tuple> = keep.iter().copied().filter(|t| !is_s2[t.label]).collect();
                let p2: Vec<Point2> = pad.into_iter().chain(keep.iter().filter(|t| is_s2[t.label]).map(|t| pt(t))).collect();
                let pts1: Vec<Point2> = p1.iter().map(|t| pt(t)).collect();
                let labels: Vec<usize> = p1.iter().map(|t| t.label).collect();
                (labels, skyline::min_exclusive_sum_at_least(&pts1, &p2, floor).expect("sorted"))
            }
        };
        let Some((sum, ivs)) = hit else { continue };
        let length = (sum + lo1 as u128 + lo2 as u128) as usize;
        for iv in ivs {
            let Some((_, xhi)) = iv.diagonal(sum) else { continue };
            let x = (xhi + lo1) as usize;
            let label = labels[iv.dominator];
            let start = p.anchors[label] - x;
            if best.is_none_or(|b| (length, start) < b) {
                best = Some((length, start));
            }
        }
    }
    best
}

/// Shortest unique substring of length at least `3 tau` with period above `tau / 3`.
pub fn long_case_sus(s: &PackedString, tau: usize) -> Option<SubstringAnswer> {
    if tau == 0 || s.len() < 3 * tau {
        return None;
    }
    let text = s.to_vec();
    let n = text.len();
    let fwd = Lce::new(&text);
    let sync = build_with(&text, tau, &fwd).ok()?;
    if sync.is_empty() {
        return None;
    }
    let rtext: Vec<u32> = text.iter().rev().copied().collect();
    let rev = Lce::new(&rtext);
    let fl = sync.anchors.iter().map(|&a| n - a).collect();
    let rl = sync.anchors.clone();
    let pair = tries_from(&fwd, &rev, sync.anchors, fl, rl, 2 * tau).ok()?;
    let (length, start) = depth_search(&pair, 2 * tau as u64, 3 * tau as u128, None)?;
    Some(SubstringAnswer::fragment(start, length))
}

/// Shortest substring of `s1` absent from `s2`, of length at least `3 tau` and
/// period above `tau / 3`. Anchors come from one synchronizing set over `s1 # s2`.
pub fn long_case_exclusive(s1: &PackedString, s2: &PackedString, tau: usize) -> Option<SubstringAnswer> {
    if tau == 0 || s1.len() < 3 * tau {
        return None;
    }
    let sep = s1.sigma().max(s2.sigma());
    let mut text = s1.to_vec();
    let n1 = text.len();
    text.push(sep);
    text.extend(s2.to_vec());
    let n = text.len();
    let fwd = Lce::new(&text);
    let sync = build_with(&text, tau, &fwd).ok()?;
    let anchors: Vec<usize> = sync.anchors.into_iter().filter(|&a| a + 2 * tau <= n1 || a > n1).collect();
    if !anchors.iter().any(|&a| a < n1) {
        return None;
    }
    let rtext: Vec<u32> = text.iter().rev().copied().collect();
    let rev = Lce::new(&rtext);
    let fl = anchors.iter().map(|&a| if a < n1 { n1 - a } else { n - a }).collect();
    let rl = anchors.iter().map(|&a| if a < n1 { a } else { a - n1 - 1 }).collect();
    let is_s2: Vec<bool> = anchors.iter().map(|&a| a > n1).collect();
    let pair = tries_from(&fwd, &rev, anchors, fl, rl, 2 * tau).ok()?;
    let (length, start) = depth_search(&pair, 2 * tau as u64, 3 * tau as u128, Some(&is_s2))?;
    Some(SubstringAnswer::fragment(start, length))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_shared_leaf() {
        let t1 = WeightedTree::new(vec![0, 0], vec![0, 5], vec![None, Some(0)]).unwrap();
        let t2 = WeightedTree::new(vec![0, 0], vec![0, 7], vec![None, Some(0)]).unwrap();
        let a = two_trees_sus(&t1, &t2, 3).unwrap().unwrap();
        assert_eq!(a.value, 2);
        // the root of t1 also qualifies with the same value
        assert!(a.u == 0 || a.u == 1);
        assert_eq!(a.v, 1);
    }

    #[test]
    fn no_unique_pair() {
        let flat = WeightedTree::new(vec![0, 0, 0], vec![0, 3, 3], vec![None, Some(0), Some(1)]).unwrap();
        let deep = WeightedTree::new(vec![0, 0, 1, 1], vec![0, 4, 8, 8], vec![None, None, Some(0), Some(1)]).unwrap();
        assert!(two_trees_sus(&flat, &deep, 20).unwrap().is_none());
        let a = two_trees_sus(&flat, &deep, 5).unwrap().unwrap();
        // a leaf of `flat` against the node of weight 8 below depth 4
        assert_eq!(a.value, 0 + 4);
    }

    #[test]
    fn weight_violation() {
        let r = WeightedTree::new(vec![0, 0], vec![3, 3], vec![None, Some(0)]);
        assert_eq!(r.unwrap_err(), TreeSusError::WeightMonotonicityViolation { node: 1 });
        let t = WeightedTree::new(vec![0, 0], vec![0, 1], vec![None, Some(0)]).unwrap();
        assert_eq!(two_trees_sus(&t, &t, 0), Err(TreeSusError::InvalidK));
    }

    #[test]
    fn distinct_first_letters() {
        let text = [0u32, 1, 2, 0, 0, 1, 1, 2, 2];
        let s = PackedString::pack(&text, 3).unwrap();
        let sync = SyncSet { tau: 1, anchors: vec![0, 1, 2] };
        let p = build_tries(&s, &sync, 2).unwrap();
        assert_eq!(p.fwd.children(0).len(), 3);
        assert_eq!((0..p.fwd.len()).filter(|&v| p.fwd.label(v).is_some()).count(), 3);
        assert_eq!((0..p.rev.len()).filter(|&v| p.rev.label(v).is_some()).count(), 3);
    }
}
