//! Wavelet tree over first components, shaped like their compacted trie.
//!
//! A trie node with several children becomes a balanced comb of binary
//! nodes. Each wavelet node holds its elements in the order of the second
//! components together with the LCPs of consecutive ones.

use crate::baseline::CompactTree;
use std::collections::VecDeque;

#[derive(Debug, Clone)]
pub struct WaveletNodeView<'a> {
    /// trie node this wavelet node stands for, none inside a comb
    pub trie_node: Option<usize>,
    /// prefix lengths whose matching elements are exactly `order`, inclusive
    pub prefix_range: Option<(usize, usize)>,
    pub level: usize,
    pub order: &'a [usize],
    /// `lcps[0] = 0`, `lcps[t]` is the LCP of `order[t - 1]` and `order[t]`
    pub lcps: &'a [usize],
    pub origin: Option<&'a [bool]>,
}

struct Item {
    node: usize,
    lo: usize,
    hi: usize,
    real: bool,
    level: usize,
    order: Vec<usize>,
    lcps: Vec<usize>,
    origin: Option<Vec<bool>>,
}

/// Compacted trie of `first` with one leaf per element (leaf depth is length + 1).
pub fn first_component_trie(first: &[&[u32]]) -> (CompactTree, Vec<usize>) {
    let mut ids: Vec<usize> = (0..first.len()).collect();
    ids.sort_by(|&a, &b| first[a].cmp(first[b]).then(a.cmp(&b)));
    let depths: Vec<usize> = ids.iter().map(|&i| first[i].len() + 1).collect();
    let mut lcps = vec![0usize; ids.len()];
    for r in 1..ids.len() {
        let (a, b) = (first[ids[r - 1]], first[ids[r]]);
        lcps[r] = a.iter().zip(b).take_while(|(x, y)| x == y).count();
    }
    let mut rank = vec![0usize; ids.len()];
    for (r, &i) in ids.iter().enumerate() {
        rank[i] = r;
    }
    (CompactTree::from_sorted(&depths, &lcps, &ids), rank)
}

/// Visits every wavelet node in BFS order. `order` lists element ids sorted
/// by second component, `lcps` their consecutive LCPs.
pub fn wavelet_lcp_traversal(
    first: &[&[u32]],
    order: &[usize],
    lcps: &[usize],
    origin: Option<&[bool]>,
    mut visit: impl FnMut(&WaveletNodeView),
) {
    if order.is_empty() {
        return;
    }
    let (trie, rank) = first_component_trie(first);
    let range = |v: usize| -> Option<(usize, usize)> {
        let node = trie.node(v);
        if v == trie.root() {
            return Some((0, 0));
        }
        let lo = trie.node(node.parent).sd + 1;
        let hi = if node.leaf.is_some() { node.sd - 1 } else { node.sd };
        (lo <= hi).then_some((lo, hi))
    };
    let mut queue = VecDeque::new();
    queue.push_back(Item {
        node: trie.root(),
        lo: 0,
        hi: trie.node(trie.root()).children.len(),
        real: true,
        level: 0,
        order: order.to_vec(),
        lcps: lcps.to_vec(),
        origin: origin.map(|o| order.iter().map(|&i| o[i]).collect()),
    });
    while let Some(it) = queue.pop_front() {
        visit(&WaveletNodeView {
            trie_node: it.real.then_some(it.node),
            prefix_range: if it.real { range(it.node) } else { None },
            level: it.level,
            order: &it.order,
            lcps: &it.lcps,
            origin: it.origin.as_deref(),
        });
        let children = &trie.node(it.node).children;
        let m = it.hi - it.lo;
        if m == 0 {
            continue;
        }
        let make = |lo: usize, hi: usize, order, lcps, origin| {
            if hi - lo == 1 {
                let c = children[lo];
                Item { node: c, lo: 0, hi: trie.node(c).children.len(), real: true, level: it.level + 1, order, lcps, origin }
            } else {
                Item { node: it.node, lo, hi, real: false, level: it.level + 1, order, lcps, origin }
            }
        };
        if m == 1 {
            queue.push_back(make(it.lo, it.hi, it.order, it.lcps, it.origin));
            continue;
        }
        let mid = it.lo + m / 2;
        let boundary = trie.node(children[mid]).lb;
        let (mut lo_o, mut hi_o) = (Vec::new(), Vec::new());
        let (mut lo_l, mut hi_l) = (Vec::new(), Vec::new());
        let (mut lo_g, mut hi_g) = (Vec::new(), Vec::new());
        let (mut run_lo, mut run_hi) = (usize::MAX, usize::MAX);
        for (t, &e) in it.order.iter().enumerate() {
            if t > 0 {
                run_lo = run_lo.min(it.lcps[t]);
                run_hi = run_hi.min(it.lcps[t]);
            }
            let right = rank[e] >= boundary;
            let (o, l, g, run) = if right { (&mut hi_o, &mut hi_l, &mut hi_g, &mut run_hi) } else { (&mut lo_o, &mut lo_l, &mut lo_g, &mut run_lo) };
            l.push(if o.is_empty() { 0 } else { *run });
            o.push(e);
            if let Some(src) = &it.origin {
                g.push(src[t]);
            }
            *run = usize::MAX;
        }
        let has = it.origin.is_some();
        queue.push_back(make(it.lo, mid, lo_o, lo_l, has.then_some(lo_g)));
        queue.push_back(make(mid, it.hi, hi_o, hi_l, has.then_some(hi_g)));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_pair() {
        let u: Vec<&[u32]> = vec![&[1, 2]];
        let mut seen = Vec::new();
        wavelet_lcp_traversal(&u, &[0], &[0], None, |v| seen.push((v.trie_node, v.prefix_range, v.lcps.to_vec())));
        assert_eq!(seen[0], (Some(0), Some((0, 0)), vec![0]));
        // the leaf covers prefix lengths 1..=2
        assert_eq!(seen.last().unwrap().1, Some((1, 2)));
    }

    #[test]
    fn equal_first_components_reach_the_bottom() {
        let u: Vec<&[u32]> = vec![&[3, 1, 4], &[3, 1, 4]];
        let mut deepest = (0, 0);
        wavelet_lcp_traversal(&u, &[1, 0], &[0, 5], None, |v| {
            if v.order.len() == 2 {
                if let Some((_, hi)) = v.prefix_range {
                    deepest = deepest.max((hi, v.lcps[1]));
                }
            }
        });
        assert_eq!(deepest, (3, 5));
    }
}
