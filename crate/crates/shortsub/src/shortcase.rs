//! Short case: unique or exclusive substrings of length at most `ell`.
//!
//! Fragments `S[i..i+2ell)` for `i` a multiple of `ell` cover every window of
//! length `ell`. Identical fragments are kept at most twice, glued with a
//! separator letter, and the compacted trie of their suffixes is scanned with
//! leaves labeled by original positions.

use crate::baseline::{CompactTree, SubstringAnswer};
use crate::packed::{Lce, PackedString};

const MIXED: usize = usize::MAX;

/// Sampled fragments of one string, deduplicated.
#[derive(Debug, Clone)]
pub struct FragmentSample {
    pub ell: usize,
    /// (start, end) in the source string, half-open
    pub fragments: Vec<(usize, usize)>,
}

impl FragmentSample {
    pub fn new(text: &[u32], sigma: u32, ell: usize, copies: usize) -> FragmentSample {
        let n = text.len();
        let mut frags: Vec<(usize, usize)> = (0..n).step_by(ell.max(1)).map(|i| (i, (i + 2 * ell).min(n))).collect();
        let bits = 32 - sigma.max(2).saturating_sub(1).leading_zeros() as usize;
        if 2 * ell * bits <= 128 {
            let key = |&(a, b): &(usize, usize)| {
                let packed = text[a..b].iter().fold(0u128, |k, &c| (k << bits) | c as u128);
                (b - a, packed)
            };
            frags.sort_by_key(|f| (key(f), f.0));
            frags = keep_copies(frags, copies, |a, b| key(a) == key(b));
        } else {
            frags.sort_by(|x, y| text[x.0..x.1].cmp(&text[y.0..y.1]).then(x.0.cmp(&y.0)));
            frags = keep_copies(frags, copies, |x, y| text[x.0..x.1] == text[y.0..y.1]);
        }
        frags.sort();
        FragmentSample { ell, fragments: frags }
    }
}

fn keep_copies(frags: Vec<(usize, usize)>, copies: usize, same: impl Fn(&(usize, usize), &(usize, usize)) -> bool) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::with_capacity(frags.len());
    let mut run = 0;
    for f in frags {
        run = if out.last().is_some_and(|l| same(l, &f)) { run + 1 } else { 0 };
        if run < copies {
            out.push(f);
        }
    }
    out
}

struct Glued {
    tree: CompactTree,
    /// per leaf label: (original position, color, room to the separator)
    info: Vec<(usize, usize, usize)>,
}

// suffix trie of the sampled fragments; colors index `parts`
fn glue(parts: &[(&[u32], &FragmentSample)], sep: u32) -> Glued {
    let mut text = Vec::new();
    let mut owner = Vec::new();
    for (color, (src, sample)) in parts.iter().enumerate() {
        for &(a, b) in &sample.fragments {
            for (k, &c) in src[a..b].iter().enumerate() {
                text.push(c);
                owner.push(Some((a + k, color, b - a - k)));
            }
            text.push(sep);
            owner.push(None);
        }
    }
    let lce = Lce::new(&text);
    let mut info = Vec::new();
    let mut depths = Vec::new();
    let mut lcps = Vec::new();
    let mut prev: Option<(usize, usize)> = None;
    for &q in lce.sa() {
        let Some((pos, color, room)) = owner[q] else { continue };
        lcps.push(prev.map_or(0, |(pq, proom)| lce.lce(pq, q).min(room).min(proom)));
        depths.push(room + 1);
        info.push((pos, color, room));
        prev = Some((q, room));
    }
    let ids: Vec<usize> = (0..info.len()).collect();
    Glued { tree: CompactTree::from_sorted(&depths, &lcps, &ids), info }
}

fn scan(g: &Glued, ell: usize, mark: impl Fn(usize) -> usize, wanted: impl Fn(usize) -> bool, pure: impl Fn(usize) -> bool) -> Option<SubstringAnswer> {
    let t = &g.tree;
    let mut label = vec![0usize; t.len()];
    let mut pos = vec![0usize; t.len()];
    let order = t.postorder();
    for &v in &order {
        let node = t.node(v);
        if let Some(id) = node.leaf {
            label[v] = mark(id);
            pos[v] = g.info[id].0;
        } else {
            let mut it = node.children.iter();
            let first = *it.next().expect("internal nodes have children");
            label[v] = label[first];
            pos[v] = pos[first];
            for &c in it {
                if label[c] != label[v] {
                    label[v] = MIXED;
                }
                pos[v] = pos[v].min(pos[c]);
            }
        }
    }
    let mut best: Option<(usize, usize)> = None;
    for &v in &order {
        let p = t.node(v).parent;
        if v == t.root() || !wanted(label[v]) || (p != t.root() && pure(label[p])) {
            continue;
        }
        let len = t.node(p).sd + 1;
        let room = t.node(v).leaf.map_or(usize::MAX, |id| g.info[id].2);
        if len <= ell && len <= room && best.is_none_or(|b| (len, pos[v]) < b) {
            best = Some((len, pos[v]));
        }
    }
    best.map(|(len, start)| SubstringAnswer::fragment(start, len))
}

/// Shortest unique substring of length at most `ell`, leftmost among ties.
pub fn short_case_sus(s: &PackedString, ell: usize) -> Option<SubstringAnswer> {
    if ell == 0 || s.is_empty() {
        return None;
    }
    let text = s.to_vec();
    let sample = FragmentSample::new(&text, s.sigma(), ell, 2);
    let g = glue(&[(&text, &sample)], s.sigma());
    // labels are original positions, MIXED once two differ
    scan(&g, ell, |id| g.info[id].0, |l| l != MIXED, |l| l != MIXED)
}

/// Shortest substring of `s1` of length at most `ell` absent from `s2`.
pub fn short_case_exclusive(s1: &PackedString, s2: &PackedString, ell: usize) -> Option<SubstringAnswer> {
    if ell == 0 || s1.is_empty() {
        return None;
    }
    let (a, b) = (s1.to_vec(), s2.to_vec());
    let sigma = s1.sigma().max(s2.sigma());
    let sa = FragmentSample::new(&a, sigma, ell, 1);
    let sb = FragmentSample::new(&b, sigma, ell, 1);
    let g = glue(&[(&a, &sa), (&b, &sb)], sigma);
    // 0 for s1-only subtrees, anything else once s2 shows up
    scan(&g, ell, |id| g.info[id].1, |l| l == 0, |l| l == 0)
}
