//! Suffix-array solutions for SUS, SAS and SES plus brute-force oracles.

mod tree;

pub use tree::{CompactTree, Node};

use crate::packed::{lcp_array, suffix_array, PackedString};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use thiserror::Error;

pub const DEFAULT_CAP: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BaselineError {
    #[error("input length {n} exceeds oracle cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("empty input")]
    EmptyInput,
}

/// A witness `S[start..=end_inclusive]`, followed by `extension_letter` for absent strings.
///
/// `end_inclusive` is `start - 1` when the witness consists of the extension letter alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubstringAnswer {
    pub start: usize,
    pub end_inclusive: i64,
    pub extension_letter: Option<u32>,
    pub length: usize,
}

impl SubstringAnswer {
    pub fn fragment(start: usize, length: usize) -> SubstringAnswer {
        assert!(length >= 1);
        SubstringAnswer {
            start,
            end_inclusive: (start + length) as i64 - 1,
            extension_letter: None,
            length,
        }
    }

    pub fn extended(start: usize, end_inclusive: i64, c: u32) -> SubstringAnswer {
        let length = (end_inclusive - start as i64 + 2) as usize;
        SubstringAnswer { start, end_inclusive, extension_letter: Some(c), length }
    }

    /// End position, exclusive, of the part taken from the text.
    pub fn end_exclusive(&self) -> usize {
        (self.end_inclusive + 1) as usize
    }

    /// The witness letters, read from `text`.
    pub fn letters(&self, text: &[u32]) -> Vec<u32> {
        let mut v = text[self.start..self.end_exclusive()].to_vec();
        v.extend(self.extension_letter);
        v
    }

    pub(crate) fn key(&self) -> (usize, usize, u32) {
        (self.length, self.start, self.extension_letter.unwrap_or(0))
    }
}

/// Keeps the smaller answer under the `(length, start)` order.
pub fn better(a: Option<SubstringAnswer>, b: Option<SubstringAnswer>) -> Option<SubstringAnswer> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if y.key() < x.key() { y } else { x }),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Suffix array, inverse, LCP and the compacted tree of `S` followed by a sentinel.
#[derive(Debug, Clone)]
pub struct SuffixStructure {
    pub text: Vec<u32>,
    pub sa: Vec<usize>,
    pub isa: Vec<usize>,
    pub lcp: Vec<usize>,
    pub tree: CompactTree,
}

impl SuffixStructure {
    /// `text` must not contain `sentinel`; it is appended internally.
    pub fn new(letters: &[u32], sentinel: u32) -> SuffixStructure {
        let mut text = letters.to_vec();
        text.push(sentinel);
        let sa = suffix_array(&text);
        let lcp = lcp_array(&text, &sa);
        let mut isa = vec![0; sa.len()];
        for (r, &i) in sa.iter().enumerate() {
            isa[i] = r;
        }
        let depths: Vec<usize> = sa.iter().map(|&i| text.len() - i).collect();
        let tree = CompactTree::from_sorted(&depths, &lcp, &sa);
        SuffixStructure { text, sa, isa, lcp, tree }
    }

    /// Length of the original string, sentinel excluded.
    pub fn n(&self) -> usize {
        self.text.len() - 1
    }
}

fn sus_candidates(s: &[u32], sentinel: u32) -> Vec<SubstringAnswer> {
    let st = SuffixStructure::new(s, sentinel);
    let n = st.n();
    let mut out = Vec::new();
    for v in 0..st.tree.len() {
        let Some(i) = st.tree.node(v).leaf else { continue };
        if i == n {
            continue;
        }
        let len = st.tree.node(st.tree.node(v).parent).sd + 1;
        if i + len <= n {
            out.push(SubstringAnswer::fragment(i, len));
        }
    }
    out
}

/// A shortest unique substring, leftmost among the shortest.
pub fn sus_linear(s: &PackedString) -> SubstringAnswer {
    assert!(!s.is_empty(), "sus of an empty string");
    let v = s.to_vec();
    sus_candidates(&v, s.sigma())
        .into_iter()
        .min_by_key(|a| a.key())
        .expect("the whole string is unique")
}

/// Every shortest unique substring occurrence, by start.
pub fn sus_all(s: &PackedString) -> Vec<SubstringAnswer> {
    let v = s.to_vec();
    let mut c = sus_candidates(&v, s.sigma());
    let Some(best) = c.iter().map(|a| a.length).min() else { return c };
    c.retain(|a| a.length == best);
    c.sort_by_key(|a| a.start);
    c
}

/// A shortest string over `[0, sigma)` absent from `s`.
pub fn sas_linear(s: &PackedString, sigma: u32) -> SubstringAnswer {
    assert!(!s.is_empty(), "sas of an empty string");
    let sigma = sigma.max(s.sigma());
    let letters = s.to_vec();
    let st = SuffixStructure::new(&letters, sigma);
    let n = st.n();
    let t = &st.tree;
    let mut min_leaf = vec![usize::MAX; t.len()];
    for v in t.postorder() {
        let node = t.node(v);
        let mut m = node.leaf.unwrap_or(usize::MAX);
        for &c in &node.children {
            m = m.min(min_leaf[c]);
        }
        min_leaf[v] = m;
    }
    let mut best: Option<SubstringAnswer> = None;
    let mut offer = |start: usize, prefix_len: usize, c: u32| {
        let a = if prefix_len == 0 {
            SubstringAnswer::extended(0, -1, c)
        } else {
            SubstringAnswer::extended(start, (start + prefix_len) as i64 - 1, c)
        };
        best = better(best, Some(a));
    };
    for v in 0..t.len() {
        let node = t.node(v);
        if node.leaf.is_some() {
            continue;
        }
        let d = node.sd;
        // first letters of real children, ascending
        let firsts: Vec<u32> = node
            .children
            .iter()
            .map(|&c| st.text[min_leaf[c] + d])
            .filter(|&c| c != sigma)
            .collect();
        if (firsts.len() as u32) < sigma {
            let missing = (0..sigma).zip(firsts.iter().copied().chain(std::iter::repeat(u32::MAX))).find(|(a, b)| a != b).unwrap().0;
            offer(min_leaf[v], d, missing);
        }
        for &w in &node.children {
            let j = min_leaf[w];
            let wd = t.node(w).sd;
            if d + 1 < wd && j + d + 1 <= n {
                let next = st.text[j + d + 1];
                let c = if next == 0 { 1 } else { 0 };
                if c < sigma || next == sigma {
                    offer(j, d + 1, if next == sigma { 0 } else { c });
                }
            }
        }
    }
    best.expect("an absent string always exists")
}

/// A shortest substring of `s1` that does not occur in `s2`, leftmost among the shortest.
pub fn ses_linear(s1: &PackedString, s2: &PackedString) -> Option<SubstringAnswer> {
    assert!(!s1.is_empty(), "exclusive of an empty string");
    let sep = s1.sigma().max(s2.sigma());
    let mut text = s1.to_vec();
    let n1 = text.len();
    text.push(sep);
    text.extend(s2.to_vec());
    let sa = suffix_array(&text);
    let lcp = lcp_array(&text, &sa);
    let n = text.len();
    let is_s2 = |i: usize| i > n1;
    let mut m = vec![0usize; n1];
    // nearest s2 suffix to the left and right in suffix order
    let mut run = 0usize;
    let mut seen = false;
    for r in 0..n {
        if r > 0 {
            run = run.min(lcp[r]);
        }
        let i = sa[r];
        if is_s2(i) {
            run = usize::MAX;
            seen = true;
        } else if i < n1 && seen {
            m[i] = m[i].max(run);
        }
    }
    let mut run = usize::MAX;
    let mut seen = false;
    for r in (0..n).rev() {
        let i = sa[r];
        if is_s2(i) {
            run = usize::MAX;
            seen = true;
        } else if i < n1 && seen {
            m[i] = m[i].max(run);
        }
        run = run.min(lcp[r]);
    }
    let mut best = None;
    for (i, &mi) in m.iter().enumerate() {
        if i + mi < n1 {
            best = better(best, Some(SubstringAnswer::fragment(i, mi + 1)));
        }
    }
    best
}

/// Number of occurrences of `pat` in `text`.
pub fn count_occurrences(text: &[u32], pat: &[u32]) -> usize {
    if pat.is_empty() {
        return text.len() + 1;
    }
    let fail = prefix_function(pat);
    let mut k = 0;
    let mut count = 0;
    for &c in text {
        while k > 0 && pat[k] != c {
            k = fail[k - 1];
        }
        if pat[k] == c {
            k += 1;
        }
        if k == pat.len() {
            count += 1;
            k = fail[k - 1];
        }
    }
    count
}

pub fn occurs(text: &[u32], pat: &[u32]) -> bool {
    count_occurrences(text, pat) > 0
}

/// Knuth-Morris-Pratt failure function.
pub fn prefix_function(p: &[u32]) -> Vec<usize> {
    let mut f = vec![0usize; p.len()];
    for i in 1..p.len() {
        let mut k = f[i - 1];
        while k > 0 && p[i] != p[k] {
            k = f[k - 1];
        }
        if p[i] == p[k] {
            k += 1;
        }
        f[i] = k;
    }
    f
}

/// Smallest period of `p` (its length when empty).
pub fn period(p: &[u32]) -> usize {
    if p.is_empty() {
        return 0;
    }
    p.len() - prefix_function(p)[p.len() - 1]
}

// equal-content windows share an id; ids of length k derive from length k-1
struct Classes {
    ids: HashMap<(u32, u32), u32>,
}

impl Classes {
    fn new() -> Classes {
        Classes { ids: HashMap::new() }
    }

    fn step(&mut self, prev: &[u32], text: &[u32], k: usize) -> Vec<u32> {
        let count = (text.len() + 1).saturating_sub(k);
        let mut out = Vec::with_capacity(count);
        for i in 0..count {
            let key = (prev[i], text[i + k - 1]);
            let next = self.ids.len() as u32;
            out.push(*self.ids.entry(key).or_insert(next));
        }
        out
    }
}

fn check_cap(n: usize, cap: usize) -> Result<(), BaselineError> {
    if n > cap {
        return Err(BaselineError::CapExceeded { n, cap });
    }
    Ok(())
}

pub fn brute_sus(s: &[u32]) -> Result<usize, BaselineError> {
    brute_sus_capped(s, DEFAULT_CAP)
}

pub fn brute_sus_capped(s: &[u32], cap: usize) -> Result<usize, BaselineError> {
    check_cap(s.len(), cap)?;
    if s.is_empty() {
        return Err(BaselineError::EmptyInput);
    }
    let mut classes = Classes::new();
    let mut cur = vec![u32::MAX; s.len() + 1];
    for k in 1..=s.len() {
        cur = classes.step(&cur, s, k);
        let mut count: HashMap<u32, u32> = HashMap::new();
        for &c in &cur {
            *count.entry(c).or_default() += 1;
        }
        if count.values().any(|&v| v == 1) {
            return Ok(k);
        }
    }
    unreachable!("the whole string is unique")
}

pub fn brute_sas(s: &[u32], sigma: u32) -> Result<usize, BaselineError> {
    check_cap(s.len(), DEFAULT_CAP)?;
    let sigma = sigma.max(1) as u128;
    let mut classes = Classes::new();
    let mut cur = vec![u32::MAX; s.len() + 1];
    for k in 1..=s.len() + 1 {
        let distinct = if k <= s.len() {
            cur = classes.step(&cur, s, k);
            let mut d = cur.clone();
            d.sort_unstable();
            d.dedup();
            d.len() as u128
        } else {
            0
        };
        let total = sigma.checked_pow(k as u32).unwrap_or(u128::MAX);
        if distinct < total {
            return Ok(k);
        }
    }
    unreachable!()
}

pub fn brute_exclusive(s1: &[u32], s2: &[u32]) -> Result<Option<usize>, BaselineError> {
    check_cap(s1.len() + s2.len(), DEFAULT_CAP)?;
    let mut classes = Classes::new();
    let mut c1 = vec![u32::MAX; s1.len() + 1];
    let mut c2 = vec![u32::MAX; s2.len() + 1];
    for k in 1..=s1.len() {
        c1 = classes.step(&c1, s1, k);
        c2 = if k <= s2.len() { classes.step(&c2, s2, k) } else { Vec::new() };
        let present: std::collections::HashSet<u32> = c2.iter().copied().collect();
        if c1.iter().any(|c| !present.contains(c)) {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dna(s: &str) -> PackedString {
        let v: Vec<u32> = s
            .bytes()
            .map(|b| match b {
                b'a' => 0,
                b'c' => 1,
                b'g' => 2,
                _ => 3,
            })
            .collect();
        PackedString::pack(&v, 4).unwrap()
    }

    #[test]
    fn intro_string() {
        let s = dna("gcattgcgtaggt");
        let a = sus_linear(&s);
        assert_eq!(a.length, 2);
        assert_eq!(count_occurrences(&s.to_vec(), &a.letters(&s.to_vec())), 1);
        assert!(sus_all(&s).iter().any(|a| a.start == 9));
        let b = sas_linear(&s, 4);
        assert_eq!(b.length, 2);
        assert!(!occurs(&s.to_vec(), &b.letters(&s.to_vec())));
    }

    #[test]
    fn small_cases() {
        let a = sus_linear(&PackedString::pack(&[0], 1).unwrap());
        assert_eq!((a.start, a.end_inclusive), (0, 0));
        let b = sas_linear(&PackedString::pack(&[0, 1], 3).unwrap(), 3);
        assert_eq!(b, SubstringAnswer::extended(0, -1, 2));
        let u = sas_linear(&PackedString::pack(&[0; 5], 1).unwrap(), 1);
        assert_eq!(u, SubstringAnswer::extended(0, 4, 0));
        assert_eq!(u.length, 6);
    }

    #[test]
    fn brute_examples() {
        assert_eq!(brute_sus(&[0; 4]).unwrap(), 4);
        assert_eq!(brute_sas(&[0; 4], 2).unwrap(), 1);
        assert_eq!(brute_exclusive(&[0, 1, 2], &[25, 25, 25]).unwrap(), Some(1));
        assert_eq!(brute_exclusive(&[0, 1], &[2, 0, 1]).unwrap(), None);
        assert!(matches!(brute_sus(&vec![0; 5000]), Err(BaselineError::CapExceeded { .. })));
    }

    #[test]
    fn ses_examples() {
        let p = |v: &[u32]| PackedString::pack(v, 4).unwrap();
        assert_eq!(ses_linear(&p(&[0, 1]), &p(&[2, 0, 1])), None);
        assert_eq!(ses_linear(&p(&[0, 1, 2]), &p(&[0, 1, 3])).unwrap(), SubstringAnswer::fragment(2, 1));
    }

    #[test]
    fn periods() {
        assert_eq!(period(&[0, 1, 0, 1, 0]), 2);
        assert_eq!(period(&[0, 0, 1]), 3);
        assert_eq!(count_occurrences(&[0, 0, 0], &[0, 0]), 2);
    }
}
