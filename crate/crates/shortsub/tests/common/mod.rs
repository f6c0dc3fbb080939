//! Quadratic oracles and input generators shared by the integration tests.
#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

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

pub fn count(text: &[u32], pat: &[u32]) -> usize {
    if pat.len() > text.len() {
        return 0;
    }
    (0..=text.len() - pat.len()).filter(|&i| &text[i..i + pat.len()] == pat).count()
}

pub fn naive_period(x: &[u32]) -> usize {
    (1..=x.len()).find(|&p| (p..x.len()).all(|i| x[i] == x[i - p])).unwrap_or(0)
}

/// For each start in `a`, the longest common extension with any other start of
/// `a` (when `b` is `None`) or any start of `b`.
fn max_extension(a: &[u32], b: Option<&[u32]>) -> Vec<usize> {
    let other = b.unwrap_or(a);
    let (n, m) = (a.len(), other.len());
    let mut best = vec![0usize; n];
    let mut next = vec![0usize; m + 1];
    for i in (0..n).rev() {
        let mut cur = vec![0usize; m + 1];
        for j in (0..m).rev() {
            if a[i] == other[j] {
                cur[j] = next[j + 1] + 1;
            }
            if b.is_some() || i != j {
                best[i] = best[i].max(cur[j]);
            }
        }
        next = cur;
    }
    best
}

/// Shortest (then leftmost) unique substring with length in `[lo, hi]` whose
/// period passes `keep`.
pub fn restricted_sus(s: &[u32], lo: usize, hi: usize, keep: impl Fn(usize, usize) -> bool) -> Option<(usize, usize)> {
    restricted(s, max_extension(s, None), lo, hi, keep)
}

/// Same for substrings of `s1` absent from `s2`.
pub fn restricted_ses(s1: &[u32], s2: &[u32], lo: usize, hi: usize, keep: impl Fn(usize, usize) -> bool) -> Option<(usize, usize)> {
    restricted(s1, max_extension(s1, Some(s2)), lo, hi, keep)
}

fn restricted(s: &[u32], m: Vec<usize>, lo: usize, hi: usize, keep: impl Fn(usize, usize) -> bool) -> Option<(usize, usize)> {
    let n = s.len();
    let mut best: Option<(usize, usize)> = None;
    for i in 0..n {
        let first = lo.max(m[i] + 1).max(1);
        let last = hi.min(n - i);
        if first > last {
            continue;
        }
        let f = prefix_function(&s[i..i + last]);
        for len in first..=last {
            if best.is_some_and(|(b, _)| len > b) {
                break;
            }
            let per = len - f[len - 1];
            if keep(len, per) {
                if best.is_none_or(|b| (len, i) < b) {
                    best = Some((len, i));
                }
                break;
            }
        }
    }
    best
}

/// Random letters mixed with powers of short roots, so that runs and repeats are common.
pub fn structured(rng: &mut TestRng, n: usize, sigma: u32) -> Vec<u32> {
    let mut v = Vec::with_capacity(n + 32);
    while v.len() < n {
        match rng.gen_range(0..4) {
            0 => {
                let k = rng.gen_range(1..8);
                v.extend((0..k).map(|_| rng.gen_range(0..sigma)));
            }
            1 | 2 => {
                let r = rng.gen_range(1..4);
                let root: Vec<u32> = (0..r).map(|_| rng.gen_range(0..sigma)).collect();
                let reps = rng.gen_range(2..16);
                for k in 0..reps * r + rng.gen_range(0..r) {
                    v.push(root[k % r]);
                }
            }
            _ => {
                // copy an earlier block to create repeats
                if v.len() > 4 {
                    let a = rng.gen_range(0..v.len() - 2);
                    let b = (a + rng.gen_range(2..24)).min(v.len());
                    let block = v[a..b].to_vec();
                    v.extend(block);
                }
            }
        }
    }
    v.truncate(n);
    v
}

pub fn uniform(rng: &mut TestRng, n: usize, sigma: u32) -> Vec<u32> {
    (0..n).map(|_| rng.gen_range(0..sigma)).collect()
}

pub fn fibonacci(n: usize) -> Vec<u32> {
    let (mut a, mut b) = (vec![0u32], vec![0u32, 1]);
    while b.len() < n {
        let c = [b.clone(), a].concat();
        a = b;
        b = c;
    }
    b.truncate(n);
    b
}

pub fn thue_morse(n: usize) -> Vec<u32> {
    (0..n).map(|i| (i as u32).count_ones() % 2).collect()
}

/// All maximal runs by the definition: (start, end_inclusive, period).
pub fn brute_runs(s: &[u32]) -> Vec<(usize, usize, usize)> {
    let n = s.len();
    let mut out = Vec::new();
    for i in 0..n {
        let f = prefix_function(&s[i..]);
        for j in i + 1..n {
            let len = j - i + 1;
            let p = len - f[len - 1];
            if 2 * p > len {
                continue;
            }
            let left_ok = i == 0 || s[i - 1] != s[i - 1 + p];
            let right_ok = j + 1 == n || s[j + 1] != s[j + 1 - p];
            if left_ok && right_ok {
                out.push((i, j, p));
            }
        }
    }
    out
}
