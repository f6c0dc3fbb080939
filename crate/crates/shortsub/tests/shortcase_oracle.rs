mod common;

use common::*;
use rand::Rng;
use shortsub::packed::PackedString;
use shortsub::shortcase::*;

#[test]
fn short_sus_matches_restricted_oracle() {
    let mut r = rng(41);
    let mut hits = 0;
    for trial in 0..600 {
        let n = r.gen_range(1..1000);
        let sigma = [2, 3, 4, 26][trial % 4];
        let s = if trial % 2 == 0 { uniform(&mut r, n, sigma) } else { structured(&mut r, n, sigma) };
        let ell = r.gen_range(1..=6);
        let p = PackedString::pack(&s, sigma).unwrap();
        let got = short_case_sus(&p, ell).map(|a| (a.length, a.start));
        assert_eq!(got, restricted_sus(&s, 1, ell, |_, _| true), "ell {ell} s {s:?}");
        hits += got.is_some() as usize;
    }
    assert!(hits > 100);
}

#[test]
fn short_exclusive_matches_restricted_oracle() {
    let mut r = rng(42);
    let mut hits = 0;
    for trial in 0..600 {
        let sigma = [2, 3, 4][trial % 3];
        let n1 = r.gen_range(1..300);
        let n2 = r.gen_range(0..600);
        let s1 = structured(&mut r, n1, sigma);
        let s2 = if trial % 2 == 0 { uniform(&mut r, n2, sigma) } else { structured(&mut r, n2, sigma) };
        let ell = r.gen_range(1..=6);
        let p1 = PackedString::pack(&s1, sigma).unwrap();
        let p2 = PackedString::pack(&s2, sigma).unwrap();
        let got = short_case_exclusive(&p1, &p2, ell);
        let want = restricted_ses(&s1, &s2, 1, ell, |_, _| true);
        assert_eq!(got.map(|a| a.length), want.map(|w| w.0), "ell {ell}");
        if let Some(a) = got {
            hits += 1;
            assert_eq!(count(&s2, &s1[a.start..a.start + a.length]), 0);
        }
    }
    assert!(hits > 100);
}

#[test]
fn two_copies_preserve_capped_counts() {
    let mut r = rng(43);
    for _ in 0..100 {
        let n = r.gen_range(1..200);
        let s = structured(&mut r, n, 2);
        let ell = r.gen_range(1..=5);
        let sample = FragmentSample::new(&s, 2, ell, 2);
        for len in 1..=ell.min(n) {
            for j in 0..=n - len {
                let w = &s[j..j + len];
                let mut positions: Vec<usize> = sample
                    .fragments
                    .iter()
                    .flat_map(|&(a, b)| (a..b.saturating_sub(len - 1)).filter(|&q| &s[q..q + len] == w))
                    .collect();
                positions.sort();
                positions.dedup();
                assert_eq!(positions.len().min(2), count(&s, w).min(2));
            }
        }
    }
}

#[test]
fn large_ell_uses_slice_keys() {
    let mut r = rng(44);
    for _ in 0..40 {
        let s = structured(&mut r, 400, 26);
        let p = PackedString::pack(&s, 26).unwrap();
        let ell = 20;
        let got = short_case_sus(&p, ell).map(|a| (a.length, a.start));
        assert_eq!(got, restricted_sus(&s, 1, ell, |_, _| true));
    }
}
