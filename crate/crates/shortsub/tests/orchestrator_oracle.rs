mod common;

use common::*;
use rand::Rng;
use shortsub::baseline::{brute_exclusive, brute_sas, brute_sus, sus_linear};
use shortsub::orchestrator::*;
use shortsub::packed::PackedString;
use std::collections::HashMap;

fn corpus(r: &mut TestRng, trial: usize, max_n: usize, sigma: u32) -> Vec<u32> {
    let n = r.gen_range(1..=max_n);
    match trial % 7 {
        _ if sigma == 1 => vec![0; n],
        0 => vec![0; n],
        1 => fibonacci(n),
        2 => thue_morse(n),
        3 | 4 => structured(r, n, sigma),
        _ => uniform(r, n, sigma),
    }
}

#[test]
fn sus_matches_brute_and_baseline() {
    let mut r = rng(61);
    for trial in 0..300 {
        let sigma = [2, 4, 26][trial % 3];
        let s = corpus(&mut r, trial, 2000, sigma);
        let p = PackedString::pack(&s, sigma).unwrap();
        let o = sus(&p, &Overrides::default()).unwrap();
        assert_eq!(o.answer.length, brute_sus(&s).unwrap());
        assert_eq!(o.answer, sus_linear(&p));
        assert_eq!(count(&s, &o.answer.letters(&s)), 1);
    }
}

#[test]
fn injected_thresholds_stay_exact() {
    let mut r = rng(62);
    for trial in 0..400 {
        let sigma = [2, 3, 4][trial % 3];
        let s = corpus(&mut r, trial, 600, sigma);
        let p = PackedString::pack(&s, sigma).unwrap();
        let tau = r.gen_range(2..=5);
        let th = CaseThresholds {
            ell_short: r.gen_range(0..3 * tau + 2),
            tau_medium: tau,
            beta_medium: r.gen_range(3 * tau..60),
            tau_long: r.gen_range(1..=tau),
        };
        let o = sus_with(&p, &th).unwrap();
        assert_eq!(o.answer, sus_linear(&p), "{th:?}");
        assert_eq!(o.uncovered, th.uncovered(s.len()));
    }
}

#[test]
fn fully_covered_thresholds_skip_the_baseline() {
    let mut r = rng(63);
    let mut non_baseline = 0;
    for trial in 0..300 {
        let sigma = [2, 4][trial % 2];
        let s = corpus(&mut r, trial, 500, sigma);
        let p = PackedString::pack(&s, sigma).unwrap();
        let th = CaseThresholds { ell_short: 5, tau_medium: 2, beta_medium: 40, tau_long: 2 };
        let o = sus_with(&p, &th).unwrap();
        assert!(o.uncovered.is_empty());
        assert_ne!(o.case_used, CaseUsed::Baseline);
        assert_eq!(o.answer, sus_linear(&p));
        non_baseline += 1;
        let e = exclusive_with(&p, &PackedString::pack(&uniform(&mut r, 300, sigma), sigma).unwrap(), &th).unwrap();
        if let Some(e) = e {
            assert_ne!(e.case_used, CaseUsed::Baseline);
        }
    }
    assert_eq!(non_baseline, 300);
}

#[test]
fn exclusive_matches_brute() {
    let mut r = rng(64);
    let mut nones = 0;
    for trial in 0..300 {
        let sigma = [2, 3, 4][trial % 3];
        let n1 = r.gen_range(1..=600);
        let s1 = structured(&mut r, n1, sigma);
        let n2 = r.gen_range(0..=1400 - n1.min(1400));
        let mut s2 = uniform(&mut r, n2, sigma);
        if trial % 4 == 0 {
            let at = r.gen_range(0..=s2.len());
            s2.splice(at..at, s1.iter().copied());
        } else if trial % 4 == 1 {
            let a = r.gen_range(0..n1);
            s2.extend_from_slice(&s1[a..]);
        }
        let p1 = PackedString::pack(&s1, sigma).unwrap();
        let p2 = PackedString::pack(&s2, sigma).unwrap();
        let got = exclusive(&p1, &p2, &Overrides::default()).unwrap();
        let want = brute_exclusive(&s1, &s2).unwrap();
        assert_eq!(got.as_ref().map(|o| o.answer.length), want);
        assert_eq!(got.is_none(), count(&s2, &s1) > 0);
        if let Some(o) = got {
            assert_eq!(count(&s2, &o.answer.letters(&s1)), 0);
        } else {
            nones += 1;
        }
    }
    assert!(nones >= 70);
}

#[test]
fn sas_matches_brute() {
    let mut r = rng(65);
    for trial in 0..300 {
        let sigma = [2, 4, 8][trial % 3];
        let s = corpus(&mut r, trial, 2000, sigma);
        let p = PackedString::pack(&s, sigma).unwrap();
        let o = sas(&p, sigma, &Overrides::default()).unwrap();
        let w = o.answer.letters(&s);
        assert_eq!(w.len(), brute_sas(&s, sigma).unwrap());
        assert!(w.len() <= sas_bound(s.len(), sigma));
        assert_eq!(count(&s, &w), 0);
        assert!(w.iter().all(|&c| c < sigma));
    }
}

#[test]
fn sas_of_a_de_bruijn_sequence() {
    let d = de_bruijn(DeBruijnSpec { sigma: 2, k: 2, prefix: None }).unwrap();
    assert_eq!(sas(&d, 2, &Overrides::default()).unwrap().answer.length, 3);
    let s = PackedString::pack(&[0; 9], 1).unwrap();
    assert_eq!(sas(&s, 1, &Overrides::default()).unwrap().answer.length, 10);
}

#[test]
fn de_bruijn_holds_every_kmer_once() {
    for sigma in 2..=5u32 {
        for k in 1..=8 {
            if full_length(sigma, k) > 1 << 14 {
                continue;
            }
            let d = de_bruijn(DeBruijnSpec { sigma, k, prefix: None }).unwrap().to_vec();
            assert_eq!(d.len() as u64, full_length(sigma, k));
            let mut seen: HashMap<&[u32], usize> = HashMap::new();
            for w in d.windows(k) {
                *seen.entry(w).or_default() += 1;
            }
            assert_eq!(seen.len() as u64, full_length(sigma, k) - k as u64 + 1);
            assert!(seen.values().all(|&c| c == 1));
            // letter multiset: sigma^(k-1) each, plus k-1 zeros from the tail
            let per = (sigma as usize).pow(k as u32 - 1);
            for c in 0..sigma {
                let want = per + if c == 0 { k - 1 } else { 0 };
                assert_eq!(d.iter().filter(|&&x| x == c).count(), want);
            }
        }
    }
}

#[test]
fn de_bruijn_prefix_agrees_with_full_build() {
    let mut r = rng(66);
    for _ in 0..100 {
        let sigma = r.gen_range(2..=6);
        let k = r.gen_range(1..=6);
        let full = de_bruijn(DeBruijnSpec { sigma, k, prefix: None }).unwrap().to_vec();
        let l = r.gen_range(0..=full.len());
        assert_eq!(de_bruijn(DeBruijnSpec { sigma, k, prefix: Some(l) }).unwrap().to_vec(), full[..l]);
    }
}

#[test]
fn binary_reduction_keeps_sus_length() {
    let mut r = rng(67);
    for trial in 0..500 {
        let sigma = [1, 2, 3, 4, 7, 26][trial % 6];
        let s = corpus(&mut r, trial, 300, sigma);
        let p = PackedString::pack(&s, sigma).unwrap();
        let (bin, map) = to_binary(&p);
        assert_eq!(bin.len(), (2 * s.len() + 1) * map.k);
        let b = bin.to_vec();
        let a = sus_linear(&bin);
        let back = map.map_back(&b, &a).unwrap_or_else(|| panic!("s {s:?} a {a:?}"));
        let want = sus_linear(&p);
        assert_eq!(back.length, want.length);
        assert_eq!(count(&s, &back.letters(&s)), 1);
    }
}

#[test]
fn uniqueness_transfers_through_the_encoding() {
    let mut r = rng(68);
    for trial in 0..200 {
        let sigma = [2, 3, 5][trial % 3];
        let n = r.gen_range(1..80);
        let s = structured(&mut r, n, sigma);
        let p = PackedString::pack(&s, sigma).unwrap();
        let (bin, map) = to_binary(&p);
        let b = bin.to_vec();
        for _ in 0..20 {
            let i = r.gen_range(0..s.len());
            let j = r.gen_range(i + 1..=s.len());
            let w = 2 * map.k;
            let image = &b[i * w..j * w];
            assert_eq!(count(&s, &s[i..j]) == 1, count(&b, image) == 1);
        }
    }
}
