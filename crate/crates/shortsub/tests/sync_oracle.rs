mod common;

use common::*;
use rand::Rng;
use shortsub::sync::*;

#[test]
fn builds_verify_clean() {
    let mut r = rng(21);
    for trial in 0..200 {
        let tau = 1 + trial % 6;
        let n = 2 * tau + (trial * 17) % 400;
        let s = if trial % 2 == 0 { uniform(&mut r, n, 2 + (trial % 3) as u32) } else { structured(&mut r, n, 2) };
        let set = build_sync_letters(&s, tau).unwrap();
        assert_eq!(verify_sync(&s, &set).unwrap(), vec![], "tau {tau} s {s:?}");
        assert!(set.len() * tau < 70 * n);
    }
}

/// Removes the anchors of one non-periodic stretch, or adds one at a repeated window.
#[test]
fn mutations_always_reported() {
    let mut r = rng(22);
    let mut removals = 0;
    let mut additions = 0;
    for trial in 0..200 {
        let tau = 1 + trial % 5;
        let n = 3 * tau + 20 + (trial * 7) % 200;
        let s = structured(&mut r, n, 2);
        let set = build_sync_letters(&s, tau).unwrap();
        // density is checked for stretches starting at or before n + 1 - 3 tau
        let eligible: Vec<usize> = set.anchors.iter().copied().filter(|&a| a + 3 * tau <= n + 1).collect();
        if !eligible.is_empty() {
            let a = eligible[r.gen_range(0..eligible.len())];
            let mut m = set.clone();
            m.anchors.retain(|&x| x < a || x >= a + tau);
            let v = verify_sync(&s, &m).unwrap();
            assert!(!v.is_empty(), "removal unnoticed");
            removals += 1;
        }
        let repeated = (0..=n - 2 * tau).find(|&i| !set.contains(i) && (0..=n - 2 * tau).any(|j| j != i && s[i..i + 2 * tau] == s[j..j + 2 * tau]));
        if let Some(i) = repeated {
            let mut m = set.clone();
            m.anchors.push(i);
            m.anchors.sort();
            let v = verify_sync(&s, &m).unwrap();
            assert!(v.iter().any(|v| v.axiom == Axiom::Consistency));
            additions += 1;
        }
    }
    assert!(removals > 100 && additions > 50);
}

#[test]
fn repeated_aperiodic_blocks_share_offsets() {
    let mut r = rng(23);
    for trial in 0..100 {
        let tau = 2 + trial % 4;
        let extra = r.gen_range(0..10);
        let block = uniform(&mut r, 3 * tau + extra, 2);
        if 3 * naive_period(&block) <= tau {
            continue;
        }
        let pads: Vec<usize> = (0..3).map(|_| r.gen_range(0..30)).collect();
        let mut s = uniform(&mut r, pads[0], 2);
        let i = s.len();
        s.extend(&block);
        s.extend(uniform(&mut r, pads[1], 2));
        let j = s.len();
        s.extend(&block);
        s.extend(uniform(&mut r, pads[2], 2));
        let set = build_sync_letters(&s, tau).unwrap();
        for q in 0..=block.len() - 2 * tau {
            assert_eq!(set.contains(i + q), set.contains(j + q));
        }
    }
}

#[test]
fn short_input_is_vacuous() {
    let set = build_sync_letters(&[0, 1, 1], 2).unwrap();
    assert!(set.is_empty());
    assert!(verify_sync(&[0, 1, 1], &set).unwrap().is_empty());
}
