//! Randomized self-test of the pipeline against brute-force oracles.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use shortsub::baseline::{brute_exclusive, brute_sas, brute_sus, count_occurrences};
use shortsub::orchestrator::{self, Overrides};
use shortsub::packed::PackedString;

#[derive(Debug, Clone, Default)]
pub struct Summary {
    pub trials: usize,
    pub passed: usize,
    pub failures: Vec<String>,
}

/// Random text of the given length: uniform, block repeats with noise, or unary.
pub fn random_text(rng: &mut ChaCha8Rng, n: usize, sigma: u32) -> Vec<u32> {
    match rng.gen_range(0..6) {
        0 => vec![rng.gen_range(0..sigma); n],
        1 | 2 => {
            let block: Vec<u32> = (0..rng.gen_range(1..=12)).map(|_| rng.gen_range(0..sigma)).collect();
            let mut v: Vec<u32> = block.iter().copied().cycle().take(n).collect();
            for _ in 0..rng.gen_range(0..=3) {
                let i = rng.gen_range(0..n);
                v[i] = rng.gen_range(0..sigma);
            }
            v
        }
        _ => (0..n).map(|_| rng.gen_range(0..sigma)).collect(),
    }
}

fn check(rng: &mut ChaCha8Rng, t: usize, max_n: usize) -> Result<(), String> {
    let ov = Overrides::default();
    let n = rng.gen_range(1..=max_n);
    let sigma = [2, 4, 26][t % 3];
    let s = random_text(rng, n, sigma);
    let p = PackedString::pack(&s, sigma).map_err(|e| e.to_string())?;
    let got = orchestrator::sus(&p, &ov).map_err(|e| e.to_string())?.answer;
    let want = brute_sus(&s).map_err(|e| e.to_string())?;
    if got.length != want || count_occurrences(&s, &got.letters(&s)) != 1 {
        return Err(format!("sus n={n} sigma={sigma}: got {} want {want}", got.length));
    }

    let sigma = [2, 4, 8][t % 3];
    let s = random_text(rng, n, sigma);
    let p = PackedString::pack(&s, sigma).map_err(|e| e.to_string())?;
    let got = orchestrator::sas(&p, sigma, &ov).map_err(|e| e.to_string())?.answer;
    let want = brute_sas(&s, sigma).map_err(|e| e.to_string())?;
    if got.length != want || count_occurrences(&s, &got.letters(&s)) != 0 {
        return Err(format!("sas n={n} sigma={sigma}: got {} want {want}", got.length));
    }

    let n2 = rng.gen_range(0..=max_n);
    let mut s2 = random_text(rng, n2.max(1), sigma);
    s2.truncate(n2);
    if rng.gen_bool(0.5) {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(a..=n);
        s2.extend_from_slice(&s[a..b]);
    }
    let p2 = PackedString::pack(&s2, sigma).map_err(|e| e.to_string())?;
    let got = orchestrator::exclusive(&p, &p2, &ov).map_err(|e| e.to_string())?;
    let want = brute_exclusive(&s, &s2).map_err(|e| e.to_string())?;
    let ok = match &got {
        Some(o) => Some(o.answer.length) == want && count_occurrences(&s2, &o.answer.letters(&s)) == 0,
        None => want.is_none(),
    };
    if !ok {
        return Err(format!("exclusive n1={n} n2={}: got {:?} want {want:?}", s2.len(), got.map(|o| o.answer.length)));
    }
    Ok(())
}

pub fn self_test(seed: u64, max_n: usize, trials: usize) -> Summary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut summary = Summary { trials, ..Summary::default() };
    for t in 0..trials {
        match check(&mut rng, t, max_n) {
            Ok(()) => summary.passed += 1,
            Err(e) => summary.failures.push(e),
        }
    }
    summary
}
