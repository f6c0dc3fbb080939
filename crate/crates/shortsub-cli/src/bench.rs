//! Timing table: packed access, LCE queries, and pipeline against baseline.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use shortsub::baseline::{count_occurrences, sas_linear, sus_linear, SubstringAnswer};
use shortsub::orchestrator::{self, Overrides};
use shortsub::packed::{Fragment, Lce, PackedString};
use std::time::Instant;

const PROBES: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub sigma: u32,
    pub op: &'static str,
    pub seconds: f64,
    /// operations (or letters) per second
    pub throughput: f64,
    pub answer_length: Option<usize>,
    pub verified: Option<bool>,
    /// pipeline time divided by baseline time
    pub ratio: Option<f64>,
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let t = Instant::now();
    let out = f();
    (out, t.elapsed().as_secs_f64().max(1e-9))
}

fn row(n: usize, sigma: u32, op: &'static str, seconds: f64, units: usize) -> BenchRow {
    BenchRow { n, sigma, op, seconds, throughput: units as f64 / seconds, answer_length: None, verified: None, ratio: None }
}

pub fn bench(sizes: &[usize], sigma: u32, seed: u64) -> Vec<BenchRow> {
    let mut rows = Vec::new();
    for &n in sizes {
        let n = n.max(1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ n as u64);
        let text: Vec<u32> = (0..n).map(|_| rng.gen_range(0..sigma)).collect();
        let s = PackedString::pack(&text, sigma).expect("letters below sigma");

        let frags: Vec<Fragment> = (0..PROBES)
            .map(|_| {
                let a = rng.gen_range(0..n);
                Fragment::new(a, (a + 64).min(n))
            })
            .collect();
        let (sum, secs) = timed(|| frags.iter().map(|&f| s.extract(f).expect("in range").len()).sum::<usize>());
        rows.push(row(n, sigma, "packed_extract", secs, sum));

        let (lce, secs) = timed(|| Lce::new(&text));
        rows.push(row(n, sigma, "lce_build", secs, n));
        let pairs: Vec<(usize, usize)> = (0..PROBES).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
        let (_, secs) = timed(|| pairs.iter().map(|&(i, j)| lce.lce(i, j)).max());
        rows.push(row(n, sigma, "lce_query", secs, PROBES));
        drop(lce);

        let unique = |a: &SubstringAnswer| count_occurrences(&text, &a.letters(&text)) == 1;
        let absent = |a: &SubstringAnswer| count_occurrences(&text, &a.letters(&text)) == 0;
        let (base, base_secs) = timed(|| sus_linear(&s));
        let (pipe, pipe_secs) = timed(|| orchestrator::sus(&s, &Overrides::default()).expect("nonempty").answer);
        rows.push(answer_row(row(n, sigma, "sus_baseline", base_secs, n), &base, unique(&base), None));
        rows.push(answer_row(row(n, sigma, "sus_pipeline", pipe_secs, n), &pipe, unique(&pipe) && pipe == base, Some(pipe_secs / base_secs)));

        let (base, base_secs) = timed(|| sas_linear(&s, sigma));
        let (pipe, pipe_secs) = timed(|| orchestrator::sas(&s, sigma, &Overrides::default()).expect("nonempty").answer);
        rows.push(answer_row(row(n, sigma, "sas_baseline", base_secs, n), &base, absent(&base), None));
        let ok = absent(&pipe) && pipe.length == base.length;
        rows.push(answer_row(row(n, sigma, "sas_pipeline", pipe_secs, n), &pipe, ok, Some(pipe_secs / base_secs)));
    }
    rows
}

fn answer_row(mut r: BenchRow, a: &SubstringAnswer, ok: bool, ratio: Option<f64>) -> BenchRow {
    r.answer_length = Some(a.length);
    r.verified = Some(ok);
    r.ratio = ratio;
    r
}

pub fn to_tsv(rows: &[BenchRow]) -> String {
    let mut out = String::from("n\tsigma\top\tseconds\tthroughput\tanswer_length\tverified\tratio_to_baseline\n");
    for r in rows {
        let dash = || "-".to_string();
        out.push_str(&format!(
            "{}\t{}\t{}\t{:.6}\t{:.1}\t{}\t{}\t{}\n",
            r.n,
            r.sigma,
            r.op,
            r.seconds,
            r.throughput,
            r.answer_length.map_or_else(dash, |x| x.to_string()),
            r.verified.map_or_else(dash, |x| x.to_string()),
            r.ratio.map_or_else(dash, |x| format!("{x:.3}"))
        ));
    }
    out
}
