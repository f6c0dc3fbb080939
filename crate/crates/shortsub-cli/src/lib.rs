//! Command-line front end: ingest strings, run the solvers, print JSON or TSV.

pub mod bench;
pub mod report;
pub mod verify;

use clap::{Args, Parser, Subcommand, ValueEnum};
use report::{AnswerRecord, Render};
use shortsub::baseline::{count_occurrences, sus_all};
use shortsub::orchestrator::{self, CaseThresholds, DeBruijnSpec, Overrides};
use shortsub::packed::{self, Format, Ingested, PackedString};
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Debug, Parser)]
#[command(name = "shortsub", version, about = "Shortest unique, absent and exclusive substrings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Shortest unique substring
    Sus {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
        /// report every shortest unique substring
        #[arg(long)]
        all: bool,
    },
    /// Shortest absent string over [0, sigma)
    Sas {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
        /// alphabet size; defaults to the ingested alphabet
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        sigma: Option<u32>,
    },
    /// Shortest substring of the first input absent from the second
    Exclusive {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// De Bruijn sequence of order k
    Debruijn {
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        sigma: u32,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=63))]
        k: u64,
        /// only the first PREFIX letters
        #[arg(long)]
        prefix: Option<usize>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        output: OutputFormat,
    },
    /// Binary encoding used to reduce SUS to a two-letter alphabet
    ToBinary {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = InputFormat::Raw)]
        format: InputFormat,
        /// also solve SUS on the encoding and map it back
        #[arg(long)]
        sus: bool,
        /// write the encoding in the packed binary format
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        output: OutputFormat,
    },
    /// Randomized self-test against brute-force oracles
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// maximum string length
        #[arg(long, default_value_t = 500, value_parser = clap::value_parser!(u64).range(1..=4096))]
        n: u64,
        #[arg(long, default_value_t = 50)]
        trials: usize,
    },
    /// Timing table for the pipeline and the baseline
    Bench {
        /// string lengths, comma separated
        #[arg(long, value_delimiter = ',', default_values_t = vec![1 << 16, 1 << 18, 1 << 20])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(2..))]
        sigma: u32,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// TSV destination, stdout when absent
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    #[arg(long, value_enum, default_value_t = InputFormat::Raw)]
    pub format: InputFormat,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub output: OutputFormat,
    /// skip the witness rescan
    #[arg(long)]
    pub no_verify: bool,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub ell_short: Option<u64>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub tau_medium: Option<u64>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub beta_medium: Option<u64>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub tau_long: Option<u64>,
}

impl Common {
    pub fn overrides(&self) -> Overrides {
        let f = |v: Option<u64>| v.map(|x| x as usize);
        Overrides {
            ell_short: f(self.ell_short),
            tau_medium: f(self.tau_medium),
            beta_medium: f(self.beta_medium),
            tau_long: f(self.tau_long),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Raw,
    Fasta,
    Packed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Tsv,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// bad input, exit code 2
    Input { kind: &'static str, detail: String },
    /// a computed answer failed its check, exit code 3
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input { .. } => 2,
            CliError::Invariant(_) => 3,
        }
    }

    fn input(kind: &'static str, detail: impl fmt::Display) -> CliError {
        CliError::Input { kind, detail: detail.to_string() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input { kind, detail } => write!(f, "error: {kind}: {detail}"),
            CliError::Invariant(detail) => write!(f, "error: invariant: {detail}"),
        }
    }
}

impl From<packed::PackedError> for CliError {
    fn from(e: packed::PackedError) -> CliError {
        use packed::PackedError::*;
        let kind = match e {
            EmptyInput => "empty-input",
            ParseError { .. } => "parse",
            Io(_) => "io",
            LetterOutOfRange { .. } | IndexOutOfBounds { .. } => "letter",
        };
        CliError::input(kind, e)
    }
}

impl From<orchestrator::OrchestratorError> for CliError {
    fn from(e: orchestrator::OrchestratorError) -> CliError {
        use orchestrator::OrchestratorError::*;
        let kind = match e {
            EmptyString => "empty-input",
            LetterOutsideAlphabet { .. } => "letter",
            DeBruijn(_) => "argument",
        };
        CliError::input(kind, e)
    }
}

impl From<orchestrator::DeBruijnError> for CliError {
    fn from(e: orchestrator::DeBruijnError) -> CliError {
        CliError::input("argument", e)
    }
}

pub fn read_input(path: &Path, format: InputFormat) -> Result<Ingested, CliError> {
    let bytes = if path.as_os_str() == "-" {
        let mut buf = Vec::new();
        std::io::Read::read_to_end(&mut std::io::stdin(), &mut buf).map_err(|e| CliError::input("io", e))?;
        buf
    } else {
        std::fs::read(path).map_err(|e| CliError::input("io", format!("{}: {e}", path.display())))?
    };
    let format = match format {
        InputFormat::Raw => Format::RawBytes,
        InputFormat::Fasta => Format::Fasta,
        InputFormat::Packed => Format::PackedBinary,
    };
    Ok(packed::ingest_bytes(&bytes, format)?)
}

/// Runs one command, printing results to stdout and errors to stderr.
pub fn run(cli: &Cli) -> i32 {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match execute(cli, &mut out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = out.flush();
            eprintln!("{e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::input("io", e);
    match &cli.command {
        Command::Sus { input, common, all } => {
            let ing = read_input(input, common.format)?;
            let s = &ing.string;
            let text = s.to_vec();
            let record = |a, case, th| AnswerRecord::new("sus", a, case, th, &text, &ing.mapping, s.sigma());
            let mut records: Vec<AnswerRecord> = if *all {
                let th = CaseThresholds::resolve(s.len(), s.sigma(), &common.overrides());
                sus_all(s).into_iter().map(|a| record(a, "baseline", th)).collect()
            } else {
                let o = orchestrator::sus(s, &common.overrides())?;
                vec![record(o.answer, o.case_used.as_str(), o.thresholds)]
            };
            for r in &mut records {
                if !common.no_verify {
                    let w = r.letters(&text);
                    r.verified = Some(count_occurrences(&text, &w) == 1);
                }
            }
            check_verified(&records)?;
            records.render(common.output, out).map_err(io)
        }
        Command::Sas { input, common, sigma } => {
            let ing = read_input(input, common.format)?;
            let s = &ing.string;
            let sigma = sigma.unwrap_or(s.sigma());
            let o = orchestrator::sas(s, sigma, &common.overrides())?;
            let text = s.to_vec();
            let mut r = AnswerRecord::new("sas", o.answer, o.case_used.as_str(), o.thresholds, &text, &ing.mapping, sigma);
            if !common.no_verify {
                let w = r.letters(&text);
                r.verified = Some(count_occurrences(&text, &w) == 0 && w.iter().all(|&c| c < sigma));
            }
            check_verified(std::slice::from_ref(&r))?;
            vec![r].render(common.output, out).map_err(io)
        }
        Command::Exclusive { first, second, common } => {
            let a = read_input(first, common.format)?;
            let b = read_input(second, common.format)?;
            let (s1, s2, ing) = joint_alphabet(&a, &b, common.format)?;
            let o = orchestrator::exclusive(&s1, &s2, &common.overrides())?;
            let (t1, t2) = (s1.to_vec(), s2.to_vec());
            let mut r = match o {
                Some(o) => AnswerRecord::new("exclusive", o.answer, o.case_used.as_str(), o.thresholds, &t1, &ing.mapping, s1.sigma()),
                None => {
                    let th = CaseThresholds::resolve(t1.len() + t2.len(), s1.sigma(), &common.overrides());
                    AnswerRecord::none("exclusive", th, s1.sigma())
                }
            };
            if !common.no_verify {
                r.verified = Some(match r.length {
                    Some(_) => count_occurrences(&t2, &r.letters(&t1)) == 0,
                    None => count_occurrences(&t2, &t1) > 0,
                });
            }
            check_verified(std::slice::from_ref(&r))?;
            vec![r].render(common.output, out).map_err(io)
        }
        Command::Debruijn { sigma, k, prefix, output } => {
            let d = orchestrator::de_bruijn(DeBruijnSpec { sigma: *sigma, k: *k as usize, prefix: *prefix })?;
            let rec = report::DeBruijnRecord::new(&d, *k as usize, prefix.is_none());
            if !rec.kmers_verified {
                return Err(CliError::Invariant("repeated k-mer in de Bruijn output".into()));
            }
            rec.render(*output, out).map_err(io)
        }
        Command::ToBinary { input, format, sus, out: dest, output } => {
            let ing = read_input(input, *format)?;
            let (bin, map) = orchestrator::to_binary(&ing.string);
            if let Some(path) = dest {
                std::fs::write(path, bin.to_packed_binary()).map_err(|e| CliError::input("io", format!("{}: {e}", path.display())))?;
            }
            let mut rec = report::BinaryRecord::new(&bin, map.k);
            if *sus {
                let bits = bin.to_vec();
                let a = shortsub::baseline::sus_linear(&bin);
                let back = map.map_back(&bits, &a).ok_or_else(|| CliError::Invariant("binary SUS holds no block".into()))?;
                let text = ing.string.to_vec();
                if count_occurrences(&text, &back.letters(&text)) != 1 {
                    return Err(CliError::Invariant("mapped binary SUS is not unique".into()));
                }
                rec.attach(a, &bits, back, &ing);
            }
            rec.render(*output, out).map_err(io)
        }
        Command::Verify { seed, n, trials } => {
            let summary = verify::self_test(*seed, *n as usize, *trials);
            writeln!(out, "{}/{} oracle matches", summary.passed, summary.trials).map_err(io)?;
            for line in &summary.failures {
                writeln!(out, "mismatch: {line}").map_err(io)?;
            }
            if summary.passed != summary.trials {
                return Err(CliError::Invariant(format!("{} oracle mismatches", summary.trials - summary.passed)));
            }
            Ok(())
        }
        Command::Bench { sizes, sigma, seed, out: dest } => {
            let rows = bench::bench(sizes, *sigma, *seed);
            let table = bench::to_tsv(&rows);
            match dest {
                Some(path) => std::fs::write(path, &table).map_err(|e| CliError::input("io", format!("{}: {e}", path.display())))?,
                None => out.write_all(table.as_bytes()).map_err(io)?,
            }
            if rows.iter().any(|r| r.verified == Some(false)) {
                return Err(CliError::Invariant("benchmark answer failed verification".into()));
            }
            Ok(())
        }
    }
}

fn check_verified(records: &[AnswerRecord]) -> Result<(), CliError> {
    match records.iter().find(|r| r.verified == Some(false)) {
        Some(r) => Err(CliError::Invariant(format!("{} witness failed the rescan", r.kind))),
        None => Ok(()),
    }
}

// raw and fasta inputs are remapped independently; bring both onto one alphabet
fn joint_alphabet(a: &Ingested, b: &Ingested, format: InputFormat) -> Result<(PackedString, PackedString, Ingested), CliError> {
    if format == InputFormat::Packed {
        let sigma = a.string.sigma().max(b.string.sigma());
        let ing = Ingested { string: a.string.widen(sigma), mapping: Vec::new() };
        return Ok((a.string.widen(sigma), b.string.widen(sigma), ing));
    }
    let mut mapping = a.mapping.clone();
    let mut code = [u32::MAX; 256];
    for (i, &c) in mapping.iter().enumerate() {
        code[c as usize] = i as u32;
    }
    let t2: Vec<u32> = b
        .string
        .to_vec()
        .into_iter()
        .map(|x| {
            let byte = b.mapping[x as usize];
            if code[byte as usize] == u32::MAX {
                code[byte as usize] = mapping.len() as u32;
                mapping.push(byte);
            }
            code[byte as usize]
        })
        .collect();
    let sigma = mapping.len() as u32;
    let s1 = a.string.widen(sigma);
    let s2 = PackedString::pack(&t2, sigma)?;
    Ok((s1.clone(), s2, Ingested { string: s1, mapping }))
}
