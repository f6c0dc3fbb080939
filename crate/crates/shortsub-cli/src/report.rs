//! JSON and TSV renderings of command results.

use crate::OutputFormat;
use serde::Serialize;
use shortsub::baseline::SubstringAnswer;
use shortsub::orchestrator::CaseThresholds;
use shortsub::packed::{Ingested, PackedString};
use std::collections::HashSet;
use std::io::{self, Write};

pub trait Render {
    fn render(&self, format: OutputFormat, out: &mut dyn Write) -> io::Result<()>;
}

/// Letters as hex: source bytes when the mapping covers them, otherwise raw codes.
pub fn letters_hex(letters: &[u32], mapping: &[u8]) -> String {
    if !mapping.is_empty() && letters.iter().all(|&c| (c as usize) < mapping.len()) {
        hex::encode(letters.iter().map(|&c| mapping[c as usize]).collect::<Vec<u8>>())
    } else if letters.iter().all(|&c| c < 256) {
        hex::encode(letters.iter().map(|&c| c as u8).collect::<Vec<u8>>())
    } else {
        hex::encode(letters.iter().flat_map(|c| c.to_be_bytes()).collect::<Vec<u8>>())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AnswerRecord {
    pub kind: &'static str,
    pub start: Option<usize>,
    /// inclusive; `start - 1` when only the extension letter is present
    pub end: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extension_letter: Option<u32>,
    pub length: Option<usize>,
    /// null when the rescan was skipped
    pub verified: Option<bool>,
    pub case_used: Option<&'static str>,
    pub thresholds: CaseThresholds,
    pub sigma: u32,
    pub substring_hex: Option<String>,
    #[serde(skip)]
    answer: Option<SubstringAnswer>,
}

impl AnswerRecord {
    pub fn new(kind: &'static str, a: SubstringAnswer, case_used: &'static str, thresholds: CaseThresholds, text: &[u32], mapping: &[u8], sigma: u32) -> AnswerRecord {
        AnswerRecord {
            kind,
            start: Some(a.start),
            end: Some(a.end_inclusive),
            extension_letter: a.extension_letter,
            length: Some(a.length),
            verified: None,
            case_used: Some(case_used),
            thresholds,
            sigma,
            substring_hex: Some(letters_hex(&a.letters(text), mapping)),
            answer: Some(a),
        }
    }

    pub fn none(kind: &'static str, thresholds: CaseThresholds, sigma: u32) -> AnswerRecord {
        AnswerRecord {
            kind,
            start: None,
            end: None,
            extension_letter: None,
            length: None,
            verified: None,
            case_used: None,
            thresholds,
            sigma,
            substring_hex: None,
            answer: None,
        }
    }

    pub fn letters(&self, text: &[u32]) -> Vec<u32> {
        self.answer.map(|a| a.letters(text)).unwrap_or_default()
    }
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), |x| x.to_string())
}

impl Render for Vec<AnswerRecord> {
    fn render(&self, format: OutputFormat, out: &mut dyn Write) -> io::Result<()> {
        match format {
            OutputFormat::Json => {
                for r in self {
                    writeln!(out, "{}", serde_json::to_string(r).expect("plain data"))?;
                }
            }
            OutputFormat::Tsv => {
                writeln!(out, "kind\tstart\tend\textension_letter\tlength\tverified\tcase_used\tsubstring_hex")?;
                for r in self {
                    writeln!(
                        out,
                        "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                        r.kind,
                        opt(&r.start),
                        opt(&r.end),
                        opt(&r.extension_letter),
                        opt(&r.length),
                        opt(&r.verified),
                        r.case_used.unwrap_or("-"),
                        r.substring_hex.as_deref().unwrap_or("-")
                    )?;
                }
            }
        }
        Ok(())
    }
}

/// Digits and lowercase letters for small alphabets, comma-separated codes otherwise.
pub fn letters_text(letters: &[u32], sigma: u32) -> String {
    if sigma <= 36 {
        letters.iter().map(|&c| char::from_digit(c, 36).expect("below 36")).collect()
    } else {
        letters.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DeBruijnRecord {
    pub kind: &'static str,
    pub sigma: u32,
    pub k: usize,
    pub length: usize,
    pub full: bool,
    /// every k-mer at most once, and all of them when full
    pub kmers_verified: bool,
    pub sequence: String,
}

impl DeBruijnRecord {
    pub fn new(d: &PackedString, k: usize, full: bool) -> DeBruijnRecord {
        let v = d.to_vec();
        let mut seen = HashSet::new();
        let distinct = v.windows(k).all(|w| seen.insert(w));
        let total = (d.sigma() as u64).checked_pow(k as u32);
        let complete = !full || total == Some(seen.len() as u64);
        DeBruijnRecord {
            kind: "debruijn",
            sigma: d.sigma(),
            k,
            length: v.len(),
            full,
            kmers_verified: distinct && complete,
            sequence: letters_text(&v, d.sigma()),
        }
    }
}

impl Render for DeBruijnRecord {
    fn render(&self, format: OutputFormat, out: &mut dyn Write) -> io::Result<()> {
        match format {
            OutputFormat::Json => writeln!(out, "{}", serde_json::to_string(self).expect("plain data")),
            OutputFormat::Tsv => {
                writeln!(out, "sigma\tk\tlength\tkmers_verified\tsequence")?;
                writeln!(out, "{}\t{}\t{}\t{}\t{}", self.sigma, self.k, self.length, self.kmers_verified, self.sequence)
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Span {
    pub start: usize,
    pub end: i64,
    pub length: usize,
    pub substring_hex: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct BitSpan {
    pub start: usize,
    pub end: i64,
    pub length: usize,
    pub bits: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct BinaryRecord {
    pub kind: &'static str,
    pub k: usize,
    pub length: usize,
    pub bits: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub binary_sus: Option<BitSpan>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mapped: Option<Span>,
}

impl BinaryRecord {
    pub fn new(bin: &PackedString, k: usize) -> BinaryRecord {
        BinaryRecord { kind: "to-binary", k, length: bin.len(), bits: letters_text(&bin.to_vec(), 2), binary_sus: None, mapped: None }
    }

    pub fn attach(&mut self, binary: SubstringAnswer, bits: &[u32], back: SubstringAnswer, source: &Ingested) {
        let bits = letters_text(&binary.letters(bits), 2);
        self.binary_sus = Some(BitSpan { start: binary.start, end: binary.end_inclusive, length: binary.length, bits });
        let text = source.string.to_vec();
        let substring_hex = letters_hex(&back.letters(&text), &source.mapping);
        self.mapped = Some(Span { start: back.start, end: back.end_inclusive, length: back.length, substring_hex });
    }
}

impl Render for BinaryRecord {
    fn render(&self, format: OutputFormat, out: &mut dyn Write) -> io::Result<()> {
        match format {
            OutputFormat::Json => writeln!(out, "{}", serde_json::to_string(self).expect("plain data")),
            OutputFormat::Tsv => {
                writeln!(out, "k\tlength\tbits\tbinary_sus\tmapped_start\tmapped_end\tmapped_hex")?;
                let b = self.binary_sus.as_ref();
                let m = self.mapped.as_ref();
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    self.k,
                    self.length,
                    self.bits,
                    b.map_or("-", |s| s.bits.as_str()),
                    opt(&m.map(|s| s.start)),
                    opt(&m.map(|s| s.end)),
                    m.map_or("-", |s| s.substring_hex.as_str())
                )
            }
        }
    }
}
