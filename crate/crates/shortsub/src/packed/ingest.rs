//! Reading strings from raw bytes, FASTA and the packed binary format.

use super::{Alphabet, PackedError, PackedString};
use std::io::Read;

const MAGIC: &[u8; 4] = b"PKSS";
const VERSION: u8 = 1;
const HEADER: usize = 4 + 1 + 8 + 4 + 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    RawBytes,
    Fasta,
    PackedBinary,
}

/// An ingested string plus the byte each code stands for (empty for packed input).
#[derive(Debug, Clone)]
pub struct Ingested {
    pub string: PackedString,
    pub mapping: Vec<u8>,
}

pub fn ingest<R: Read>(mut reader: R, format: Format) -> Result<Ingested, PackedError> {
    let mut buf = Vec::new();
    reader.read_to_end(&mut buf).map_err(|e| PackedError::Io(e.to_string()))?;
    ingest_bytes(&buf, format)
}

pub fn ingest_bytes(bytes: &[u8], format: Format) -> Result<Ingested, PackedError> {
    match format {
        Format::RawBytes => {
            if bytes.is_empty() {
                return Err(PackedError::EmptyInput);
            }
            Ok(remap(bytes, Vec::new()))
        }
        Format::Fasta => {
            let mut seq = Vec::new();
            for line in bytes.split(|&b| b == b'\n') {
                let line = line.strip_suffix(b"\r").unwrap_or(line);
                if line.first() == Some(&b'>') || line.first() == Some(&b';') {
                    continue;
                }
                seq.extend(line.iter().filter(|b| !b.is_ascii_whitespace()).map(|b| b.to_ascii_uppercase()));
            }
            if seq.is_empty() {
                return Err(PackedError::EmptyInput);
            }
            Ok(remap(&seq, b"ACGT".to_vec()))
        }
        Format::PackedBinary => {
            let string = deserialize(bytes)?;
            if string.is_empty() {
                return Err(PackedError::EmptyInput);
            }
            Ok(Ingested { string, mapping: Vec::new() })
        }
    }
}

// first-occurrence remap, with `seed` letters taking the lowest codes
fn remap(bytes: &[u8], seed: Vec<u8>) -> Ingested {
    let mut code = [u32::MAX; 256];
    let mut mapping = seed;
    for (i, &b) in mapping.iter().enumerate() {
        code[b as usize] = i as u32;
    }
    let mut letters = Vec::with_capacity(bytes.len());
    for &b in bytes {
        if code[b as usize] == u32::MAX {
            code[b as usize] = mapping.len() as u32;
            mapping.push(b);
        }
        letters.push(code[b as usize]);
    }
    let sigma = mapping.len() as u32;
    let string = PackedString::pack(&letters, sigma).expect("codes are dense");
    Ingested { string, mapping }
}

pub(super) fn serialize(s: &PackedString) -> Vec<u8> {
    let bits = s.alphabet().bits_per_letter() as usize;
    let nbytes = (s.len() * bits).div_ceil(8);
    let mut out = Vec::with_capacity(HEADER + nbytes + 4);
    out.extend_from_slice(MAGIC);
    out.push(VERSION);
    out.extend_from_slice(&(s.len() as u64).to_le_bytes());
    out.extend_from_slice(&s.sigma().to_le_bytes());
    out.push(bits as u8);
    let payload: Vec<u8> = s.words().iter().flat_map(|w| w.to_le_bytes()).take(nbytes).collect();
    out.extend_from_slice(&payload);
    out.extend_from_slice(&crc32fast::hash(&payload).to_le_bytes());
    out
}

pub(super) fn deserialize(bytes: &[u8]) -> Result<PackedString, PackedError> {
    let bad = |offset: usize, reason: &str| PackedError::ParseError { offset, reason: reason.to_string() };
    if bytes.len() < HEADER {
        return Err(bad(bytes.len(), "truncated header"));
    }
    if &bytes[0..4] != MAGIC {
        return Err(bad(0, "bad magic"));
    }
    if bytes[4] != VERSION {
        return Err(bad(4, "unsupported version"));
    }
    let len = u64::from_le_bytes(bytes[5..13].try_into().unwrap()) as usize;
    let sigma = u32::from_le_bytes(bytes[13..17].try_into().unwrap());
    let bits = bytes[17] as u32;
    if sigma == 0 {
        return Err(bad(13, "sigma must be positive"));
    }
    let alphabet = Alphabet::new(sigma);
    if bits != alphabet.bits_per_letter() {
        return Err(bad(17, "bits_per_letter does not match sigma"));
    }
    let nbytes = len
        .checked_mul(bits as usize)
        .map(|b| b.div_ceil(8))
        .ok_or_else(|| bad(5, "length overflow"))?;
    if bytes.len() != HEADER + nbytes + 4 {
        return Err(bad(bytes.len().min(HEADER + nbytes), "payload size mismatch"));
    }
    let payload = &bytes[HEADER..HEADER + nbytes];
    let crc = u32::from_le_bytes(bytes[HEADER + nbytes..].try_into().unwrap());
    if crc32fast::hash(payload) != crc {
        return Err(bad(HEADER + nbytes, "crc mismatch"));
    }
    let mut words = vec![0u64; (len * bits as usize).div_ceil(64)];
    for (i, &b) in payload.iter().enumerate() {
        words[i / 8] |= (b as u64) << (8 * (i % 8));
    }
    // slack bits must be zero and letters in range
    let used = len * bits as usize;
    if used % 64 != 0 {
        if let Some(last) = words.last() {
            if last >> (used % 64) != 0 {
                return Err(bad(HEADER + nbytes - 1, "nonzero slack bits"));
            }
        }
    }
    let s = PackedString::from_raw_parts(alphabet, len, words);
    for i in 0..len {
        if s.get(i) >= sigma {
            return Err(bad(HEADER + i * bits as usize / 8, "letter out of range"));
        }
    }
    Ok(s)
}
