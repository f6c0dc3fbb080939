//! Bit-packed strings over an integer alphabet `[0, sigma)`.
//!
//! Letters are stored as fixed-width codes of `ceil(log2(max(sigma, 2)))` bits,
//! little-endian inside 64-bit words.

mod ingest;
mod lce;

pub use ingest::{ingest, ingest_bytes, Format, Ingested};
pub use lce::{lcp_array, suffix_array, Lce, Rmq};

use crate::opcount;
use thiserror::Error;

const WORD_BITS: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PackedError {
    #[error("letter {value} at position {position} is outside the alphabet")]
    LetterOutOfRange { position: usize, value: u32 },
    #[error("index {index} out of bounds for length {len}")]
    IndexOutOfBounds { index: usize, len: usize },
    #[error("malformed packed input at byte {offset}: {reason}")]
    ParseError { offset: usize, reason: String },
    #[error("input is empty")]
    EmptyInput,
    #[error("io: {0}")]
    Io(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Alphabet {
    sigma: u32,
    bits: u32,
}

impl Alphabet {
    pub fn new(sigma: u32) -> Alphabet {
        let sigma = sigma.max(1);
        let bits = bits_for(sigma);
        Alphabet { sigma, bits }
    }

    pub fn sigma(&self) -> u32 {
        self.sigma
    }

    pub fn bits_per_letter(&self) -> u32 {
        self.bits
    }
}

fn bits_for(sigma: u32) -> u32 {
    let s = sigma.max(2) as u64;
    64 - (s - 1).leading_zeros()
}

/// A half-open range `[start, end_exclusive)` of positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fragment {
    pub start: usize,
    pub end_exclusive: usize,
}

impl Fragment {
    pub fn new(start: usize, end_exclusive: usize) -> Fragment {
        Fragment { start, end_exclusive }
    }

    pub fn len(&self) -> usize {
        self.end_exclusive - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end_exclusive
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PackedString {
    alphabet: Alphabet,
    len: usize,
    words: Vec<u64>,
}

impl PackedString {
    pub fn pack(letters: &[u32], sigma: u32) -> Result<PackedString, PackedError> {
        let alphabet = Alphabet::new(sigma);
        for (position, &value) in letters.iter().enumerate() {
            if value >= alphabet.sigma {
                return Err(PackedError::LetterOutOfRange { position, value });
            }
        }
        Ok(Self::pack_unchecked(letters, alphabet))
    }

    fn pack_unchecked(letters: &[u32], alphabet: Alphabet) -> PackedString {
        let b = alphabet.bits as usize;
        let mut words = vec![0u64; (letters.len() * b).div_ceil(WORD_BITS)];
        for (i, &c) in letters.iter().enumerate() {
            write_bits(&mut words, i * b, b, c as u64);
        }
        PackedString { alphabet, len: letters.len(), words }
    }

    pub fn empty(sigma: u32) -> PackedString {
        PackedString { alphabet: Alphabet::new(sigma), len: 0, words: Vec::new() }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn sigma(&self) -> u32 {
        self.alphabet.sigma
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn letter_at(&self, i: usize) -> Result<u32, PackedError> {
        if i >= self.len {
            return Err(PackedError::IndexOutOfBounds { index: i, len: self.len });
        }
        Ok(self.get(i))
    }

    /// Unchecked access; panics in debug builds when out of range.
    #[inline]
    pub fn get(&self, i: usize) -> u32 {
        debug_assert!(i < self.len);
        opcount::bump(opcount::Counter::ExtractLetter);
        let b = self.alphabet.bits as usize;
        read_bits(&self.words, i * b, b) as u32
    }

    pub fn to_vec(&self) -> Vec<u32> {
        let b = self.alphabet.bits as usize;
        let mask = (1u64 << b) - 1;
        let mut out = Vec::with_capacity(self.len);
        let mut pos = 0;
        for _ in 0..self.len {
            let w = pos / WORD_BITS;
            let off = pos % WORD_BITS;
            let mut v = self.words[w] >> off;
            if off + b > WORD_BITS {
                v |= self.words[w + 1] << (WORD_BITS - off);
            }
            out.push((v & mask) as u32);
            pos += b;
        }
        out
    }

    /// Copies `S[f.start..f.end_exclusive)` one output word at a time.
    pub fn extract(&self, f: Fragment) -> Result<PackedString, PackedError> {
        if f.start > f.end_exclusive {
            return Err(PackedError::IndexOutOfBounds { index: f.start, len: self.len });
        }
        if f.end_exclusive > self.len {
            return Err(PackedError::IndexOutOfBounds { index: f.end_exclusive, len: self.len });
        }
        let b = self.alphabet.bits as usize;
        let total = f.len() * b;
        let nwords = total.div_ceil(WORD_BITS);
        let base = f.start * b;
        let mut words = Vec::with_capacity(nwords);
        for w in 0..nwords {
            let take = (total - w * WORD_BITS).min(WORD_BITS);
            words.push(read_bits(&self.words, base + w * WORD_BITS, take));
            opcount::bump(opcount::Counter::ExtractWord);
        }
        Ok(PackedString { alphabet: self.alphabet, len: f.len(), words })
    }

    pub fn reverse(&self) -> PackedString {
        let mut v = self.to_vec();
        v.reverse();
        Self::pack_unchecked(&v, self.alphabet)
    }

    /// Same letters under a larger alphabet.
    pub fn widen(&self, sigma: u32) -> PackedString {
        assert!(sigma >= self.alphabet.sigma);
        Self::pack_unchecked(&self.to_vec(), Alphabet::new(sigma))
    }

    pub fn to_packed_binary(&self) -> Vec<u8> {
        ingest::serialize(self)
    }

    pub fn from_packed_binary(bytes: &[u8]) -> Result<PackedString, PackedError> {
        ingest::deserialize(bytes)
    }

    pub(crate) fn from_raw_parts(alphabet: Alphabet, len: usize, words: Vec<u64>) -> PackedString {
        PackedString { alphabet, len, words }
    }
}

#[inline]
fn read_bits(words: &[u64], pos: usize, width: usize) -> u64 {
    if width == 0 {
        return 0;
    }
    let w = pos / WORD_BITS;
    let off = pos % WORD_BITS;
    let mut v = words[w] >> off;
    if off + width > WORD_BITS {
        v |= words[w + 1] << (WORD_BITS - off);
    }
    if width == WORD_BITS {
        v
    } else {
        v & ((1u64 << width) - 1)
    }
}

#[inline]
fn write_bits(words: &mut [u64], pos: usize, width: usize, value: u64) {
    let w = pos / WORD_BITS;
    let off = pos % WORD_BITS;
    words[w] |= value << off;
    if off + width > WORD_BITS {
        words[w + 1] |= value >> (WORD_BITS - off);
    }
}
