//! Reduction of SUS over any alphabet to SUS over {0, 1}.
//!
//! Each letter `a` becomes `0^k 1 b(a) 1` where `b(a)` is its (k-2)-bit code,
//! and `0^k` closes the text.

use crate::baseline::SubstringAnswer;
use crate::packed::PackedString;

/// Translates binary answers back to positions of the source string.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoordinateMap {
    pub k: usize,
    pub source_len: usize,
}

pub fn block_width(sigma: u32) -> usize {
    // ceil(log2 sigma) + 2
    let bits = 32 - sigma.max(1).saturating_sub(1).leading_zeros() as usize;
    bits + 2
}

pub fn to_binary(s: &PackedString) -> (PackedString, CoordinateMap) {
    let k = block_width(s.sigma());
    let mut out = Vec::with_capacity((2 * s.len() + 1) * k);
    for a in s.to_vec() {
        out.resize(out.len() + k, 0);
        out.push(1);
        for b in (0..k - 2).rev() {
            out.push((a >> b) & 1);
        }
        out.push(1);
    }
    out.resize(out.len() + k, 0);
    let map = CoordinateMap { k, source_len: s.len() };
    (PackedString::pack(&out, 2).expect("bits"), map)
}

impl CoordinateMap {
    /// The source fragment encoded by a unique binary fragment.
    ///
    /// Returns None when the fragment holds no 1, which never happens for a
    /// unique one.
    pub fn map_back(&self, binary: &[u32], answer: &SubstringAnswer) -> Option<SubstringAnswer> {
        let (a, b) = (answer.start, answer.end_exclusive());
        let first = (a..b).find(|&i| binary[i] == 1)?;
        let last = (a..b).rev().find(|&i| binary[i] == 1)?;
        let w = 2 * self.k;
        let (t0, t1) = (first / w, last / w);
        Some(SubstringAnswer::fragment(t0, t1 - t0 + 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baseline::sus_all;

    fn dna(s: &str) -> PackedString {
        let v: Vec<u32> = s.bytes().map(|b| "acgt".find(b as char).unwrap() as u32).collect();
        PackedString::pack(&v, 4).unwrap()
    }

    #[test]
    fn gctctca() {
        let (bin, map) = to_binary(&dna("gctctca"));
        let bits: String = bin.to_vec().into_iter().map(|b| char::from(b'0' + b as u8)).collect();
        assert_eq!(bits, "000011010000101100001111000010110000111100001011000010010000");
        assert_eq!(map.k, 4);
        let v = bin.to_vec();
        let all = sus_all(&bin);
        let mut words: Vec<Vec<u32>> = all.iter().map(|a| a.letters(&v)).collect();
        words.sort();
        // 1010 also sits inside the block of g
        assert_eq!(words, vec![vec![1, 0, 0, 1], vec![1, 0, 1, 0], vec![1, 1, 0, 1]]);
        let mut back: Vec<usize> = all.iter().map(|a| map.map_back(&v, a).unwrap().start).collect();
        back.sort();
        back.dedup();
        // g at 0, a at 6
        assert_eq!(back, vec![0, 6]);
    }

    #[test]
    fn unary_alphabet() {
        let s = PackedString::pack(&[0, 0, 0], 1).unwrap();
        let (bin, map) = to_binary(&s);
        assert_eq!(map.k, 2);
        assert_eq!(bin.len(), 14);
    }
}
