//! De Bruijn sequences from Lyndon words, generated with the Duval loop.

use crate::packed::PackedString;
use thiserror::Error;

/// Largest full sequence built without a prefix bound, in letters.
pub const DEFAULT_CAP: u64 = 1 << 28;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DeBruijnError {
    #[error("alphabet size {0} is below 2")]
    SigmaTooSmall(u32),
    #[error("order must be at least 1")]
    ZeroOrder,
    #[error("sigma^k exceeds the {cap}-letter cap")]
    OrderTooLarge { cap: u64 },
    #[error("prefix length {prefix} exceeds sequence length {full}")]
    PrefixTooLong { prefix: u64, full: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeBruijnSpec {
    pub sigma: u32,
    pub k: usize,
    pub prefix: Option<usize>,
}

/// sigma^k + k - 1, saturating
pub fn full_length(sigma: u32, k: usize) -> u64 {
    let mut p: u64 = 1;
    for _ in 0..k {
        p = p.saturating_mul(sigma as u64);
    }
    p.saturating_add(k as u64 - 1)
}

pub fn de_bruijn(spec: DeBruijnSpec) -> Result<PackedString, DeBruijnError> {
    let DeBruijnSpec { sigma, k, prefix } = spec;
    if sigma < 2 {
        return Err(DeBruijnError::SigmaTooSmall(sigma));
    }
    if k == 0 {
        return Err(DeBruijnError::ZeroOrder);
    }
    let full = full_length(sigma, k);
    let limit = match prefix {
        Some(l) if l as u64 > full => return Err(DeBruijnError::PrefixTooLong { prefix: l as u64, full }),
        Some(l) => l,
        None if full - (k as u64 - 1) > DEFAULT_CAP => return Err(DeBruijnError::OrderTooLarge { cap: DEFAULT_CAP }),
        None => full as usize,
    };
    if k > 63 {
        return Err(DeBruijnError::OrderTooLarge { cap: DEFAULT_CAP });
    }
    let top = sigma - 1;
    let all = (1u64 << k) - 1;
    let mut w = vec![0u32; k];
    // bit i set iff w[i] == sigma - 1
    let mut mask = 0u64;
    let mut out = Vec::with_capacity(limit);
    out.push(0);
    while w[0] != top && out.len() < limit {
        let j = 63 - (!mask & all).leading_zeros() as usize;
        w[j] += 1;
        if w[j] == top {
            mask |= 1 << j;
        }
        if k % (j + 1) == 0 {
            out.extend_from_slice(&w[..=j]);
        }
        for i in j + 1..k {
            w[i] = w[i - j - 1];
            mask = (mask & !(1 << i)) | (((mask >> (i - j - 1)) & 1) << i);
        }
    }
    out.resize(out.len() + k - 1, 0);
    out.truncate(limit);
    Ok(PackedString::pack(&out, sigma).expect("letters below sigma"))
}
