//! Shortest unique, exclusive and absent substrings of packed strings.
//!
//! The top-level entry points live in [`orchestrator`]; [`baseline`] holds the
//! suffix-array solutions and brute-force oracles everything is checked against.

pub mod baseline;
pub mod medium;
pub mod opcount;
pub mod orchestrator;
pub mod packed;
pub mod runs;
pub mod shortcase;
pub mod skyline;
pub mod sync;
pub mod treesus;

pub use baseline::SubstringAnswer;
pub use packed::{Alphabet, Fragment, PackedError, PackedString};
