//! Debug-build operation counters.
//!
//! Counting only happens with `debug_assertions`; release builds compile the
//! hooks to nothing.

use std::cell::Cell;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Counter {
    ExtractWord,
    ExtractLetter,
    SkylineStep,
    ExclusiveStep,
}

const N: usize = 4;

thread_local! {
    static COUNTS: [Cell<u64>; N] = const { [const { Cell::new(0) }; N] };
}

#[inline]
pub fn bump(c: Counter) {
    #[cfg(debug_assertions)]
    COUNTS.with(|a| {
        let cell = &a[c as usize];
        cell.set(cell.get() + 1);
    });
    #[cfg(not(debug_assertions))]
    let _ = c;
}

pub fn get(c: Counter) -> u64 {
    COUNTS.with(|a| a[c as usize].get())
}

pub fn reset() {
    COUNTS.with(|a| a.iter().for_each(|c| c.set(0)));
}
