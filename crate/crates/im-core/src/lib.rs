//! Core primitives for index-modulation transceivers.
//!
//! Index modulation conveys part of the payload through *which* transmit
//! entities (antennas, subcarriers, sub-matrix cells) are active, and the
//! rest through ordinary QAM symbols on the active entities. This crate
//! holds the pieces every such scheme shares:
//!
//! - [`ModulationAlphabet`]: Gray-labeled QAM constellations on the
//!   odd-integer lattice, with support for explicit labeling overrides.
//! - [`PatternSet`]: the `2^K` activation patterns used for index bits,
//!   in a deterministic combinadic order (or an explicit override list),
//!   with the bits ↔ pattern bijection.
//! - Exact binomial coefficients and pattern rank/unrank so the mapping
//!   is reproducible across runs and platforms.
//!
//! # Example
//!
//! ```
//! use im_core::{ModulationAlphabet, PatternSet};
//!
//! // 2 of 4 antennas active: C(4,2) = 6 patterns, so K = 2 index bits.
//! let set = PatternSet::new(4, 2).unwrap();
//! assert_eq!(set.index_bits(), 2);
//! assert_eq!(set.bits_to_pattern(&[false, false]).unwrap(), &[true, true, false, false]);
//!
//! let qam = ModulationAlphabet::gray_qam(4).unwrap();
//! assert_eq!(qam.average_energy(), 2.0);
//! ```

mod alphabet;
mod combin;
mod pattern;

pub use alphabet::ModulationAlphabet;
pub use combin::{binomial, floor_log2};
pub use pattern::{enumerate_patterns, rank_pattern, support_of, unrank_pattern, PatternSet};

use thiserror::Error;

/// Errors from constellation building and pattern-set construction.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ImError {
    #[error("modulation order must be a power of two >= 2, got {0}")]
    InvalidOrder(usize),
    #[error("alphabet points must be pairwise distinct")]
    DuplicatePoint,
    #[error("expected {expected} bits, got {got}")]
    BitLength { expected: usize, got: usize },
    #[error("pattern weight must satisfy 1 <= w <= n, got n={n}, w={w}")]
    InvalidWeight { n: usize, w: usize },
    #[error("binomial({n}, {k}) overflows the 128-bit accumulator")]
    BinomialOverflow { n: usize, k: usize },
    #[error("pattern rank {rank} out of range for C({n}, {w})")]
    RankOutOfRange { n: usize, w: usize, rank: u128 },
    #[error("enumeration of {count} patterns exceeds the guard of {max}")]
    EnumerationTooLarge { count: u128, max: u128 },
    #[error("pattern-set override must contain a power-of-two count between 1 and {max}, got {got}")]
    OverrideSize { max: usize, got: usize },
    #[error("override pattern {index} has wrong length or weight")]
    BadOverridePattern { index: usize },
    #[error("override pattern {index} duplicates an earlier pattern")]
    DuplicatePattern { index: usize },
    #[error("support is not a pattern of this set")]
    UnknownPattern,
    #[error("bad pattern text at line {line}: {reason}")]
    PatternText { line: usize, reason: String },
}

/// Interprets a bit slice as an unsigned integer, most significant bit first.
pub fn bits_to_index(bits: &[bool]) -> usize {
    bits.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize)
}

/// Writes `value` as `len` bits, most significant bit first.
pub fn index_to_bits(value: usize, len: usize) -> Vec<bool> {
    (0..len).rev().map(|i| (value >> i) & 1 == 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn test_bit_index_roundtrip() {
        for len in 0..12 {
            for v in 0..(1usize << len) {
                let bits = index_to_bits(v, len);
                assert_eq!(bits.len(), len);
                assert_eq!(bits_to_index(&bits), v);
            }
        }
    }

    #[test]
    fn test_bits_msb_first() {
        assert_eq!(bits_to_index(&[false, true]), 1);
        assert_eq!(bits_to_index(&[true, false]), 2);
        assert_eq!(index_to_bits(6, 4), vec![false, true, true, false]);
    }
}
