//! Bit-stream ↔ sparse transmit vector mapping.

use crate::{GsimConfig, LinkError, TransmitVector};
use num_complex::Complex64;

/// Maps a bit string to a transmit vector: the first `K` bits select the
/// active-antenna pattern, then each `log2 M`-bit group modulates one
/// active antenna in ascending antenna order.
pub fn gsim_encode(bits: &[bool], config: &GsimConfig) -> Result<TransmitVector, LinkError> {
    let expected = config.bits_per_use();
    if bits.len() != expected {
        return Err(LinkError::Mapping(im_core::ImError::BitLength {
            expected,
            got: bits.len(),
        }));
    }
    let k = config.index_bits();
    let pattern = config.pattern_set().bits_to_pattern(&bits[..k])?.to_vec();
    let b = config.alphabet().bits_per_symbol();
    let mut entries = vec![Complex64::new(0.0, 0.0); config.n_t()];
    let mut offset = k;
    for (i, &active) in pattern.iter().enumerate() {
        if active {
            entries[i] = config.alphabet().modulate(&bits[offset..offset + b])?;
            offset += b;
        }
    }
    TransmitVector::new(entries, config)
}

/// Inverts [`gsim_encode`]: pattern bits from the support, then symbol bits
/// from the active entries in ascending antenna order. The entries must be
/// exact alphabet points on a pattern the set contains.
pub fn gsim_decode(x: &[Complex64], config: &GsimConfig) -> Result<Vec<bool>, LinkError> {
    if x.len() != config.n_t() {
        return Err(LinkError::DimensionMismatch { expected: config.n_t(), got: x.len() });
    }
    let mask: Vec<bool> = x.iter().map(|v| v.norm_sqr() > 0.0).collect();
    let mut bits = config.pattern_set().pattern_to_bits(&mask)?;
    for (i, &active) in mask.iter().enumerate() {
        if active {
            bits.extend(config.alphabet().demodulate(x[i]));
        }
    }
    Ok(bits)
}

/// Enumerates the full codebook in bit-string order. Guarded against
/// searches past 2^20 candidates.
pub fn enumerate_codebook(
    config: &GsimConfig,
) -> Result<Vec<(Vec<bool>, TransmitVector)>, LinkError> {
    let rate = config.bits_per_use() as u32;
    const MAX_RATE: u32 = 20;
    if rate > MAX_RATE {
        return Err(LinkError::SearchSpace { rate, max: MAX_RATE });
    }
    let count = 1usize << rate;
    let mut book = Vec::with_capacity(count);
    for value in 0..count {
        let bits = im_core::index_to_bits(value, rate as usize);
        let x = gsim_encode(&bits, config)?;
        book.push((bits, x));
    }
    Ok(book)
}
