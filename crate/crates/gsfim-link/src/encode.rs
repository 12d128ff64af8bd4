//! Bits ↔ GSFIM frame mapping.

use crate::{GsfimConfig, GsfimError, GsfimFrame};
use gsim_link::CMat;
use im_core::ImError;
use num_complex::Complex64;

/// Maps a frame's worth of bits to a [`GsfimFrame`].
///
/// Layout: the first `antenna_index_bits` select the antenna pattern; then
/// each of the `n_b` sub-matrices consumes `frequency_index_bits` for its
/// activation pattern followed by `k` symbol groups filling the active
/// cells in row-major order.
pub fn gsfim_encode(bits: &[bool], config: &GsfimConfig) -> Result<GsfimFrame, GsfimError> {
    let expected = config.bits_per_frame();
    if bits.len() != expected {
        return Err(ImError::BitLength { expected, got: bits.len() }.into());
    }
    let k_a = config.antenna_index_bits();
    let antenna_pattern = config.antenna_patterns().bits_to_pattern(&bits[..k_a])?.to_vec();
    let mut cursor = k_a;
    let k_f = config.frequency_index_bits();
    let b = config.alphabet().bits_per_symbol();
    let mut grid = CMat::zeros(config.n_rf(), config.n_sub());
    for i in 0..config.n_b() {
        let mask = config
            .frequency_patterns()
            .bits_to_pattern(&bits[cursor..cursor + k_f])?
            .to_vec();
        cursor += k_f;
        for r in 0..config.n_rf() {
            for c in 0..config.n_f() {
                if mask[r * config.n_f() + c] {
                    let symbol = config.alphabet().modulate(&bits[cursor..cursor + b])?;
                    cursor += b;
                    *grid.at_mut(r, i * config.n_f() + c) = symbol;
                }
            }
        }
    }
    GsfimFrame::new(antenna_pattern, grid, config)
}

/// Recovers the bit stream from a detected antenna pattern and the `n_b`
/// per-sub-matrix vectors (each stacked subcarrier by subcarrier, as
/// produced by [`GsfimFrame::sub_block_vector`] and the detector).
pub fn gsfim_decode(
    antenna_pattern: &[bool],
    sub_blocks: &[Vec<Complex64>],
    config: &GsfimConfig,
) -> Result<Vec<bool>, GsfimError> {
    if sub_blocks.len() != config.n_b() {
        return Err(GsfimError::DimensionMismatch {
            expected: config.n_b(),
            got: sub_blocks.len(),
        });
    }
    let mut bits = Vec::with_capacity(config.bits_per_frame());
    bits.extend(config.antenna_patterns().pattern_to_bits(antenna_pattern)?);
    for (i, z) in sub_blocks.iter().enumerate() {
        if z.len() != config.sub_block_len() {
            return Err(GsfimError::DimensionMismatch {
                expected: config.sub_block_len(),
                got: z.len(),
            });
        }
        // The stacked vector is column-major over the grid; the pattern
        // set indexes the row-major mask.
        let mut mask = vec![false; config.sub_block_len()];
        for c in 0..config.n_f() {
            for r in 0..config.n_rf() {
                mask[r * config.n_f() + c] = z[c * config.n_rf() + r].norm_sqr() > 0.0;
            }
        }
        let pattern_bits = config
            .frequency_patterns()
            .pattern_to_bits(&mask)
            .map_err(|e| match e {
                ImError::UnknownPattern => GsfimError::InvalidSupport { block: i },
                other => other.into(),
            })?;
        bits.extend(pattern_bits);
        for r in 0..config.n_rf() {
            for c in 0..config.n_f() {
                if mask[r * config.n_f() + c] {
                    bits.extend(config.alphabet().demodulate(z[c * config.n_rf() + r]));
                }
            }
        }
    }
    Ok(bits)
}
