//! Exact GSFIM achievable rates, the MIMO-OFDM baseline, and the optimal
//! number of active subcarriers per sub-matrix.

use crate::{log2_order, RateError};
use im_core::{binomial, floor_log2};

/// Exact rate decomposition of a GSFIM frame configuration.
///
/// A frame spans `n_sub` OFDM subcarriers split into `n_b = n_sub / n_f`
/// sub-matrices of `n_rf × n_f` cells each, of which `k` carry symbols;
/// the cyclic prefix adds `l − 1` channel uses, so every rate divides by
/// `n_sub + l − 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GsfimRateReport {
    pub n_t: usize,
    pub n_rf: usize,
    /// Number of OFDM subcarriers (`N`).
    pub n_sub: usize,
    pub n_f: usize,
    pub n_b: usize,
    pub k: usize,
    pub m: usize,
    /// Number of channel taps (`L`); the cyclic prefix has `l − 1` samples.
    pub l: usize,
    /// `⌊log2 C(n_t, n_rf)⌋` — antenna-pattern bits per frame.
    pub antenna_index_bits: u32,
    /// `⌊log2 C(n_rf·n_f, k)⌋` — subcarrier-pattern bits per sub-matrix.
    pub frequency_index_bits: u32,
    /// Total bits per frame.
    pub total_bits: u64,
    /// Channel uses per frame, `n_sub + l − 1`.
    pub denominator: u64,
    /// Antenna-index rate share in bpcu.
    pub r_a: f64,
    /// Frequency-index rate share in bpcu.
    pub r_f: f64,
    /// Modulation-symbol rate share in bpcu.
    pub r_q: f64,
    /// Total rate in bpcu, `total_bits / denominator`.
    pub total: f64,
}

/// Rate-maximizing number of active subcarriers per sub-matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KOptimum {
    /// Smallest maximizing `k`.
    pub k_best: usize,
    /// `⌊log2 C(N_f, k_best)⌋ + k_best·log2 M`.
    pub bits_per_submatrix: u32,
}

/// Computes the exact GSFIM rate report for `(n_t, n_rf, N, n_f, k, M, L)`.
pub fn gsfim_rate(
    n_t: usize,
    n_rf: usize,
    n_sub: usize,
    n_f: usize,
    k: usize,
    m: usize,
    l: usize,
) -> Result<GsfimRateReport, RateError> {
    if n_rf < 1 || n_rf > n_t {
        return Err(RateError::RfRange { n_t, n_rf });
    }
    let log2_m = log2_order(m)?;
    if n_sub < 1 || l < 1 {
        return Err(RateError::FrameRange { n_sub, l });
    }
    if n_f < 1 || n_sub % n_f != 0 {
        return Err(RateError::BlockMismatch { n_sub, n_f });
    }
    let slots = n_rf * n_f;
    if k < 1 || k > slots {
        return Err(RateError::KRange { k, max_k: slots });
    }
    let n_b = n_sub / n_f;
    let antenna_index_bits = floor_log2(binomial(n_t, n_rf)?);
    let frequency_index_bits = floor_log2(binomial(slots, k)?);
    let denominator = (n_sub + l - 1) as u64;
    let bits_a = antenna_index_bits as u64;
    let bits_f = (n_b as u64) * frequency_index_bits as u64;
    let bits_q = (n_b as u64) * (k as u64) * log2_m as u64;
    let denom = denominator as f64;
    Ok(GsfimRateReport {
        n_t,
        n_rf,
        n_sub,
        n_f,
        n_b,
        k,
        m,
        l,
        antenna_index_bits,
        frequency_index_bits,
        total_bits: bits_a + bits_f + bits_q,
        denominator,
        r_a: bits_a as f64 / denom,
        r_f: bits_f as f64 / denom,
        r_q: bits_q as f64 / denom,
        total: (bits_a + bits_f + bits_q) as f64 / denom,
    })
}

/// Rate of conventional MIMO-OFDM with every cell active:
/// `n_rf·N·log2 M / (N + L − 1)` bpcu.
pub fn mimo_ofdm_rate(n_rf: usize, n_sub: usize, m: usize, l: usize) -> Result<f64, RateError> {
    if n_rf < 1 {
        return Err(RateError::RfRange { n_t: n_rf, n_rf });
    }
    if n_sub < 1 || l < 1 {
        return Err(RateError::FrameRange { n_sub, l });
    }
    let log2_m = log2_order(m)?;
    let bits = (n_rf * n_sub) as u64 * log2_m as u64;
    Ok(bits as f64 / (n_sub + l - 1) as f64)
}

/// Finds the smallest `k` maximizing the per-sub-matrix bit count
/// `⌊log2 C(n_rf·n_f, k)⌋ + k·log2 M`.
///
/// The maximizer always satisfies `k_best ≥ ⌊N_f/2⌋` with `N_f = n_rf·n_f`,
/// because above the half-way point the binomial term loses less than the
/// symbol term gains.
pub fn optimize_k(n_rf: usize, n_f: usize, m: usize) -> Result<KOptimum, RateError> {
    let slots = n_rf * n_f;
    if slots < 1 {
        return Err(RateError::KRange { k: 1, max_k: 0 });
    }
    let log2_m = log2_order(m)?;
    let mut best: Option<KOptimum> = None;
    for k in 1..=slots {
        let bits = floor_log2(binomial(slots, k)?) + (k as u32) * log2_m;
        match best {
            Some(b) if bits <= b.bits_per_submatrix => {}
            _ => best = Some(KOptimum { k_best: k, bits_per_submatrix: bits }),
        }
    }
    let best = best.expect("slots >= 1 yields at least one candidate");
    debug_assert!(best.k_best >= slots / 2);
    Ok(best)
}
