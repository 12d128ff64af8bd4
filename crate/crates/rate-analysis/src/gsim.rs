//! Exact GSIM achievable rates and the spectral-efficiency crossover theorem.

use crate::{log2_order, RateError};
use im_core::{binomial, floor_log2};

/// Exact rate decomposition of a GSIM configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GsimRateReport {
    pub n_t: usize,
    pub n_rf: usize,
    pub m: usize,
    /// `⌊log2 C(n_t, n_rf)⌋` — bits carried by the active-antenna pattern.
    pub antenna_index_bits: u32,
    /// `n_rf · log2 M` — bits carried by the constellation symbols.
    pub modulation_bits: u32,
}

impl GsimRateReport {
    /// Total rate in bits per channel use.
    pub fn rate_bpcu(&self) -> u32 {
        self.antenna_index_bits + self.modulation_bits
    }
}

/// Result of maximizing the GSIM rate over the number of RF chains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RateMax {
    /// The maximum rate over `n_rf ∈ [1, n_t]`.
    pub rate: u32,
    /// The smallest maximizing `n_rf`.
    pub n_rf_opt: usize,
}

/// Computes the exact GSIM rate `⌊log2 C(n_t, n_rf)⌋ + n_rf·log2 M`.
pub fn gsim_rate(n_t: usize, n_rf: usize, m: usize) -> Result<GsimRateReport, RateError> {
    if n_rf < 1 || n_rf > n_t {
        return Err(RateError::RfRange { n_t, n_rf });
    }
    let log2_m = log2_order(m)?;
    let patterns = binomial(n_t, n_rf)?;
    Ok(GsimRateReport {
        n_t,
        n_rf,
        m,
        antenna_index_bits: floor_log2(patterns),
        modulation_bits: (n_rf as u32) * log2_m,
    })
}

/// Maximizes the GSIM rate over `n_rf ∈ [1, n_t]`, returning the smallest
/// maximizer.
pub fn gsim_rate_max(n_t: usize, m: usize) -> Result<RateMax, RateError> {
    if n_t < 1 {
        return Err(RateError::RfRange { n_t, n_rf: 1 });
    }
    log2_order(m)?;
    let mut best: Option<RateMax> = None;
    for n_rf in 1..=n_t {
        let rate = gsim_rate(n_t, n_rf, m)?.rate_bpcu();
        match best {
            Some(b) if rate <= b.rate => {}
            _ => best = Some(RateMax { rate, n_rf_opt: n_rf }),
        }
    }
    Ok(best.expect("n_t >= 1 yields at least one candidate"))
}

/// Brute-force check that the maximum GSIM rate strictly exceeds the
/// spatial-multiplexing rate `n_t·log2 M` exactly when `n_t >= 2M`.
///
/// Returns `true` when the claimed equivalence holds for this `(n_t, M)`.
pub fn theorem1_holds(n_t: usize, m: usize) -> Result<bool, RateError> {
    let log2_m = log2_order(m)?;
    let sm_rate = (n_t as u32) * log2_m;
    let beats_sm = gsim_rate_max(n_t, m)?.rate > sm_rate;
    Ok(beats_sm == (n_t >= 2 * m))
}

/// Smallest `n_rf` achieving at least `target` bpcu, or `None` when even the
/// rate-maximizing `n_rf` falls short.
pub fn min_rf_for_rate(n_t: usize, m: usize, target: u32) -> Result<Option<usize>, RateError> {
    log2_order(m)?;
    for n_rf in 1..=n_t {
        if gsim_rate(n_t, n_rf, m)?.rate_bpcu() >= target {
            return Ok(Some(n_rf));
        }
    }
    Ok(None)
}
