//! Comparison tables and curve data: RF-chain savings, rate-gain
//! percentages, and the rate curves the schemes are judged by.

use crate::gsfim::optimize_k;
use crate::gsim::{gsim_rate, gsim_rate_max, min_rf_for_rate};
use crate::{log2_order, RateError};

/// Human-readable constellation name: `BPSK` for order 2, `M-QAM` above.
pub fn modulation_label(m: usize) -> String {
    if m == 2 {
        "BPSK".to_string()
    } else {
        format!("{m}-QAM")
    }
}

/// One comparison-table row: how many RF chains GSIM saves over spatial
/// multiplexing at a given `(modulation, n_t)`, and the rate it gains.
#[derive(Debug, Clone, PartialEq)]
pub struct RfSavingRow {
    pub modulation: String,
    pub m: usize,
    pub n_t: usize,
    /// Smallest `n_rf` achieving the maximum GSIM rate.
    pub n_rf_opt: usize,
    /// Smallest `n_rf` matching the spatial-multiplexing rate `n_t·log2 M`.
    pub n_rf_min: usize,
    pub r_max: u32,
    pub sm_rate: u32,
    /// RF chains saved at maximum rate, `(n_t − n_rf_opt)/n_t · 100`.
    pub saving_at_rmax_pct: f64,
    /// RF chains saved while only matching the SM rate.
    pub saving_at_sm_pct: f64,
    /// Rate gained over SM at full `n_t` RF budget, `(R_max − SM)/SM · 100`.
    pub rate_increase_pct: f64,
}

/// Builds the savings/gain table over a `(modulation outer, n_t inner)` grid.
pub fn rf_saving_table(n_ts: &[usize], ms: &[usize]) -> Result<Vec<RfSavingRow>, RateError> {
    let mut rows = Vec::with_capacity(n_ts.len() * ms.len());
    for &m in ms {
        let log2_m = log2_order(m)?;
        for &n_t in n_ts {
            let best = gsim_rate_max(n_t, m)?;
            let sm_rate = (n_t as u32) * log2_m;
            let n_rf_min = min_rf_for_rate(n_t, m, sm_rate)?
                .expect("n_rf = n_t always achieves the spatial-multiplexing rate");
            let nt = n_t as f64;
            rows.push(RfSavingRow {
                modulation: modulation_label(m),
                m,
                n_t,
                n_rf_opt: best.n_rf_opt,
                n_rf_min,
                r_max: best.rate,
                sm_rate,
                saving_at_rmax_pct: (nt - best.n_rf_opt as f64) / nt * 100.0,
                saving_at_sm_pct: (nt - n_rf_min as f64) / nt * 100.0,
                rate_increase_pct: (best.rate as f64 - sm_rate as f64) / sm_rate as f64 * 100.0,
            });
        }
    }
    Ok(rows)
}

/// GSIM rate as a function of `n_rf` for fixed `(n_t, M)`.
pub fn gsim_rate_curve(n_t: usize, m: usize) -> Result<Vec<(usize, u32)>, RateError> {
    (1..=n_t)
        .map(|n_rf| Ok((n_rf, gsim_rate(n_t, n_rf, m)?.rate_bpcu())))
        .collect()
}

/// One point of the sub-matrix rate curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct R1Point {
    pub k: usize,
    /// `⌊log2 C(n_rf·n_f, k)⌋ + k·log2 M`.
    pub bits_per_submatrix: u32,
    /// `n_b · bits / (n_b·n_f + L − 1)` bpcu.
    pub rate: f64,
}

/// Sub-matrix (frequency + symbol) rate versus `k` for a fixed geometry,
/// excluding the antenna-index share.
pub fn r1_curve(
    n_rf: usize,
    n_f: usize,
    n_b: usize,
    m: usize,
    l: usize,
) -> Result<Vec<R1Point>, RateError> {
    let log2_m = log2_order(m)?;
    let slots = n_rf * n_f;
    if slots < 1 || n_b < 1 {
        return Err(RateError::KRange { k: 1, max_k: slots });
    }
    if l < 1 {
        return Err(RateError::FrameRange { n_sub: n_b * n_f, l });
    }
    let denom = (n_b * n_f + l - 1) as f64;
    (1..=slots)
        .map(|k| {
            let bits =
                im_core::floor_log2(im_core::binomial(slots, k)?) + (k as u32) * log2_m;
            Ok(R1Point {
                k,
                bits_per_submatrix: bits,
                rate: (n_b as u32 * bits) as f64 / denom,
            })
        })
        .collect()
}

/// Maximum sub-matrix rate over `k` (the envelope of [`r1_curve`]).
pub fn gsfim_max_rate(
    n_rf: usize,
    n_f: usize,
    n_b: usize,
    m: usize,
    l: usize,
) -> Result<f64, RateError> {
    if n_b < 1 {
        return Err(RateError::BlockMismatch { n_sub: 0, n_f });
    }
    if l < 1 {
        return Err(RateError::FrameRange { n_sub: n_b * n_f, l });
    }
    let opt = optimize_k(n_rf, n_f, m)?;
    let denom = (n_b * n_f + l - 1) as f64;
    Ok((n_b as u32 * opt.bits_per_submatrix) as f64 / denom)
}
