//! Achievable-rate analysis for index-modulation MIMO schemes.
//!
//! Covers four schemes and the comparisons between them:
//!
//! - **GSIM** (generalized spatial index modulation): `n_rf` of `n_t`
//!   antennas active per channel use, rate
//!   `⌊log2 C(n_t, n_rf)⌋ + n_rf·log2 M` bpcu.
//! - **Spatial multiplexing**: the `n_rf = n_t` special case at
//!   `n_t·log2 M` bpcu.
//! - **GSFIM** (generalized space-frequency index modulation): antenna
//!   indexing plus per-sub-matrix subcarrier indexing in an OFDM frame
//!   of `N` subcarriers with a length-`(L−1)` cyclic prefix.
//! - **MIMO-OFDM**: the all-cells-active baseline.
//!
//! Everything is computed in exact integer arithmetic (128-bit binomial
//! coefficients, bit-length logarithms), so fixtures match exactly; the
//! floating point appears only in the Stirling-based bounds, which avoid
//! evaluating factorials of large numbers altogether.
//!
//! # Example
//!
//! ```
//! use rate_analysis::{gsim_rate, gsim_rate_max};
//!
//! assert_eq!(gsim_rate(32, 24, 4).unwrap().rate_bpcu(), 71);
//! let best = gsim_rate_max(32, 4).unwrap();
//! assert_eq!((best.rate, best.n_rf_opt), (71, 24));
//! ```

mod bounds;
mod gsfim;
mod gsim;
mod tables;

pub use bounds::{f_function, gsim_rate_bounds, gsim_rate_max_bounds, n_rf_star, RateBounds};
pub use gsfim::{gsfim_rate, mimo_ofdm_rate, optimize_k, GsfimRateReport, KOptimum};
pub use gsim::{gsim_rate, gsim_rate_max, min_rf_for_rate, theorem1_holds, GsimRateReport, RateMax};
pub use tables::{
    gsfim_max_rate, gsim_rate_curve, modulation_label, r1_curve, rf_saving_table, R1Point,
    RfSavingRow,
};

use thiserror::Error;

/// Errors from rate computations (parameter ranges and overflow).
#[derive(Debug, Error, PartialEq, Eq)]
pub enum RateError {
    #[error("need 1 <= n_rf <= n_t, got n_t={n_t}, n_rf={n_rf}")]
    RfRange { n_t: usize, n_rf: usize },
    #[error("modulation order must be a power of two >= 2, got {0}")]
    InvalidOrder(usize),
    #[error("bounds are defined for 2 <= n_t and 1 <= n_rf <= n_t-1, got n_t={n_t}, n_rf={n_rf}")]
    BoundsRange { n_t: usize, n_rf: usize },
    #[error("n_f must divide N, got N={n_sub}, n_f={n_f}")]
    BlockMismatch { n_sub: usize, n_f: usize },
    #[error("need 1 <= k <= n_rf*n_f = {max_k}, got k={k}")]
    KRange { k: usize, max_k: usize },
    #[error("need L >= 1 and N >= 1, got N={n_sub}, L={l}")]
    FrameRange { n_sub: usize, l: usize },
    #[error(transparent)]
    Combinatorics(#[from] im_core::ImError),
}

pub(crate) fn log2_order(m: usize) -> Result<u32, RateError> {
    if m < 2 || !m.is_power_of_two() {
        return Err(RateError::InvalidOrder(m));
    }
    Ok(m.trailing_zeros())
}
