//! Stirling-based closed-form bounds on the GSIM rate.
//!
//! The exact rate needs `⌊log2 C(n_t, n_rf)⌋`, which for large arrays means
//! huge factorials. Bounding `log2 n!` by Stirling's inequalities instead
//! gives floor/ceil expressions in `f(n_t, n_rf, log2 M)` that sandwich the
//! exact rate without evaluating any factorial.

use crate::gsim::{gsim_rate, gsim_rate_max};
use crate::{log2_order, RateError};

/// `log2(e / 2π)`, the additive constant in the upper bound.
fn upper_const() -> f64 {
    (std::f64::consts::E / std::f64::consts::TAU).log2()
}

/// `log2(√(2π) / e²)`, the additive constant in the lower bound.
fn lower_const() -> f64 {
    (std::f64::consts::TAU.sqrt() / (std::f64::consts::E * std::f64::consts::E)).log2()
}

fn xlog2x(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

/// The entropy-like core of the Stirling bounds:
/// `n_t·log2 n_t − n_rf·log2 n_rf − (n_t−n_rf)·log2(n_t−n_rf) + n_rf·log2 M`,
/// with the convention `0·log2 0 := 0` at the endpoints.
pub fn f_function(n_t: usize, n_rf: usize, log2_m: f64) -> f64 {
    let nt = n_t as f64;
    let nrf = n_rf as f64;
    xlog2x(nt) - xlog2x(nrf) - xlog2x(nt - nrf) + nrf * log2_m
}

/// Closed-form bounds on a rate, along with the exact value they sandwich.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateBounds {
    pub lower: f64,
    pub upper: f64,
    pub exact: f64,
    /// The `f(n_t, n_rf, log2 M)` evaluation both bounds are built from.
    pub f_value: f64,
}

impl RateBounds {
    /// Checks `lower ≤ exact ≤ upper`.
    pub fn sandwiches_exact(&self) -> bool {
        self.lower <= self.exact && self.exact <= self.upper
    }

    /// Largest distance from a bound to the exact value, in bpcu.
    pub fn max_gap(&self) -> f64 {
        (self.exact - self.lower).max(self.upper - self.exact)
    }
}

/// Bounds the exact GSIM rate for a fixed `n_rf ∈ [1, n_t−1]`.
///
/// `upper = ⌊f + 0.5·log2(n_t/(n_t−1)) + log2(e/2π)⌋` and
/// `lower = ⌈f − 0.5·log2 n_t + log2(√(2π)/e²)⌉`.
pub fn gsim_rate_bounds(n_t: usize, n_rf: usize, m: usize) -> Result<RateBounds, RateError> {
    if n_t < 2 || n_rf < 1 || n_rf > n_t - 1 {
        return Err(RateError::BoundsRange { n_t, n_rf });
    }
    let log2_m = log2_order(m)? as f64;
    let nt = n_t as f64;
    let f = f_function(n_t, n_rf, log2_m);
    let upper = (f + 0.5 * (nt / (nt - 1.0)).log2() + upper_const()).floor();
    let lower = (f - 0.5 * nt.log2() + lower_const()).ceil();
    let exact = gsim_rate(n_t, n_rf, m)?.rate_bpcu() as f64;
    Ok(RateBounds { lower, upper, exact, f_value: f })
}

/// Continuous maximizer of the rate's Stirling approximation over `n_rf`,
/// `n_rf* = n_t·M/(M+1)`, returned with its round-to-nearest integer.
pub fn n_rf_star(n_t: usize, m: usize) -> Result<(f64, usize), RateError> {
    log2_order(m)?;
    let star = (n_t as f64) * (m as f64) / (m as f64 + 1.0);
    let rounded = (star + 0.5).floor() as usize;
    Ok((star, rounded))
}

/// Bounds the maximum GSIM rate over all `n_rf` without the search:
/// `upper = ⌊n_t·log2(M+1) + 0.5·log2(n_t/(n_t−1)) + log2(e/2π)⌋` and
/// `lower` evaluates the per-`n_rf` lower bound at the rounded `n_rf*`.
///
/// The construction assumes the maximizer is interior (`n_rf < n_t`), which
/// holds in the `n_t ≥ 2M` regime where index modulation outrates spatial
/// multiplexing; for small arrays with large constellations the true maximum
/// sits at the `n_rf = n_t` endpoint and can exceed `upper`.
pub fn gsim_rate_max_bounds(n_t: usize, m: usize) -> Result<RateBounds, RateError> {
    if n_t < 2 {
        return Err(RateError::BoundsRange { n_t, n_rf: 1 });
    }
    let log2_m = log2_order(m)? as f64;
    let nt = n_t as f64;
    let (_, n_opt) = n_rf_star(n_t, m)?;
    let f = f_function(n_t, n_opt, log2_m);
    let upper = (nt * ((m as f64) + 1.0).log2() + 0.5 * (nt / (nt - 1.0)).log2() + upper_const())
        .floor();
    let lower = (f - 0.5 * nt.log2() + lower_const()).ceil();
    let exact = gsim_rate_max(n_t, m)?.rate as f64;
    Ok(RateBounds { lower, upper, exact, f_value: f })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_fixtures() {
        assert!((f_function(32, 24, 2.0) - 73.96089998269225).abs() < 1e-9);
        assert!((f_function(2, 1, 1.0) - 3.0).abs() < 1e-12);
        // Symmetric split with log2 M = 0 collapses to n_t.
        assert!((f_function(8, 4, 0.0) - 8.0).abs() < 1e-12);
    }

    #[test]
    fn f_endpoint_convention() {
        // n_rf = n_t invokes 0·log2 0 := 0 rather than NaN.
        let v = f_function(8, 8, 2.0);
        assert!(v.is_finite());
        assert!((v - (24.0 - 8.0)).abs() < 1e-12); // 8·3 − 8·3 − 0 + 16
    }

    #[test]
    fn bounds_fixture_32_24_4qam() {
        let b = gsim_rate_bounds(32, 24, 4).unwrap();
        assert_eq!(b.lower, 70.0);
        assert_eq!(b.upper, 72.0);
        assert_eq!(b.exact, 71.0);
        assert!(b.sandwiches_exact());
    }

    #[test]
    fn bounds_fixture_tiny() {
        let b = gsim_rate_bounds(2, 1, 2).unwrap();
        assert_eq!(b.exact, 2.0);
        assert_eq!((b.lower, b.upper), (1.0, 2.0));
        assert!(b.sandwiches_exact());
    }

    #[test]
    fn bounds_grid_16_bpsk_within_two_bpcu() {
        for n_rf in 1..=15 {
            let b = gsim_rate_bounds(16, n_rf, 2).unwrap();
            assert!(b.sandwiches_exact(), "violated at n_rf={n_rf}: {b:?}");
            assert!(b.max_gap() <= 2.0, "gap > 2 at n_rf={n_rf}: {b:?}");
        }
    }

    #[test]
    fn n_rf_star_fixtures() {
        let (star, rounded) = n_rf_star(32, 4).unwrap();
        assert!((star - 25.6).abs() < 1e-12);
        assert_eq!(rounded, 26);
        let (star, rounded) = n_rf_star(17, 16).unwrap();
        assert!((star - 16.0).abs() < 1e-12);
        assert_eq!(rounded, 16);
    }

    #[test]
    fn rate_max_bounds_fixtures() {
        let b = gsim_rate_max_bounds(32, 4).unwrap();
        assert_eq!((b.lower, b.upper, b.exact), (71.0, 73.0, 71.0));
        assert!(b.sandwiches_exact());

        let b = gsim_rate_max_bounds(2, 2).unwrap();
        assert_eq!(b.exact, 2.0);
        assert!(b.sandwiches_exact());
    }

    #[test]
    fn rate_max_bounds_grid() {
        for n_t in 4..=32 {
            for m in [2usize, 4] {
                let b = gsim_rate_max_bounds(n_t, m).unwrap();
                assert!(b.sandwiches_exact(), "violated at n_t={n_t}, M={m}: {b:?}");
                assert!(b.max_gap() <= 2.0, "gap > 2 at n_t={n_t}, M={m}: {b:?}");
            }
        }
    }

    #[test]
    fn endpoint_rf_values_are_rejected() {
        assert_eq!(
            gsim_rate_bounds(8, 0, 4).unwrap_err(),
            RateError::BoundsRange { n_t: 8, n_rf: 0 }
        );
        assert_eq!(
            gsim_rate_bounds(8, 8, 4).unwrap_err(),
            RateError::BoundsRange { n_t: 8, n_rf: 8 }
        );
    }
}
