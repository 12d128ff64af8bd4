//! Linear MMSE detection with projection onto the valid-pattern set.

use crate::linalg::{hermitian_solve, residual_norm_sq, CMat};
use crate::{gsim_decode, DetectionResult, DetectorKind, GsimConfig, LinkError, TransmitVector};
use num_complex::Complex64;

/// Computes the regularized linear estimate
/// `x̃ = (H^H H + σ² I)^{-1} H^H y`, picks the pattern in 𝕊 capturing the
/// most estimated energy (ties to the lowest pattern index), quantizes the
/// supported entries to the nearest alphabet point, and zeroes the rest.
///
/// The output is always a valid transmit vector. With σ² = 0 the solve
/// fails on rank-deficient channels, which is reported as
/// [`LinkError::SingularSystem`].
pub fn detect_mmse(
    y: &[Complex64],
    h: &CMat,
    config: &GsimConfig,
) -> Result<DetectionResult, LinkError> {
    if h.rows() != config.n_r() || h.cols() != config.n_t() {
        return Err(LinkError::DimensionMismatch {
            expected: config.n_r() * config.n_t(),
            got: h.rows() * h.cols(),
        });
    }
    if y.len() != config.n_r() {
        return Err(LinkError::DimensionMismatch { expected: config.n_r(), got: y.len() });
    }
    let mut gram = h.gram();
    let sigma2 = config.noise_variance();
    for i in 0..gram.rows() {
        *gram.at_mut(i, i) += Complex64::new(sigma2, 0.0);
    }
    let rhs = h.herm_mul_vec(y);
    let estimate = hermitian_solve(&gram, &rhs)?;

    let set = config.pattern_set();
    let mut best_idx = 0usize;
    let mut best_energy = f64::NEG_INFINITY;
    for p in 0..set.len() {
        let energy: f64 = set.support(p).iter().map(|&i| estimate[i].norm_sqr()).sum();
        if energy > best_energy {
            best_energy = energy;
            best_idx = p;
        }
    }

    let mut entries = vec![Complex64::new(0.0, 0.0); config.n_t()];
    for &i in &set.support(best_idx) {
        entries[i] = config.alphabet().quantize(estimate[i]);
    }
    let x_hat = TransmitVector::new(entries, config)?;
    let bits = gsim_decode(x_hat.entries(), config)?;
    let cost = residual_norm_sq(y, h, x_hat.entries());
    Ok(DetectionResult {
        x_hat,
        bits,
        cost,
        iterations: 0,
        restarts: 0,
        fallback_used: false,
        detector: DetectorKind::Mmse,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{gsim_encode, sample_channel, sample_noise};
    use im_core::{index_to_bits, ModulationAlphabet, PatternSet};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cfg(sigma2: f64) -> GsimConfig {
        GsimConfig::new(
            4,
            2,
            4,
            ModulationAlphabet::gray_qam(4).unwrap(),
            PatternSet::new(4, 2).unwrap(),
            sigma2,
        )
        .unwrap()
    }

    #[test]
    fn identity_channel_zero_noise_recovers_every_codeword() {
        let config = GsimConfig::new(
            4,
            2,
            4,
            ModulationAlphabet::gray_qam(4).unwrap(),
            PatternSet::new(4, 2).unwrap(),
            0.0,
        )
        .unwrap();
        let h = CMat::identity(4);
        for value in 0..64 {
            let bits = index_to_bits(value, 6);
            let x = gsim_encode(&bits, &config).unwrap();
            let y = h.mul_vec(x.entries());
            let r = detect_mmse(&y, &h, &config).unwrap();
            assert_eq!(r.x_hat, x, "codeword {value}");
            assert_eq!(r.bits, bits);
            assert_eq!(r.cost, 0.0);
        }
    }

    #[test]
    fn output_support_is_always_valid() {
        let config = cfg(0.5);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10_000 {
            let h = sample_channel(&mut rng, 4, 4);
            let y: Vec<Complex64> = sample_noise(&mut rng, 4.0, 4)
                .into_iter()
                .map(|v| v + Complex64::new(rng.random::<f64>(), rng.random::<f64>()))
                .collect();
            let r = detect_mmse(&y, &h, &config).unwrap();
            let mask: Vec<bool> =
                r.x_hat.entries().iter().map(|v| v.norm_sqr() > 0.0).collect();
            assert!(config.pattern_set().contains(&mask));
        }
    }

    #[test]
    fn singular_zero_noise_system_is_reported() {
        let config = cfg(0.0);
        // Two identical columns twice → rank 2 < 4 Gram, σ² = 0.
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let base = sample_channel(&mut rng, 4, 2);
        let mut h = CMat::zeros(4, 4);
        for r in 0..4 {
            for c in 0..4 {
                *h.at_mut(r, c) = base.at(r, c % 2);
            }
        }
        let y = vec![Complex64::new(1.0, 0.0); 4];
        assert_eq!(detect_mmse(&y, &h, &config).unwrap_err(), LinkError::SingularSystem);
    }
}
