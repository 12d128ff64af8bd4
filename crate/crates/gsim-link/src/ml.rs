//! Brute-force maximum-likelihood detection over the full codebook.

use crate::linalg::{residual_norm_sq, CMat};
use crate::{enumerate_codebook, DetectionResult, DetectorKind, GsimConfig, LinkError};
use num_complex::Complex64;

/// Minimizes `‖y − H u‖²` over every valid transmit vector, breaking ties
/// toward the earliest bit string in enumeration order. Guarded to rates
/// the codebook enumerator accepts (≤ 2^20 candidates).
pub fn detect_ml_bruteforce(
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
    let book = enumerate_codebook(config)?;
    let mut best: Option<(f64, usize)> = None;
    for (idx, (_, x)) in book.iter().enumerate() {
        let cost = residual_norm_sq(y, h, x.entries());
        match best {
            Some((c, _)) if cost >= c => {}
            _ => best = Some((cost, idx)),
        }
    }
    let (cost, idx) = best.expect("codebook is never empty");
    let (bits, x_hat) = book.into_iter().nth(idx).expect("index in range");
    Ok(DetectionResult {
        x_hat,
        bits,
        cost,
        iterations: 1 << config.bits_per_use(),
        restarts: 0,
        fallback_used: false,
        detector: DetectorKind::Ml,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{gsim_encode, sample_channel};
    use im_core::{index_to_bits, ModulationAlphabet, PatternSet};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cfg() -> GsimConfig {
        GsimConfig::new(
            4,
            2,
            4,
            ModulationAlphabet::gray_qam(4).unwrap(),
            PatternSet::new(4, 2).unwrap(),
            0.1,
        )
        .unwrap()
    }

    #[test]
    fn noiseless_recovery_of_every_codeword() {
        let config = cfg();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let h = sample_channel(&mut rng, 4, 4);
        for value in 0..64 {
            let bits = index_to_bits(value, 6);
            let x = gsim_encode(&bits, &config).unwrap();
            let y = h.mul_vec(x.entries());
            let r = detect_ml_bruteforce(&y, &h, &config).unwrap();
            assert_eq!(r.bits, bits, "codeword {value}");
            assert!(r.cost < 1e-18);
        }
    }

    #[test]
    fn returned_cost_is_the_codebook_minimum() {
        let config = cfg();
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..50 {
            let h = sample_channel(&mut rng, 4, 4);
            let y: Vec<Complex64> = crate::sample_noise(&mut rng, 2.0, 4);
            let r = detect_ml_bruteforce(&y, &h, &config).unwrap();
            for (_, u) in enumerate_codebook(&config).unwrap() {
                assert!(r.cost <= residual_norm_sq(&y, &h, u.entries()) + 1e-15);
            }
        }
    }

    #[test]
    fn candidate_count_matches_the_rate() {
        let config = cfg();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let h = sample_channel(&mut rng, 4, 4);
        let y = crate::sample_noise(&mut rng, 1.0, 4);
        let r = detect_ml_bruteforce(&y, &h, &config).unwrap();
        assert_eq!(r.iterations, 64);
    }

    #[test]
    fn oversized_search_space_is_refused() {
        // 6 index bits + 16 symbol bits = 22 > 20: the config builds, the
        // enumeration refuses.
        let config = GsimConfig::new(
            8,
            4,
            4,
            ModulationAlphabet::gray_qam(16).unwrap(),
            PatternSet::new(8, 4).unwrap(),
            0.1,
        )
        .unwrap();
        let err = enumerate_codebook(&config).unwrap_err();
        assert_eq!(err, LinkError::SearchSpace { rate: 22, max: 20 });
    }
}
