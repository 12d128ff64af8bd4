//! Flat Rayleigh MIMO channel and receiver-noise sampling.

use crate::linalg::CMat;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R, variance: f64) -> Complex64 {
    let scale = (variance / 2.0).sqrt();
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(scale * re, scale * im)
}

/// Draws an `n_r × n_t` channel with i.i.d. circularly symmetric complex
/// Gaussian entries of unit variance (0.5 per real dimension), row-major
/// draw order.
pub fn sample_channel<R: Rng + ?Sized>(rng: &mut R, n_r: usize, n_t: usize) -> CMat {
    let mut h = CMat::zeros(n_r, n_t);
    for r in 0..n_r {
        for c in 0..n_t {
            *h.at_mut(r, c) = complex_gaussian(rng, 1.0);
        }
    }
    h
}

/// Draws a length-`n_r` noise vector with i.i.d. complex Gaussian entries
/// of variance σ² each; σ² = 0 yields an exactly zero vector.
pub fn sample_noise<R: Rng + ?Sized>(rng: &mut R, sigma2: f64, n_r: usize) -> Vec<Complex64> {
    (0..n_r).map(|_| complex_gaussian(rng, sigma2)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn channel_entries_have_unit_average_power() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = 100_000;
        let mut acc = 0.0;
        for _ in 0..n {
            acc += complex_gaussian(&mut rng, 1.0).norm_sqr();
        }
        let mean = acc / n as f64;
        assert!((mean - 1.0).abs() < 0.02, "mean |h|² = {mean}");
    }

    #[test]
    fn noise_variance_scales_as_requested() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let sigma2 = 0.25;
        let n = 100_000;
        let mut acc = 0.0;
        for _ in 0..n {
            acc += complex_gaussian(&mut rng, sigma2).norm_sqr();
        }
        let mean = acc / n as f64;
        assert!((mean - sigma2).abs() < 0.01, "mean |n|² = {mean}");
    }

    #[test]
    fn zero_variance_noise_is_exactly_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for v in sample_noise(&mut rng, 0.0, 16) {
            assert_eq!(v.norm_sqr(), 0.0);
        }
    }

    #[test]
    fn fixed_seed_reproduces_the_channel() {
        let h1 = sample_channel(&mut ChaCha8Rng::seed_from_u64(42), 3, 5);
        let h2 = sample_channel(&mut ChaCha8Rng::seed_from_u64(42), 3, 5);
        assert_eq!(h1, h2);
    }

    #[test]
    fn channel_has_expected_shape() {
        let h = sample_channel(&mut ChaCha8Rng::seed_from_u64(1), 2, 6);
        assert_eq!((h.rows(), h.cols()), (2, 6));
    }
}
