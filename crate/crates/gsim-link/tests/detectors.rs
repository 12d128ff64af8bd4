//! Cross-detector behavior on shared channel instances: orderings the
//! detectors must reproduce and invariants none of them may break.

use gsim_link::{
    detect_gsim_gibbs, detect_ml_bruteforce, detect_mmse, gsim_encode, sample_channel,
    sample_noise, GsimConfig,
};
use im_core::{index_to_bits, ModulationAlphabet, PatternSet};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn config(n_t: usize, n_rf: usize, n_r: usize, m: usize, sigma2: f64) -> GsimConfig {
    GsimConfig::new(
        n_t,
        n_rf,
        n_r,
        ModulationAlphabet::gray_qam(m).unwrap(),
        PatternSet::new(n_t, n_rf).unwrap(),
        sigma2,
    )
    .unwrap()
}

/// σ² for a given SNR (dB) under the unit-average-energy convention
/// (channel pre-scaled by 1/√E_avg): SNR = n_rf/σ².
fn sigma2_for(snr_db: f64, n_rf: usize) -> f64 {
    n_rf as f64 / 10f64.powf(snr_db / 10.0)
}

fn count_bit_errors(a: &[bool], b: &[bool]) -> u64 {
    a.iter().zip(b.iter()).filter(|(x, y)| x != y).count() as u64
}

#[test]
fn noiseless_channel_gives_zero_errors_for_every_detector() {
    let cfg = config(4, 2, 4, 4, 1e-9);
    let scale = 1.0 / cfg.alphabet().average_energy().sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for _ in 0..40 {
        let h = sample_channel(&mut rng, 4, 4).scaled(scale);
        let bits = index_to_bits(rng.random_range(0..64), 6);
        let x = gsim_encode(&bits, &cfg).unwrap();
        let y = h.mul_vec(x.entries());
        assert_eq!(detect_mmse(&y, &h, &cfg).unwrap().bits, bits);
        assert_eq!(detect_ml_bruteforce(&y, &h, &cfg).unwrap().bits, bits);
        assert_eq!(detect_gsim_gibbs(&y, &h, &cfg, &mut rng).unwrap().bits, bits);
    }
}

#[test]
fn mmse_is_clearly_worse_than_ml_at_moderate_snr() {
    // (4,3) geometry, 4-QAM, n_r = 4, 10 dB: the linear front end projects
    // onto patterns badly enough that its error count dwarfs ML's.
    let sigma2 = sigma2_for(10.0, 3);
    let cfg = config(4, 3, 4, 4, sigma2);
    let scale = 1.0 / cfg.alphabet().average_energy().sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    let mut mmse_errors = 0u64;
    let mut ml_errors = 0u64;
    for _ in 0..600 {
        let h = sample_channel(&mut rng, 4, 4).scaled(scale);
        let bits = index_to_bits(rng.random_range(0..256), 8);
        let x = gsim_encode(&bits, &cfg).unwrap();
        let noise = sample_noise(&mut rng, sigma2, 4);
        let y: Vec<Complex64> = h
            .mul_vec(x.entries())
            .iter()
            .zip(noise.iter())
            .map(|(a, b)| a + b)
            .collect();
        mmse_errors += count_bit_errors(&detect_mmse(&y, &h, &cfg).unwrap().bits, &bits);
        ml_errors += count_bit_errors(&detect_ml_bruteforce(&y, &h, &cfg).unwrap().bits, &bits);
    }
    assert!(ml_errors > 0, "SNR too high for a meaningful comparison");
    assert!(
        mmse_errors > 3 * ml_errors,
        "expected MMSE to trail ML decisively, got mmse={mmse_errors}, ml={ml_errors}"
    );
}

#[test]
fn gibbs_tracks_ml_errors_at_the_bit_level() {
    // Same instances through both detectors: the sampler's bit errors stay
    // within a small factor of ML's (it almost always finds the ML point).
    let sigma2 = sigma2_for(8.0, 2);
    let cfg = config(4, 2, 4, 4, sigma2);
    let scale = 1.0 / cfg.alphabet().average_energy().sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let mut gibbs_errors = 0u64;
    let mut ml_errors = 0u64;
    for _ in 0..400 {
        let h = sample_channel(&mut rng, 4, 4).scaled(scale);
        let bits = index_to_bits(rng.random_range(0..64), 6);
        let x = gsim_encode(&bits, &cfg).unwrap();
        let noise = sample_noise(&mut rng, sigma2, 4);
        let y: Vec<Complex64> = h
            .mul_vec(x.entries())
            .iter()
            .zip(noise.iter())
            .map(|(a, b)| a + b)
            .collect();
        gibbs_errors +=
            count_bit_errors(&detect_gsim_gibbs(&y, &h, &cfg, &mut rng).unwrap().bits, &bits);
        ml_errors += count_bit_errors(&detect_ml_bruteforce(&y, &h, &cfg).unwrap().bits, &bits);
    }
    assert!(ml_errors > 0);
    assert!(
        gibbs_errors <= ml_errors + ml_errors / 2 + 8,
        "sampler drifted from ML: gibbs={gibbs_errors}, ml={ml_errors}"
    );
}

#[test]
fn detectors_emit_consistent_json_traces() {
    let sigma2 = sigma2_for(6.0, 2);
    let cfg = config(4, 2, 2, 4, sigma2);
    let scale = 1.0 / cfg.alphabet().average_energy().sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    let h = sample_channel(&mut rng, 2, 4).scaled(scale);
    let bits = index_to_bits(0b011010, 6);
    let x = gsim_encode(&bits, &cfg).unwrap();
    let noise = sample_noise(&mut rng, sigma2, 2);
    let y: Vec<Complex64> = h
        .mul_vec(x.entries())
        .iter()
        .zip(noise.iter())
        .map(|(a, b)| a + b)
        .collect();
    for r in [
        detect_mmse(&y, &h, &cfg).unwrap(),
        detect_ml_bruteforce(&y, &h, &cfg).unwrap(),
        detect_gsim_gibbs(&y, &h, &cfg, &mut rng).unwrap(),
    ] {
        let line = r.to_json_line();
        assert!(line.starts_with('{') && line.ends_with('}'));
        for key in ["detector", "cost", "iterations", "restarts", "fallback_used", "decoded_bits"]
        {
            assert!(line.contains(&format!("\"{key}\":")), "missing {key} in {line}");
        }
        assert!(!line.contains('\n'));
    }
}

#[test]
fn restart_counters_stay_within_budget() {
    let sigma2 = sigma2_for(0.0, 2);
    let cfg = config(4, 2, 4, 4, sigma2);
    let scale = 1.0 / cfg.alphabet().average_energy().sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    for _ in 0..100 {
        let h = sample_channel(&mut rng, 4, 4).scaled(scale);
        let bits = index_to_bits(rng.random_range(0..64), 6);
        let x = gsim_encode(&bits, &cfg).unwrap();
        let noise = sample_noise(&mut rng, sigma2, 4);
        let y: Vec<Complex64> = h
            .mul_vec(x.entries())
            .iter()
            .zip(noise.iter())
            .map(|(a, b)| a + b)
            .collect();
        let r = detect_gsim_gibbs(&y, &h, &cfg, &mut rng).unwrap();
        assert!(r.restarts >= 1 && r.restarts <= 20);
        // Full budget: 20 restarts × 256 pair steps.
        assert!(r.iterations <= 20 * 256);
    }
}
