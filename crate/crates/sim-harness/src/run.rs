//! The Monte Carlo engine: deterministic, worker-count-independent BER
//! sweeps over an SNR grid.
//!
//! Every trial draws all of its randomness from an RNG seeded by
//! `(master_seed, snr index, trial index)`, and trials are dispatched in
//! fixed-size rounds whose error counts are combined with integer sums.
//! Stop decisions happen only at round boundaries, so the set of trials
//! run — and therefore every output number — is identical whether the
//! pool has one worker or many.

use crate::config::{Detector, LinkSetup, SimConfig};
use crate::record::BerRecord;
use crate::seed::trial_seed;
use crate::HarnessError;
use gsfim_link::{detect_ml_gsfim, gsfim_encode, GsfimConfig, OfdmProcessor, SelectiveChannel};
use gsim_link::{
    detect_gsim_gibbs, detect_ml_bruteforce, detect_mmse, gsim_encode, sample_channel,
    sample_noise, GsimConfig,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::time::Instant;

/// Trials dispatched between stop-rule checks.
const ROUND_TRIALS: u64 = 512;

/// Order-independent per-round tallies (integer sums only).
#[derive(Debug, Default, Clone, Copy)]
struct Tally {
    trials: u64,
    bit_errors: u64,
    iterations: u64,
    restarts: u64,
    fallbacks: u64,
}

impl Tally {
    fn merge(self, other: Tally) -> Tally {
        Tally {
            trials: self.trials + other.trials,
            bit_errors: self.bit_errors + other.bit_errors,
            iterations: self.iterations + other.iterations,
            restarts: self.restarts + other.restarts,
            fallbacks: self.fallbacks + other.fallbacks,
        }
    }
}

/// Runs the full SNR sweep described by `config` and returns one record
/// per SNR point, in order.
pub fn run_ber_sweep(config: &SimConfig) -> Result<Vec<BerRecord>, HarnessError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| HarnessError::Pool(e.to_string()))?;

    let bits_per_block = config.bits_per_block() as u64;
    let mut records = Vec::with_capacity(config.snr_db.len());

    for (snr_index, &snr_db) in config.snr_db.iter().enumerate() {
        let started = Instant::now();
        let sigma2 = config.noise_variance_for(snr_db);
        let point = SnrPoint::new(config, sigma2)?;

        let mut total = Tally::default();
        while total.bit_errors < config.min_bit_errors && total.trials < config.max_trials {
            let round = ROUND_TRIALS.min(config.max_trials - total.trials);
            let first = total.trials;
            let batch = pool.install(|| {
                (first..first + round)
                    .into_par_iter()
                    .map(|trial| point.run_trial(config.master_seed, snr_index as u64, trial))
                    .reduce(Tally::default, Tally::merge)
            });
            total = total.merge(batch);
        }

        records.push(BerRecord {
            scheme: config.scheme.as_str().to_string(),
            detector: config.detector.as_str().to_string(),
            snr_db,
            trials: total.trials,
            bit_errors: total.bit_errors,
            ber: total.bit_errors as f64 / (total.trials * bits_per_block) as f64,
            rate_bpcu: config.rate_bpcu(),
            mean_iterations: total.iterations as f64 / total.trials as f64,
            mean_restarts: total.restarts as f64 / total.trials as f64,
            fallback_count: total.fallbacks,
            wall_time_s: config.timing.then(|| started.elapsed().as_secs_f64()),
            truncated: total.bit_errors < config.min_bit_errors,
        });
    }
    Ok(records)
}

/// Everything one SNR point's trials share: the link config carrying the
/// point's noise variance, and the channel normalization that fixes the
/// average received symbol energy at 1.
enum SnrPoint {
    Gsim { config: GsimConfig, detector: Detector, scale: f64 },
    Gsfim { config: GsfimConfig, ofdm: OfdmProcessor, scale: f64 },
}

impl SnrPoint {
    fn new(sim: &SimConfig, sigma2: f64) -> Result<Self, HarnessError> {
        Ok(match &sim.link {
            LinkSetup::Gsim(base) => SnrPoint::Gsim {
                config: base.with_noise_variance(sigma2)?,
                detector: sim.detector,
                scale: 1.0 / base.alphabet().average_energy().sqrt(),
            },
            LinkSetup::Gsfim(base) => SnrPoint::Gsfim {
                config: base.with_noise_variance(sigma2)?,
                ofdm: OfdmProcessor::for_config(base),
                scale: 1.0 / base.alphabet().average_energy().sqrt(),
            },
        })
    }

    /// One independent transmit–detect–count trial. A validated config
    /// cannot fail mid-trial, so internal errors abort loudly rather than
    /// skewing the statistics.
    fn run_trial(&self, master_seed: u64, snr_index: u64, trial: u64) -> Tally {
        let mut rng = ChaCha8Rng::from_seed(trial_seed(master_seed, snr_index, trial));
        match self {
            SnrPoint::Gsim { config, detector, scale } => {
                let bits: Vec<bool> = (0..config.bits_per_use()).map(|_| rng.random()).collect();
                let x = gsim_encode(&bits, config).expect("encode");
                let h = sample_channel(&mut rng, config.n_r(), config.n_t()).scaled(*scale);
                let mut y = h.mul_vec(x.entries());
                let noise = sample_noise(&mut rng, config.noise_variance(), config.n_r());
                for (v, w) in y.iter_mut().zip(noise) {
                    *v += w;
                }
                let det = match detector {
                    Detector::Mmse => detect_mmse(&y, &h, config),
                    Detector::Ml => detect_ml_bruteforce(&y, &h, config),
                    Detector::Gibbs => detect_gsim_gibbs(&y, &h, config, &mut rng),
                }
                .expect("detection");
                Tally {
                    trials: 1,
                    bit_errors: count_mismatches(&bits, &det.bits),
                    iterations: det.iterations,
                    restarts: det.restarts as u64,
                    fallbacks: det.fallback_used as u64,
                }
            }
            SnrPoint::Gsfim { config, ofdm, scale } => {
                let bits: Vec<bool> = (0..config.bits_per_frame()).map(|_| rng.random()).collect();
                let frame = gsfim_encode(&bits, config).expect("encode");
                let channel =
                    SelectiveChannel::sample(&mut rng, config.n_r(), config.n_t(), config.l(), config.n_sub())
                        .scaled(*scale);
                let streams = ofdm.modulate_frame(&frame).expect("modulate");
                let mut rx = channel.apply(&streams, &frame.active_antennas()).expect("channel");
                for row in &mut rx {
                    let noise = sample_noise(&mut rng, config.noise_variance(), row.len());
                    for (v, w) in row.iter_mut().zip(noise) {
                        *v += w;
                    }
                }
                let y = ofdm.demodulate_streams(&rx).expect("demodulate");
                let det = detect_ml_gsfim(&y, channel.per_subcarrier(), config).expect("detect");
                let decoded = det.decode(config).expect("decode");
                Tally {
                    trials: 1,
                    bit_errors: count_mismatches(&bits, &decoded),
                    iterations: det.evaluations(),
                    restarts: 0,
                    fallbacks: 0,
                }
            }
        }
    }
}

fn count_mismatches(a: &[bool], b: &[bool]) -> u64 {
    a.iter().zip(b).filter(|(x, y)| x != y).count() as u64
}
