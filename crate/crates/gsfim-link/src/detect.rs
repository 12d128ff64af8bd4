//! Separable ML detection over the per-subcarrier flat model.
//!
//! The joint metric `d(a, z¹…z^{n_b}) = Σ_i ‖y^i − G_i^a z^i‖²` is a sum of
//! independent per-sub-matrix terms, and within a sub-matrix — once the
//! frequency pattern is fixed — a sum of independent per-subcarrier terms.
//! The detector therefore minimizes subcarrier by subcarrier for every
//! (pattern, column-mask) pair and assembles the global argmin exactly,
//! instead of walking the full `|𝕊_a|·(2^{k_f} M^k)^{n_b}` product space.

use crate::{gsfim_decode, GsfimConfig, GsfimError};
use gsim_link::CMat;
use num_complex::Complex64;
use std::collections::HashMap;

/// Hard ceiling on per-sub-matrix candidate evaluations.
pub const WORK_GUARD: u128 = 1 << 20;

/// Outcome of GSFIM detection: the antenna pattern and the `n_b` stacked
/// sub-matrix vectors minimizing the ML metric, with bookkeeping.
#[derive(Debug, Clone, PartialEq)]
pub struct GsfimDetection {
    antenna_pattern: Vec<bool>,
    sub_blocks: Vec<Vec<Complex64>>,
    cost: f64,
    evaluations: u64,
}

impl GsfimDetection {
    /// Detected antenna activation pattern.
    pub fn antenna_pattern(&self) -> &[bool] {
        &self.antenna_pattern
    }

    /// Detected sub-matrix vectors, stacked subcarrier by subcarrier.
    pub fn sub_blocks(&self) -> &[Vec<Complex64>] {
        &self.sub_blocks
    }

    /// Final ML metric `Σ_n ‖y_n − H_n^a z_n‖²`.
    pub fn cost(&self) -> f64 {
        self.cost
    }

    /// Candidate symbol tuples actually evaluated.
    pub fn evaluations(&self) -> u64 {
        self.evaluations
    }

    /// Inverse-maps the detection to the transmitted bit stream.
    pub fn decode(&self, config: &GsfimConfig) -> Result<Vec<bool>, GsfimError> {
        gsfim_decode(&self.antenna_pattern, &self.sub_blocks, config)
    }
}

/// Candidate evaluations one sub-matrix costs: `Σ_{f∈𝕊_f} Σ_c M^{w_c(f)}`
/// where `w_c(f)` is the number of active rows pattern `f` puts in column
/// `c`. This is what the detection guard compares against, independent of
/// memoization.
pub fn ml_block_work(config: &GsfimConfig) -> u128 {
    let m = config.alphabet().order() as u128;
    let mut work: u128 = 0;
    for pattern in config.frequency_patterns().patterns() {
        for c in 0..config.n_f() {
            let w = (0..config.n_rf()).filter(|r| pattern[r * config.n_f() + c]).count() as u32;
            work = work.saturating_add(m.checked_pow(w).unwrap_or(u128::MAX));
        }
    }
    work
}

/// Materializes the block-diagonal sub-matrix channel `G_i^a`: an
/// `n_r·n_f × n_rf·n_f` matrix whose `j`th diagonal block is the response
/// on subcarrier `i·n_f + j` restricted to the active antennas.
pub fn block_channel(
    channels: &[CMat],
    active: &[usize],
    block: usize,
    config: &GsfimConfig,
) -> CMat {
    let (n_r, n_rf, n_f) = (config.n_r(), config.n_rf(), config.n_f());
    let mut g = CMat::zeros(n_r * n_f, n_rf * n_f);
    for j in 0..n_f {
        let h = &channels[block * n_f + j];
        for r in 0..n_r {
            for (p, &antenna) in active.iter().enumerate() {
                *g.at_mut(j * n_r + r, j * n_rf + p) = h.at(r, antenna);
            }
        }
    }
    g
}

/// ML detection of one frame from its per-subcarrier received vectors and
/// channel responses.
///
/// `y[n]` is the `n_r`-vector received on subcarrier `n`; `channels[n]`
/// the full `n_r × n_t` response there. The search is exhaustive over the
/// antenna set, frequency patterns, and symbol assignments, evaluated
/// separably, so the result equals the joint argmin; ties resolve to the
/// earliest candidate in enumeration order.
pub fn detect_ml_gsfim(
    y: &[Vec<Complex64>],
    channels: &[CMat],
    config: &GsfimConfig,
) -> Result<GsfimDetection, GsfimError> {
    let (n_r, n_sub) = (config.n_r(), config.n_sub());
    if y.len() != n_sub {
        return Err(GsfimError::DimensionMismatch { expected: n_sub, got: y.len() });
    }
    if channels.len() != n_sub {
        return Err(GsfimError::DimensionMismatch { expected: n_sub, got: channels.len() });
    }
    for y_n in y {
        if y_n.len() != n_r {
            return Err(GsfimError::DimensionMismatch { expected: n_r, got: y_n.len() });
        }
    }
    for h in channels {
        if h.rows() != n_r || h.cols() != config.n_t() {
            return Err(GsfimError::DimensionMismatch {
                expected: n_r * config.n_t(),
                got: h.rows() * h.cols(),
            });
        }
    }
    let work = ml_block_work(config);
    if work > WORK_GUARD {
        return Err(GsfimError::SearchSpace { work, max: WORK_GUARD });
    }

    let (n_rf, n_f, n_b) = (config.n_rf(), config.n_f(), config.n_b());
    let points = config.alphabet().points();
    let m = points.len();
    let mut evaluations = 0u64;
    let mut best: Option<GsfimDetection> = None;

    for antenna_pattern in config.antenna_patterns().patterns() {
        let active = im_core::support_of(antenna_pattern);
        // Active-antenna columns per subcarrier, column-major for cheap reuse.
        let ha: Vec<Vec<Vec<Complex64>>> = channels
            .iter()
            .map(|h| active.iter().map(|&a| h.col(a)).collect())
            .collect();
        // Per-subcarrier minima keyed by the column's active-row mask.
        let mut col_min: Vec<HashMap<u64, (f64, Vec<Complex64>)>> =
            vec![HashMap::new(); n_sub];
        let mut total = 0.0;
        let mut blocks = Vec::with_capacity(n_b);
        for i in 0..n_b {
            let mut block_best: Option<(f64, Vec<Complex64>)> = None;
            for pattern in config.frequency_patterns().patterns() {
                let mut cost = 0.0;
                for c in 0..n_f {
                    let n = i * n_f + c;
                    let rows: Vec<usize> =
                        (0..n_rf).filter(|r| pattern[r * n_f + c]).collect();
                    let mask = rows.iter().fold(0u64, |acc, r| acc | 1 << r);
                    let entry = col_min[n].entry(mask).or_insert_with(|| {
                        evaluations += (m as u64).pow(rows.len() as u32);
                        minimize_column(&y[n], &ha[n], &rows, points)
                    });
                    cost += entry.0;
                }
                if block_best.as_ref().map_or(true, |(c, _)| cost < *c) {
                    // Assemble the stacked sub-matrix vector for this pattern.
                    let mut z = vec![Complex64::new(0.0, 0.0); n_rf * n_f];
                    for c in 0..n_f {
                        let n = i * n_f + c;
                        let rows: Vec<usize> =
                            (0..n_rf).filter(|r| pattern[r * n_f + c]).collect();
                        let mask = rows.iter().fold(0u64, |acc, r| acc | 1 << r);
                        let symbols = &col_min[n][&mask].1;
                        for (p, &r) in rows.iter().enumerate() {
                            z[c * n_rf + r] = symbols[p];
                        }
                    }
                    block_best = Some((cost, z));
                }
            }
            let (cost, z) = block_best.expect("pattern set is non-empty");
            total += cost;
            blocks.push(z);
        }
        if best.as_ref().map_or(true, |b| total < b.cost) {
            best = Some(GsfimDetection {
                antenna_pattern: antenna_pattern.clone(),
                sub_blocks: blocks,
                cost: total,
                evaluations: 0,
            });
        }
    }
    let mut det = best.expect("antenna pattern set is non-empty");
    det.evaluations = evaluations;
    Ok(det)
}

/// Exhaustive minimum of `‖y − Σ_p h[rows[p]]·s_p‖²` over symbol tuples,
/// first tuple in counting order (earlier row = more significant digit)
/// winning ties. Returns the minimum and its symbols aligned with `rows`.
fn minimize_column(
    y: &[Complex64],
    h_cols: &[Vec<Complex64>],
    rows: &[usize],
    points: &[Complex64],
) -> (f64, Vec<Complex64>) {
    let w = rows.len();
    let m = points.len();
    if w == 0 {
        return (y.iter().map(|v| v.norm_sqr()).sum(), Vec::new());
    }
    let mut best_cost = f64::INFINITY;
    let mut best_labels = vec![0usize; w];
    let mut labels = vec![0usize; w];
    let mut residual = vec![Complex64::new(0.0, 0.0); y.len()];
    loop {
        residual.copy_from_slice(y);
        for (p, &label) in labels.iter().enumerate() {
            let s = points[label];
            for (res, h) in residual.iter_mut().zip(&h_cols[rows[p]]) {
                *res -= h * s;
            }
        }
        let cost: f64 = residual.iter().map(|v| v.norm_sqr()).sum();
        if cost < best_cost {
            best_cost = cost;
            best_labels.copy_from_slice(&labels);
        }
        // Counting order: last row is the least-significant digit.
        let mut p = w;
        loop {
            if p == 0 {
                return (best_cost, best_labels.iter().map(|&l| points[l]).collect());
            }
            p -= 1;
            labels[p] += 1;
            if labels[p] < m {
                break;
            }
            labels[p] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{gsfim_encode, GsfimConfig};
    use gsim_link::sample_channel;
    use im_core::ModulationAlphabet;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn fig_config(n_r: usize) -> GsfimConfig {
        GsfimConfig::new(3, 2, n_r, 8, 4, 7, 4, ModulationAlphabet::gray_qam(4).unwrap(), 0.1)
            .unwrap()
    }

    fn subcarrier_channels<R: Rng + ?Sized>(
        rng: &mut R,
        cfg: &GsfimConfig,
    ) -> Vec<CMat> {
        (0..cfg.n_sub()).map(|_| sample_channel(rng, cfg.n_r(), cfg.n_t())).collect()
    }

    fn transmit_noiseless(
        frame: &crate::GsfimFrame,
        channels: &[CMat],
    ) -> Vec<Vec<Complex64>> {
        let active = frame.active_antennas();
        (0..channels.len())
            .map(|n| {
                let z: Vec<Complex64> =
                    (0..frame.grid().rows()).map(|r| frame.grid().at(r, n)).collect();
                let mut y = vec![Complex64::new(0.0, 0.0); channels[n].rows()];
                for (p, &a) in active.iter().enumerate() {
                    for (acc, h) in y.iter_mut().zip(channels[n].col(a)) {
                        *acc += h * z[p];
                    }
                }
                y
            })
            .collect()
    }

    #[test]
    fn block_channel_is_block_diagonal_with_the_right_shape() {
        let cfg = fig_config(2);
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let channels = subcarrier_channels(&mut rng, &cfg);
        let g = block_channel(&channels, &[0, 2], 1, &cfg);
        assert_eq!((g.rows(), g.cols()), (8, 8));
        for br in 0..4 {
            for bc in 0..4 {
                for r in 0..2 {
                    for c in 0..2 {
                        let v = g.at(br * 2 + r, bc * 2 + c);
                        if br == bc {
                            assert_eq!(v, channels[4 + br].at(r, [0, 2][c]));
                        } else {
                            assert_eq!(v, Complex64::new(0.0, 0.0));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn work_accounting_matches_the_pattern_geometry() {
        // Weight-7 patterns over 2×4: one column of weight 1, three of
        // weight 2 → 4 + 3·16 = 52 per pattern, 8 patterns → 416.
        let cfg = fig_config(2);
        assert_eq!(ml_block_work(&cfg), 416);
    }

    #[test]
    fn oversized_search_spaces_are_rejected() {
        // All cells active, 8 rows of 16-QAM: 2 columns × 16⁸ evaluations.
        let cfg = GsfimConfig::new(
            8,
            8,
            2,
            2,
            2,
            16,
            1,
            ModulationAlphabet::gray_qam(16).unwrap(),
            0.1,
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        let channels = subcarrier_channels(&mut rng, &cfg);
        let y = vec![vec![Complex64::new(0.0, 0.0); 2]; 2];
        let err = detect_ml_gsfim(&y, &channels, &cfg).unwrap_err();
        assert_eq!(err, GsfimError::SearchSpace { work: 2 * (1u128 << 32), max: 1 << 20 });
    }

    #[test]
    fn noiseless_frames_are_recovered_exactly() {
        let cfg = fig_config(2);
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for _ in 0..25 {
            let bits: Vec<bool> = (0..cfg.bits_per_frame()).map(|_| rng.random()).collect();
            let frame = gsfim_encode(&bits, &cfg).unwrap();
            let channels = subcarrier_channels(&mut rng, &cfg);
            let y = transmit_noiseless(&frame, &channels);
            let det = detect_ml_gsfim(&y, &channels, &cfg).unwrap();
            assert_eq!(det.antenna_pattern(), frame.antenna_pattern());
            assert_eq!(det.decode(&cfg).unwrap(), bits);
            assert!(det.cost() < 1e-18, "noiseless cost {}", det.cost());
            assert!(det.evaluations() > 0);
        }
    }

    #[test]
    fn detection_is_deterministic() {
        let cfg = fig_config(4);
        let mut rng = ChaCha8Rng::seed_from_u64(34);
        let bits: Vec<bool> = (0..cfg.bits_per_frame()).map(|_| rng.random()).collect();
        let frame = gsfim_encode(&bits, &cfg).unwrap();
        let channels = subcarrier_channels(&mut rng, &cfg);
        let mut y = transmit_noiseless(&frame, &channels);
        for y_n in &mut y {
            for v in y_n.iter_mut() {
                *v += Complex64::new(0.31 * rng.random::<f64>(), -0.2 * rng.random::<f64>());
            }
        }
        let a = detect_ml_gsfim(&y, &channels, &cfg).unwrap();
        let b = detect_ml_gsfim(&y, &channels, &cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn dimension_mismatches_are_rejected() {
        let cfg = fig_config(2);
        let mut rng = ChaCha8Rng::seed_from_u64(35);
        let channels = subcarrier_channels(&mut rng, &cfg);
        let y = vec![vec![Complex64::new(0.0, 0.0); 2]; 7];
        assert!(detect_ml_gsfim(&y, &channels, &cfg).is_err());
        let y = vec![vec![Complex64::new(0.0, 0.0); 3]; 8];
        assert!(detect_ml_gsfim(&y, &channels, &cfg).is_err());
        let y = vec![vec![Complex64::new(0.0, 0.0); 2]; 8];
        assert!(detect_ml_gsfim(&y, &channels[..7], &cfg).is_err());
    }
}
