//! Restarted Gibbs-sampler detection for sparse index-modulated vectors.
//!
//! The sampler walks the constrained space `𝕌` (exactly `n_rf` active
//! antennas) two coordinates at a time: for an active position `i_l` and an
//! inactive position `j_k`, it forms a *no-swap* candidate (re-optimize the
//! symbol at `i_l`) and a *swap* candidate (move the symbol to `j_k`), then
//! samples between them with a Gibbs probability mixed with a uniform draw.
//! A cost-adaptive rule stops a stalled chain early, and an outer loop
//! restarts the sampler (MMSE-initialized first, randomly after) until a
//! repeat-count criterion decides the best valid solution has stabilized.
//!
//! One wrinkle inherited from the reference description: its second
//! candidate set is written with the same formula as the first (an apparent
//! editorial slip); the evident intent — symbol moved to `j_k`, position
//! `i_l` zeroed — is what this module implements.

use crate::linalg::CMat;
use crate::mmse::detect_mmse;
use crate::{gsim_decode, DetectionResult, DetectorKind, GsimConfig, LinkError, TransmitVector};
use num_complex::Complex64;
use rand::Rng;

/// Tuning constants derived from the link geometry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GibbsParams {
    /// Floor of the stall-detection window, `10·n_rf·(n_t − n_rf)`.
    pub c_min: f64,
    /// Cost-adaptive window scale, `c_min·log2 M`.
    pub c1: f64,
    /// Restart-count scale, `0.5·(1 + log2 M)`.
    pub c2: f64,
    /// Per-restart budget of coordinate-pair steps,
    /// `8·n_t·n_rf·(n_t − n_rf)·√M`.
    pub max_itr: u64,
    /// Restart budget.
    pub max_rst: u32,
    /// Uniform-mixing weight `q = 1/n_t`.
    pub q: f64,
}

impl GibbsParams {
    pub fn from_config(config: &GsimConfig) -> Self {
        let n_t = config.n_t() as f64;
        let n_rf = config.n_rf() as f64;
        let m = config.alphabet().order() as f64;
        let log2_m = m.log2();
        let c_min = 10.0 * n_rf * (n_t - n_rf);
        Self {
            c_min,
            c1: c_min * log2_m,
            c2: 0.5 * (1.0 + log2_m),
            max_itr: (8.0 * n_t * n_rf * (n_t - n_rf) * m.sqrt()).round() as u64,
            max_rst: 20,
            q: 1.0 / n_t,
        }
    }
}

/// Normalized ML cost `φ(v) = (‖y − Hv‖² − n_r·σ²) / (√n_r · σ²)`: roughly
/// how many standard deviations the residual power sits above the noise
/// floor, ≈ 0 at the true solution.
pub fn normalized_ml_cost(residual_sq: f64, n_r: usize, sigma2: f64) -> f64 {
    (residual_sq - n_r as f64 * sigma2) / ((n_r as f64).sqrt() * sigma2)
}

/// Stall window `Θ_s = ⌈max(c_min, c1·exp(φ(z)))⌉`, with the exponential
/// clamped at 10⁶ so low-SNR chains get a bounded (if generous) patience.
pub fn stopping_metric(phi: f64, params: &GibbsParams) -> u64 {
    let e = phi.exp().min(1e6);
    (params.c1 * e).max(params.c_min).ceil() as u64
}

/// Required repeat count `Θ_r = ⌊max(0, c2·φ(s))⌋ + 1`: a near-noise-floor
/// solution needs exactly one confirmation.
pub fn restart_metric(phi: f64, params: &GibbsParams) -> u32 {
    (params.c2 * phi).max(0.0).floor() as u32 + 1
}

/// Mutable sampler state for one restart: the current vector, the best
/// vector/cost seen in this restart, and the cached matched-filter and Gram
/// products the coordinate updates are computed from.
pub struct GibbsState<'a> {
    h: &'a CMat,
    y: &'a [Complex64],
    /// `y^MF[i] = (y^H H)_i`.
    ymf: Vec<Complex64>,
    /// Gram matrix `R = H^H H`.
    r: CMat,
    x: Vec<Complex64>,
    cost_x: f64,
    z: Vec<Complex64>,
    beta: f64,
    sigma2: f64,
    q: f64,
}

impl<'a> GibbsState<'a> {
    pub fn new(
        y: &'a [Complex64],
        h: &'a CMat,
        x0: Vec<Complex64>,
        sigma2: f64,
        q: f64,
    ) -> Result<Self, LinkError> {
        if y.len() != h.rows() {
            return Err(LinkError::DimensionMismatch { expected: h.rows(), got: y.len() });
        }
        if x0.len() != h.cols() {
            return Err(LinkError::DimensionMismatch { expected: h.cols(), got: x0.len() });
        }
        let ymf: Vec<Complex64> = h.herm_mul_vec(y).iter().map(|v| v.conj()).collect();
        let r = h.gram();
        let cost = sparse_cost(y, h, &x0);
        Ok(Self {
            h,
            y,
            ymf,
            r,
            z: x0.clone(),
            beta: cost,
            x: x0,
            cost_x: cost,
            sigma2,
            q,
        })
    }

    pub fn current(&self) -> &[Complex64] {
        &self.x
    }

    /// Cost of the current (not necessarily best) vector.
    pub fn current_cost(&self) -> f64 {
        self.cost_x
    }

    pub fn best(&self) -> (&[Complex64], f64) {
        (&self.z, self.beta)
    }

    /// Active coordinates of the current vector, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.x.len()).filter(|&i| self.x[i].norm_sqr() > 0.0).collect()
    }

    /// Inactive coordinates of the current vector, ascending.
    pub fn zeros(&self) -> Vec<usize> {
        (0..self.x.len()).filter(|&i| self.x[i].norm_sqr() == 0.0).collect()
    }

    /// The unconstrained per-coordinate step `λ_opt` that minimizes
    /// `‖y − H(x + λ e_i)‖²`:
    /// `λ_opt = (y^MF_i − x^H r_i)^* / R_{i,i}` with `r_i` the `i`-th
    /// column of `R`.
    pub fn lambda_opt(&self, i: usize) -> Result<Complex64, LinkError> {
        lambda_from(&self.ymf, &self.r, &self.x, None, i)
    }

    /// Candidate pair for the coordinate roles `(i_l active, j_k inactive)`:
    /// the no-swap candidate re-optimizes (and re-quantizes) position `i_l`;
    /// the swap candidate zeroes `i_l` and optimizes a fresh symbol at
    /// `j_k`. Both carry exactly `n_rf` active entries.
    pub fn candidates(
        &self,
        i: usize,
        j: usize,
        alphabet: &im_core::ModulationAlphabet,
    ) -> Result<(Vec<Complex64>, Vec<Complex64>), LinkError> {
        if self.x[i].norm_sqr() == 0.0 || self.x[j].norm_sqr() != 0.0 {
            return Err(LinkError::IndexRoles { i, j });
        }
        let mut no_swap = self.x.clone();
        let lam = self.lambda_opt(i)?;
        no_swap[i] = alphabet.quantize(self.x[i] + lam);

        let mut swap = self.x.clone();
        swap[i] = Complex64::new(0.0, 0.0);
        let lam = lambda_from(&self.ymf, &self.r, &self.x, Some(i), j)?;
        swap[j] = alphabet.quantize(lam);
        Ok((no_swap, swap))
    }

    /// One sampled transition: picks the swap candidate with probability
    /// `p^S = (1 − q)·p̃^S + q/2` where `p̃^S` is the Gibbs probability
    /// `sigmoid(−(cost_S − cost_NS)/σ²)`, adopts the pick as the current
    /// vector, and rolls the best-so-far (`γ ≤ β` updates both). Returns
    /// the adopted vector's cost.
    pub fn sample_step<R: Rng + ?Sized>(
        &mut self,
        i: usize,
        j: usize,
        alphabet: &im_core::ModulationAlphabet,
        rng: &mut R,
    ) -> Result<f64, LinkError> {
        let (no_swap, swap) = self.candidates(i, j, alphabet)?;
        let cost_ns = sparse_cost(self.y, self.h, &no_swap);
        let cost_s = sparse_cost(self.y, self.h, &swap);
        let p_tilde = stable_sigmoid(-(cost_s - cost_ns) / self.sigma2);
        let p_swap = (1.0 - self.q) * p_tilde + self.q / 2.0;
        let (next, gamma) = if rng.random::<f64>() < p_swap {
            (swap, cost_s)
        } else {
            (no_swap, cost_ns)
        };
        self.x = next;
        self.cost_x = gamma;
        if gamma <= self.beta {
            self.beta = gamma;
            self.z = self.x.clone();
        }
        Ok(gamma)
    }
}

/// `λ_opt` for coordinate `target`, optionally pretending coordinate
/// `exclude` is already zeroed (the swap case removes `i_l`'s contribution
/// before optimizing `j_k`).
fn lambda_from(
    ymf: &[Complex64],
    r: &CMat,
    x: &[Complex64],
    exclude: Option<usize>,
    target: usize,
) -> Result<Complex64, LinkError> {
    let diag = r.at(target, target).re;
    if !(diag > 0.0) {
        return Err(LinkError::ZeroDiagonal { index: target });
    }
    let mut g = ymf[target];
    for (q, xq) in x.iter().enumerate() {
        if xq.norm_sqr() > 0.0 && Some(q) != exclude {
            g -= xq.conj() * r.at(q, target);
        }
    }
    Ok(g.conj() / diag)
}

/// `1/(1 + e^{-t})` without overflow at either tail.
fn stable_sigmoid(t: f64) -> f64 {
    if t >= 0.0 {
        1.0 / (1.0 + (-t).exp())
    } else {
        let e = t.exp();
        e / (1.0 + e)
    }
}

/// `‖y − H x‖²` exploiting the sparsity of `x`.
fn sparse_cost(y: &[Complex64], h: &CMat, x: &[Complex64]) -> f64 {
    let mut total = 0.0;
    for row in 0..h.rows() {
        let mut acc = y[row];
        for (c, xc) in x.iter().enumerate() {
            if xc.norm_sqr() > 0.0 {
                acc -= h.at(row, c) * xc;
            }
        }
        total += acc.norm_sqr();
    }
    total
}

/// Runs the full restarted sampler.
///
/// Restart 1 starts from the projected MMSE estimate, later restarts from
/// a uniformly random valid vector. A restart's chain stops early once the
/// best cost has not moved for `Θ_s` steps, and the outer loop stops once
/// the best valid solution has been confirmed `Θ_r` times. A restart whose
/// best vector lands on a support outside 𝕊 contributes nothing but still
/// consumes its restart slot. If no restart ever yields a valid vector,
/// the MMSE projection is returned with `fallback_used` set.
pub fn detect_gsim_gibbs<R: Rng + ?Sized>(
    y: &[Complex64],
    h: &CMat,
    config: &GsimConfig,
    rng: &mut R,
) -> Result<DetectionResult, LinkError> {
    let sigma2 = config.noise_variance();
    if !(sigma2 > 0.0) {
        return Err(LinkError::NonPositiveNoise(sigma2));
    }
    let params = GibbsParams::from_config(config);
    let mmse = detect_mmse(y, h, config)?;
    let n_t = config.n_t();
    let n_rf = config.n_rf();
    let n_r = config.n_r();
    let alphabet = config.alphabet().clone();
    let pairs_per_sweep = n_rf * (n_t - n_rf);

    let mut kappa = f64::INFINITY;
    let mut s_best: Option<Vec<Complex64>> = None;
    let mut repeat_count = 0u32;
    let mut theta_r = params.max_rst;
    let mut total_steps = 0u64;
    let mut restarts_used = 0u32;

    for restart in 0..params.max_rst {
        restarts_used = restart + 1;
        let x0 = if restart == 0 {
            mmse.x_hat.entries().to_vec()
        } else {
            random_valid_vector(config, rng)
        };
        let mut state = GibbsState::new(y, h, x0, sigma2, params.q)?;
        let mut beta_hist = vec![state.beta];
        let mut theta_s =
            stopping_metric(normalized_ml_cost(state.beta, n_r, sigma2), &params);
        let mut t = 0u64;

        if pairs_per_sweep > 0 {
            'chain: while t < params.max_itr {
                for l in 0..n_rf {
                    for k in 0..(n_t - n_rf) {
                        let i = state.support()[l];
                        let j = state.zeros()[k];
                        let before = state.beta;
                        state.sample_step(i, j, &alphabet, rng)?;
                        t += 1;
                        total_steps += 1;
                        if state.beta < before {
                            theta_s = stopping_metric(
                                normalized_ml_cost(state.beta, n_r, sigma2),
                                &params,
                            );
                        }
                        beta_hist.push(state.beta);
                    }
                }
                let t_idx = t as usize;
                if theta_s < t && beta_hist[t_idx] == beta_hist[t_idx - theta_s as usize] {
                    break 'chain;
                }
            }
        }

        let (z, beta) = state.best();
        let mask: Vec<bool> = z.iter().map(|v| v.norm_sqr() > 0.0).collect();
        if config.pattern_set().contains(&mask) {
            if beta < kappa {
                kappa = beta;
                s_best = Some(z.to_vec());
                repeat_count = 1;
                theta_r = restart_metric(normalized_ml_cost(beta, n_r, sigma2), &params);
            } else if beta == kappa {
                repeat_count += 1;
            }
            if repeat_count >= theta_r {
                break;
            }
        }
    }

    match s_best {
        Some(entries) => {
            let x_hat = TransmitVector::new(entries, config)?;
            let bits = gsim_decode(x_hat.entries(), config)?;
            Ok(DetectionResult {
                x_hat,
                bits,
                cost: kappa,
                iterations: total_steps,
                restarts: restarts_used,
                fallback_used: false,
                detector: DetectorKind::Gibbs,
            })
        }
        None => Ok(DetectionResult {
            iterations: total_steps,
            restarts: restarts_used,
            fallback_used: true,
            detector: DetectorKind::Gibbs,
            ..mmse
        }),
    }
}

/// Uniform pattern from 𝕊, then i.i.d. uniform alphabet symbols on its
/// support.
fn random_valid_vector<R: Rng + ?Sized>(config: &GsimConfig, rng: &mut R) -> Vec<Complex64> {
    let set = config.pattern_set();
    let pattern = rng.random_range(0..set.len());
    let mut x = vec![Complex64::new(0.0, 0.0); config.n_t()];
    for &i in &set.support(pattern) {
        let label = rng.random_range(0..config.alphabet().order());
        x[i] = config.alphabet().point(label);
    }
    x
}
