//! System parameters for a GSFIM link.

use crate::GsfimError;
use im_core::{ModulationAlphabet, PatternSet};

/// Dimensions, pattern sets, alphabet, and noise level of a GSFIM link.
///
/// A frame spans `n_sub` subcarriers split into `n_b = n_sub / n_f`
/// sub-matrices of `n_rf × n_f` cells each; every sub-matrix carries `k`
/// non-zero symbols on a frequency activation pattern, and the whole frame
/// rides on `n_rf` of `n_t` antennas picked by an antenna pattern. The
/// channel has `l` taps, so each transmitted row costs `n_sub + l − 1`
/// channel uses including the cyclic prefix.
#[derive(Debug, Clone)]
pub struct GsfimConfig {
    n_t: usize,
    n_rf: usize,
    n_r: usize,
    n_sub: usize,
    n_f: usize,
    k: usize,
    l: usize,
    alphabet: ModulationAlphabet,
    antenna_patterns: PatternSet,
    frequency_patterns: PatternSet,
    noise_variance: f64,
}

impl GsfimConfig {
    /// Builds a configuration with the canonical (combinadic-prefix)
    /// antenna and frequency pattern sets.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        n_t: usize,
        n_rf: usize,
        n_r: usize,
        n_sub: usize,
        n_f: usize,
        k: usize,
        l: usize,
        alphabet: ModulationAlphabet,
        noise_variance: f64,
    ) -> Result<Self, GsfimError> {
        check_dimensions(n_t, n_rf, n_r, n_sub, n_f, k, l)?;
        let antenna_patterns = PatternSet::new(n_t, n_rf)?;
        let frequency_patterns = PatternSet::new(n_rf * n_f, k)?;
        Self::with_pattern_sets(
            n_t,
            n_rf,
            n_r,
            n_sub,
            n_f,
            k,
            l,
            alphabet,
            antenna_patterns,
            frequency_patterns,
            noise_variance,
        )
    }

    /// Builds a configuration with explicit pattern sets, e.g. a custom
    /// frequency pattern order or a restricted antenna set.
    #[allow(clippy::too_many_arguments)]
    pub fn with_pattern_sets(
        n_t: usize,
        n_rf: usize,
        n_r: usize,
        n_sub: usize,
        n_f: usize,
        k: usize,
        l: usize,
        alphabet: ModulationAlphabet,
        antenna_patterns: PatternSet,
        frequency_patterns: PatternSet,
        noise_variance: f64,
    ) -> Result<Self, GsfimError> {
        check_dimensions(n_t, n_rf, n_r, n_sub, n_f, k, l)?;
        if antenna_patterns.n() != n_t || antenna_patterns.w() != n_rf {
            return Err(GsfimError::BadConfig(format!(
                "antenna pattern set covers ({}, {}) but the link needs (n_t, n_rf) = ({}, {})",
                antenna_patterns.n(),
                antenna_patterns.w(),
                n_t,
                n_rf
            )));
        }
        if frequency_patterns.n() != n_rf * n_f || frequency_patterns.w() != k {
            return Err(GsfimError::BadConfig(format!(
                "frequency pattern set covers ({}, {}) but the link needs (n_rf*n_f, k) = ({}, {})",
                frequency_patterns.n(),
                frequency_patterns.w(),
                n_rf * n_f,
                k
            )));
        }
        if !(noise_variance >= 0.0 && noise_variance.is_finite()) {
            return Err(GsfimError::BadConfig(format!(
                "noise_variance must be finite and non-negative, got {noise_variance}"
            )));
        }
        Ok(Self {
            n_t,
            n_rf,
            n_r,
            n_sub,
            n_f,
            k,
            l,
            alphabet,
            antenna_patterns,
            frequency_patterns,
            noise_variance,
        })
    }

    /// Transmit antennas.
    pub fn n_t(&self) -> usize {
        self.n_t
    }

    /// Transmit RF chains (active antennas, grid rows).
    pub fn n_rf(&self) -> usize {
        self.n_rf
    }

    /// Receive antennas.
    pub fn n_r(&self) -> usize {
        self.n_r
    }

    /// Subcarriers per frame.
    pub fn n_sub(&self) -> usize {
        self.n_sub
    }

    /// Subcarriers per sub-matrix.
    pub fn n_f(&self) -> usize {
        self.n_f
    }

    /// Sub-matrices per frame.
    pub fn n_b(&self) -> usize {
        self.n_sub / self.n_f
    }

    /// Non-zero cells per sub-matrix.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Channel taps; the cyclic prefix is `l − 1` samples.
    pub fn l(&self) -> usize {
        self.l
    }

    /// Constellation used on active cells.
    pub fn alphabet(&self) -> &ModulationAlphabet {
        &self.alphabet
    }

    /// Antenna activation pattern set over `(n_t, n_rf)`.
    pub fn antenna_patterns(&self) -> &PatternSet {
        &self.antenna_patterns
    }

    /// Frequency activation pattern set over the row-major flattened
    /// `n_rf × n_f` grid.
    pub fn frequency_patterns(&self) -> &PatternSet {
        &self.frequency_patterns
    }

    /// Per-entry complex noise variance σ².
    pub fn noise_variance(&self) -> f64 {
        self.noise_variance
    }

    /// Same link with a different noise level.
    pub fn with_noise_variance(&self, noise_variance: f64) -> Result<Self, GsfimError> {
        if !(noise_variance >= 0.0 && noise_variance.is_finite()) {
            return Err(GsfimError::BadConfig(format!(
                "noise_variance must be finite and non-negative, got {noise_variance}"
            )));
        }
        let mut cfg = self.clone();
        cfg.noise_variance = noise_variance;
        Ok(cfg)
    }

    /// Cells per sub-matrix (`n_rf · n_f`).
    pub fn sub_block_len(&self) -> usize {
        self.n_rf * self.n_f
    }

    /// Antenna index bits per frame.
    pub fn antenna_index_bits(&self) -> usize {
        self.antenna_patterns.index_bits()
    }

    /// Frequency index bits per sub-matrix.
    pub fn frequency_index_bits(&self) -> usize {
        self.frequency_patterns.index_bits()
    }

    /// Bits carried by one sub-matrix: frequency index plus modulation.
    pub fn bits_per_sub_block(&self) -> usize {
        self.frequency_index_bits() + self.k * self.alphabet.bits_per_symbol()
    }

    /// Bits carried by one frame.
    pub fn bits_per_frame(&self) -> usize {
        self.antenna_index_bits() + self.n_b() * self.bits_per_sub_block()
    }

    /// Channel uses per frame including the cyclic prefix (`n_sub + l − 1`).
    pub fn block_len(&self) -> usize {
        self.n_sub + self.l - 1
    }
}

fn check_dimensions(
    n_t: usize,
    n_rf: usize,
    n_r: usize,
    n_sub: usize,
    n_f: usize,
    k: usize,
    l: usize,
) -> Result<(), GsfimError> {
    if n_rf == 0 || n_rf > n_t {
        return Err(GsfimError::BadConfig(format!(
            "n_rf must satisfy 1 <= n_rf <= n_t, got n_rf = {n_rf}, n_t = {n_t}"
        )));
    }
    if n_r == 0 {
        return Err(GsfimError::BadConfig("n_r must be at least 1".into()));
    }
    if n_f == 0 || n_sub == 0 || n_sub % n_f != 0 {
        return Err(GsfimError::BadConfig(format!(
            "n_f must divide n_sub, got n_sub = {n_sub}, n_f = {n_f}"
        )));
    }
    if k == 0 || k > n_rf * n_f {
        return Err(GsfimError::BadConfig(format!(
            "k must satisfy 1 <= k <= n_rf*n_f, got k = {k}, n_rf*n_f = {}",
            n_rf * n_f
        )));
    }
    if l == 0 || l > n_sub + 1 {
        return Err(GsfimError::BadConfig(format!(
            "l must satisfy 1 <= l <= n_sub + 1 so the cyclic prefix fits, got l = {l}, n_sub = {n_sub}"
        )));
    }
    Ok(())
}
