//! Link configuration and the validated sparse transmit vector.

use crate::LinkError;
use im_core::{support_of, ModulationAlphabet, PatternSet};
use num_complex::Complex64;

/// Parameters of one GSIM link: geometry, constellation, pattern set, and
/// the noise variance the detectors assume.
#[derive(Debug, Clone)]
pub struct GsimConfig {
    n_t: usize,
    n_rf: usize,
    n_r: usize,
    alphabet: ModulationAlphabet,
    pattern_set: PatternSet,
    noise_variance: f64,
}

impl GsimConfig {
    pub fn new(
        n_t: usize,
        n_rf: usize,
        n_r: usize,
        alphabet: ModulationAlphabet,
        pattern_set: PatternSet,
        noise_variance: f64,
    ) -> Result<Self, LinkError> {
        if n_rf < 1 || n_rf > n_t {
            return Err(LinkError::BadConfig(format!(
                "need 1 <= n_rf <= n_t, got n_t={n_t}, n_rf={n_rf}"
            )));
        }
        if n_r < 1 {
            return Err(LinkError::BadConfig("need n_r >= 1".to_string()));
        }
        if pattern_set.n() != n_t || pattern_set.w() != n_rf {
            return Err(LinkError::BadConfig(format!(
                "pattern set over ({}, {}) does not match (n_t, n_rf) = ({n_t}, {n_rf})",
                pattern_set.n(),
                pattern_set.w()
            )));
        }
        if !(noise_variance >= 0.0) || !noise_variance.is_finite() {
            return Err(LinkError::BadConfig(format!(
                "noise variance must be finite and >= 0, got {noise_variance}"
            )));
        }
        Ok(Self { n_t, n_rf, n_r, alphabet, pattern_set, noise_variance })
    }

    pub fn n_t(&self) -> usize {
        self.n_t
    }

    pub fn n_rf(&self) -> usize {
        self.n_rf
    }

    pub fn n_r(&self) -> usize {
        self.n_r
    }

    pub fn alphabet(&self) -> &ModulationAlphabet {
        &self.alphabet
    }

    pub fn pattern_set(&self) -> &PatternSet {
        &self.pattern_set
    }

    pub fn noise_variance(&self) -> f64 {
        self.noise_variance
    }

    /// Returns a copy with a different noise variance (the harness sweeps
    /// SNR against one fixed geometry).
    pub fn with_noise_variance(&self, noise_variance: f64) -> Result<Self, LinkError> {
        Self::new(
            self.n_t,
            self.n_rf,
            self.n_r,
            self.alphabet.clone(),
            self.pattern_set.clone(),
            noise_variance,
        )
    }

    /// Pattern-selection bits per channel use.
    pub fn index_bits(&self) -> usize {
        self.pattern_set.index_bits()
    }

    /// Constellation bits per channel use.
    pub fn symbol_bits(&self) -> usize {
        self.n_rf * self.alphabet.bits_per_symbol()
    }

    /// Total bits per channel use.
    pub fn bits_per_use(&self) -> usize {
        self.index_bits() + self.symbol_bits()
    }
}

/// A transmit vector validated against a configuration: exactly `n_rf`
/// non-zero entries, on a support the pattern set contains.
#[derive(Debug, Clone, PartialEq)]
pub struct TransmitVector {
    entries: Vec<Complex64>,
}

impl TransmitVector {
    pub fn new(entries: Vec<Complex64>, config: &GsimConfig) -> Result<Self, LinkError> {
        if entries.len() != config.n_t() {
            return Err(LinkError::DimensionMismatch {
                expected: config.n_t(),
                got: entries.len(),
            });
        }
        let mask: Vec<bool> = entries.iter().map(|v| v.norm_sqr() > 0.0).collect();
        if support_of(&mask).len() != config.n_rf() || !config.pattern_set().contains(&mask) {
            return Err(LinkError::Mapping(im_core::ImError::UnknownPattern));
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Complex64> {
        self.entries
    }

    /// Indices of the active antennas, ascending.
    pub fn support(&self) -> Vec<usize> {
        let mask: Vec<bool> = self.entries.iter().map(|v| v.norm_sqr() > 0.0).collect();
        support_of(&mask)
    }
}
