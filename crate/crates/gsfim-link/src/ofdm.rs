//! Unitary OFDM modulation with a cyclic prefix.

use crate::{GsfimConfig, GsfimError, GsfimFrame};
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::fmt;
use std::sync::Arc;

/// Plans the `n_sub`-point transforms once and applies them per row.
///
/// Both directions carry the symmetric `1/√n_sub` scaling, so transform
/// composition is the identity and noise variance is preserved between the
/// time and frequency domains. Each modulated row is prefixed with its last
/// `l − 1` samples, which turns the `l`-tap linear convolution into a
/// circular one over the retained window.
#[derive(Clone)]
pub struct OfdmProcessor {
    n_sub: usize,
    cp_len: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl fmt::Debug for OfdmProcessor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OfdmProcessor")
            .field("n_sub", &self.n_sub)
            .field("cp_len", &self.cp_len)
            .finish()
    }
}

impl OfdmProcessor {
    /// Plans transforms for `n_sub` subcarriers and an `l`-tap channel.
    pub fn new(n_sub: usize, l: usize) -> Result<Self, GsfimError> {
        if n_sub == 0 || l == 0 || l > n_sub + 1 {
            return Err(GsfimError::BadConfig(format!(
                "need 1 <= l <= n_sub + 1 for the cyclic prefix to fit, got n_sub = {n_sub}, l = {l}"
            )));
        }
        let mut planner = FftPlanner::new();
        Ok(Self {
            n_sub,
            cp_len: l - 1,
            forward: planner.plan_fft_forward(n_sub),
            inverse: planner.plan_fft_inverse(n_sub),
        })
    }

    /// Processor matching a link configuration.
    pub fn for_config(config: &GsfimConfig) -> Self {
        // The config has already validated the same bounds.
        Self::new(config.n_sub(), config.l()).expect("config dimensions are valid")
    }

    /// Subcarriers per OFDM symbol.
    pub fn n_sub(&self) -> usize {
        self.n_sub
    }

    /// Cyclic-prefix length in samples (`l − 1`).
    pub fn cp_len(&self) -> usize {
        self.cp_len
    }

    /// One frequency-domain row → `n_sub + l − 1` time samples.
    pub fn modulate_row(&self, freq: &[Complex64]) -> Result<Vec<Complex64>, GsfimError> {
        if freq.len() != self.n_sub {
            return Err(GsfimError::DimensionMismatch { expected: self.n_sub, got: freq.len() });
        }
        let mut symbol = freq.to_vec();
        self.inverse.process(&mut symbol);
        let scale = 1.0 / (self.n_sub as f64).sqrt();
        for v in &mut symbol {
            *v *= scale;
        }
        let mut out = Vec::with_capacity(self.n_sub + self.cp_len);
        out.extend_from_slice(&symbol[self.n_sub - self.cp_len..]);
        out.extend_from_slice(&symbol);
        Ok(out)
    }

    /// One received row of `n_sub + l − 1` samples → frequency domain.
    pub fn demodulate_row(&self, time: &[Complex64]) -> Result<Vec<Complex64>, GsfimError> {
        let expected = self.n_sub + self.cp_len;
        if time.len() != expected {
            return Err(GsfimError::DimensionMismatch { expected, got: time.len() });
        }
        let mut symbol = time[self.cp_len..].to_vec();
        self.forward.process(&mut symbol);
        let scale = 1.0 / (self.n_sub as f64).sqrt();
        for v in &mut symbol {
            *v *= scale;
        }
        Ok(symbol)
    }

    /// Every grid row of a frame as a time-domain stream, in row order.
    pub fn modulate_frame(&self, frame: &GsfimFrame) -> Result<Vec<Vec<Complex64>>, GsfimError> {
        let grid = frame.grid();
        (0..grid.rows())
            .map(|r| {
                let row: Vec<Complex64> = (0..grid.cols()).map(|c| grid.at(r, c)).collect();
                self.modulate_row(&row)
            })
            .collect()
    }

    /// Received streams → per-subcarrier vectors: element `n` stacks
    /// subcarrier `n` of every stream, so it is the `y_n` of the flat
    /// model `y_n = H_n^a z_n + w_n`.
    pub fn demodulate_streams(
        &self,
        streams: &[Vec<Complex64>],
    ) -> Result<Vec<Vec<Complex64>>, GsfimError> {
        let rows = streams
            .iter()
            .map(|s| self.demodulate_row(s))
            .collect::<Result<Vec<_>, _>>()?;
        Ok((0..self.n_sub)
            .map(|n| rows.iter().map(|row| row[n]).collect())
            .collect())
    }
}

/// Modulates a frame with a one-off processor; see
/// [`OfdmProcessor::modulate_frame`].
pub fn ofdm_modulate(
    frame: &GsfimFrame,
    config: &GsfimConfig,
) -> Result<Vec<Vec<Complex64>>, GsfimError> {
    OfdmProcessor::for_config(config).modulate_frame(frame)
}

/// Demodulates received streams with a one-off processor; see
/// [`OfdmProcessor::demodulate_streams`].
pub fn ofdm_demodulate(
    streams: &[Vec<Complex64>],
    config: &GsfimConfig,
) -> Result<Vec<Vec<Complex64>>, GsfimError> {
    OfdmProcessor::for_config(config).demodulate_streams(streams)
}
