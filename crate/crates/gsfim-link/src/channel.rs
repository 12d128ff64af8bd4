//! L-tap frequency-selective Rayleigh MIMO channel.

use crate::frame::parse_complex;
use crate::GsfimError;
use gsim_link::CMat;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde_json::{json, Value};
use std::f64::consts::TAU;

/// A time-domain tap sequence together with its frequency response.
///
/// `taps` holds `l` matrices of size `n_r × n_t`; `per_subcarrier` holds
/// the `n_sub` responses `H_n = Σ_ℓ taps_ℓ · e^{−j2πnℓ/n_sub}`, computed
/// once at construction so both views always agree.
#[derive(Debug, Clone, PartialEq)]
pub struct SelectiveChannel {
    taps: Vec<CMat>,
    per_subcarrier: Vec<CMat>,
}

impl SelectiveChannel {
    /// Builds the channel from explicit taps and derives the `n_sub`
    /// subcarrier responses.
    pub fn from_taps(taps: Vec<CMat>, n_sub: usize) -> Result<Self, GsfimError> {
        if taps.is_empty() || n_sub == 0 {
            return Err(GsfimError::BadConfig(
                "channel needs at least one tap and one subcarrier".into(),
            ));
        }
        let (n_r, n_t) = (taps[0].rows(), taps[0].cols());
        if n_r == 0 || n_t == 0 {
            return Err(GsfimError::BadConfig("channel taps must be non-empty matrices".into()));
        }
        if taps.iter().any(|t| t.rows() != n_r || t.cols() != n_t) {
            return Err(GsfimError::BadConfig("channel taps must share one shape".into()));
        }
        let per_subcarrier = (0..n_sub)
            .map(|n| {
                let mut h = CMat::zeros(n_r, n_t);
                for (ell, tap) in taps.iter().enumerate() {
                    let phase = -TAU * (n * ell) as f64 / n_sub as f64;
                    let w = Complex64::from_polar(1.0, phase);
                    for r in 0..n_r {
                        for c in 0..n_t {
                            *h.at_mut(r, c) += tap.at(r, c) * w;
                        }
                    }
                }
                h
            })
            .collect();
        Ok(Self { taps, per_subcarrier })
    }

    /// Draws `l` i.i.d. Rayleigh taps with per-tap variance `1/l` (uniform
    /// power-delay profile, unit total power per antenna pair).
    pub fn sample<R: Rng + ?Sized>(
        rng: &mut R,
        n_r: usize,
        n_t: usize,
        l: usize,
        n_sub: usize,
    ) -> Self {
        let scale = (0.5 / l as f64).sqrt();
        let taps = (0..l)
            .map(|_| {
                let mut tap = CMat::zeros(n_r, n_t);
                for r in 0..n_r {
                    for c in 0..n_t {
                        let re: f64 = rng.sample(StandardNormal);
                        let im: f64 = rng.sample(StandardNormal);
                        *tap.at_mut(r, c) = Complex64::new(re * scale, im * scale);
                    }
                }
                tap
            })
            .collect();
        Self::from_taps(taps, n_sub).expect("sampled taps are well-formed")
    }

    /// Time-domain taps, earliest first.
    pub fn taps(&self) -> &[CMat] {
        &self.taps
    }

    /// Number of taps.
    pub fn l(&self) -> usize {
        self.taps.len()
    }

    /// Number of subcarriers the frequency view covers.
    pub fn n_sub(&self) -> usize {
        self.per_subcarrier.len()
    }

    /// Receive antennas.
    pub fn n_r(&self) -> usize {
        self.taps[0].rows()
    }

    /// Transmit antennas.
    pub fn n_t(&self) -> usize {
        self.taps[0].cols()
    }

    /// All subcarrier responses.
    pub fn per_subcarrier(&self) -> &[CMat] {
        &self.per_subcarrier
    }

    /// Response on subcarrier `n`.
    pub fn subcarrier(&self, n: usize) -> &CMat {
        &self.per_subcarrier[n]
    }

    /// The same channel with every tap (hence every response) scaled by `s`.
    pub fn scaled(&self, s: f64) -> Self {
        Self {
            taps: self.taps.iter().map(|t| t.scaled(s)).collect(),
            per_subcarrier: self.per_subcarrier.iter().map(|h| h.scaled(s)).collect(),
        }
    }

    /// Convolves transmit streams (one per active antenna, ascending
    /// antenna index) with the taps; output keeps the input length, which
    /// covers every sample the cyclic-prefix receiver retains.
    pub fn apply(
        &self,
        streams: &[Vec<Complex64>],
        active: &[usize],
    ) -> Result<Vec<Vec<Complex64>>, GsfimError> {
        if streams.len() != active.len() {
            return Err(GsfimError::DimensionMismatch {
                expected: active.len(),
                got: streams.len(),
            });
        }
        if active.windows(2).any(|w| w[0] >= w[1]) || active.iter().any(|&a| a >= self.n_t()) {
            return Err(GsfimError::BadConfig(
                "active antenna indices must be strictly ascending and within n_t".into(),
            ));
        }
        let len = streams.first().map_or(0, Vec::len);
        if streams.iter().any(|s| s.len() != len) {
            return Err(GsfimError::BadConfig("transmit streams must share one length".into()));
        }
        let mut out = vec![vec![Complex64::new(0.0, 0.0); len]; self.n_r()];
        for (ell, tap) in self.taps.iter().enumerate() {
            for (p, &antenna) in active.iter().enumerate() {
                for r in 0..self.n_r() {
                    let gain = tap.at(r, antenna);
                    for t in ell..len {
                        out[r][t] += gain * streams[p][t - ell];
                    }
                }
            }
        }
        Ok(out)
    }

    /// Serializes the taps (the frequency view is derived) as JSON with
    /// complex entries as `[re, im]`.
    pub fn to_json(&self) -> String {
        let taps: Vec<Value> = self
            .taps
            .iter()
            .map(|tap| {
                let rows: Vec<Value> = (0..tap.rows())
                    .map(|r| {
                        let row: Vec<Value> = (0..tap.cols())
                            .map(|c| {
                                let v = tap.at(r, c);
                                json!([v.re, v.im])
                            })
                            .collect();
                        Value::Array(row)
                    })
                    .collect();
                Value::Array(rows)
            })
            .collect();
        json!({ "n_sub": self.n_sub(), "taps": taps }).to_string()
    }

    /// Parses [`to_json`](Self::to_json) output, recomputing the
    /// subcarrier responses from the taps.
    pub fn from_json(text: &str) -> Result<Self, GsfimError> {
        let value: Value = serde_json::from_str(text)
            .map_err(|e| GsfimError::Fixture(format!("channel JSON does not parse: {e}")))?;
        let n_sub = value
            .get("n_sub")
            .and_then(Value::as_u64)
            .ok_or_else(|| GsfimError::Fixture("missing n_sub".into()))?
            as usize;
        let taps_value = value
            .get("taps")
            .and_then(Value::as_array)
            .ok_or_else(|| GsfimError::Fixture("missing taps array".into()))?;
        let mut taps = Vec::with_capacity(taps_value.len());
        for tap in taps_value {
            let rows = tap
                .as_array()
                .ok_or_else(|| GsfimError::Fixture("tap must be an array of rows".into()))?;
            let n_rows = rows.len();
            let n_cols = rows.first().and_then(|r| r.as_array()).map_or(0, Vec::len);
            let mut m = CMat::zeros(n_rows, n_cols);
            for (r, row) in rows.iter().enumerate() {
                let cells = row
                    .as_array()
                    .filter(|cells| cells.len() == n_cols)
                    .ok_or_else(|| GsfimError::Fixture("ragged tap rows".into()))?;
                for (c, cell) in cells.iter().enumerate() {
                    *m.at_mut(r, c) = parse_complex(cell)?;
                }
            }
            taps.push(m);
        }
        Self::from_taps(taps, n_sub)
    }
}
