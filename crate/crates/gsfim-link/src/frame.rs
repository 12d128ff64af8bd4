//! The space-frequency transmit frame.

use crate::{GsfimConfig, GsfimError};
use gsim_link::CMat;
use im_core::support_of;
use num_complex::Complex64;
use serde_json::{json, Value};

/// One GSFIM frame: an `n_rf × n_sub` symbol grid plus the antenna
/// activation pattern its rows ride on.
///
/// Column `n` of the grid is the vector transmitted on subcarrier `n`;
/// columns `i·n_f .. (i+1)·n_f` form sub-matrix `i`. Grid rows map to
/// active antennas in ascending antenna index.
#[derive(Debug, Clone, PartialEq)]
pub struct GsfimFrame {
    antenna_pattern: Vec<bool>,
    grid: CMat,
    n_f: usize,
}

impl GsfimFrame {
    /// Validates a pattern/grid pair against a configuration: the antenna
    /// pattern must be in the antenna set, every sub-matrix support must be
    /// in the frequency set, and every active cell must hold a
    /// constellation point.
    pub fn new(
        antenna_pattern: Vec<bool>,
        grid: CMat,
        config: &GsfimConfig,
    ) -> Result<Self, GsfimError> {
        if antenna_pattern.len() != config.n_t() {
            return Err(GsfimError::DimensionMismatch {
                expected: config.n_t(),
                got: antenna_pattern.len(),
            });
        }
        if !config.antenna_patterns().contains(&antenna_pattern) {
            return Err(GsfimError::InvalidAntennaPattern);
        }
        if grid.rows() != config.n_rf() || grid.cols() != config.n_sub() {
            return Err(GsfimError::DimensionMismatch {
                expected: config.n_rf() * config.n_sub(),
                got: grid.rows() * grid.cols(),
            });
        }
        let frame = Self { antenna_pattern, grid, n_f: config.n_f() };
        for i in 0..config.n_b() {
            let support = frame.sub_block_support(i);
            if !config.frequency_patterns().contains(&support) {
                return Err(GsfimError::InvalidSupport { block: i });
            }
        }
        for r in 0..config.n_rf() {
            for c in 0..config.n_sub() {
                let v = frame.grid.at(r, c);
                if v.norm_sqr() > 0.0 && !config.alphabet().points().contains(&v) {
                    return Err(GsfimError::BadConfig(format!(
                        "cell ({r}, {c}) holds {v} which is not a constellation point"
                    )));
                }
            }
        }
        Ok(frame)
    }

    /// Antenna activation pattern over the `n_t` antennas.
    pub fn antenna_pattern(&self) -> &[bool] {
        &self.antenna_pattern
    }

    /// Indices of the active antennas, ascending.
    pub fn active_antennas(&self) -> Vec<usize> {
        support_of(&self.antenna_pattern)
    }

    /// The `n_rf × n_sub` symbol grid.
    pub fn grid(&self) -> &CMat {
        &self.grid
    }

    /// Subcarriers per sub-matrix.
    pub fn n_f(&self) -> usize {
        self.n_f
    }

    /// Sub-matrices in the frame.
    pub fn n_b(&self) -> usize {
        self.grid.cols() / self.n_f
    }

    /// Sub-matrix `i` stacked subcarrier by subcarrier: the `n_rf·n_f`
    /// vector `[z_{i_1}; z_{i_2}; …]` the per-sub-block channel acts on.
    pub fn sub_block_vector(&self, i: usize) -> Vec<Complex64> {
        let n_rf = self.grid.rows();
        let mut z = Vec::with_capacity(n_rf * self.n_f);
        for c in i * self.n_f..(i + 1) * self.n_f {
            for r in 0..n_rf {
                z.push(self.grid.at(r, c));
            }
        }
        z
    }

    /// Row-major activity mask of sub-matrix `i`, the layout the frequency
    /// pattern set indexes.
    pub fn sub_block_support(&self, i: usize) -> Vec<bool> {
        let n_rf = self.grid.rows();
        let mut mask = Vec::with_capacity(n_rf * self.n_f);
        for r in 0..n_rf {
            for c in 0..self.n_f {
                mask.push(self.grid.at(r, i * self.n_f + c).norm_sqr() > 0.0);
            }
        }
        mask
    }

    /// Serializes the frame as JSON with complex cells as `[re, im]`.
    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = (0..self.grid.rows())
            .map(|r| {
                let row: Vec<Value> = (0..self.grid.cols())
                    .map(|c| {
                        let v = self.grid.at(r, c);
                        json!([v.re, v.im])
                    })
                    .collect();
                Value::Array(row)
            })
            .collect();
        let pattern: Vec<Value> =
            self.antenna_pattern.iter().map(|&b| Value::from(u8::from(b))).collect();
        json!({ "antenna_pattern": pattern, "grid": rows }).to_string()
    }

    /// Parses [`to_json`](Self::to_json) output and re-validates it
    /// against `config`.
    pub fn from_json(text: &str, config: &GsfimConfig) -> Result<Self, GsfimError> {
        let value: Value = serde_json::from_str(text)
            .map_err(|e| GsfimError::Fixture(format!("frame JSON does not parse: {e}")))?;
        let pattern = value
            .get("antenna_pattern")
            .and_then(Value::as_array)
            .ok_or_else(|| GsfimError::Fixture("missing antenna_pattern array".into()))?
            .iter()
            .map(|v| match v.as_u64() {
                Some(0) => Ok(false),
                Some(1) => Ok(true),
                _ => Err(GsfimError::Fixture("antenna_pattern entries must be 0/1".into())),
            })
            .collect::<Result<Vec<bool>, _>>()?;
        let rows = value
            .get("grid")
            .and_then(Value::as_array)
            .ok_or_else(|| GsfimError::Fixture("missing grid array".into()))?;
        let n_rows = rows.len();
        let n_cols = rows.first().and_then(|r| r.as_array()).map_or(0, Vec::len);
        let mut grid = CMat::zeros(n_rows, n_cols);
        for (r, row) in rows.iter().enumerate() {
            let cells = row
                .as_array()
                .filter(|cells| cells.len() == n_cols)
                .ok_or_else(|| GsfimError::Fixture("ragged grid rows".into()))?;
            for (c, cell) in cells.iter().enumerate() {
                *grid.at_mut(r, c) = parse_complex(cell)?;
            }
        }
        Self::new(pattern, grid, config)
    }
}

pub(crate) fn parse_complex(value: &Value) -> Result<Complex64, GsfimError> {
    let pair = value
        .as_array()
        .filter(|pair| pair.len() == 2)
        .ok_or_else(|| GsfimError::Fixture("complex cells must be [re, im] pairs".into()))?;
    let re = pair[0]
        .as_f64()
        .ok_or_else(|| GsfimError::Fixture("non-numeric real part".into()))?;
    let im = pair[1]
        .as_f64()
        .ok_or_else(|| GsfimError::Fixture("non-numeric imaginary part".into()))?;
    Ok(Complex64::new(re, im))
}
