//! GSFIM link layer: space-frequency frame encoding (antenna indexing,
//! per-sub-matrix subcarrier indexing, and M-ary modulation), OFDM over an
//! L-tap frequency-selective MIMO channel, and separable ML detection.
//!
//! A frame is an `n_rf × N` grid `B` split column-wise into `n_b = N/n_f`
//! sub-matrices, each carrying `k` non-zero constellation symbols on a
//! frequency activation pattern drawn from a
//! [`PatternSet`](im_core::PatternSet) over the row-major flattened grid.
//! The grid rows ride on the `n_rf` antennas selected by the antenna
//! activation pattern; after OFDM modulation with a cyclic prefix of
//! `L − 1` samples the channel decomposes into `N` flat per-subcarrier
//! links `y_n = H_n^a z_n + w_n`.
//!
//! # Example
//!
//! ```
//! use gsfim_link::{gsfim_decode, gsfim_encode, GsfimConfig};
//! use im_core::ModulationAlphabet;
//!
//! // n_t = 3, n_rf = 2, N = 8, n_f = 4, k = 7, 4-QAM, L = 4.
//! let cfg = GsfimConfig::new(3, 2, 4, 8, 4, 7, 4, ModulationAlphabet::gray_qam(4).unwrap(), 0.1)
//!     .unwrap();
//! let bits: Vec<bool> = (0..cfg.bits_per_frame()).map(|i| i % 3 == 0).collect();
//! let frame = gsfim_encode(&bits, &cfg).unwrap();
//! let blocks: Vec<_> = (0..cfg.n_b()).map(|i| frame.sub_block_vector(i)).collect();
//! assert_eq!(gsfim_decode(frame.antenna_pattern(), &blocks, &cfg).unwrap(), bits);
//! ```

mod channel;
mod config;
mod detect;
mod encode;
mod frame;
mod ofdm;

pub use channel::SelectiveChannel;
pub use config::GsfimConfig;
pub use detect::{block_channel, detect_ml_gsfim, ml_block_work, GsfimDetection, WORK_GUARD};
pub use encode::{gsfim_decode, gsfim_encode};
pub use frame::GsfimFrame;
pub use ofdm::{ofdm_demodulate, ofdm_modulate, OfdmProcessor};

use thiserror::Error;

/// Errors from frame construction, OFDM processing, and detection.
#[derive(Debug, Error, PartialEq)]
pub enum GsfimError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid configuration: {0}")]
    BadConfig(String),
    #[error("sub-matrix {block} has a support outside the frequency pattern set")]
    InvalidSupport { block: usize },
    #[error("antenna pattern is not in the antenna pattern set")]
    InvalidAntennaPattern,
    #[error("separable ML needs {work} candidate evaluations per sub-matrix, over the guard of {max}")]
    SearchSpace { work: u128, max: u128 },
    #[error("malformed fixture: {0}")]
    Fixture(String),
    #[error(transparent)]
    Mapping(#[from] im_core::ImError),
}
