//! Simulation harness for the index-modulation workspace: configuration
//! parsing, deterministic Monte Carlo BER sweeps over SNR for the GSIM,
//! GSFIM, spatial-multiplexing, and MIMO-OFDM schemes, and CSV emission
//! of the rate tables and curves.
//!
//! Determinism contract: a sweep is a pure function of its configuration
//! and `master_seed`. Each trial's RNG is derived from
//! `(master_seed, snr index, trial index)`, trials are dispatched in
//! fixed rounds, and tallies are integer sums, so the output is
//! byte-identical for any worker count (only the opt-in `wall_time_s`
//! field may differ).
//!
//! The SNR axis is always the per-receive-antenna average received SNR
//! in dB: the channel is normalized so the average received symbol
//! energy is 1, and each scheme's noise variance accounts for how many
//! symbols arrive per receive dimension.
//!
//! ```
//! let config = sim_harness::SimConfig::from_toml_str(
//!     "scheme = \"gsim\"\nn_t = 4\nn_rf = 2\nn_r = 2\nM = 4\n\
//!      snr_db = [40.0]\nmin_bit_errors = 5\nmax_trials = 512",
//! )
//! .unwrap();
//! let records = sim_harness::run_ber_sweep(&config).unwrap();
//! assert_eq!(records[0].bit_errors, 0); // essentially noiseless
//! ```

mod cli;
mod config;
mod error;
mod record;
mod run;
mod seed;
mod tables;

pub use cli::cli_main;
pub use config::{Detector, LinkSetup, OutputFormat, Scheme, SimConfig};
pub use error::HarnessError;
pub use record::{render_csv, render_jsonl, BerRecord, CSV_HEADER};
pub use run::run_ber_sweep;
pub use seed::trial_seed;
pub use tables::{r1_curve_csv, rate_curve_csv, table2_csv};
