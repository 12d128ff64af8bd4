//! Command-line interface: argument parsing, dispatch, and exit codes
//! (0 ok, 1 usage error, 2 runtime error).

use crate::config::{OutputFormat, SimConfig};
use crate::record::{render_csv, render_jsonl};
use crate::run::run_ber_sweep;
use crate::tables::{r1_curve_csv, rate_curve_csv, table2_csv};
use crate::HarnessError;
use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use rate_analysis::{gsfim_rate, gsim_rate, gsim_rate_bounds, gsim_rate_max, gsim_rate_max_bounds};
use std::ffi::OsString;
use std::path::{Path, PathBuf};

#[derive(Debug, Parser)]
#[command(
    name = "sim-harness",
    version,
    about = "Rate analysis and Monte Carlo BER sweeps for index-modulation MIMO links",
    after_help = "SNR convention: every sweep's snr_db axis is the per-receive-antenna \
                  average received SNR."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact rate in bpcu for an (n_t, n_rf) antenna-index configuration.
    Rate {
        #[arg(long)]
        nt: usize,
        #[arg(long)]
        nrf: usize,
        /// Constellation order (2, 4, 8, …).
        #[arg(long = "M")]
        m: usize,
    },
    /// Maximum rate over n_rf; prints `rate n_rf_opt`.
    RateMax {
        #[arg(long)]
        nt: usize,
        #[arg(long = "M")]
        m: usize,
    },
    /// Closed-form rate bounds; prints `lower exact upper`. With --nrf the
    /// per-n_rf bounds, without it the bounds on the maximum rate.
    Bounds {
        #[arg(long)]
        nt: usize,
        #[arg(long)]
        nrf: Option<usize>,
        #[arg(long = "M")]
        m: usize,
    },
    /// Space-frequency rate; prints `bits/uses = rate`.
    GsfimRate {
        #[arg(long)]
        nt: usize,
        #[arg(long)]
        nrf: usize,
        /// Subcarrier count.
        #[arg(long = "N")]
        n: usize,
        /// Subcarriers per sub-matrix.
        #[arg(long)]
        nf: usize,
        /// Active cells per sub-matrix.
        #[arg(long)]
        k: usize,
        #[arg(long = "M")]
        m: usize,
        /// Channel tap count (cyclic prefix length + 1).
        #[arg(long = "L")]
        l: usize,
    },
    /// Emit a rate table or curve as CSV (stdout or --out).
    Tables {
        /// The RF-chain savings table (n_t ∈ {16,32} × four constellations).
        #[arg(long)]
        table2: bool,
        /// Rate vs n_rf curve; needs --nt and --M.
        #[arg(long)]
        rate_curve: bool,
        /// Space-frequency rate vs k curve; needs --nrf, --nf, --nb, --M, --L.
        #[arg(long)]
        r1: bool,
        #[arg(long)]
        nt: Option<usize>,
        #[arg(long)]
        nrf: Option<usize>,
        #[arg(long)]
        nf: Option<usize>,
        #[arg(long)]
        nb: Option<usize>,
        #[arg(long = "M")]
        m: Option<usize>,
        #[arg(long = "L")]
        l: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the Monte Carlo BER sweep described by a TOML config file.
    Ber {
        /// Flat TOML config (see README for the schema).
        #[arg(long)]
        config: PathBuf,
        /// Overrides the config's master_seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Overrides the config's output path.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Overrides the config's output format.
        #[arg(long, value_parser = ["csv", "jsonl"])]
        format: Option<String>,
        /// Worker threads (0 = machine default).
        #[arg(long, default_value_t = 0)]
        workers: usize,
        /// Record wall-clock time per SNR point (wall_time_s is otherwise
        /// empty so outputs stay byte-identical across worker counts).
        #[arg(long)]
        timing: bool,
    },
}

/// Parses `argv` and runs the requested command, returning the process
/// exit code instead of exiting, so tests can drive it in-process.
pub fn cli_main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return 0;
        }
        Err(e) => {
            eprint!("{e}");
            return 1;
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(HarnessError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            1
        }
        Err(e) => {
            eprintln!("error: {e}");
            let mut source = std::error::Error::source(&e);
            while let Some(s) = source {
                eprintln!("  caused by: {s}");
                source = s.source();
            }
            2
        }
    }
}

fn dispatch(command: Command) -> Result<(), HarnessError> {
    match command {
        Command::Rate { nt, nrf, m } => {
            println!("{}", gsim_rate(nt, nrf, m)?.rate_bpcu());
            Ok(())
        }
        Command::RateMax { nt, m } => {
            let best = gsim_rate_max(nt, m)?;
            println!("{} {}", best.rate, best.n_rf_opt);
            Ok(())
        }
        Command::Bounds { nt, nrf, m } => {
            let b = match nrf {
                Some(nrf) => gsim_rate_bounds(nt, nrf, m)?,
                None => gsim_rate_max_bounds(nt, m)?,
            };
            println!("{} {} {}", b.lower, b.exact, b.upper);
            Ok(())
        }
        Command::GsfimRate { nt, nrf, n, nf, k, m, l } => {
            let report = gsfim_rate(nt, nrf, n, nf, k, m, l)?;
            println!("{}/{} = {}", report.total_bits, report.denominator, report.total);
            Ok(())
        }
        Command::Tables { table2, rate_curve, r1, nt, nrf, nf, nb, m, l, out } => {
            let selections = [table2, rate_curve, r1].iter().filter(|&&b| b).count();
            if selections != 1 {
                return Err(HarnessError::Usage(
                    "pick exactly one of --table2, --rate-curve, --r1".into(),
                ));
            }
            let csv = if table2 {
                table2_csv()?
            } else if rate_curve {
                let nt = need(nt, "--nt", "--rate-curve")?;
                let m = need(m, "--M", "--rate-curve")?;
                rate_curve_csv(nt, m)?
            } else {
                let nrf = need(nrf, "--nrf", "--r1")?;
                let nf = need(nf, "--nf", "--r1")?;
                let nb = need(nb, "--nb", "--r1")?;
                let m = need(m, "--M", "--r1")?;
                let l = need(l, "--L", "--r1")?;
                r1_curve_csv(nrf, nf, nb, m, l)?
            };
            emit(&csv, out.as_deref())
        }
        Command::Ber { config, seed, out, format, workers, timing } => {
            let mut sim = SimConfig::load(&config)?;
            if let Some(seed) = seed {
                sim.master_seed = seed;
            }
            if let Some(out) = out {
                sim.out = Some(out);
            }
            match format.as_deref() {
                Some("csv") => sim.format = OutputFormat::Csv,
                Some("jsonl") => sim.format = OutputFormat::Jsonl,
                _ => {}
            }
            sim.workers = workers;
            sim.timing = timing;
            let records = run_ber_sweep(&sim)?;
            let rendered = match sim.format {
                OutputFormat::Csv => render_csv(&records),
                OutputFormat::Jsonl => render_jsonl(&records),
            };
            emit(&rendered, sim.out.as_deref())
        }
    }
}

fn need<V>(value: Option<V>, flag: &str, mode: &str) -> Result<V, HarnessError> {
    value.ok_or_else(|| HarnessError::Usage(format!("{mode} requires {flag}")))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), HarnessError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| HarnessError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
