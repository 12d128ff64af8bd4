//! Simulation configuration: a flat TOML file whose keys mirror the link
//! config field names, plus sweep, seeding, and output settings.

use crate::HarnessError;
use gsfim_link::{ml_block_work, GsfimConfig, WORK_GUARD};
use gsim_link::GsimConfig;
use im_core::{ModulationAlphabet, PatternSet};
use serde::Deserialize;
use std::path::{Path, PathBuf};

/// Transmission scheme selecting which link model a sweep runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    /// Antenna-index modulation: `n_rf` of `n_t` antennas active.
    Gsim,
    /// Space-frequency index modulation over an OFDM frame.
    Gsfim,
    /// Spatial multiplexing: every antenna active (GSIM with n_rf = n_t).
    Sm,
    /// Conventional MIMO-OFDM: every grid cell carries a symbol.
    MimoOfdm,
}

impl Scheme {
    pub fn as_str(&self) -> &'static str {
        match self {
            Scheme::Gsim => "gsim",
            Scheme::Gsfim => "gsfim",
            Scheme::Sm => "sm",
            Scheme::MimoOfdm => "mimo-ofdm",
        }
    }
}

/// Detector selection for the sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Detector {
    Mmse,
    Ml,
    Gibbs,
}

impl Detector {
    pub fn as_str(&self) -> &'static str {
        match self {
            Detector::Mmse => "mmse",
            Detector::Ml => "ml",
            Detector::Gibbs => "gibbs",
        }
    }
}

/// Output record encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Jsonl,
}

/// The link model a sweep drives, built once at parse time with a
/// placeholder noise variance (each SNR point substitutes its own).
#[derive(Debug, Clone)]
pub enum LinkSetup {
    Gsim(GsimConfig),
    Gsfim(GsfimConfig),
}

/// A validated simulation request.
#[derive(Debug, Clone)]
pub struct SimConfig {
    pub scheme: Scheme,
    pub detector: Detector,
    pub link: LinkSetup,
    /// Per-receive-antenna average received SNR points, in dB.
    pub snr_db: Vec<f64>,
    pub master_seed: u64,
    /// Stop rule: a point finishes once it has this many bit errors…
    pub min_bit_errors: u64,
    /// …or this many trials, whichever comes first.
    pub max_trials: u64,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
    /// Worker threads for the trial pool; 0 picks the machine default.
    pub workers: usize,
    /// Record wall-clock time per SNR point (breaks byte-identical
    /// output across worker counts, hence opt-in).
    pub timing: bool,
}

/// The raw TOML schema. Flat keys named after the link config fields;
/// `M`, `N`, and `L` are accepted as aliases for `modulation_order`,
/// `n_sub`, and `l`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    scheme: String,
    detector: Option<String>,
    n_t: Option<usize>,
    n_rf: Option<usize>,
    n_r: Option<usize>,
    #[serde(alias = "M")]
    modulation_order: Option<usize>,
    #[serde(alias = "N")]
    n_sub: Option<usize>,
    n_f: Option<usize>,
    k: Option<usize>,
    #[serde(alias = "L")]
    l: Option<usize>,
    snr_db: Option<Vec<f64>>,
    master_seed: Option<u64>,
    min_bit_errors: Option<u64>,
    max_trials: Option<u64>,
    out: Option<String>,
    format: Option<String>,
}

fn config_err(msg: String) -> HarnessError {
    HarnessError::Config(msg)
}

fn require(value: Option<usize>, key: &str, scheme: &str) -> Result<usize, HarnessError> {
    value.ok_or_else(|| config_err(format!("missing key `{key}` (required for scheme `{scheme}`)")))
}

fn forbid(value: Option<usize>, key: &str, scheme: &str, why: &str) -> Result<(), HarnessError> {
    match value {
        Some(_) => Err(config_err(format!("key `{key}` does not apply to scheme `{scheme}`: {why}"))),
        None => Ok(()),
    }
}

impl SimConfig {
    /// Parses and validates a flat TOML configuration.
    pub fn from_toml_str(text: &str) -> Result<Self, HarnessError> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| config_err(e.to_string()))?;
        Self::from_raw(raw)
    }

    /// Reads, parses, and validates a configuration file.
    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        let text = std::fs::read_to_string(path).map_err(|source| HarnessError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_toml_str(&text)
    }

    fn from_raw(raw: RawConfig) -> Result<Self, HarnessError> {
        let scheme = match raw.scheme.as_str() {
            "gsim" => Scheme::Gsim,
            "gsfim" => Scheme::Gsfim,
            "sm" => Scheme::Sm,
            "mimo-ofdm" => Scheme::MimoOfdm,
            other => {
                return Err(config_err(format!(
                    "`scheme` must be one of gsim | gsfim | sm | mimo-ofdm, got `{other}`"
                )))
            }
        };
        let name = scheme.as_str();

        let detector = match raw.detector.as_deref() {
            None | Some("ml") => Detector::Ml,
            Some("mmse") => Detector::Mmse,
            Some("gibbs") => Detector::Gibbs,
            Some(other) => {
                return Err(config_err(format!(
                    "`detector` must be one of mmse | ml | gibbs, got `{other}`"
                )))
            }
        };

        let m = require(raw.modulation_order, "modulation_order", name)?;
        let alphabet = ModulationAlphabet::gray_qam(m)
            .map_err(|e| config_err(format!("`modulation_order`: {e}")))?;
        let n_t = require(raw.n_t, "n_t", name)?;
        let n_r = require(raw.n_r, "n_r", name)?;

        // Schemes that activate every antenna take n_rf = n_t implicitly;
        // an explicit value must agree.
        let n_rf = match scheme {
            Scheme::Gsim | Scheme::Gsfim => require(raw.n_rf, "n_rf", name)?,
            Scheme::Sm | Scheme::MimoOfdm => match raw.n_rf {
                Some(v) if v != n_t => {
                    return Err(config_err(format!(
                        "`n_rf` must equal `n_t` for scheme `{name}` (every antenna is active), got n_rf = {v}, n_t = {n_t}"
                    )))
                }
                _ => n_t,
            },
        };

        let link = match scheme {
            Scheme::Gsim | Scheme::Sm => {
                let flat = "the flat-fading model has no frequency axis";
                forbid(raw.n_sub, "n_sub", name, flat)?;
                forbid(raw.n_f, "n_f", name, flat)?;
                forbid(raw.k, "k", name, flat)?;
                forbid(raw.l, "l", name, flat)?;
                let patterns = PatternSet::new(n_t, n_rf)
                    .map_err(|e| config_err(format!("(n_t, n_rf): {e}")))?;
                let cfg = GsimConfig::new(n_t, n_rf, n_r, alphabet, patterns, 1.0)
                    .map_err(|e| config_err(e.to_string()))?;
                LinkSetup::Gsim(cfg)
            }
            Scheme::Gsfim | Scheme::MimoOfdm => {
                let n_sub = require(raw.n_sub, "n_sub", name)?;
                let l = require(raw.l, "l", name)?;
                let (n_f, k) = match scheme {
                    Scheme::Gsfim => (require(raw.n_f, "n_f", name)?, require(raw.k, "k", name)?),
                    _ => {
                        forbid(raw.n_f, "n_f", name, "it is fixed at 1")?;
                        forbid(raw.k, "k", name, "it is fixed at n_rf")?;
                        (1, n_rf)
                    }
                };
                let cfg = GsfimConfig::new(n_t, n_rf, n_r, n_sub, n_f, k, l, alphabet, 1.0)
                    .map_err(|e| config_err(e.to_string()))?;
                let work = ml_block_work(&cfg);
                if work > WORK_GUARD {
                    return Err(config_err(format!(
                        "(n_f, k, modulation_order) make separable ML enumerate {work} candidates per sub-matrix, over the {WORK_GUARD} ceiling"
                    )));
                }
                LinkSetup::Gsfim(cfg)
            }
        };

        match (scheme, detector) {
            (Scheme::Gsfim | Scheme::MimoOfdm, Detector::Mmse | Detector::Gibbs) => {
                return Err(config_err(format!(
                    "`detector` must be `ml` for scheme `{name}` (separable ML is the only space-frequency detector)"
                )))
            }
            (_, Detector::Gibbs) if n_rf == n_t => {
                return Err(config_err(
                    "`detector` = gibbs needs n_rf < n_t: the sampler moves activity between \
                     on and off antennas, so with every antenna active it has no moves"
                        .to_string(),
                ))
            }
            _ => {}
        }

        let snr_db = raw
            .snr_db
            .ok_or_else(|| config_err("missing key `snr_db` (list of SNR points in dB)".into()))?;
        if snr_db.is_empty() {
            return Err(config_err("`snr_db` must be a non-empty list".into()));
        }
        if let Some(bad) = snr_db.iter().find(|v| !v.is_finite()) {
            return Err(config_err(format!("`snr_db` values must be finite, got {bad}")));
        }

        let min_bit_errors = raw.min_bit_errors.unwrap_or(200);
        if min_bit_errors < 1 {
            return Err(config_err("`min_bit_errors` must be at least 1".into()));
        }
        let max_trials = raw.max_trials.unwrap_or(1_000_000);
        if max_trials < 1 {
            return Err(config_err("`max_trials` must be at least 1".into()));
        }

        let format = match raw.format.as_deref() {
            None | Some("csv") => OutputFormat::Csv,
            Some("jsonl") => OutputFormat::Jsonl,
            Some(other) => {
                return Err(config_err(format!("`format` must be `csv` or `jsonl`, got `{other}`")))
            }
        };

        Ok(SimConfig {
            scheme,
            detector,
            link,
            snr_db,
            master_seed: raw.master_seed.unwrap_or(0),
            min_bit_errors,
            max_trials,
            out: raw.out.map(PathBuf::from),
            format,
            workers: 0,
            timing: false,
        })
    }

    /// Information bits carried by one channel-use block (one vector for
    /// the flat schemes, one OFDM frame for the space-frequency ones).
    pub fn bits_per_block(&self) -> usize {
        match &self.link {
            LinkSetup::Gsim(cfg) => cfg.bits_per_use(),
            LinkSetup::Gsfim(cfg) => cfg.bits_per_frame(),
        }
    }

    /// Rate in bits per channel use, accounting for the cyclic prefix in
    /// the OFDM schemes.
    pub fn rate_bpcu(&self) -> f64 {
        match &self.link {
            LinkSetup::Gsim(cfg) => cfg.bits_per_use() as f64,
            LinkSetup::Gsfim(cfg) => cfg.bits_per_frame() as f64 / cfg.block_len() as f64,
        }
    }

    /// Noise variance realizing a per-receive-antenna average received
    /// SNR of `snr_db`, given this scheme's average signal power.
    pub fn noise_variance_for(&self, snr_db: f64) -> f64 {
        let snr = 10f64.powf(snr_db / 10.0);
        match &self.link {
            // n_rf unit-energy symbols arrive per receive antenna.
            LinkSetup::Gsim(cfg) => cfg.n_rf() as f64 / snr,
            // n_b·k active cells spread over n_sub subcarriers.
            LinkSetup::Gsfim(cfg) => (cfg.n_b() * cfg.k()) as f64 / cfg.n_sub() as f64 / snr,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const GSIM_TOML: &str = r#"
        scheme = "gsim"
        detector = "gibbs"
        n_t = 4
        n_rf = 2
        n_r = 2
        M = 4
        snr_db = [0.0, 4.0, 8.0]
        master_seed = 7
        min_bit_errors = 150
        max_trials = 20000
    "#;

    #[test]
    fn parses_a_full_gsim_config() {
        let cfg = SimConfig::from_toml_str(GSIM_TOML).unwrap();
        assert_eq!(cfg.scheme, Scheme::Gsim);
        assert_eq!(cfg.detector, Detector::Gibbs);
        assert_eq!(cfg.snr_db, vec![0.0, 4.0, 8.0]);
        assert_eq!(cfg.master_seed, 7);
        assert_eq!(cfg.min_bit_errors, 150);
        assert_eq!(cfg.max_trials, 20000);
        assert_eq!(cfg.bits_per_block(), 6);
        assert_eq!(cfg.rate_bpcu(), 6.0);
        // 2 unit-power symbols per receive antenna at 0 dB.
        assert_eq!(cfg.noise_variance_for(0.0), 2.0);
        assert_eq!(cfg.format, OutputFormat::Csv);
    }

    #[test]
    fn defaults_fill_in() {
        let cfg = SimConfig::from_toml_str(
            "scheme = \"gsim\"\nn_t = 4\nn_rf = 2\nn_r = 2\nM = 4\nsnr_db = [6.0]",
        )
        .unwrap();
        assert_eq!(cfg.detector, Detector::Ml);
        assert_eq!(cfg.master_seed, 0);
        assert_eq!(cfg.min_bit_errors, 200);
        assert_eq!(cfg.max_trials, 1_000_000);
    }

    #[test]
    fn unknown_keys_are_named() {
        let err = SimConfig::from_toml_str("scheme = \"gsim\"\nbogus_key = 3").unwrap_err();
        assert!(err.to_string().contains("bogus_key"), "{err}");
    }

    #[test]
    fn missing_keys_are_named() {
        let err =
            SimConfig::from_toml_str("scheme = \"gsim\"\nn_t = 4\nn_r = 2\nM = 4\nsnr_db = [1.0]")
                .unwrap_err();
        assert!(err.to_string().contains("`n_rf`"), "{err}");
    }

    #[test]
    fn sm_rejects_mismatched_rf_count() {
        let err = SimConfig::from_toml_str(
            "scheme = \"sm\"\nn_t = 2\nn_rf = 1\nn_r = 2\nM = 8\nsnr_db = [1.0]",
        )
        .unwrap_err();
        assert!(err.to_string().contains("`n_rf`"), "{err}");
    }

    #[test]
    fn mimo_ofdm_fixes_the_frequency_axis() {
        let cfg = SimConfig::from_toml_str(
            "scheme = \"mimo-ofdm\"\nn_t = 2\nn_r = 2\nM = 4\nN = 8\nL = 4\nsnr_db = [1.0]",
        )
        .unwrap();
        assert_eq!(cfg.bits_per_block(), 32);
        let err = SimConfig::from_toml_str(
            "scheme = \"mimo-ofdm\"\nn_t = 2\nn_r = 2\nM = 4\nN = 8\nL = 4\nk = 2\nsnr_db = [1.0]",
        )
        .unwrap_err();
        assert!(err.to_string().contains("`k`"), "{err}");
    }

    #[test]
    fn gsfim_requires_the_ml_detector() {
        let err = SimConfig::from_toml_str(
            "scheme = \"gsfim\"\ndetector = \"mmse\"\nn_t = 3\nn_rf = 2\nn_r = 2\n\
             M = 4\nN = 8\nn_f = 4\nk = 7\nL = 4\nsnr_db = [1.0]",
        )
        .unwrap_err();
        assert!(err.to_string().contains("`detector`"), "{err}");
    }

    #[test]
    fn gibbs_needs_idle_antennas() {
        let err = SimConfig::from_toml_str(
            "scheme = \"sm\"\ndetector = \"gibbs\"\nn_t = 2\nn_r = 2\nM = 8\nsnr_db = [1.0]",
        )
        .unwrap_err();
        assert!(err.to_string().contains("gibbs"), "{err}");
    }

    #[test]
    fn divisibility_errors_name_the_keys() {
        let err = SimConfig::from_toml_str(
            "scheme = \"gsfim\"\nn_t = 3\nn_rf = 2\nn_r = 2\nM = 4\nN = 10\nn_f = 4\nk = 7\nL = 4\n\
             snr_db = [1.0]",
        )
        .unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("n_f") && msg.contains("n_sub"), "{msg}");
    }

    #[test]
    fn oversized_search_spaces_are_rejected_up_front() {
        let err = SimConfig::from_toml_str(
            "scheme = \"gsfim\"\nn_t = 8\nn_rf = 8\nn_r = 2\nM = 16\nN = 2\nn_f = 2\nk = 16\nL = 1\n\
             snr_db = [1.0]",
        )
        .unwrap_err();
        assert!(err.to_string().contains("ceiling"), "{err}");
    }

    #[test]
    fn gsfim_noise_scaling_reduces_to_the_flat_rule() {
        let cfg = SimConfig::from_toml_str(
            "scheme = \"mimo-ofdm\"\nn_t = 2\nn_r = 2\nM = 4\nN = 8\nL = 4\nsnr_db = [3.0]",
        )
        .unwrap();
        // n_b·k/N = N·n_rf/N = n_rf.
        let flat = SimConfig::from_toml_str(
            "scheme = \"sm\"\nn_t = 2\nn_r = 2\nM = 4\nsnr_db = [3.0]",
        )
        .unwrap();
        assert_eq!(cfg.noise_variance_for(3.0), flat.noise_variance_for(3.0));
    }
}
