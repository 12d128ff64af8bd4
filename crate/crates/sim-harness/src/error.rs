//! Error type shared by the harness library and the CLI.

use thiserror::Error;

/// Anything that can go wrong between parsing a config file and writing
/// the last output record.
#[derive(Debug, Error)]
pub enum HarnessError {
    /// The invocation itself is malformed (maps to exit code 1).
    #[error("{0}")]
    Usage(String),
    /// The configuration is readable but invalid; the message names the
    /// offending key.
    #[error("{0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("worker pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Rate(#[from] rate_analysis::RateError),
    #[error(transparent)]
    Link(#[from] gsim_link::LinkError),
    #[error(transparent)]
    SpaceFrequency(#[from] gsfim_link::GsfimError),
    #[error(transparent)]
    Mapping(#[from] im_core::ImError),
}
