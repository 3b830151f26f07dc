//! File formats, JSON certificates, instance generators and the `nonrep`
//! command-line tool built on [`nonrep_core`].

pub mod certificate;
pub mod cli;
pub mod decomp_io;
pub mod generate;
pub mod graph_io;

use std::path::PathBuf;

use nonrep_core::decomp::DecompError;
use nonrep_core::nonrep::ColouringError;
use nonrep_core::strategies::StrategyError;
use nonrep_core::transform::TransformError;
use thiserror::Error;

pub use decomp_io::{DecompKind, DecompositionFile};
pub use graph_io::{graph_to_json, graph_to_text, parse_graph, GraphParseError};

/// Version stamped into every JSON document.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    GraphFile(#[from] GraphParseError),
    #[error("{0}")]
    DecompFile(#[from] decomp_io::DecompParseError),
    #[error("invalid colouring file: {0}")]
    ColouringFile(String),
    #[error("{0}")]
    Decomp(#[from] DecompError),
    #[error("{0}")]
    Colouring(#[from] ColouringError),
    #[error("{0}")]
    Transform(#[from] TransformError),
    #[error("{0}")]
    Strategy(#[from] StrategyError),
    #[error("{0}")]
    Invalid(String),
}

pub fn read_file(path: &std::path::Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}
