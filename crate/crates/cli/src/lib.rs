//! Front end for `okounkov-core`: reads JSON inputs, runs one command and
//! writes deterministic JSON and CSV outputs.

mod commands;
pub mod schema;

use std::path::PathBuf;

use thiserror::Error;

pub use commands::run;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum CommandName {
    Body,
    Weights,
    Transform,
    Pushforward,
    Converge,
    NormalCone,
    F0,
    Check,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Params {
    pub k: Option<u32>,
    pub k_list: Vec<u32>,
    pub c: Option<String>,
    pub a: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandRequest {
    pub command: CommandName,
    pub input: PathBuf,
    pub output: PathBuf,
    pub params: Params,
}

#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub written: Vec<PathBuf>,
    /// Remarks for the user, such as degrees that were skipped.
    pub notes: Vec<String>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("writing CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Math(#[from] okounkov_core::Error),
}

impl CliError {
    /// 2 for unusable input, 3 for a mathematical precondition that fails.
    pub fn exit_code(&self) -> u8 {
        use okounkov_core::Error as E;
        match self {
            Self::Math(E::DimensionMismatch { .. } | E::ZeroDimension | E::NegativeGenerator(_)) => 2,
            Self::Math(_) => 3,
            _ => 2,
        }
    }
}
