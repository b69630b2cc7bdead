use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("malformed scenario {path}: {msg}")]
    Scenario { path: String, msg: String },
    #[error("bad input {0}: {1}")]
    Input(PathBuf, String),
    #[error("invalid request: {0}")]
    Config(String),
    #[error("infeasible request: {0}")]
    Infeasible(String),
    #[error("planner and simulator disagree on orders {0:?}")]
    Disagreement(Vec<u32>),
    #[error("cannot write {0}: {1}")]
    Output(PathBuf, std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Scenario { .. } | CliError::Input(..) | CliError::Config(_) => 2,
            CliError::Infeasible(_) => 3,
            CliError::Disagreement(_) => 4,
            CliError::Output(..) => 1,
        }
    }
}

/// Sorts core errors into the exit-code classes.
pub fn from_core(e: subharmonic_core::Error) -> CliError {
    use subharmonic_core::Error as E;
    match e {
        E::NoFeasibleOrder { .. } | E::CarrierAboveCeiling { .. } | E::ZeroOrder => {
            CliError::Infeasible(e.to_string())
        }
        other => CliError::Config(other.to_string()),
    }
}
