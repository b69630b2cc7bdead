//! Scenario files, WAV/IQ formats and the command-line harness around
//! [`subharmonic_core`].

pub mod commands;
pub mod error;
pub mod iq;
pub mod manifest;
pub mod report;
pub mod scenario;
pub mod wav;

pub use error::CliError;
pub use scenario::ScenarioFile;
