use std::path::Path;

use serde::Serialize;

use crate::error::CliError;

/// Everything needed to re-run a command; written as `manifest.json` into
/// each output directory. Contains no timestamps, so identical runs produce
/// identical bytes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub command: String,
    pub scenario: String,
    pub seed: u64,
    pub out_dir: String,
    /// Remaining command arguments as `(flag, value)` pairs.
    pub args: Vec<(String, String)>,
}

impl RunManifest {
    pub fn write(&self, dir: &Path) -> Result<(), CliError> {
        let mut text = serde_json::to_string_pretty(self).expect("manifest serializes");
        text.push('\n');
        let path = dir.join("manifest.json");
        std::fs::write(&path, text).map_err(|e| CliError::Output(path, e))
    }
}
