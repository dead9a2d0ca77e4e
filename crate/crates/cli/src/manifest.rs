//! Run manifests: a deterministic JSON record of what a command did.
//!
//! Every batch command writes a `manifest.json` next to its outputs. Running
//! the same command on the same inputs reproduces the manifest byte for
//! byte; nothing time- or host-dependent is recorded.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use hueforge_core::tmo::TmOperator;
use hueforge_core::Result;

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: &'static str,
    pub inputs: Vec<PathBuf>,
    pub operators: Vec<TmOperator>,
    pub alpha: f64,
    pub drago_bias: f64,
    pub durand_contrast: f64,
    pub gamma: Option<f64>,
    pub compensate: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub baseline: Option<BaselineManifest>,
    /// File names relative to the manifest's own directory, so the record
    /// does not depend on where the output tree lives.
    pub outputs: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct BaselineManifest {
    pub method: &'static str,
    pub variant: &'static str,
    pub k1: f64,
    pub k2: f64,
}

impl RunManifest {
    pub fn write(&self, dir: &Path) -> Result<PathBuf> {
        let path = dir.join("manifest.json");
        let json = serde_json::to_string_pretty(self)
            .expect("manifest serialization cannot fail");
        fs::write(&path, json)?;
        Ok(path)
    }
}
