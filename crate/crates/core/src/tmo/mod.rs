//! Tone mapping operators: world luminance to display luminance.
//!
//! Every operator maps a nonnegative world-luminance map to display
//! luminance in `[0, 1]` and is monotone on constant-chromaticity ramps.
//! Operators are pure per-pixel maps after any shared precomputation, so
//! outputs are deterministic regardless of how callers parallelize.

pub mod drago;
pub mod durand;
pub mod filter;
pub mod reinhard;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::types::HdrImage;

pub use drago::drago;
pub use durand::durand;
pub use reinhard::{reinhard_global, reinhard_local};

/// Additive guard for logarithms of luminance, which is frequently zero in
/// real images.
pub const ZERO_LUMINANCE_DELTA: f64 = 1e-6;

/// The supported tone mapping operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TmOperator {
    ReinhardGlobal,
    ReinhardLocal,
    Drago,
    Durand,
}

impl TmOperator {
    pub const ALL: [TmOperator; 4] = [
        TmOperator::ReinhardGlobal,
        TmOperator::ReinhardLocal,
        TmOperator::Drago,
        TmOperator::Durand,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            TmOperator::ReinhardGlobal => "reinhard_global",
            TmOperator::ReinhardLocal => "reinhard_local",
            TmOperator::Drago => "drago",
            TmOperator::Durand => "durand",
        }
    }
}

impl fmt::Display for TmOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TmOperator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "reinhard_global" => Ok(TmOperator::ReinhardGlobal),
            "reinhard_local" => Ok(TmOperator::ReinhardLocal),
            "drago" => Ok(TmOperator::Drago),
            "durand" => Ok(TmOperator::Durand),
            other => Err(Error::Validation(format!(
                "unknown tone mapping operator '{other}'"
            ))),
        }
    }
}

/// Operator selection plus every tunable the operators expose.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TmoConfig {
    pub operator: TmOperator,
    /// Reinhard key value (scene brightness), in `[0, 1]`.
    pub key_value: f64,
    /// Drago bias, in `(0, 1]`.
    pub drago_bias: f64,
    /// Drago peak display luminance in cd/m²; 100 maps the top of the range
    /// to exactly 1.
    pub drago_peak_display: f64,
    /// Durand target contrast ratio of the compressed base layer, > 1.
    pub durand_contrast: f64,
    /// Number of center-surround scales for the local Reinhard operator.
    pub local_scales: usize,
    /// Sharpening exponent for local scale selection.
    pub local_sharpening: f64,
    /// Scale-selection threshold for the local operator.
    pub local_threshold: f64,
}

impl Default for TmoConfig {
    fn default() -> Self {
        Self {
            operator: TmOperator::ReinhardGlobal,
            key_value: 0.18,
            drago_bias: 0.85,
            drago_peak_display: 100.0,
            durand_contrast: 50.0,
            local_scales: 8,
            local_sharpening: 8.0,
            local_threshold: 0.05,
        }
    }
}

impl TmoConfig {
    pub fn with_operator(operator: TmOperator) -> Self {
        Self {
            operator,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.key_value) {
            return Err(Error::Validation(format!(
                "key value must be in [0, 1], got {}",
                self.key_value
            )));
        }
        if !(self.drago_bias > 0.0 && self.drago_bias <= 1.0) {
            return Err(Error::Validation(format!(
                "drago bias must be in (0, 1], got {}",
                self.drago_bias
            )));
        }
        if !(self.durand_contrast > 1.0) {
            return Err(Error::Validation(format!(
                "durand contrast must be > 1, got {}",
                self.durand_contrast
            )));
        }
        if self.local_scales < 1 {
            return Err(Error::Validation("local operator needs >= 1 scale".into()));
        }
        Ok(())
    }

    /// Runs the configured operator on a world-luminance map.
    pub fn display_luminance(&self, world: &[f64], width: usize, height: usize) -> Result<Vec<f64>> {
        self.validate()?;
        match self.operator {
            TmOperator::ReinhardGlobal => reinhard_global(world, self.key_value),
            TmOperator::ReinhardLocal => reinhard_local(world, width, height, self),
            TmOperator::Drago => drago(world, self.drago_bias, self.drago_peak_display),
            TmOperator::Durand => durand(world, width, height, self.durand_contrast),
        }
    }
}

/// Per-pixel world luminance `0.27 R + 0.67 G + 0.06 B`.
pub fn world_luminance(img: &HdrImage) -> Vec<f64> {
    img.pixels()
        .iter()
        .map(|&[r, g, b]| 0.27 * r + 0.67 * g + 0.06 * b)
        .collect()
}

/// Geometric mean of the luminance map, with the zero guard
/// `log(delta + L)` applied to every pixel.
pub fn log_average(world: &[f64]) -> Result<f64> {
    if world.is_empty() {
        return Err(Error::Validation(
            "log average of an empty luminance map".into(),
        ));
    }
    let sum: f64 = world
        .iter()
        .map(|&l| (ZERO_LUMINANCE_DELTA + l).ln())
        .sum();
    Ok((sum / world.len() as f64).exp())
}
