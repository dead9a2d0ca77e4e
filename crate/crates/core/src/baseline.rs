//! Saturation-based color correction baseline.
//!
//! The comparison baseline corrects tone-mapped color with the nonlinear
//! formula `C_out = (C / L_in)^s * L_out`, where the saturation factor `s`
//! either comes from configuration or is derived from the tone curve's
//! contrast compression. Gray pixels map to the display luminance exactly
//! for any `s`, so the correction never disturbs the tone mapping itself.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tmo::ZERO_LUMINANCE_DELTA;
use crate::types::{HdrImage, NormalizedPixel};

/// Configuration of the correction formula.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MantiukConfig {
    /// Fixed saturation factor; `None` derives it from the tone curve slope.
    pub saturation: Option<f64>,
    /// Saturation/contrast relation constant.
    pub k1: f64,
    /// Saturation/contrast relation exponent.
    pub k2: f64,
}

impl Default for MantiukConfig {
    fn default() -> Self {
        Self {
            saturation: None,
            k1: 1.6774,
            k2: 0.9925,
        }
    }
}

impl MantiukConfig {
    pub fn validate(&self) -> Result<()> {
        if let Some(s) = self.saturation {
            if !(s >= 0.0 && s.is_finite()) {
                return Err(Error::Validation(format!(
                    "saturation must be >= 0, got {s}"
                )));
            }
        }
        Ok(())
    }
}

/// Corrects one channel: `(c / l_in)^s * l_out`. Zero input luminance maps
/// to zero; `s = 1` reproduces plain luminance-ratio scaling.
pub fn mantiuk_correct(channel: f64, l_in: f64, l_out: f64, saturation: f64) -> f64 {
    if l_in <= 0.0 {
        return 0.0;
    }
    (channel / l_in).powf(saturation) * l_out
}

/// Saturation factor for a tone curve with contrast compression ratio `c`:
/// `s(c) = ((1 + k1) c^k2) / (1 + k1 c^k2)`. Identity curves (`c = 1`) keep
/// full saturation; heavily compressed curves desaturate toward zero.
pub fn saturation_for_contrast(contrast: f64, k1: f64, k2: f64) -> f64 {
    assert!(contrast > 0.0, "contrast ratio must be > 0");
    let t = contrast.powf(k2);
    ((1.0 + k1) * t) / (1.0 + k1 * t)
}

/// Estimates the tone curve's contrast compression ratio as the least-squares
/// slope of log display luminance against log world luminance.
pub fn estimate_contrast_ratio(world: &[f64], display: &[f64]) -> f64 {
    let mut n = 0.0f64;
    let mut sum_x = 0.0;
    let mut sum_y = 0.0;
    let mut sum_xx = 0.0;
    let mut sum_xy = 0.0;
    for (&lw, &ld) in world.iter().zip(display) {
        if lw <= ZERO_LUMINANCE_DELTA || ld <= ZERO_LUMINANCE_DELTA {
            continue;
        }
        let x = lw.ln();
        let y = ld.ln();
        n += 1.0;
        sum_x += x;
        sum_y += y;
        sum_xx += x * x;
        sum_xy += x * y;
    }
    if n < 2.0 {
        return 1.0;
    }
    let var = sum_xx - sum_x * sum_x / n;
    if var <= 1e-12 {
        return 1.0;
    }
    let slope = (sum_xy - sum_x * sum_y / n) / var;
    slope.clamp(0.0, f64::MAX)
}

/// Outcome of correcting a whole image.
#[derive(Debug, Clone)]
pub struct MantiukResult {
    pub pixels: Vec<NormalizedPixel>,
    /// The saturation factor actually applied (useful when it was derived).
    pub saturation: f64,
    /// The estimated contrast ratio, when saturation was derived from it.
    pub contrast_ratio: Option<f64>,
}

/// Applies the correction to every pixel of an image given aligned world and
/// display luminance maps.
pub fn correct_image(
    hdr: &HdrImage,
    world: &[f64],
    display: &[f64],
    config: &MantiukConfig,
) -> Result<MantiukResult> {
    config.validate()?;
    if world.len() != hdr.pixel_count() || display.len() != hdr.pixel_count() {
        return Err(Error::DimensionMismatch(
            "luminance maps must match the image".into(),
        ));
    }
    let (saturation, contrast_ratio) = match config.saturation {
        Some(s) => (s, None),
        None => {
            let c = estimate_contrast_ratio(world, display);
            (saturation_for_contrast(c, config.k1, config.k2), Some(c))
        }
    };
    let pixels = hdr
        .pixels()
        .iter()
        .zip(world.iter().zip(display))
        .map(|(&[r, g, b], (&lw, &ld))| {
            NormalizedPixel::new(
                mantiuk_correct(r, lw, ld, saturation),
                mantiuk_correct(g, lw, ld, saturation),
                mantiuk_correct(b, lw, ld, saturation),
            )
        })
        .collect();
    Ok(MantiukResult {
        pixels,
        saturation,
        contrast_ratio,
    })
}
