//! Rebuilding a displayable image from compressed luminance.
//!
//! After a tone mapping operator has produced display luminance, the color
//! image is reconstructed channel-wise by luminance ratio, optionally gamma
//! encoded, then rounded and clipped to 8 bits. Rounding is half-away-from-
//! zero; this is fixed and documented because it shifts quantized values (and
//! therefore downstream hue metrics) by one code value at the half-points.
//!
//! [`clip_only`] and [`round_only`] expose the two quantization error sources
//! separately so they can be measured in isolation.

use crate::error::{Error, Result};
use crate::types::{HdrImage, LdrImage, LuminancePair, NormalizedPixel};

/// How the floating-point image becomes a displayable one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReconstructionConfig {
    /// Display gamma; `None` skips the encoding step entirely.
    pub gamma: Option<f64>,
    /// Keep the pre-quantization floating-point image around for analysis.
    pub record_prequant: bool,
}

impl Default for ReconstructionConfig {
    fn default() -> Self {
        Self {
            gamma: Some(2.2),
            record_prequant: false,
        }
    }
}

impl ReconstructionConfig {
    pub fn validate(&self) -> Result<()> {
        if let Some(g) = self.gamma {
            if !(g > 0.0) {
                return Err(Error::Validation(format!("gamma must be > 0, got {g}")));
            }
        }
        Ok(())
    }
}

/// Scales every channel by the per-pixel display/world luminance ratio.
/// Pixels with zero world luminance map to black.
pub fn color_ratio(hdr: &HdrImage, luminance: &[LuminancePair]) -> Result<Vec<NormalizedPixel>> {
    if luminance.len() != hdr.pixel_count() {
        return Err(Error::DimensionMismatch(format!(
            "luminance map has {} entries for {} pixels",
            luminance.len(),
            hdr.pixel_count()
        )));
    }
    Ok(hdr
        .pixels()
        .iter()
        .zip(luminance)
        .map(|(&[r, g, b], lum)| {
            if lum.world <= 0.0 {
                NormalizedPixel::splat(0.0)
            } else {
                let ratio = lum.display / lum.world;
                NormalizedPixel::new(r * ratio, g * ratio, b * ratio)
            }
        })
        .collect())
}

/// Per-channel `v ↦ max(v, 0)^(1/gamma)`. Values above 1 pass through and are
/// handled by the later clipping step.
pub fn gamma_encode(pixels: &[NormalizedPixel], gamma: f64) -> Vec<NormalizedPixel> {
    assert!(gamma > 0.0, "gamma must be positive");
    let inv = 1.0 / gamma;
    pixels
        .iter()
        .map(|p| {
            NormalizedPixel::new(
                p.r.max(0.0).powf(inv),
                p.g.max(0.0).powf(inv),
                p.b.max(0.0).powf(inv),
            )
        })
        .collect()
}

fn round_channel(v: f64) -> f64 {
    // f64::round is half-away-from-zero.
    (v * 255.0).round()
}

/// Rounds to the nearest 8-bit code value (half away from zero) and clips to
/// `[0, 255]`.
pub fn quantize_clip(pixels: &[NormalizedPixel], width: usize, height: usize) -> Result<LdrImage> {
    let quantized = pixels
        .iter()
        .map(|p| {
            let q = |v: f64| round_channel(v).clamp(0.0, 255.0) as u8;
            [q(p.r), q(p.g), q(p.b)]
        })
        .collect();
    LdrImage::new(width, height, quantized)
}

/// Clipping without rounding: clamps each channel to `[0, 1]` but keeps the
/// fractional value.
pub fn clip_only(pixels: &[NormalizedPixel]) -> Vec<NormalizedPixel> {
    pixels
        .iter()
        .map(|p| NormalizedPixel::new(p.r.clamp(0.0, 1.0), p.g.clamp(0.0, 1.0), p.b.clamp(0.0, 1.0)))
        .collect()
}

/// Rounding without clipping: code values outside `[0, 255]` are kept as wide
/// integers so the clipping error can be measured separately.
pub fn round_only(pixels: &[NormalizedPixel]) -> Vec<[i32; 3]> {
    pixels
        .iter()
        .map(|p| {
            [
                round_channel(p.r) as i32,
                round_channel(p.g) as i32,
                round_channel(p.b) as i32,
            ]
        })
        .collect()
}
