//! Mean luminance adjustment of an 8-bit image.

use crate::error::{Error, Result};
use crate::reconstruct::quantize_clip;
use crate::types::{LdrImage, NormalizedPixel};

/// Mean luminance of an LDR image on the `[0, 1]` scale, using the same
/// weights as the tone mapping pipeline.
pub fn mean_luminance(ldr: &LdrImage) -> f64 {
    let sum: f64 = ldr
        .normalized_pixels()
        .iter()
        .map(|p| 0.27 * p.r + 0.67 * p.g + 0.06 * p.b)
        .sum();
    sum / ldr.pixel_count() as f64
}

/// Multiplies every channel by a single constant so the mean luminance hits
/// `target_mean` (on the `[0, 1]` scale), then re-quantizes. Uniform channel
/// scaling preserves each unclipped pixel's maximally saturated color.
pub fn mean_luminance_adjust(ldr: &LdrImage, target_mean: f64) -> Result<LdrImage> {
    if !(target_mean > 0.0) {
        return Err(Error::Validation(format!(
            "target mean luminance must be > 0, got {target_mean}"
        )));
    }
    let current = mean_luminance(ldr);
    if current <= 0.0 {
        return Err(Error::Validation(
            "cannot adjust an all-black image to a positive mean".into(),
        ));
    }
    let scale = target_mean / current;
    let scaled: Vec<NormalizedPixel> = ldr
        .normalized_pixels()
        .into_iter()
        .map(|p| NormalizedPixel::new(p.r * scale, p.g * scale, p.b * scale))
        .collect();
    quantize_clip(&scaled, ldr.width(), ldr.height())
}
