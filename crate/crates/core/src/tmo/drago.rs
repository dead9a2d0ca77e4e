//! Adaptive logarithmic tone mapping.

use crate::error::Result;

/// Logarithmic compression whose base adapts per pixel between log2 (dark)
/// and log10 (bright), steered by the bias parameter:
///
/// ```text
/// L_d = (0.01 * peak / log10(1 + L_max)) * ln(1 + L) / ln(2 + 8 * (L / L_max)^(ln b / ln 0.5))
/// ```
///
/// With `peak = 100` the maximum luminance maps to exactly 1. An all-zero
/// image maps to all zeros.
pub fn drago(world: &[f64], bias: f64, peak_display: f64) -> Result<Vec<f64>> {
    assert!(bias > 0.0 && bias <= 1.0, "bias must be in (0, 1]");
    assert!(peak_display > 0.0, "peak display luminance must be > 0");

    let max_world = world.iter().copied().fold(0.0f64, f64::max);
    if max_world <= 0.0 {
        return Ok(vec![0.0; world.len()]);
    }

    let bias_exponent = bias.ln() / 0.5f64.ln();
    let scale = 0.01 * peak_display / (1.0 + max_world).log10();
    Ok(world
        .iter()
        .map(|&lw| {
            let adapt = (lw / max_world).powf(bias_exponent);
            let v = scale * (1.0 + lw).ln() / (2.0 + 8.0 * adapt).ln();
            v.clamp(0.0, 1.0)
        })
        .collect())
}
