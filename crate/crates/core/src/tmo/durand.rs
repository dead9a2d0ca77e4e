//! Bilateral base/detail dynamic range compression.

use super::filter::bilateral;
use super::ZERO_LUMINANCE_DELTA;
use crate::error::Result;

/// Range sigma of the bilateral filter, in log10 luminance units.
const RANGE_SIGMA: f64 = 0.4;
/// Spatial sigma as a fraction of the image diagonal.
const SPATIAL_FRACTION: f64 = 0.02;

/// Splits log luminance into a bilateral-filtered base layer and a detail
/// layer, compresses the base range to `log10(contrast)`, recombines, and
/// normalizes so the brightest pixel maps to exactly 1.
pub fn durand(world: &[f64], width: usize, height: usize, contrast: f64) -> Result<Vec<f64>> {
    assert!(contrast > 1.0, "contrast must be > 1");
    debug_assert_eq!(world.len(), width * height);

    let log_lum: Vec<f64> = world
        .iter()
        .map(|&l| (l.max(ZERO_LUMINANCE_DELTA)).log10())
        .collect();

    let diagonal = ((width * width + height * height) as f64).sqrt();
    let sigma_space = SPATIAL_FRACTION * diagonal;
    let base = bilateral(&log_lum, width, height, sigma_space, RANGE_SIGMA);

    let base_min = base.iter().copied().fold(f64::INFINITY, f64::min);
    let base_max = base.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let base_range = base_max - base_min;
    let compression = if base_range > 1e-12 {
        (contrast.log10() / base_range).min(1.0)
    } else {
        1.0
    };

    let combined: Vec<f64> = log_lum
        .iter()
        .zip(&base)
        .map(|(&log, &b)| b * compression + (log - b))
        .collect();
    let peak = combined.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(combined
        .iter()
        .map(|&v| 10.0f64.powf(v - peak).clamp(0.0, 1.0))
        .collect())
}
