//! Rendering per-pixel metric maps as false-color images.

use crate::error::Result;
use crate::types::LdrImage;

// Dark-to-bright stops, roughly perceptually ordered.
const STOPS: [[f64; 3]; 5] = [
    [0.0, 0.0, 4.0],
    [87.0, 16.0, 110.0],
    [188.0, 55.0, 84.0],
    [249.0, 142.0, 9.0],
    [252.0, 255.0, 164.0],
];

fn colorize(t: f64) -> [u8; 3] {
    let t = t.clamp(0.0, 1.0) * (STOPS.len() - 1) as f64;
    let idx = (t.floor() as usize).min(STOPS.len() - 2);
    let frac = t - idx as f64;
    let lo = STOPS[idx];
    let hi = STOPS[idx + 1];
    [
        (lo[0] + frac * (hi[0] - lo[0])).round() as u8,
        (lo[1] + frac * (hi[1] - lo[1])).round() as u8,
        (lo[2] + frac * (hi[2] - lo[2])).round() as u8,
    ]
}

/// Renders a metric map as a heatmap image. Values are scaled by `max`, or
/// by the map's own maximum if `None` (an all-zero map renders as the lowest
/// color).
pub fn heatmap(values: &[f64], width: usize, height: usize, max: Option<f64>) -> Result<LdrImage> {
    let scale = match max {
        Some(m) if m > 0.0 => m,
        _ => {
            let observed = values.iter().copied().fold(0.0f64, f64::max);
            if observed > 0.0 {
                observed
            } else {
                1.0
            }
        }
    };
    let pixels = values.iter().map(|&v| colorize(v / scale)).collect();
    LdrImage::new(width, height, pixels)
}
