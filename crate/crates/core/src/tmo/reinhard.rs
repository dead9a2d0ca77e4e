//! Photographic tone reproduction, global and local variants.

use log::warn;

use super::filter::{gaussian_blur, gaussian_radius};
use super::{log_average, TmoConfig};
use crate::error::Result;

/// Global operator: scale by `key / log_average`, then compress with
/// `L / (1 + L)`. Output is in `[0, 1)` and strictly monotone in luminance.
pub fn reinhard_global(world: &[f64], key_value: f64) -> Result<Vec<f64>> {
    let average = log_average(world)?;
    let scale = key_value / average;
    Ok(world
        .iter()
        .map(|&lw| {
            let l = scale * lw;
            l / (1.0 + l)
        })
        .collect())
}

/// Ratio between adjacent scales of the center-surround pyramid.
const SCALE_RATIO: f64 = 1.6;
/// Gaussian sigma of the finest center kernel.
const BASE_SIGMA: f64 = 0.354; // 1 / (2 * sqrt(2))

/// Local operator: per-pixel adaptation by the largest surround that is
/// still uniform.
///
/// A pyramid of Gaussian-blurred copies of the scaled luminance provides
/// center/surround pairs; the selected scale is the largest one whose
/// normalized center-surround difference stays below the threshold, and the
/// pixel is compressed against the center response at that scale.
///
/// Scales whose kernels do not fit in the image are dropped; if fewer than
/// two remain the operator falls back to [`reinhard_global`] with a warning.
pub fn reinhard_local(
    world: &[f64],
    width: usize,
    height: usize,
    config: &TmoConfig,
) -> Result<Vec<f64>> {
    debug_assert_eq!(world.len(), width * height);
    let min_dim = width.min(height);

    // Scale i uses a center kernel of sigma BASE_SIGMA * ratio^i and a
    // surround one level up; the surround must fit too.
    let mut usable = 0;
    for i in 0..config.local_scales {
        let surround_sigma = BASE_SIGMA * SCALE_RATIO.powi(i as i32 + 1);
        if 2 * gaussian_radius(surround_sigma) + 1 <= min_dim {
            usable = i + 1;
        } else {
            break;
        }
    }
    if usable < config.local_scales && usable >= 2 {
        warn!(
            "local operator: image {width}x{height} fits only {usable} of {} scales",
            config.local_scales
        );
    }
    if usable < 2 {
        warn!(
            "local operator: image {width}x{height} is smaller than the largest kernel; \
             falling back to the global operator"
        );
        return reinhard_global(world, config.key_value);
    }

    let average = log_average(world)?;
    let scale = config.key_value / average;
    let scaled: Vec<f64> = world.iter().map(|&lw| scale * lw).collect();

    // usable + 1 pyramid levels: level i is the center at scale i and the
    // surround at scale i - 1.
    let pyramid: Vec<Vec<f64>> = (0..=usable)
        .map(|i| {
            let sigma = BASE_SIGMA * SCALE_RATIO.powi(i as i32);
            gaussian_blur(&scaled, width, height, sigma)
        })
        .collect();

    let sharpening = 2.0f64.powf(config.local_sharpening) * config.key_value;
    let out = scaled
        .iter()
        .enumerate()
        .map(|(idx, &l)| {
            let mut selected = pyramid[usable - 1][idx];
            for i in 0..usable {
                let center = pyramid[i][idx];
                let surround = pyramid[i + 1][idx];
                let s = SCALE_RATIO.powi(i as i32);
                let v = (center - surround) / (sharpening / (s * s) + center);
                if v.abs() >= config.local_threshold {
                    selected = if i == 0 { center } else { pyramid[i - 1][idx] };
                    break;
                }
            }
            (l / (1.0 + selected)).clamp(0.0, 1.0)
        })
        .collect();
    Ok(out)
}
