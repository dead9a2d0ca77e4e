//! CIEDE2000 color difference, with the hue-difference term exposed
//! separately.
//!
//! The image-level hue metric averages the per-pixel hue-difference term
//! `ΔH' = 2 sqrt(C'1 C'2) sin(Δh'/2)` over all pixels. The full ΔE00 is also
//! implemented — primarily to validate the hue-angle machinery against the
//! published 34-pair reference dataset, which exercises every branch of the
//! hue computation.

use serde::{Deserialize, Serialize};

use super::lab::{srgb_to_lab, LabPixel};
use super::MetricMap;
use crate::error::{Error, Result};
use crate::tmo::world_luminance;
use crate::types::{HdrImage, LdrImage, NormalizedPixel};

/// Configuration of the image-level hue metric.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeltaHConfig {
    /// Divide the hue term by `k_H * S_H` (the weighting the full ΔE00
    /// applies). Off by default: the raw ΔH' is the hue difference proper.
    pub normalize_hue_term: bool,
    /// Luminance percentile used to normalize HDR images before the Lab
    /// conversion.
    pub hdr_luminance_percentile: f64,
}

impl Default for DeltaHConfig {
    fn default() -> Self {
        Self {
            normalize_hue_term: false,
            hdr_luminance_percentile: 99.9,
        }
    }
}

const POW7_25: f64 = 6103515625.0; // 25^7

/// Intermediate quantities shared by ΔE00 and the hue term.
struct HuePrimes {
    c1p: f64,
    c2p: f64,
    h1p_deg: f64,
    h2p_deg: f64,
}

fn hue_primes(p1: LabPixel, p2: LabPixel) -> HuePrimes {
    let c1 = (p1.a * p1.a + p1.b * p1.b).sqrt();
    let c2 = (p2.a * p2.a + p2.b * p2.b).sqrt();
    let c_mean = 0.5 * (c1 + c2);
    let c_mean7 = c_mean.powi(7);
    let g = 0.5 * (1.0 - (c_mean7 / (c_mean7 + POW7_25)).sqrt());

    let a1p = (1.0 + g) * p1.a;
    let a2p = (1.0 + g) * p2.a;
    let c1p = (a1p * a1p + p1.b * p1.b).sqrt();
    let c2p = (a2p * a2p + p2.b * p2.b).sqrt();

    let hue_angle = |b: f64, a: f64| {
        if a == 0.0 && b == 0.0 {
            0.0
        } else {
            let h = b.atan2(a).to_degrees();
            if h < 0.0 {
                h + 360.0
            } else {
                h
            }
        }
    };

    HuePrimes {
        c1p,
        c2p,
        h1p_deg: hue_angle(p1.b, a1p),
        h2p_deg: hue_angle(p2.b, a2p),
    }
}

fn delta_h_prime_deg(h: &HuePrimes) -> f64 {
    if h.c1p * h.c2p == 0.0 {
        return 0.0;
    }
    let diff = h.h2p_deg - h.h1p_deg;
    if diff.abs() <= 180.0 {
        diff
    } else if diff > 180.0 {
        diff - 360.0
    } else {
        diff + 360.0
    }
}

fn mean_hue_deg(h: &HuePrimes) -> f64 {
    let sum = h.h1p_deg + h.h2p_deg;
    if h.c1p * h.c2p == 0.0 {
        return sum;
    }
    if (h.h1p_deg - h.h2p_deg).abs() <= 180.0 {
        0.5 * sum
    } else if sum < 360.0 {
        0.5 * (sum + 360.0)
    } else {
        0.5 * (sum - 360.0)
    }
}

/// The CIEDE2000 hue-difference term `ΔH'`, optionally divided by
/// `k_H * S_H` (with `k_H = 1`).
pub fn hue_difference(p1: LabPixel, p2: LabPixel, normalize: bool) -> f64 {
    let h = hue_primes(p1, p2);
    let dhp = delta_h_prime_deg(&h);
    let term = 2.0 * (h.c1p * h.c2p).sqrt() * (dhp.to_radians() / 2.0).sin();
    if !normalize {
        return term.abs();
    }
    let c_mean_p = 0.5 * (h.c1p + h.c2p);
    let t = hue_weighting(mean_hue_deg(&h));
    let s_h = 1.0 + 0.015 * c_mean_p * t;
    (term / s_h).abs()
}

fn hue_weighting(h_mean_deg: f64) -> f64 {
    1.0 - 0.17 * (h_mean_deg - 30.0).to_radians().cos()
        + 0.24 * (2.0 * h_mean_deg).to_radians().cos()
        + 0.32 * (3.0 * h_mean_deg + 6.0).to_radians().cos()
        - 0.20 * (4.0 * h_mean_deg - 63.0).to_radians().cos()
}

/// Full CIEDE2000 color difference with unit parametric factors.
pub fn delta_e(p1: LabPixel, p2: LabPixel) -> f64 {
    let h = hue_primes(p1, p2);

    let delta_l = p2.l - p1.l;
    let delta_c = h.c2p - h.c1p;
    let dhp = delta_h_prime_deg(&h);
    let delta_h = 2.0 * (h.c1p * h.c2p).sqrt() * (dhp.to_radians() / 2.0).sin();

    let l_mean = 0.5 * (p1.l + p2.l);
    let c_mean_p = 0.5 * (h.c1p + h.c2p);
    let h_mean = mean_hue_deg(&h);

    let t = hue_weighting(h_mean);
    let l_shift = (l_mean - 50.0) * (l_mean - 50.0);
    let s_l = 1.0 + 0.015 * l_shift / (20.0 + l_shift).sqrt();
    let s_c = 1.0 + 0.045 * c_mean_p;
    let s_h = 1.0 + 0.015 * c_mean_p * t;

    let c_mean_p7 = c_mean_p.powi(7);
    let r_c = 2.0 * (c_mean_p7 / (c_mean_p7 + POW7_25)).sqrt();
    let delta_theta_deg = 30.0 * (-((h_mean - 275.0) / 25.0).powi(2)).exp();
    let r_t = -r_c * (2.0 * delta_theta_deg).to_radians().sin();

    let tl = delta_l / s_l;
    let tc = delta_c / s_c;
    let th = delta_h / s_h;
    (tl * tl + tc * tc + th * th + r_t * tc * th).sqrt()
}

/// Lab rendering of an HDR image: channels are normalized by the given
/// luminance percentile and the result is taken as the image's sRGB-encoded
/// rendering and converted exactly like LDR bytes are. Using the same
/// interpretation on both sides keeps the comparison symmetric: a candidate
/// whose stored values equal the normalized HDR values gets a hue difference
/// of zero.
///
/// Pixels still above range after the global normalization are brought into
/// `[0, 1]` by scaling the whole pixel down by its maximum channel. A
/// per-channel clip would shift the reference hue of every highlight — the
/// exact distortion this metric exists to measure — while a uniform scale
/// leaves the pixel's maximally saturated color (and so its hue) untouched.
pub fn hdr_to_lab(hdr: &HdrImage, luminance_percentile: f64) -> Vec<LabPixel> {
    let world = world_luminance(hdr);
    let mut sorted: Vec<f64> = world.iter().copied().filter(|l| *l > 0.0).collect();
    sorted.sort_by(|a, b| a.total_cmp(b));
    let scale = if sorted.is_empty() {
        1.0
    } else {
        let rank = ((luminance_percentile / 100.0) * sorted.len() as f64).ceil() as usize;
        sorted[rank.clamp(1, sorted.len()) - 1]
    };
    hdr.normalized_pixels()
        .map(|p| {
            let peak = (p.r / scale).max(p.g / scale).max(p.b / scale);
            let pixel_scale = if peak > 1.0 { scale * peak } else { scale };
            let encoded = NormalizedPixel::new(
                (p.r / pixel_scale).clamp(0.0, 1.0),
                (p.g / pixel_scale).clamp(0.0, 1.0),
                (p.b / pixel_scale).clamp(0.0, 1.0),
            );
            srgb_to_lab(encoded)
        })
        .collect()
}

/// Lab rendering of an LDR image (bytes are treated as sRGB-encoded).
pub fn ldr_to_lab(ldr: &LdrImage) -> Vec<LabPixel> {
    ldr.normalized_pixels().into_iter().map(srgb_to_lab).collect()
}

/// Mean per-pixel CIEDE2000 hue difference between an HDR reference and an
/// LDR candidate.
pub fn delta_h(hdr: &HdrImage, ldr: &LdrImage, config: &DeltaHConfig) -> Result<MetricMap> {
    if hdr.width() != ldr.width() || hdr.height() != ldr.height() {
        return Err(Error::DimensionMismatch(format!(
            "HDR is {}x{}, LDR is {}x{}",
            hdr.width(),
            hdr.height(),
            ldr.width(),
            ldr.height()
        )));
    }
    let reference = hdr_to_lab(hdr, config.hdr_luminance_percentile);
    let candidate = ldr_to_lab(ldr);
    let values: Vec<f64> = reference
        .iter()
        .zip(&candidate)
        .map(|(&a, &b)| hue_difference(a, b, config.normalize_hue_term))
        .collect();
    Ok(MetricMap::new(values, ldr.width(), ldr.height()))
}
