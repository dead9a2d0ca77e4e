//! Objective metrics for hue distortion and tone mapping quality.
//!
//! Three metrics quantify how a tone-mapped image relates to its HDR source:
//!
//! - **Δc** — mean Euclidean distance between the per-pixel maximally
//!   saturated colors of the two images. Zero iff the hue planes agree
//!   everywhere.
//! - **ΔH** — mean CIEDE2000 hue-difference term between the two images in
//!   Lab space.
//! - **TMQI** — structural fidelity and naturalness of the tone mapping
//!   itself; higher is better.
//!
//! Per-pixel maps are computed in row-major order and reduced sequentially,
//! so results are bit-stable no matter how callers schedule images across
//! threads.

pub mod adjust;
pub mod ciede2000;
pub mod heatmap;
pub mod lab;
pub mod tmqi;

use log::debug;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hue_plane::{max_saturated_color, max_saturated_color_hdr};
use crate::types::{HdrImage, LdrImage, NormalizedPixel};

pub use adjust::{mean_luminance, mean_luminance_adjust};
pub use ciede2000::{delta_e, delta_h, hue_difference, DeltaHConfig};
pub use heatmap::heatmap;
pub use lab::{srgb_to_lab, LabPixel};
pub use tmqi::{statistical_naturalness, structural_fidelity, tmqi, tmqi_with, TmqiConstants, TmqiScore};

/// A per-pixel metric map together with its mean.
#[derive(Debug, Clone)]
pub struct MetricMap {
    width: usize,
    height: usize,
    pub values: Vec<f64>,
    pub mean: f64,
}

impl MetricMap {
    pub fn new(values: Vec<f64>, width: usize, height: usize) -> Self {
        debug_assert_eq!(values.len(), width * height);
        let mean = if values.is_empty() {
            0.0
        } else {
            values.iter().sum::<f64>() / values.len() as f64
        };
        Self {
            width,
            height,
            values,
            mean,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }
}

/// Scalar results for one image pair.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MetricReport {
    pub delta_c: f64,
    pub delta_h: f64,
    pub tmqi_q: f64,
    pub tmqi_s: f64,
    pub tmqi_n: f64,
}

/// Column order of the CSV report rows.
pub const CSV_HEADER: &str = "image,tmo,method,delta_c,delta_h,tmqi_q,tmqi_s,tmqi_n";

impl MetricReport {
    /// One CSV row in [`CSV_HEADER`] order.
    pub fn csv_row(&self, image: &str, tmo: &str, method: &str) -> String {
        format!(
            "{image},{tmo},{method},{:.6},{:.6},{:.6},{:.6},{:.6}",
            self.delta_c, self.delta_h, self.tmqi_q, self.tmqi_s, self.tmqi_n
        )
    }
}

/// Per-pixel maximally saturated colors of an HDR image.
pub fn saturation_map_hdr(hdr: &HdrImage) -> Vec<Option<NormalizedPixel>> {
    hdr.normalized_pixels().map(max_saturated_color_hdr).collect()
}

/// Per-pixel maximally saturated colors of an LDR image (exact achromatic
/// test on the 8-bit grid).
pub fn saturation_map_ldr(ldr: &LdrImage) -> Vec<Option<NormalizedPixel>> {
    ldr.normalized_pixels()
        .into_iter()
        .map(max_saturated_color)
        .collect()
}

/// Per-pixel maximally saturated colors of a floating-point pixel map.
pub fn saturation_map_float(pixels: &[NormalizedPixel]) -> Vec<Option<NormalizedPixel>> {
    pixels.iter().map(|&p| max_saturated_color(p)).collect()
}

/// Mean Euclidean distance between two saturation maps.
///
/// Pixels achromatic on both sides contribute zero. Pixels achromatic on
/// exactly one side have no defined hue distance; they also contribute zero
/// but are counted and logged, since they indicate hue invented or destroyed
/// by the pipeline.
pub fn delta_c_from_maps(
    reference: &[Option<NormalizedPixel>],
    candidate: &[Option<NormalizedPixel>],
    width: usize,
    height: usize,
) -> Result<MetricMap> {
    if reference.len() != candidate.len() {
        return Err(Error::DimensionMismatch(format!(
            "saturation maps have {} and {} entries",
            reference.len(),
            candidate.len()
        )));
    }
    let mut half_achromatic = 0usize;
    let values: Vec<f64> = reference
        .iter()
        .zip(candidate)
        .map(|(a, b)| match (a, b) {
            (Some(ca), Some(cb)) => {
                let dr = ca.r - cb.r;
                let dg = ca.g - cb.g;
                let db = ca.b - cb.b;
                (dr * dr + dg * dg + db * db).sqrt()
            }
            (None, None) => 0.0,
            _ => {
                half_achromatic += 1;
                0.0
            }
        })
        .collect();
    if half_achromatic > 0 {
        debug!("delta c: {half_achromatic} pixels are achromatic on exactly one side");
    }
    Ok(MetricMap::new(values, width, height))
}

/// Δc between an HDR reference and an LDR candidate.
pub fn delta_c(hdr: &HdrImage, ldr: &LdrImage) -> Result<MetricMap> {
    if hdr.width() != ldr.width() || hdr.height() != ldr.height() {
        return Err(Error::DimensionMismatch(format!(
            "HDR is {}x{}, LDR is {}x{}",
            hdr.width(),
            hdr.height(),
            ldr.width(),
            ldr.height()
        )));
    }
    delta_c_from_maps(
        &saturation_map_hdr(hdr),
        &saturation_map_ldr(ldr),
        hdr.width(),
        hdr.height(),
    )
}
