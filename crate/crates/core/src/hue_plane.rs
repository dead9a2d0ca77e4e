//! Constant-hue-plane decomposition and hue compensation.
//!
//! In RGB space, all pixels sharing one hue lie on a triangle whose vertices
//! are white `w = (1,1,1)`, black `k = (0,0,0)` and the maximally saturated
//! color `c` of that hue. Every pixel `x` decomposes as
//!
//! ```text
//! x = a_w * w + a_k * k + a_c * c,      a_w + a_k + a_c = 1
//! ```
//!
//! with `a_w = min(x)`, `a_c = max(x) - min(x)`, `a_k = 1 - max(x)`. For
//! pixels in `[0,1]^3` all three weights lie in `[0,1]`; HDR pixels satisfy
//! the sum rule but may have `a_k < 0` or `a_c > 1`.
//!
//! Tone mapping distorts hue: quantization and clipping move the LDR pixel
//! off the hue plane of its HDR source. [`compensate_pixel`] repairs this by
//! keeping the LDR pixel's weights and swapping in the maximally saturated
//! color computed from the HDR pixel. Because that color lies in `[0,1]^3`
//! and the LDR weights are a convex combination, the repaired pixel is
//! guaranteed to stay inside `[0,1]^3` — no clipping is ever needed after
//! compensation.

use log::debug;

use crate::error::{Error, Result};
use crate::reconstruct;
use crate::types::{HdrImage, LdrImage, NormalizedPixel};

/// Spread below which an HDR pixel counts as achromatic.
///
/// 8-bit-derived pixels use exact equality instead; see
/// [`max_saturated_color`] vs [`max_saturated_color_hdr`].
pub const HDR_ACHROMATIC_TOLERANCE: f64 = 1e-9;

/// Barycentric weights of a pixel on its constant-hue plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HuePlaneCoords {
    /// Weight of white, `min(x)`.
    pub white_weight: f64,
    /// Weight of black, `1 - max(x)`.
    pub black_weight: f64,
    /// Weight of the maximally saturated color, `max(x) - min(x)`.
    pub chroma_weight: f64,
    /// The maximally saturated color, or `None` for achromatic pixels
    /// (`max(x) = min(x)`, where the hue direction is undefined).
    pub max_sat: Option<NormalizedPixel>,
}

impl HuePlaneCoords {
    pub fn is_achromatic(&self) -> bool {
        self.max_sat.is_none()
    }
}

fn max_sat_with_tolerance(x: NormalizedPixel, tolerance: f64) -> Option<NormalizedPixel> {
    let (min, max) = x.minmax();
    let spread = max - min;
    if spread <= tolerance {
        return None;
    }
    Some(NormalizedPixel::new(
        (x.r - min) / spread,
        (x.g - min) / spread,
        (x.b - min) / spread,
    ))
}

/// Maximally saturated color of a pixel with the same hue: each channel is
/// `(x_i - min(x)) / (max(x) - min(x))`, so the largest channel becomes 1 and
/// the smallest 0. Returns `None` when `max(x) = min(x)` exactly.
pub fn max_saturated_color(x: NormalizedPixel) -> Option<NormalizedPixel> {
    max_sat_with_tolerance(x, 0.0)
}

/// [`max_saturated_color`] for HDR pixels. The formula is unchanged (it is
/// scale-invariant), but the achromatic guard uses
/// [`HDR_ACHROMATIC_TOLERANCE`] rather than exact equality.
pub fn max_saturated_color_hdr(x: NormalizedPixel) -> Option<NormalizedPixel> {
    max_sat_with_tolerance(x, HDR_ACHROMATIC_TOLERANCE)
}

fn decompose_with_tolerance(x: NormalizedPixel, tolerance: f64) -> HuePlaneCoords {
    let (min, max) = x.minmax();
    HuePlaneCoords {
        white_weight: min,
        black_weight: 1.0 - max,
        chroma_weight: max - min,
        max_sat: max_sat_with_tolerance(x, tolerance),
    }
}

/// Barycentric weights of a display-range pixel (achromatic iff channels are
/// exactly equal).
pub fn decompose(x: NormalizedPixel) -> HuePlaneCoords {
    decompose_with_tolerance(x, 0.0)
}

/// Barycentric weights of an HDR pixel. The weights still sum to one, but
/// `black_weight` may be negative and `chroma_weight` may exceed one.
pub fn decompose_hdr(x: NormalizedPixel) -> HuePlaneCoords {
    decompose_with_tolerance(x, HDR_ACHROMATIC_TOLERANCE)
}

/// Rebuilds the pixel from its weights: `a_w * (1,1,1) + a_c * c` (black
/// contributes nothing). Achromatic coordinates reconstruct as gray.
pub fn recompose(coords: &HuePlaneCoords) -> NormalizedPixel {
    match coords.max_sat {
        Some(c) => NormalizedPixel::new(
            coords.white_weight + coords.chroma_weight * c.r,
            coords.white_weight + coords.chroma_weight * c.g,
            coords.white_weight + coords.chroma_weight * c.b,
        ),
        None => NormalizedPixel::splat(coords.white_weight),
    }
}

/// Transplants the HDR hue onto a tone-mapped pixel.
///
/// Keeps the weights of `x_prime` and rebuilds it with the maximally
/// saturated color of the paired HDR pixel. Identity when either side is
/// achromatic: an achromatic `x_prime` has zero chroma weight, and an
/// achromatic HDR pixel gives no hue direction to transplant.
pub fn compensate_pixel(
    x_prime: NormalizedPixel,
    hdr_max_sat: Option<NormalizedPixel>,
) -> NormalizedPixel {
    let coords = decompose(x_prime);
    match (coords.max_sat, hdr_max_sat) {
        (Some(_), Some(target)) => NormalizedPixel::new(
            coords.white_weight + coords.chroma_weight * target.r,
            coords.white_weight + coords.chroma_weight * target.g,
            coords.white_weight + coords.chroma_weight * target.b,
        ),
        _ => x_prime,
    }
}

/// Applies [`compensate_pixel`] to every pixel of a tone-mapped image and
/// re-quantizes to 8 bits.
///
/// The per-pixel hue targets come from the paired HDR image. Chromatic LDR
/// pixels whose HDR source is achromatic carry no usable hue information and
/// are left unchanged (their count is logged at debug level). Compensated
/// values stay in `[0,1]`, so the final quantization only ever rounds.
pub fn compensate_image(ldr: &LdrImage, hdr: &HdrImage) -> Result<LdrImage> {
    if ldr.width() != hdr.width() || ldr.height() != hdr.height() {
        return Err(Error::DimensionMismatch(format!(
            "LDR is {}x{}, HDR is {}x{}",
            ldr.width(),
            ldr.height(),
            hdr.width(),
            hdr.height()
        )));
    }

    let mut achromatic_source = 0usize;
    let compensated: Vec<NormalizedPixel> = ldr
        .normalized_pixels()
        .into_iter()
        .zip(hdr.normalized_pixels())
        .map(|(x_prime, x_hdr)| {
            let target = max_saturated_color_hdr(x_hdr);
            if target.is_none() && max_saturated_color(x_prime).is_some() {
                achromatic_source += 1;
            }
            compensate_pixel(x_prime, target)
        })
        .collect();

    if achromatic_source > 0 {
        debug!(
            "hue compensation: {achromatic_source} chromatic LDR pixels had achromatic HDR \
             sources and were left unchanged"
        );
    }

    reconstruct::quantize_clip(&compensated, ldr.width(), ldr.height())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn assert_pixel_close(got: NormalizedPixel, want: (f64, f64, f64), tol: f64) {
        assert!(
            (got.r - want.0).abs() <= tol
                && (got.g - want.1).abs() <= tol
                && (got.b - want.2).abs() <= tol,
            "got {got:?}, want {want:?}"
        );
    }

    #[test]
    fn max_sat_of_chromatic_pixel() {
        let c = max_saturated_color(NormalizedPixel::new(0.2, 0.6, 0.4)).unwrap();
        assert_pixel_close(c, (0.0, 1.0, 0.5), 1e-12);
    }

    #[test]
    fn max_sat_of_gray_is_achromatic() {
        assert!(max_saturated_color(NormalizedPixel::splat(0.5)).is_none());
    }

    #[test]
    fn max_sat_of_hdr_pixel_matches_ldr_hue() {
        // (0.4, 2.0, 1.2) has the same hue as (0.2, 0.6, 0.4).
        let c = max_saturated_color_hdr(NormalizedPixel::new(0.4, 2.0, 1.2)).unwrap();
        assert_pixel_close(c, (0.0, 1.0, 0.5), 1e-12);
    }

    #[test]
    fn max_sat_extremes_are_exact() {
        let c = max_saturated_color(NormalizedPixel::new(0.2, 0.6, 0.4)).unwrap();
        assert_eq!(c.r, 0.0);
        assert_eq!(c.g, 1.0);
    }

    #[test]
    fn decompose_ldr_pixel() {
        let coords = decompose(NormalizedPixel::new(0.2, 0.6, 0.4));
        assert!((coords.white_weight - 0.2).abs() < 1e-15);
        assert!((coords.chroma_weight - 0.4).abs() < 1e-15);
        assert!((coords.black_weight - 0.4).abs() < 1e-15);
    }

    #[test]
    fn decompose_white_is_vertex() {
        let coords = decompose(NormalizedPixel::splat(1.0));
        assert_eq!(coords.white_weight, 1.0);
        assert_eq!(coords.chroma_weight, 0.0);
        assert_eq!(coords.black_weight, 0.0);
        assert!(coords.is_achromatic());
    }

    #[test]
    fn decompose_hdr_pixel_leaves_simplex() {
        let coords = decompose_hdr(NormalizedPixel::new(0.4, 2.0, 1.2));
        assert!((coords.white_weight - 0.4).abs() < 1e-15);
        assert!((coords.chroma_weight - 1.6).abs() < 1e-15);
        assert!((coords.black_weight + 1.0).abs() < 1e-15);
        let sum = coords.white_weight + coords.black_weight + coords.chroma_weight;
        assert!((sum - 1.0).abs() < 1e-12);
    }

    #[test]
    fn recompose_round_trip() {
        let x = NormalizedPixel::new(0.2, 0.6, 0.4);
        let back = recompose(&decompose(x));
        assert_pixel_close(back, (x.r, x.g, x.b), 1e-12);
    }

    #[test]
    fn recompose_pure_max_sat() {
        let coords = HuePlaneCoords {
            white_weight: 0.0,
            black_weight: 0.0,
            chroma_weight: 1.0,
            max_sat: Some(NormalizedPixel::new(1.0, 0.0, 0.0)),
        };
        assert_eq!(recompose(&coords), NormalizedPixel::new(1.0, 0.0, 0.0));
    }

    #[test]
    fn recompose_achromatic_is_gray() {
        let coords = decompose(NormalizedPixel::splat(0.3));
        assert_eq!(recompose(&coords), NormalizedPixel::splat(0.3));
    }

    #[test]
    fn compensate_is_identity_on_matching_hue() {
        let x = NormalizedPixel::new(0.3, 0.7, 0.5);
        let c = max_saturated_color(x);
        let out = compensate_pixel(x, c);
        assert_pixel_close(out, (x.r, x.g, x.b), 1e-12);
    }

    #[test]
    fn compensate_transplants_hue() {
        // weights (a_w, a_k, a_c) = (0.3, 0.3, 0.4) rebuilt with the new hue.
        let x = NormalizedPixel::new(0.3, 0.7, 0.5);
        let target = NormalizedPixel::new(1.0, 0.0, 0.25);
        let out = compensate_pixel(x, Some(target));
        assert_pixel_close(out, (0.7, 0.3, 0.4), 1e-12);
    }

    #[test]
    fn compensate_keeps_achromatic_inputs() {
        let gray = NormalizedPixel::splat(0.4);
        let target = NormalizedPixel::new(1.0, 0.0, 0.0);
        assert_eq!(compensate_pixel(gray, Some(target)), gray);

        let chromatic = NormalizedPixel::new(0.1, 0.8, 0.3);
        assert_eq!(compensate_pixel(chromatic, None), chromatic);
    }

    #[test]
    fn compensate_image_requires_matching_dimensions() {
        let ldr = LdrImage::new(2, 1, vec![[0; 3], [0; 3]]).unwrap();
        let hdr = HdrImage::new(1, 1, vec![[0.0; 3]]).unwrap();
        assert!(compensate_image(&ldr, &hdr).is_err());
    }

    #[test]
    fn compensate_image_grayscale_hdr_is_identity() {
        let hdr = HdrImage::new(
            2,
            2,
            vec![[0.5; 3], [2.0; 3], [0.0; 3], [7.25; 3]],
        )
        .unwrap();
        let ldr = LdrImage::new(2, 2, vec![[10, 10, 10], [200, 200, 200], [0; 3], [255; 3]]).unwrap();
        let out = compensate_image(&ldr, &hdr).unwrap();
        assert_eq!(out, ldr);
    }

    #[test]
    fn compensate_image_single_pixel() {
        // LDR pixel (77, 179, 128) has weights a_w = 77/255, a_c = 102/255;
        // transplanting hue (1, 0, 0.25) gives (179, 77, 102.5)/255. The blue
        // half-point evaluates to 102.4999999999999 in binary floating point
        // (a_c carries a 1-ulp defect), so it rounds down.
        let ldr = LdrImage::new(1, 1, vec![[77, 179, 128]]).unwrap();
        let hdr = HdrImage::new(1, 1, vec![[8.0, 1.0, 2.75]]).unwrap();
        let out = compensate_image(&ldr, &hdr).unwrap();
        assert_eq!(out.pixel(0, 0), [179, 77, 102]);
    }

    fn unit_pixel() -> impl Strategy<Value = NormalizedPixel> {
        (0.0..=1.0f64, 0.0..=1.0f64, 0.0..=1.0f64)
            .prop_map(|(r, g, b)| NormalizedPixel::new(r, g, b))
    }

    fn hdr_pixel() -> impl Strategy<Value = NormalizedPixel> {
        (0.0..=10.0f64, 0.0..=10.0f64, 0.0..=10.0f64)
            .prop_map(|(r, g, b)| NormalizedPixel::new(r, g, b))
    }

    proptest! {
        #[test]
        fn weights_sum_to_one(x in unit_pixel()) {
            let c = decompose(x);
            prop_assert!((c.white_weight + c.black_weight + c.chroma_weight - 1.0).abs() < 1e-12);
        }

        #[test]
        fn unit_pixels_have_unit_weights(x in unit_pixel()) {
            let c = decompose(x);
            prop_assert!((0.0..=1.0).contains(&c.white_weight));
            prop_assert!((0.0..=1.0).contains(&c.black_weight));
            prop_assert!((0.0..=1.0).contains(&c.chroma_weight));
        }

        #[test]
        fn hdr_weights_sum_to_one_and_reconstruct(x in hdr_pixel()) {
            let c = decompose_hdr(x);
            prop_assert!((c.white_weight + c.black_weight + c.chroma_weight - 1.0).abs() < 1e-12);
            let back = recompose(&c);
            prop_assert!((back.r - x.r).abs() < 1e-9);
            prop_assert!((back.g - x.g).abs() < 1e-9);
            prop_assert!((back.b - x.b).abs() < 1e-9);
        }

        #[test]
        fn compensation_never_leaves_unit_cube(x in unit_pixel(), hue in hdr_pixel()) {
            let target = max_saturated_color_hdr(hue);
            let out = compensate_pixel(x, target);
            for ch in out.channels() {
                prop_assert!((0.0..=1.0).contains(&ch));
            }
        }

        #[test]
        fn compensation_transplants_exactly(x in unit_pixel(), hue in hdr_pixel()) {
            let target = max_saturated_color_hdr(hue);
            let out = compensate_pixel(x, target);
            if let (Some(target), Some(result)) = (target, max_saturated_color(out)) {
                if decompose(x).chroma_weight > 1e-6 {
                    prop_assert!((result.r - target.r).abs() < 1e-9);
                    prop_assert!((result.g - target.g).abs() < 1e-9);
                    prop_assert!((result.b - target.b).abs() < 1e-9);
                }
            }
        }

        #[test]
        fn max_sat_is_scale_invariant(x in hdr_pixel(), k in 1e-3..1e3f64) {
            let scaled = NormalizedPixel::new(x.r * k, x.g * k, x.b * k);
            match (max_saturated_color_hdr(x), max_saturated_color_hdr(scaled)) {
                (Some(a), Some(b)) => {
                    prop_assert!((a.r - b.r).abs() < 1e-9);
                    prop_assert!((a.g - b.g).abs() < 1e-9);
                    prop_assert!((a.b - b.b).abs() < 1e-9);
                }
                // Scaling can move a tiny spread across the achromatic
                // threshold; both-None is the common case.
                _ => prop_assume!(false),
            }
        }
    }
}
