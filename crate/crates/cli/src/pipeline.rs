//! The tone mapping pipeline the commands are built from.

use hueforge_core::baseline::{correct_image, MantiukConfig};
use hueforge_core::hue_plane::compensate_image;
use hueforge_core::reconstruct::{color_ratio, gamma_encode, quantize_clip};
use hueforge_core::tmo::{world_luminance, TmoConfig};
use hueforge_core::types::{HdrImage, LdrImage, LuminancePair, NormalizedPixel};
use hueforge_core::Result;

/// Everything a tone mapping run produces, including the intermediates the
/// baseline and the metrics need.
pub struct Tonemapped {
    pub ldr: LdrImage,
    /// Floating-point image just before quantization.
    pub prequant: Vec<NormalizedPixel>,
    pub world: Vec<f64>,
    pub display: Vec<f64>,
}

/// World luminance, display luminance, color reconstruction, optional gamma,
/// quantize.
pub fn tone_map(hdr: &HdrImage, tmo: &TmoConfig, gamma: Option<f64>) -> Result<Tonemapped> {
    let world = world_luminance(hdr);
    let display = tmo.display_luminance(&world, hdr.width(), hdr.height())?;
    let pairs = LuminancePair::zip(&world, &display)?;
    let mut float_image = color_ratio(hdr, &pairs)?;
    if let Some(g) = gamma {
        float_image = gamma_encode(&float_image, g);
    }
    let ldr = quantize_clip(&float_image, hdr.width(), hdr.height())?;
    Ok(Tonemapped {
        ldr,
        prequant: float_image,
        world,
        display,
    })
}

/// Hue compensation of an already tone-mapped image.
pub fn compensate(ldr: &LdrImage, hdr: &HdrImage) -> Result<LdrImage> {
    compensate_image(ldr, hdr)
}

/// Result of the color-correction baseline.
pub struct BaselineRun {
    pub ldr: LdrImage,
    pub saturation: f64,
    pub contrast_ratio: Option<f64>,
}

/// Saturation-corrected reconstruction using the luminance maps of an
/// existing tone mapping run.
pub fn mantiuk_baseline(
    hdr: &HdrImage,
    tonemapped: &Tonemapped,
    config: &MantiukConfig,
    gamma: Option<f64>,
) -> Result<BaselineRun> {
    let corrected = correct_image(hdr, &tonemapped.world, &tonemapped.display, config)?;
    let mut float_image = corrected.pixels;
    if let Some(g) = gamma {
        float_image = gamma_encode(&float_image, g);
    }
    let ldr = quantize_clip(&float_image, hdr.width(), hdr.height())?;
    Ok(BaselineRun {
        ldr,
        saturation: corrected.saturation,
        contrast_ratio: corrected.contrast_ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use hueforge_core::tmo::TmOperator;

    fn test_hdr() -> HdrImage {
        // Three decades of range so compression-based operators actually
        // compress.
        let pixels: Vec<[f64; 3]> = (0..16 * 16)
            .map(|i| {
                let t = (i % 16) as f64 / 15.0;
                let level = 0.05 * 1000f64.powf(t);
                [level, 0.7 * level, 0.3 * level + 0.02]
            })
            .collect();
        HdrImage::new(16, 16, pixels).unwrap()
    }

    #[test]
    fn tone_map_produces_aligned_outputs() {
        let hdr = test_hdr();
        let cfg = TmoConfig::with_operator(TmOperator::ReinhardGlobal);
        let run = tone_map(&hdr, &cfg, Some(2.2)).unwrap();
        assert_eq!(run.ldr.pixel_count(), hdr.pixel_count());
        assert_eq!(run.prequant.len(), hdr.pixel_count());
        assert_eq!(run.world.len(), hdr.pixel_count());
    }

    #[test]
    fn gamma_brightens_midtones() {
        let hdr = test_hdr();
        let cfg = TmoConfig::with_operator(TmOperator::ReinhardGlobal);
        let with_gamma = tone_map(&hdr, &cfg, Some(2.2)).unwrap();
        let without = tone_map(&hdr, &cfg, None).unwrap();
        let mean = |img: &LdrImage| {
            img.pixels().iter().map(|p| u32::from(p[1])).sum::<u32>() as f64
                / img.pixel_count() as f64
        };
        assert!(mean(&with_gamma.ldr) > mean(&without.ldr));
    }

    #[test]
    fn baseline_reuses_the_tone_curve() {
        let hdr = test_hdr();
        let cfg = TmoConfig::with_operator(TmOperator::Durand);
        let run = tone_map(&hdr, &cfg, Some(2.2)).unwrap();
        let baseline = mantiuk_baseline(&hdr, &run, &MantiukConfig::default(), Some(2.2)).unwrap();
        // Compressive curve: contrast ratio < 1, so the derived saturation
        // drops below 1 as well.
        assert!(baseline.contrast_ratio.unwrap() < 1.0);
        assert!(baseline.saturation > 0.0 && baseline.saturation < 1.0);
        assert_eq!(baseline.ldr.width(), hdr.width());
    }
}
