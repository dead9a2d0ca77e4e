//! Image containers and pixel value types.
//!
//! [`HdrImage`] stores linear radiance as floats with arbitrary absolute
//! scale; [`LdrImage`] stores display-referred 8-bit values. Both validate
//! their invariants on construction, so every downstream operation can assume
//! finite, in-range data. Images are immutable after construction and safe to
//! share across threads.

use crate::error::{Error, Result};

/// An RGB triple in nominal range `[0, 1]`.
///
/// Intermediate pipeline values may exceed the nominal range (HDR pixels,
/// pre-clip reconstruction output); only finiteness is assumed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalizedPixel {
    pub r: f64,
    pub g: f64,
    pub b: f64,
}

impl NormalizedPixel {
    pub fn new(r: f64, g: f64, b: f64) -> Self {
        Self { r, g, b }
    }

    /// Gray pixel with all channels equal to `v`.
    pub fn splat(v: f64) -> Self {
        Self { r: v, g: v, b: v }
    }

    /// Smallest and largest channel, in that order.
    pub fn minmax(&self) -> (f64, f64) {
        let min = self.r.min(self.g).min(self.b);
        let max = self.r.max(self.g).max(self.b);
        (min, max)
    }

    pub fn is_finite(&self) -> bool {
        self.r.is_finite() && self.g.is_finite() && self.b.is_finite()
    }

    pub fn channels(&self) -> [f64; 3] {
        [self.r, self.g, self.b]
    }
}

impl From<[f64; 3]> for NormalizedPixel {
    fn from(c: [f64; 3]) -> Self {
        Self::new(c[0], c[1], c[2])
    }
}

/// Per-pixel luminance before and after tone compression.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LuminancePair {
    /// Scene-referred luminance, nonnegative, arbitrary scale.
    pub world: f64,
    /// Display-referred luminance in `[0, 1]`.
    pub display: f64,
}

impl LuminancePair {
    /// Zips aligned world/display maps into pairs.
    pub fn zip(world: &[f64], display: &[f64]) -> Result<Vec<LuminancePair>> {
        if world.len() != display.len() {
            return Err(Error::DimensionMismatch(format!(
                "world luminance has {} entries, display has {}",
                world.len(),
                display.len()
            )));
        }
        Ok(world
            .iter()
            .zip(display)
            .map(|(&world, &display)| LuminancePair { world, display })
            .collect())
    }
}

fn check_dims(width: usize, height: usize, len: usize) -> Result<()> {
    if width == 0 || height == 0 {
        return Err(Error::Validation(format!(
            "degenerate image dimensions {width}x{height}"
        )));
    }
    let expected = width
        .checked_mul(height)
        .ok_or_else(|| Error::Validation("image dimensions overflow".into()))?;
    if len != expected {
        return Err(Error::DimensionMismatch(format!(
            "{width}x{height} image needs {expected} pixels, got {len}"
        )));
    }
    Ok(())
}

/// Linear-light HDR image, row-major RGB, channels finite and nonnegative.
#[derive(Debug, Clone, PartialEq)]
pub struct HdrImage {
    width: usize,
    height: usize,
    pixels: Vec<[f64; 3]>,
}

impl HdrImage {
    /// Builds an HDR image, validating dimensions and channel values.
    pub fn new(width: usize, height: usize, pixels: Vec<[f64; 3]>) -> Result<Self> {
        check_dims(width, height, pixels.len())?;
        for (i, px) in pixels.iter().enumerate() {
            for (ch, &v) in px.iter().enumerate() {
                if !v.is_finite() || v < 0.0 {
                    return Err(Error::Validation(format!(
                        "pixel {i} channel {ch} is {v}; HDR channels must be finite and >= 0"
                    )));
                }
            }
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixel_count(&self) -> usize {
        self.pixels.len()
    }

    pub fn pixels(&self) -> &[[f64; 3]] {
        &self.pixels
    }

    pub fn pixel(&self, x: usize, y: usize) -> [f64; 3] {
        self.pixels[y * self.width + x]
    }

    /// Pixels as [`NormalizedPixel`]s (values may exceed 1; that is expected).
    pub fn normalized_pixels(&self) -> impl Iterator<Item = NormalizedPixel> + '_ {
        self.pixels.iter().map(|&c| NormalizedPixel::from(c))
    }
}

/// 8-bit display-referred image, row-major RGB.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LdrImage {
    width: usize,
    height: usize,
    pixels: Vec<[u8; 3]>,
}

impl LdrImage {
    pub fn new(width: usize, height: usize, pixels: Vec<[u8; 3]>) -> Result<Self> {
        check_dims(width, height, pixels.len())?;
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixel_count(&self) -> usize {
        self.pixels.len()
    }

    pub fn pixels(&self) -> &[[u8; 3]] {
        &self.pixels
    }

    pub fn pixel(&self, x: usize, y: usize) -> [u8; 3] {
        self.pixels[y * self.width + x]
    }

    /// Rescales all pixels to `[0, 1]` by dividing by 255.
    pub fn normalized_pixels(&self) -> Vec<NormalizedPixel> {
        self.pixels
            .iter()
            .map(|&[r, g, b]| {
                NormalizedPixel::new(f64::from(r) / 255.0, f64::from(g) / 255.0, f64::from(b) / 255.0)
            })
            .collect()
    }
}

/// Smallest and largest channel of a pixel.
pub fn channel_minmax(p: NormalizedPixel) -> (f64, f64) {
    p.minmax()
}
