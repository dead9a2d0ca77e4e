//! Hue-preserving tone mapping for HDR images.
//!
//! Tone mapping compresses the luminance of an HDR image so it can be shown
//! on an 8-bit display, but the final rounding and clipping steps (and the
//! tone curve itself) distort hue. This crate implements the classic
//! operators together with a compensation pass that transplants each pixel's
//! maximally saturated color from the original HDR image onto the tone-mapped
//! result, keeping the LDR pixel on the same constant-hue plane in RGB space.
//!
//! The pipeline is:
//!
//! 1. [`tmo`] — world luminance and display luminance via a tone mapping
//!    operator (Reinhard global/local, Drago, Durand).
//! 2. [`reconstruct`] — rebuild color from the compressed luminance, apply
//!    optional gamma, quantize to 8 bits.
//! 3. [`hue_plane`] — decompose pixels into white/black/max-saturated-color
//!    weights and replace the LDR hue with the HDR hue.
//! 4. [`metrics`] — Δc (max-saturated-color distance), CIEDE2000 hue
//!    difference, and TMQI quality scores.
//!
//! [`baseline`] provides Mantiuk-style saturation correction for comparison,
//! and [`io`] reads Radiance RGBE / PFM inputs and writes PNG / PPM outputs.

pub mod baseline;
pub mod error;
pub mod hue_plane;
pub mod io;
pub mod metrics;
pub mod reconstruct;
pub mod tmo;
pub mod types;

pub use error::{Error, Result};
pub use types::{HdrImage, LdrImage, LuminancePair, NormalizedPixel};
