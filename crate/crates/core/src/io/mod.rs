//! Image file decoding and encoding.
//!
//! HDR input comes from Radiance RGBE (`.hdr`) or PFM (`.pfm`) files; LDR
//! output goes to PNG or binary PPM. Decoders are single-stream and
//! sequential; different files can be decoded from different threads.

pub mod ldr;
pub mod pfm;
pub mod rgbe;

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::types::{HdrImage, LdrImage};

pub use ldr::{read_png, read_ppm, write_ldr, write_png, write_ppm, LdrFormat};
pub use pfm::read_pfm;
pub use rgbe::read_radiance_hdr;

/// Loads an HDR image, picking the decoder from the file signature (falling
/// back to the extension).
pub fn load_hdr(path: &Path) -> Result<HdrImage> {
    let data = fs::read(path)?;
    if data.starts_with(b"#?") {
        return read_radiance_hdr(&data);
    }
    if data.starts_with(b"PF") || data.starts_with(b"Pf") {
        return read_pfm(&data);
    }
    match path.extension().and_then(|e| e.to_str()) {
        Some("hdr") | Some("pic") => read_radiance_hdr(&data),
        Some("pfm") => read_pfm(&data),
        _ => Err(Error::format(
            "hdr input",
            format!("cannot determine format of {}", path.display()),
        )),
    }
}

/// Loads an LDR image (PNG or PPM, by signature).
pub fn load_ldr(path: &Path) -> Result<LdrImage> {
    let data = fs::read(path)?;
    if data.starts_with(b"P6") {
        read_ppm(&data)
    } else {
        read_png(&data)
    }
}

/// Writes an LDR image, picking the format from the extension (`.ppm` for
/// PPM, anything else PNG).
pub fn save_ldr(ldr: &LdrImage, path: &Path) -> Result<()> {
    let format = match path.extension().and_then(|e| e.to_str()) {
        Some("ppm") => LdrFormat::Ppm,
        _ => LdrFormat::Png,
    };
    let bytes = write_ldr(ldr, format)?;
    fs::write(path, bytes)?;
    Ok(())
}
