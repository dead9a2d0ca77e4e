//! 8-bit image output (PPM and PNG) and the matching readers.

use std::io::Cursor;

use image::{ImageFormat, ImageReader, RgbImage};

use crate::error::{Error, Result};
use crate::types::LdrImage;

/// Output encodings for 8-bit images.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LdrFormat {
    Png,
    Ppm,
}

/// Binary PPM (`P6`, maxval 255), RGB row-major.
pub fn write_ppm(ldr: &LdrImage) -> Vec<u8> {
    let mut out = format!("P6\n{} {}\n255\n", ldr.width(), ldr.height()).into_bytes();
    out.reserve(ldr.pixel_count() * 3);
    for px in ldr.pixels() {
        out.extend_from_slice(px);
    }
    out
}

fn ppm_token<'a>(data: &'a [u8], pos: &mut usize) -> Result<&'a str> {
    loop {
        while *pos < data.len() && data[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
        if *pos < data.len() && data[*pos] == b'#' {
            while *pos < data.len() && data[*pos] != b'\n' {
                *pos += 1;
            }
            continue;
        }
        break;
    }
    let start = *pos;
    while *pos < data.len() && !data[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
    if start == *pos {
        return Err(Error::format("ppm", "unexpected end of header"));
    }
    std::str::from_utf8(&data[start..*pos]).map_err(|_| Error::format("ppm", "non-ascii header"))
}

/// Reads a binary PPM produced by [`write_ppm`] (or any maxval-255 `P6`).
pub fn read_ppm(data: &[u8]) -> Result<LdrImage> {
    let mut pos = 0usize;
    if ppm_token(data, &mut pos)? != "P6" {
        return Err(Error::format("ppm", "missing P6 magic"));
    }
    let width: usize = ppm_token(data, &mut pos)?
        .parse()
        .map_err(|_| Error::format("ppm", "bad width"))?;
    let height: usize = ppm_token(data, &mut pos)?
        .parse()
        .map_err(|_| Error::format("ppm", "bad height"))?;
    let maxval: usize = ppm_token(data, &mut pos)?
        .parse()
        .map_err(|_| Error::format("ppm", "bad maxval"))?;
    if maxval != 255 {
        return Err(Error::format("ppm", format!("unsupported maxval {maxval}")));
    }
    if pos >= data.len() || !data[pos].is_ascii_whitespace() {
        return Err(Error::format("ppm", "missing header terminator"));
    }
    pos += 1;
    let needed = width
        .checked_mul(height)
        .and_then(|n| n.checked_mul(3))
        .ok_or_else(|| Error::format("ppm", "dimensions overflow"))?;
    let payload = data
        .get(pos..pos + needed)
        .ok_or_else(|| Error::format("ppm", "truncated pixel data"))?;
    let pixels = payload
        .chunks_exact(3)
        .map(|c| [c[0], c[1], c[2]])
        .collect();
    LdrImage::new(width, height, pixels)
}

/// 8-bit truecolor PNG (no gamma or color-profile chunks; the pipeline's own
/// gamma step is the only transfer function applied).
pub fn write_png(ldr: &LdrImage) -> Result<Vec<u8>> {
    let mut flat = Vec::with_capacity(ldr.pixel_count() * 3);
    for px in ldr.pixels() {
        flat.extend_from_slice(px);
    }
    let buffer = RgbImage::from_raw(ldr.width() as u32, ldr.height() as u32, flat)
        .ok_or_else(|| Error::format("png", "buffer size mismatch"))?;
    let mut out = Cursor::new(Vec::new());
    buffer
        .write_to(&mut out, ImageFormat::Png)
        .map_err(|e| Error::format("png", e.to_string()))?;
    Ok(out.into_inner())
}

/// Decodes a PNG into an 8-bit image.
pub fn read_png(data: &[u8]) -> Result<LdrImage> {
    let decoded = ImageReader::with_format(Cursor::new(data), ImageFormat::Png)
        .decode()
        .map_err(|e| Error::format("png", e.to_string()))?;
    let rgb = decoded.to_rgb8();
    let (width, height) = rgb.dimensions();
    let pixels = rgb
        .pixels()
        .map(|p| [p.0[0], p.0[1], p.0[2]])
        .collect();
    LdrImage::new(width as usize, height as usize, pixels)
}

/// Encodes an 8-bit image in the requested format.
pub fn write_ldr(ldr: &LdrImage, format: LdrFormat) -> Result<Vec<u8>> {
    match format {
        LdrFormat::Png => write_png(ldr),
        LdrFormat::Ppm => Ok(write_ppm(ldr)),
    }
}
