//! Portable float map (PFM) decoder.
//!
//! Only the color variant (`PF`) is supported. The sign of the scale line
//! selects the payload endianness (negative = little endian); its magnitude
//! is a display hint and is ignored, as most readers do. Rows are stored
//! bottom-up and are flipped to the usual top-down order on load. Byte
//! streams that parse but contain non-finite or negative channels are
//! rejected by image validation.

use crate::error::{Error, Result};
use crate::types::HdrImage;

const FORMAT: &str = "pfm";

fn err(reason: impl Into<String>) -> Error {
    Error::format(FORMAT, reason)
}

/// Reads one whitespace-delimited ASCII token.
fn token<'a>(data: &'a [u8], pos: &mut usize) -> Result<&'a str> {
    while *pos < data.len() && data[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
    let start = *pos;
    while *pos < data.len() && !data[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
    if start == *pos {
        return Err(err("unexpected end of header"));
    }
    std::str::from_utf8(&data[start..*pos]).map_err(|_| err("non-ascii header token"))
}

/// Decodes a PFM byte stream into a linear HDR image.
pub fn read_pfm(data: &[u8]) -> Result<HdrImage> {
    let mut pos = 0usize;
    let magic = token(data, &mut pos)?;
    match magic {
        "PF" => {}
        "Pf" => return Err(err("grayscale 'Pf' maps are not supported")),
        other => return Err(err(format!("bad magic '{other}'"))),
    }
    let width: usize = token(data, &mut pos)?
        .parse()
        .map_err(|_| err("bad width"))?;
    let height: usize = token(data, &mut pos)?
        .parse()
        .map_err(|_| err("bad height"))?;
    let scale: f64 = token(data, &mut pos)?
        .parse()
        .map_err(|_| err("bad scale"))?;
    if scale == 0.0 {
        return Err(err("scale must be nonzero"));
    }
    let little_endian = scale < 0.0;

    // Exactly one whitespace byte separates the header from the payload.
    if pos >= data.len() || !data[pos].is_ascii_whitespace() {
        return Err(err("missing header terminator"));
    }
    pos += 1;

    let needed = width
        .checked_mul(height)
        .and_then(|n| n.checked_mul(12))
        .ok_or_else(|| err("dimensions overflow"))?;
    let payload = data
        .get(pos..pos + needed)
        .ok_or_else(|| err("truncated pixel data"))?;

    let read_f32 = |chunk: &[u8]| -> f64 {
        let bytes = [chunk[0], chunk[1], chunk[2], chunk[3]];
        let v = if little_endian {
            f32::from_le_bytes(bytes)
        } else {
            f32::from_be_bytes(bytes)
        };
        f64::from(v)
    };

    // Rows are stored bottom-up; flip while collecting.
    let mut pixels = vec![[0.0f64; 3]; width * height];
    for stored_row in 0..height {
        let target_row = height - 1 - stored_row;
        for x in 0..width {
            let offset = (stored_row * width + x) * 12;
            pixels[target_row * width + x] = [
                read_f32(&payload[offset..offset + 4]),
                read_f32(&payload[offset + 4..offset + 8]),
                read_f32(&payload[offset + 8..offset + 12]),
            ];
        }
    }
    HdrImage::new(width, height, pixels)
}
