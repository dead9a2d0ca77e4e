//! Radiance RGBE (.hdr) decoder.
//!
//! Pixels are stored as four bytes: three mantissas sharing one exponent.
//! The decode rule is `channel = mantissa * 2^(exponent - 136)` — i.e.
//! `(m / 256) * 2^(e - 128)` — without the half-code mantissa-center offset
//! some decoders apply; a zero exponent denotes a black pixel. Both flat
//! scanlines and the adaptive run-length encoding are supported, restricted
//! to the standard `-Y height +X width` orientation.

use crate::error::{Error, Result};
use crate::types::HdrImage;

const FORMAT: &str = "radiance rgbe";

fn err(reason: impl Into<String>) -> Error {
    Error::format(FORMAT, reason)
}

/// Decodes one RGBE quad into linear RGB.
pub fn decode_rgbe(r: u8, g: u8, b: u8, e: u8) -> [f64; 3] {
    if e == 0 {
        return [0.0, 0.0, 0.0];
    }
    let scale = 2.0f64.powi(i32::from(e) - 136);
    [
        f64::from(r) * scale,
        f64::from(g) * scale,
        f64::from(b) * scale,
    ]
}

struct Cursor<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn line(&mut self) -> Result<&'a [u8]> {
        let start = self.pos;
        while self.pos < self.data.len() && self.data[self.pos] != b'\n' {
            self.pos += 1;
        }
        if self.pos >= self.data.len() {
            return Err(err("unterminated header line"));
        }
        let line = &self.data[start..self.pos];
        self.pos += 1; // consume the newline
        Ok(line)
    }

    fn byte(&mut self) -> Result<u8> {
        if self.pos >= self.data.len() {
            return Err(err("truncated scanline"));
        }
        let b = self.data[self.pos];
        self.pos += 1;
        Ok(b)
    }

    fn bytes(&mut self, n: usize) -> Result<&'a [u8]> {
        if self.pos + n > self.data.len() {
            return Err(err("truncated scanline"));
        }
        let s = &self.data[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }
}

fn parse_resolution(line: &str) -> Result<(usize, usize)> {
    let tokens: Vec<&str> = line.split_whitespace().collect();
    if tokens.len() != 4 {
        return Err(err(format!("malformed resolution line '{line}'")));
    }
    if tokens[0] != "-Y" || tokens[2] != "+X" {
        return Err(err(format!(
            "unsupported pixel orientation '{} {}'",
            tokens[0], tokens[2]
        )));
    }
    let height: usize = tokens[1]
        .parse()
        .map_err(|_| err(format!("bad height '{}'", tokens[1])))?;
    let width: usize = tokens[3]
        .parse()
        .map_err(|_| err(format!("bad width '{}'", tokens[3])))?;
    Ok((width, height))
}

/// Reads one scanline of `width` RGBE quads into `out`.
fn read_scanline(cursor: &mut Cursor, width: usize, out: &mut [u8]) -> Result<()> {
    debug_assert_eq!(out.len(), width * 4);
    let header = cursor.bytes(4)?;
    let is_rle = header[0] == 2
        && header[1] == 2
        && (usize::from(header[2]) << 8 | usize::from(header[3])) == width
        && width >= 8
        && width <= 0x7fff;

    if !is_rle {
        // Flat scanline: the four bytes already read are the first pixel.
        out[..4].copy_from_slice(header);
        let rest = cursor.bytes((width - 1) * 4)?;
        out[4..].copy_from_slice(rest);
        return Ok(());
    }

    // Adaptive RLE: four per-channel byte streams of `width` entries each.
    for channel in 0..4 {
        let mut filled = 0usize;
        while filled < width {
            let code = cursor.byte()?;
            if code > 128 {
                let run = usize::from(code) - 128;
                if filled + run > width {
                    return Err(err("run overflows scanline"));
                }
                let value = cursor.byte()?;
                for _ in 0..run {
                    out[filled * 4 + channel] = value;
                    filled += 1;
                }
            } else {
                let count = usize::from(code);
                if count == 0 {
                    return Err(err("zero-length literal span"));
                }
                if filled + count > width {
                    return Err(err("literal span overflows scanline"));
                }
                let literals = cursor.bytes(count)?;
                for &value in literals {
                    out[filled * 4 + channel] = value;
                    filled += 1;
                }
            }
        }
    }
    Ok(())
}

/// Decodes a Radiance RGBE byte stream into a linear HDR image.
pub fn read_radiance_hdr(data: &[u8]) -> Result<HdrImage> {
    let mut cursor = Cursor { data, pos: 0 };

    let signature = cursor.line()?;
    if !signature.starts_with(b"#?") {
        return Err(err("missing #? signature"));
    }

    // Header variables until the blank line; only the pixel format matters.
    loop {
        let line = cursor.line()?;
        if line.is_empty() {
            break;
        }
        let text = String::from_utf8_lossy(line);
        if let Some(format) = text.strip_prefix("FORMAT=") {
            if format.trim() != "32-bit_rle_rgbe" {
                return Err(err(format!("unsupported pixel format '{}'", format.trim())));
            }
        }
    }

    let resolution = cursor.line()?;
    let (width, height) = parse_resolution(&String::from_utf8_lossy(resolution))?;
    if width == 0 || height == 0 {
        return Err(err("zero image dimension"));
    }

    let mut scanline = vec![0u8; width * 4];
    let mut pixels = Vec::with_capacity(width * height);
    for _ in 0..height {
        read_scanline(&mut cursor, width, &mut scanline)?;
        for quad in scanline.chunks_exact(4) {
            pixels.push(decode_rgbe(quad[0], quad[1], quad[2], quad[3]));
        }
    }
    HdrImage::new(width, height, pixels)
}
