//! Regenerates the bundled test corpus.
//!
//! Usage: `cargo run -p hueforge --example gencorpus -- [DIR]` (default
//! `corpus/`). The images are fully procedural and deterministic, so the
//! committed files can always be reproduced bit for bit. Half the files use
//! flat RGBE scanlines and half use run-length encoding, to keep both decode
//! paths exercised by anything that loads the corpus.

use std::fs;
use std::path::{Path, PathBuf};

const SIZE: usize = 192;

fn main() {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("corpus"));
    fs::create_dir_all(&dir).expect("create corpus dir");

    write(&dir, "hue_wheel.hdr", hue_wheel(), Encoding::Rle);
    write(&dir, "color_ramp.hdr", color_ramp(), Encoding::Flat);
    write(&dir, "step_edges.hdr", step_edges(), Encoding::Flat);
    write(&dir, "scene.hdr", scene(), Encoding::Rle);
    write(&dir, "blobs.hdr", blobs(), Encoding::Rle);
    write(&dir, "patches.hdr", patches(), Encoding::Rle);
    write(&dir, "gray_ramp.hdr", gray_ramp(), Encoding::Rle);
    println!("corpus written to {}", dir.display());
}

// ---------------------------------------------------------------------------
// image synthesis
// ---------------------------------------------------------------------------

type Image = Vec<[f64; 3]>;

fn hsv(h: f64, s: f64, v: f64) -> [f64; 3] {
    let h = h.rem_euclid(360.0) / 60.0;
    let i = h.floor();
    let f = h - i;
    let p = v * (1.0 - s);
    let q = v * (1.0 - s * f);
    let t = v * (1.0 - s * (1.0 - f));
    match i as i32 {
        0 => [v, t, p],
        1 => [q, v, p],
        2 => [p, v, t],
        3 => [p, q, v],
        4 => [t, p, v],
        _ => [v, p, q],
    }
}

fn hash01(x: u32, y: u32, seed: u32) -> f64 {
    let mut h = x
        .wrapping_mul(374761393)
        .wrapping_add(y.wrapping_mul(668265263))
        .wrapping_add(seed.wrapping_mul(2246822519));
    h = (h ^ (h >> 13)).wrapping_mul(1274126177);
    h ^= h >> 16;
    f64::from(h) / f64::from(u32::MAX)
}

/// Smooth value noise in [0, 1] with three octaves.
fn noise(x: f64, y: f64, seed: u32) -> f64 {
    let mut total = 0.0;
    let mut amplitude = 0.0;
    for octave in 0..3u32 {
        let scale = 16.0 / f64::from(1 << octave);
        let weight = 1.0 / f64::from(1 << octave);
        let gx = x / scale;
        let gy = y / scale;
        let x0 = gx.floor();
        let y0 = gy.floor();
        let fx = gx - x0;
        let fy = gy - y0;
        let sx = fx * fx * (3.0 - 2.0 * fx);
        let sy = fy * fy * (3.0 - 2.0 * fy);
        let corner = |dx: u32, dy: u32| hash01(x0 as u32 + dx, y0 as u32 + dy, seed + octave);
        let top = corner(0, 0) * (1.0 - sx) + corner(1, 0) * sx;
        let bottom = corner(0, 1) * (1.0 - sx) + corner(1, 1) * sx;
        total += (top * (1.0 - sy) + bottom * sy) * weight;
        amplitude += weight;
    }
    total / amplitude
}

fn hue_wheel() -> Image {
    let center = SIZE as f64 / 2.0;
    let radius = center - 4.0;
    (0..SIZE * SIZE)
        .map(|i| {
            let x = (i % SIZE) as f64 - center;
            let y = (i / SIZE) as f64 - center;
            let r = (x * x + y * y).sqrt();
            // Two decades of exposure from top to bottom.
            let exposure = 0.1 * 10f64.powf(2.0 * (i / SIZE) as f64 / SIZE as f64);
            if r < radius {
                let hue = y.atan2(x).to_degrees();
                let sat = (r / radius).min(1.0);
                let [cr, cg, cb] = hsv(hue, sat, 1.0);
                [cr * exposure, cg * exposure, cb * exposure]
            } else {
                [0.4 * exposure; 3]
            }
        })
        .collect()
}

fn color_ramp() -> Image {
    (0..SIZE * SIZE)
        .map(|i| {
            let x = (i % SIZE) as f64 / (SIZE - 1) as f64;
            let y = (i / SIZE) as f64 / (SIZE - 1) as f64;
            // Hue sweeps horizontally, luminance spans three decades
            // vertically.
            let [r, g, b] = hsv(x * 360.0, 0.9, 1.0);
            let exposure = 0.01 * 10f64.powf(3.0 * y);
            [r * exposure, g * exposure, b * exposure]
        })
        .collect()
}

fn step_edges() -> Image {
    let levels = [0.05, 0.5, 5.0, 50.0];
    let hues = [0.0, 30.0, 60.0, 120.0, 180.0, 210.0, 270.0, 330.0];
    (0..SIZE * SIZE)
        .map(|i| {
            let bx = (i % SIZE) / (SIZE / 4);
            let by = (i / SIZE) / (SIZE / 4);
            let level = levels[(bx + by) % levels.len()];
            let hue = hues[(bx + 4 * by) % hues.len()];
            let sat = 0.55 + 0.4 * (((bx ^ by) & 1) as f64);
            let [r, g, b] = hsv(hue, sat, 1.0);
            [r * level, g * level, b * level]
        })
        .collect()
}

fn scene() -> Image {
    let horizon = SIZE / 2;
    let sun = (48.0, 30.0);
    let mut img = Vec::with_capacity(SIZE * SIZE);
    for i in 0..SIZE * SIZE {
        let x = (i % SIZE) as f64;
        let y = (i / SIZE) as f64;
        let mut px = if (i / SIZE) < horizon {
            // Sky: blue zenith to warm horizon, 12x brighter than ground.
            let t = y / horizon as f64;
            let base = [
                0.35 + 0.55 * t,
                0.55 + 0.30 * t,
                1.10 - 0.30 * t,
            ];
            let brightness = 12.0 - 8.0 * t;
            [
                base[0] * brightness,
                base[1] * brightness,
                base[2] * brightness,
            ]
        } else {
            // Ground: mottled green/brown, near-diffuse range.
            let n = noise(x, y, 7);
            let g = 0.35 + 0.8 * n;
            [
                (0.10 + 0.25 * n) * g * 2.2,
                (0.22 + 0.18 * n) * g * 2.2,
                (0.05 + 0.10 * n) * g * 2.2,
            ]
        };
        // Sun disk with a soft falloff, far above the sky range.
        let d2 = (x - sun.0).powi(2) + (y - sun.1).powi(2);
        let glow = (-d2 / (2.0 * 36.0)).exp();
        px[0] += 480.0 * glow;
        px[1] += 430.0 * glow;
        px[2] += 340.0 * glow;
        img.push(px);
    }
    // A hut: saturated walls, roof and door so the ground holds strong hues.
    let mut paint = |x0: usize, y0: usize, w: usize, h: usize, color: [f64; 3]| {
        for y in y0..y0 + h {
            for x in x0..x0 + w {
                img[y * SIZE + x] = color;
            }
        }
    };
    paint(120, 110, 48, 40, [1.8, 1.5, 0.35]); // warm wall
    paint(112, 96, 64, 14, [2.4, 0.5, 0.35]); // red roof
    paint(138, 124, 14, 26, [0.25, 0.45, 1.6]); // blue door
    img
}

fn blobs() -> Image {
    struct Blob {
        center: (f64, f64),
        sigma: f64,
        peak: f64,
        hue: f64,
    }
    let blobs = [
        Blob { center: (40.0, 44.0), sigma: 14.0, peak: 0.9, hue: 10.0 },
        Blob { center: (130.0, 36.0), sigma: 10.0, peak: 4.0, hue: 120.0 },
        Blob { center: (96.0, 96.0), sigma: 22.0, peak: 12.0, hue: 215.0 },
        Blob { center: (44.0, 150.0), sigma: 12.0, peak: 35.0, hue: 285.0 },
        Blob { center: (150.0, 140.0), sigma: 16.0, peak: 80.0, hue: 45.0 },
        Blob { center: (168.0, 84.0), sigma: 8.0, peak: 2.0, hue: 170.0 },
    ];
    (0..SIZE * SIZE)
        .map(|i| {
            let x = (i % SIZE) as f64;
            let y = (i / SIZE) as f64;
            let mut px = [0.02, 0.02, 0.027];
            for blob in &blobs {
                let d2 = (x - blob.center.0).powi(2) + (y - blob.center.1).powi(2);
                let w = blob.peak * (-d2 / (2.0 * blob.sigma * blob.sigma)).exp();
                let [r, g, b] = hsv(blob.hue, 0.85, 1.0);
                px[0] += r * w;
                px[1] += g * w;
                px[2] += b * w;
            }
            px
        })
        .collect()
}

/// A color-checker-like chart: strongly chromatic mid-brightness patches
/// with gentle in-patch texture. The brightest patches clip under most
/// operators, so hue compensation visibly changes the image, while the
/// absence of deep shadows keeps requantization noise on the hue tiny.
fn patches() -> Image {
    let hues = [
        0.0, 25.0, 50.0, 90.0, 140.0, 170.0, 200.0, 230.0, 260.0, 290.0, 320.0, 345.0,
    ];
    let levels = [0.6, 1.2, 2.5, 5.0, 8.0, 12.0];
    let cols = 6;
    let rows = 4;
    (0..SIZE * SIZE)
        .map(|i| {
            let x = i % SIZE;
            let y = i / SIZE;
            let bx = (x / (SIZE / cols)).min(cols - 1);
            let by = (y / (SIZE / rows)).min(rows - 1);
            let patch = by * cols + bx;
            let hue = hues[patch % hues.len()];
            let sat = 0.75 + 0.25 * ((patch / hues.len()) as f64);
            let level = levels[(patch * 7 + 3) % levels.len()];
            let texture = 1.0 + 0.25 * (noise(x as f64, y as f64, 11) - 0.5);
            let [r, g, b] = hsv(hue, sat, 1.0);
            [
                r * level * texture,
                g * level * texture,
                b * level * texture,
            ]
        })
        .collect()
}

fn gray_ramp() -> Image {
    (0..SIZE * SIZE)
        .map(|i| {
            let x = (i % SIZE) as f64 / (SIZE - 1) as f64;
            let v = 0.01 * 10f64.powf(3.0 * x);
            [v, v, v]
        })
        .collect()
}

// ---------------------------------------------------------------------------
// RGBE encoding
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq)]
enum Encoding {
    Flat,
    Rle,
}

fn to_rgbe(px: [f64; 3]) -> [u8; 4] {
    let v = px[0].max(px[1]).max(px[2]);
    if v < 1e-32 {
        return [0, 0, 0, 0];
    }
    let mut exponent = v.log2().floor() as i32 + 1;
    let mut mantissa = v / 2f64.powi(exponent);
    if mantissa >= 1.0 {
        mantissa /= 2.0;
        exponent += 1;
    }
    if mantissa < 0.5 {
        exponent -= 1;
    }
    let scale = 256.0 / 2f64.powi(exponent);
    [
        (px[0] * scale) as u8,
        (px[1] * scale) as u8,
        (px[2] * scale) as u8,
        (exponent + 128) as u8,
    ]
}

fn encode_rle_channel(data: &[u8], out: &mut Vec<u8>) {
    const MIN_RUN: usize = 4;
    let mut i = 0;
    while i < data.len() {
        // Find the next run of at least MIN_RUN equal bytes.
        let mut run_start = data.len();
        let mut run_len = 0;
        let mut j = i;
        while j < data.len() {
            let mut k = j + 1;
            while k < data.len() && data[k] == data[j] && k - j < 127 {
                k += 1;
            }
            if k - j >= MIN_RUN {
                run_start = j;
                run_len = k - j;
                break;
            }
            j = k;
        }
        // Literal spans up to the run, in chunks of at most 128 bytes.
        let mut lit = i;
        while lit < run_start {
            let n = (run_start - lit).min(128);
            out.push(n as u8);
            out.extend_from_slice(&data[lit..lit + n]);
            lit += n;
        }
        if run_len > 0 {
            out.push(128 + run_len as u8);
            out.push(data[run_start]);
            i = run_start + run_len;
        } else {
            break;
        }
    }
}

fn write(dir: &Path, name: &str, image: Image, encoding: Encoding) {
    assert_eq!(image.len(), SIZE * SIZE);
    let mut data = format!("#?RADIANCE\nFORMAT=32-bit_rle_rgbe\n\n-Y {SIZE} +X {SIZE}\n").into_bytes();
    for row in image.chunks(SIZE) {
        let quads: Vec<[u8; 4]> = row.iter().map(|&px| to_rgbe(px)).collect();
        match encoding {
            Encoding::Flat => {
                for q in &quads {
                    data.extend_from_slice(q);
                }
            }
            Encoding::Rle => {
                data.extend_from_slice(&[2, 2, (SIZE >> 8) as u8, (SIZE & 0xff) as u8]);
                for channel in 0..4 {
                    let bytes: Vec<u8> = quads.iter().map(|q| q[channel]).collect();
                    encode_rle_channel(&bytes, &mut data);
                }
            }
        }
    }
    fs::write(dir.join(name), data).expect("write corpus file");
}
