//! Small spatial filters used by the local tone mapping operators.
//!
//! Kernels are truncated and renormalized at image borders, which keeps
//! constant inputs exactly constant — the local operators rely on that to
//! degrade gracefully to their global forms on flat images.

/// Half-width of a Gaussian kernel truncated at three standard deviations.
pub fn gaussian_radius(sigma: f64) -> usize {
    (3.0 * sigma).ceil() as usize
}

fn gaussian_taps(sigma: f64) -> Vec<f64> {
    let radius = gaussian_radius(sigma);
    let denom = 2.0 * sigma * sigma;
    (0..=2 * radius)
        .map(|i| {
            let d = i as f64 - radius as f64;
            (-d * d / denom).exp()
        })
        .collect()
}

/// Separable Gaussian blur with border renormalization.
pub fn gaussian_blur(map: &[f64], width: usize, height: usize, sigma: f64) -> Vec<f64> {
    debug_assert_eq!(map.len(), width * height);
    if sigma <= 0.0 {
        return map.to_vec();
    }
    let taps = gaussian_taps(sigma);
    let radius = taps.len() / 2;

    let mut horizontal = vec![0.0; map.len()];
    for y in 0..height {
        let row = &map[y * width..(y + 1) * width];
        for x in 0..width {
            let mut acc = 0.0;
            let mut weight = 0.0;
            for (t, &w) in taps.iter().enumerate() {
                let dx = t as isize - radius as isize;
                let sx = x as isize + dx;
                if sx >= 0 && (sx as usize) < width {
                    acc += w * row[sx as usize];
                    weight += w;
                }
            }
            horizontal[y * width + x] = acc / weight;
        }
    }

    let mut out = vec![0.0; map.len()];
    for y in 0..height {
        for x in 0..width {
            let mut acc = 0.0;
            let mut weight = 0.0;
            for (t, &w) in taps.iter().enumerate() {
                let dy = t as isize - radius as isize;
                let sy = y as isize + dy;
                if sy >= 0 && (sy as usize) < height {
                    acc += w * horizontal[sy as usize * width + x];
                    weight += w;
                }
            }
            out[y * width + x] = acc / weight;
        }
    }
    out
}

/// Brute-force bilateral filter. The spatial kernel is truncated at two
/// standard deviations; weights are renormalized per pixel.
pub fn bilateral(
    map: &[f64],
    width: usize,
    height: usize,
    sigma_space: f64,
    sigma_range: f64,
) -> Vec<f64> {
    debug_assert_eq!(map.len(), width * height);
    let radius = (2.0 * sigma_space).ceil().max(1.0) as isize;
    let space_denom = 2.0 * sigma_space * sigma_space;
    let range_denom = 2.0 * sigma_range * sigma_range;

    let mut out = vec![0.0; map.len()];
    for y in 0..height as isize {
        for x in 0..width as isize {
            let center = map[y as usize * width + x as usize];
            let mut acc = 0.0;
            let mut weight = 0.0;
            for dy in -radius..=radius {
                let sy = y + dy;
                if sy < 0 || sy >= height as isize {
                    continue;
                }
                for dx in -radius..=radius {
                    let sx = x + dx;
                    if sx < 0 || sx >= width as isize {
                        continue;
                    }
                    let v = map[sy as usize * width + sx as usize];
                    let dv = v - center;
                    let w = (-((dx * dx + dy * dy) as f64) / space_denom).exp()
                        * (-dv * dv / range_denom).exp();
                    acc += w * v;
                    weight += w;
                }
            }
            out[y as usize * width + x as usize] = acc / weight;
        }
    }
    out
}
