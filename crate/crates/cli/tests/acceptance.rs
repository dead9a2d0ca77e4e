//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured numbers (run with `-- --nocapture` to see them all).
//!
//! The comparison criteria run the pipeline in the metric-consistent
//! configuration (no display gamma): hue compensation transplants the
//! linear-domain maximally saturated color, so the hue algebra and both hue
//! metrics operate on the stored code values.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hueforge_core::hue_plane::{
    compensate_pixel, decompose, decompose_hdr, max_saturated_color, max_saturated_color_hdr,
    recompose,
};
use hueforge_core::io::load_hdr;
use hueforge_core::metrics::{
    self, delta_c, delta_c_from_maps, delta_e, delta_h, mean_luminance, mean_luminance_adjust,
    saturation_map_float, saturation_map_hdr, structural_fidelity, tmqi, DeltaHConfig, LabPixel,
    TmqiConstants,
};
use hueforge_core::reconstruct::{clip_only, quantize_clip, round_only};
use hueforge_core::tmo::{TmOperator, TmoConfig};
use hueforge_core::types::{HdrImage, LdrImage, NormalizedPixel};
use hueforge::pipeline::{compensate, mantiuk_baseline, tone_map};

const CHROMATIC_CORPUS: [&str; 6] = [
    "hue_wheel.hdr",
    "color_ramp.hdr",
    "step_edges.hdr",
    "scene.hdr",
    "blobs.hdr",
    "patches.hdr",
];

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(name)
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

/// Value noise with energy at periods 4..64 px, weighted toward short
/// periods so block-scale contrast dominates. Yields values in `[0, 1]`.
fn octave_noise(x: f64, y: f64) -> f64 {
    const WEIGHTS: [f64; 5] = [0.40, 0.25, 0.15, 0.12, 0.08];
    let mut total = 0.0;
    for (octave, &weight) in WEIGHTS.iter().enumerate() {
        let period = f64::from(4u32 << octave);
        let gx = x / period;
        let gy = y / period;
        let x0 = gx.floor();
        let y0 = gy.floor();
        let fx = gx - x0;
        let fy = gy - y0;
        let sx = fx * fx * (3.0 - 2.0 * fx);
        let sy = fy * fy * (3.0 - 2.0 * fy);
        let corner =
            |dx: u32, dy: u32| hash01(x0 as u32 + dx, y0 as u32 + dy, octave as u32);
        let top = corner(0, 0) * (1.0 - sx) + corner(1, 0) * sx;
        let bottom = corner(0, 1) * (1.0 - sx) + corner(1, 1) * sx;
        total += weight * (top * (1.0 - sy) + bottom * sy);
    }
    total
}

fn random_unit_pixel(rng: &mut ChaCha8Rng) -> NormalizedPixel {
    NormalizedPixel::new(rng.gen_range(0.0..=1.0), rng.gen_range(0.0..=1.0), rng.gen_range(0.0..=1.0))
}

fn random_hdr_pixel(rng: &mut ChaCha8Rng, max: f64) -> NormalizedPixel {
    NormalizedPixel::new(
        rng.gen_range(0.0..=max),
        rng.gen_range(0.0..=max),
        rng.gen_range(0.0..=max),
    )
}

#[test]
fn criterion_01_hue_plane_algebra() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);

    for _ in 0..1_000_000 {
        let x = random_unit_pixel(&mut rng);
        let coords = decompose(x);
        let sum = coords.white_weight + coords.black_weight + coords.chroma_weight;
        assert!((sum - 1.0).abs() <= 1e-12, "weight sum {sum} for {x:?}");
        assert!((0.0..=1.0).contains(&coords.white_weight));
        assert!((0.0..=1.0).contains(&coords.black_weight));
        assert!((0.0..=1.0).contains(&coords.chroma_weight));
        let back = recompose(&coords);
        assert!(
            (back.r - x.r).abs() <= 1e-12
                && (back.g - x.g).abs() <= 1e-12
                && (back.b - x.b).abs() <= 1e-12,
            "reconstruction {back:?} vs {x:?}"
        );
    }

    for _ in 0..1_000_000 {
        let x = random_hdr_pixel(&mut rng, 10.0);
        let coords = decompose_hdr(x);
        let sum = coords.white_weight + coords.black_weight + coords.chroma_weight;
        assert!((sum - 1.0).abs() <= 1e-12, "HDR weight sum {sum} for {x:?}");
        let back = recompose(&coords);
        assert!(
            (back.r - x.r).abs() <= 1e-9
                && (back.g - x.g).abs() <= 1e-9
                && (back.b - x.b).abs() <= 1e-9,
            "HDR reconstruction {back:?} vs {x:?}"
        );
    }

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}");
    println!(
        "criterion 1 PASS: 2x10^6 pixels, weight sum within 1e-12, bounds exact, \
         reconstruction within 1e-12 (LDR) / 1e-9 (HDR), in {elapsed:?}"
    );
}

#[test]
fn criterion_02_compensation_never_clips() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut violations = 0usize;
    for _ in 0..1_000_000 {
        let x = random_unit_pixel(&mut rng);
        let hue_source = random_hdr_pixel(&mut rng, 10.0);
        let out = compensate_pixel(x, max_saturated_color_hdr(hue_source));
        for ch in out.channels() {
            if !(0.0..=1.0).contains(&ch) {
                violations += 1;
            }
        }
    }
    assert_eq!(violations, 0);
    println!("criterion 2 PASS: 10^6 compensated pixels, 0 channels outside [0,1]");
}

#[test]
fn criterion_03_hue_transplant() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut tested = 0usize;
    while tested < 100_000 {
        // x' comes from the 8-bit grid, as it does in the real pipeline.
        let quantized: [u8; 3] = [rng.gen(), rng.gen(), rng.gen()];
        let x = NormalizedPixel::new(
            f64::from(quantized[0]) / 255.0,
            f64::from(quantized[1]) / 255.0,
            f64::from(quantized[2]) / 255.0,
        );
        let coords = decompose(x);
        let Some(target) = max_saturated_color_hdr(random_hdr_pixel(&mut rng, 10.0)) else {
            continue;
        };
        if coords.chroma_weight < 8.0 / 255.0 {
            continue;
        }
        tested += 1;

        let out = compensate_pixel(x, Some(target));
        let before = max_saturated_color(out).expect("chromatic output");
        assert!(
            (before.r - target.r).abs() <= 1e-9
                && (before.g - target.g).abs() <= 1e-9
                && (before.b - target.b).abs() <= 1e-9,
            "pre-quantization transplant off: {before:?} vs {target:?}"
        );

        let requantized = quantize_clip(&[out], 1, 1).unwrap();
        let after = max_saturated_color(requantized.normalized_pixels()[0])
            .expect("chromatic after requantization");
        let bound = 0.5 / (255.0 * coords.chroma_weight) + 1e-12;
        for (got, want) in after.channels().into_iter().zip(target.channels()) {
            assert!(
                (got - want).abs() <= bound,
                "post-quantization deviation {} > {bound} (chroma weight {})",
                (got - want).abs(),
                coords.chroma_weight
            );
        }
    }
    println!(
        "criterion 3 PASS: 10^5 chromatic transplants exact within 1e-9, \
         requantized deviation within 0.5/(255*a_c)"
    );
}

struct Cell {
    image: &'static str,
    operator: TmOperator,
    conventional: f64,
    proposed: f64,
}

/// Runs the conventional and compensated pipelines over the chromatic corpus
/// and returns (delta_c cells, delta_h cells).
fn improvement_cells() -> (Vec<Cell>, Vec<Cell>) {
    let mut dc_cells = Vec::new();
    let mut dh_cells = Vec::new();
    for image in CHROMATIC_CORPUS {
        let hdr = load_hdr(&corpus(image)).unwrap();
        for operator in TmOperator::ALL {
            let config = TmoConfig::with_operator(operator);
            let run = tone_map(&hdr, &config, None).unwrap();
            let fixed = compensate(&run.ldr, &hdr).unwrap();
            let dh_config = DeltaHConfig::default();
            dc_cells.push(Cell {
                image,
                operator,
                conventional: delta_c(&hdr, &run.ldr).unwrap().mean,
                proposed: delta_c(&hdr, &fixed).unwrap().mean,
            });
            dh_cells.push(Cell {
                image,
                operator,
                conventional: delta_h(&hdr, &run.ldr, &dh_config).unwrap().mean,
                proposed: delta_h(&hdr, &fixed, &dh_config).unwrap().mean,
            });
        }
    }
    (dc_cells, dh_cells)
}

#[test]
fn criterion_04_delta_c_improves_in_every_cell() {
    let (dc_cells, _) = improvement_cells();
    assert_eq!(dc_cells.len(), 24);
    for cell in &dc_cells {
        assert!(
            cell.proposed < cell.conventional,
            "{}/{}: proposed {} vs conventional {}",
            cell.image,
            cell.operator,
            cell.proposed,
            cell.conventional
        );
    }
    println!(
        "criterion 4 PASS: delta_c(proposed) < delta_c(conventional) in {}/{} corpus x operator cells",
        dc_cells.len(),
        dc_cells.len()
    );
}

#[test]
fn criterion_05_delta_h_improves_in_at_least_90_percent_of_cells() {
    let (_, dh_cells) = improvement_cells();
    assert_eq!(dh_cells.len(), 24);
    let improved = dh_cells
        .iter()
        .filter(|c| c.proposed < c.conventional)
        .count();
    let fraction = improved as f64 / dh_cells.len() as f64;
    assert!(
        fraction >= 0.9,
        "only {improved}/{} cells improved",
        dh_cells.len()
    );
    println!(
        "criterion 5 PASS: delta_h(proposed) < delta_h(conventional) in {improved}/{} cells ({:.0}%)",
        dh_cells.len(),
        100.0 * fraction
    );
}

#[test]
fn criterion_06_ciede2000_reference_pairs() {
    // The published 34-pair dataset; exercises every branch of the hue-angle
    // machinery that the image metric's hue term shares.
    const PAIRS: [([f64; 3], [f64; 3], f64); 34] = [
        ([50.0000, 2.6772, -79.7751], [50.0000, 0.0000, -82.7485], 2.0425),
        ([50.0000, 3.1571, -77.2803], [50.0000, 0.0000, -82.7485], 2.8615),
        ([50.0000, 2.8361, -74.0200], [50.0000, 0.0000, -82.7485], 3.4412),
        ([50.0000, -1.3802, -84.2814], [50.0000, 0.0000, -82.7485], 1.0000),
        ([50.0000, -1.1848, -84.8006], [50.0000, 0.0000, -82.7485], 1.0000),
        ([50.0000, -0.9009, -85.5211], [50.0000, 0.0000, -82.7485], 1.0000),
        ([50.0000, 0.0000, 0.0000], [50.0000, -1.0000, 2.0000], 2.3669),
        ([50.0000, -1.0000, 2.0000], [50.0000, 0.0000, 0.0000], 2.3669),
        ([50.0000, 2.4900, -0.0010], [50.0000, -2.4900, 0.0009], 7.1792),
        ([50.0000, 2.4900, -0.0010], [50.0000, -2.4900, 0.0010], 7.1792),
        ([50.0000, 2.4900, -0.0010], [50.0000, -2.4900, 0.0011], 7.2195),
        ([50.0000, 2.4900, -0.0010], [50.0000, -2.4900, 0.0012], 7.2195),
        ([50.0000, -0.0010, 2.4900], [50.0000, 0.0009, -2.4900], 4.8045),
        ([50.0000, -0.0010, 2.4900], [50.0000, 0.0010, -2.4900], 4.8045),
        ([50.0000, -0.0010, 2.4900], [50.0000, 0.0011, -2.4900], 4.7461),
        ([50.0000, 2.5000, 0.0000], [50.0000, 0.0000, -2.5000], 4.3065),
        ([50.0000, 2.5000, 0.0000], [73.0000, 25.0000, -18.0000], 27.1492),
        ([50.0000, 2.5000, 0.0000], [61.0000, -5.0000, 29.0000], 22.8977),
        ([50.0000, 2.5000, 0.0000], [56.0000, -27.0000, -3.0000], 31.9030),
        ([50.0000, 2.5000, 0.0000], [58.0000, 24.0000, 15.0000], 19.4535),
        ([50.0000, 2.5000, 0.0000], [50.0000, 3.1736, 0.5854], 1.0000),
        ([50.0000, 2.5000, 0.0000], [50.0000, 3.2972, 0.0000], 1.0000),
        ([50.0000, 2.5000, 0.0000], [50.0000, 1.8634, 0.5757], 1.0000),
        ([50.0000, 2.5000, 0.0000], [50.0000, 3.2592, 0.3350], 1.0000),
        ([60.2574, -34.0099, 36.2677], [60.4626, -34.1751, 39.4387], 1.2644),
        ([63.0109, -31.0961, -5.8663], [62.8187, -29.7946, -4.0864], 1.2630),
        ([61.2901, 3.7196, -5.3901], [61.4292, 2.2480, -4.9620], 1.8731),
        ([35.0831, -44.1164, 3.7933], [35.0232, -40.0716, 1.5901], 1.8645),
        ([22.7233, 20.0904, -46.6940], [23.0331, 14.9730, -42.5619], 2.0373),
        ([36.4612, 47.8580, 18.3852], [36.2715, 50.5065, 21.2231], 1.4146),
        ([90.8027, -2.0831, 1.4410], [91.1528, -1.6435, 0.0447], 1.4441),
        ([90.9257, -0.5406, -0.9208], [88.6381, -0.8985, -0.7239], 1.5381),
        ([6.7747, -0.2908, -2.4247], [5.8714, -0.0985, -2.2286], 0.6377),
        ([2.0776, 0.0795, -1.1350], [0.9033, -0.0636, -0.5514], 0.9082),
    ];

    let start = Instant::now();
    let mut max_error = 0.0f64;
    for &(p1, p2, expected) in &PAIRS {
        let got = delta_e(
            LabPixel { l: p1[0], a: p1[1], b: p1[2] },
            LabPixel { l: p2[0], a: p2[1], b: p2[2] },
        );
        let error = (got - expected).abs();
        max_error = max_error.max(error);
        assert!(error < 1e-4, "expected {expected}, got {got}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!(
        "criterion 6 PASS: 34/34 reference pairs within 1e-4 (max error {max_error:.2e}) in {elapsed:?}"
    );
}

#[test]
fn criterion_07_tmqi_sanity() {
    // Self-similarity of the structural term.
    let width = 96;
    let pattern: Vec<f64> = (0..width * width)
        .map(|i| {
            let x = (i % width) as f64;
            let y = (i / width) as f64;
            128.0 + 25.0 * (0.9 * x).sin() * (0.7 * y).cos()
        })
        .collect();
    let s = structural_fidelity(&pattern, &pattern, width, width, &TmqiConstants::default());
    assert!((s - 1.0).abs() <= 1e-9, "self fidelity {s}");

    // Range on random pairs.
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let w = rng.gen_range(24..64);
        let h = rng.gen_range(24..64);
        let hdr_pixels: Vec<[f64; 3]> = (0..w * h)
            .map(|_| {
                [
                    rng.gen_range(0.0..20.0),
                    rng.gen_range(0.0..20.0),
                    rng.gen_range(0.0..20.0),
                ]
            })
            .collect();
        let ldr_pixels: Vec<[u8; 3]> = (0..w * h).map(|_| [rng.gen(), rng.gen(), rng.gen()]).collect();
        let hdr = HdrImage::new(w, h, hdr_pixels).unwrap();
        let ldr = LdrImage::new(w, h, ldr_pixels).unwrap();
        let score = tmqi(&hdr, &ldr).unwrap();
        assert!((0.0..=1.0).contains(&score.q), "Q {}", score.q);
        assert!((0.0..=1.0).contains(&score.s), "S {}", score.s);
        assert!((0.0..=1.0).contains(&score.n), "N {}", score.n);
    }

    // Q decreases monotonically as Gaussian noise of increasing strength is
    // added to the LDR image. The clean image is broadband (energy at every
    // pyramid scale) with block contrast above the naturalness model's
    // mode, so noise degrades structure and statistics in the same
    // direction at every level.
    let side = 192;
    let clean: Vec<f64> = (0..side * side)
        .map(|i| {
            let x = (i % side) as f64;
            let y = (i / side) as f64;
            let texture = octave_noise(x, y) - 0.5;
            (120.0 + 360.0 * texture).clamp(0.0, 255.0)
        })
        .collect();
    let hdr_pixels: Vec<[f64; 3]> = clean.iter().map(|&v| [v / 255.0; 3]).collect();
    let hdr = HdrImage::new(side, side, hdr_pixels).unwrap();

    let mut qs = Vec::new();
    for (i, sigma) in [0.0, 8.0, 16.0, 32.0, 48.0].iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(100 + i as u64);
        let noisy: Vec<[u8; 3]> = clean
            .iter()
            .map(|&v| {
                // Box-Muller standard normal, one offset per pixel.
                let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
                let u2: f64 = rng.gen_range(0.0..1.0);
                let normal = (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos();
                [(v + sigma * normal).round().clamp(0.0, 255.0) as u8; 3]
            })
            .collect();
        let ldr = LdrImage::new(side, side, noisy).unwrap();
        qs.push(tmqi(&hdr, &ldr).unwrap().q);
    }
    for pair in qs.windows(2) {
        assert!(pair[1] < pair[0], "Q not decreasing: {qs:?}");
    }
    println!(
        "criterion 7 PASS: S(self) = 1 within 1e-9; Q,S,N in [0,1] on 100 random pairs; \
         Q strictly decreasing over noise levels {qs:?}"
    );
}

#[test]
fn criterion_08_luminance_adjustment_preserves_hue_metrics() {
    let hdr = load_hdr(&corpus("patches.hdr")).unwrap();
    let config = TmoConfig::with_operator(TmOperator::ReinhardLocal);
    let run = tone_map(&hdr, &config, None).unwrap();
    let fixed = compensate(&run.ldr, &hdr).unwrap();
    let adjusted = mean_luminance_adjust(&fixed, mean_luminance(&run.ldr)).unwrap();

    let dc_before = delta_c(&hdr, &fixed).unwrap().mean;
    let dc_after = delta_c(&hdr, &adjusted).unwrap().mean;
    let q_before = tmqi(&hdr, &fixed).unwrap().q;
    let q_after = tmqi(&hdr, &adjusted).unwrap().q;

    let dc_shift = (dc_after - dc_before).abs();
    let q_shift = (q_after - q_before).abs();
    assert!(dc_shift <= 1e-3, "delta_c moved by {dc_shift}");
    assert!(q_shift >= 1e-4, "TMQI barely moved: {q_shift}");
    println!(
        "criterion 8 PASS: mean-luminance adjustment moved delta_c by {dc_shift:.2e} (<= 1e-3) \
         while TMQI moved by {q_shift:.2e} ({q_before:.4} -> {q_after:.4})"
    );
}

#[test]
fn criterion_09_proposed_beats_the_baseline_under_durand() {
    let images = ["hue_wheel.hdr", "color_ramp.hdr", "step_edges.hdr"];
    let mut wins = 0;
    let mut details = Vec::new();
    for image in images {
        let hdr = load_hdr(&corpus(image)).unwrap();
        let config = TmoConfig::with_operator(TmOperator::Durand);
        let run = tone_map(&hdr, &config, None).unwrap();
        let proposed = compensate(&run.ldr, &hdr).unwrap();
        let baseline = mantiuk_baseline(
            &hdr,
            &run,
            &hueforge_core::baseline::MantiukConfig::default(),
            None,
        )
        .unwrap();

        let dh_config = DeltaHConfig::default();
        let dc_proposed = delta_c(&hdr, &proposed).unwrap().mean;
        let dc_baseline = delta_c(&hdr, &baseline.ldr).unwrap().mean;
        let dh_proposed = delta_h(&hdr, &proposed, &dh_config).unwrap().mean;
        let dh_baseline = delta_h(&hdr, &baseline.ldr, &dh_config).unwrap().mean;
        let win = dc_proposed < dc_baseline && dh_proposed < dh_baseline;
        if win {
            wins += 1;
        }
        details.push(format!(
            "{image}: dc {dc_proposed:.4} vs {dc_baseline:.4}, dh {dh_proposed:.4} vs {dh_baseline:.4} ({})",
            if win { "win" } else { "loss" }
        ));
    }
    assert!(wins >= 2, "only {wins}/3 wins: {details:?}");
    println!(
        "criterion 9 PASS: proposed beats the saturation-correction baseline on both hue \
         metrics for {wins}/3 images under durand — {}",
        details.join("; ")
    );
}

#[test]
fn criterion_10_quantization_semantics_and_ablations() {
    // Exhaustive rounding/clipping table (half away from zero, clip to
    // [0, 255]).
    let table = [
        (-1.0, 0u8),
        (-0.1, 0),
        (0.0, 0),
        (0.001, 0),
        (0.5, 128),
        (0.999, 255),
        (1.0, 255),
        (1.2, 255),
    ];
    for (v, expected) in table {
        let out = quantize_clip(&[NormalizedPixel::splat(v)], 1, 1).unwrap();
        assert_eq!(out.pixel(0, 0), [expected; 3], "input {v}");
    }

    // Ablations on an out-of-gamut image: both error sources are nonzero on
    // their own.
    let hdr_pixels = vec![
        [13.0, 8.0, 2.0],
        [2.0, 11.0, 5.0],
        [6.0, 3.0, 14.0],
        [9.0, 9.5, 1.0],
    ];
    let reference = HdrImage::new(4, 1, hdr_pixels.clone()).unwrap();
    // A reconstruction whose brightest channels exceed 1 and whose values
    // are fractional.
    let float_image: Vec<NormalizedPixel> = hdr_pixels
        .iter()
        .map(|&[r, g, b]| NormalizedPixel::new(r * 0.1, g * 0.1, b * 0.1))
        .collect();

    let ref_sat = saturation_map_hdr(&reference);
    let clip_sat = saturation_map_float(&clip_only(&float_image));
    let rounded: Vec<NormalizedPixel> = round_only(&float_image)
        .into_iter()
        .map(|[r, g, b]| {
            NormalizedPixel::new(
                f64::from(r) / 255.0,
                f64::from(g) / 255.0,
                f64::from(b) / 255.0,
            )
        })
        .collect();
    let round_sat = saturation_map_float(&rounded);

    let dc_clip = delta_c_from_maps(&ref_sat, &clip_sat, 4, 1).unwrap().mean;
    let dc_round = delta_c_from_maps(&ref_sat, &round_sat, 4, 1).unwrap().mean;
    assert!(dc_clip > 0.0, "clipping alone produced no hue error");
    assert!(dc_round > 0.0, "rounding alone produced no hue error");
    println!(
        "criterion 10 PASS: quantization table exact; ablations give delta_c(clip only) = \
         {dc_clip:.4} > 0 and delta_c(round only) = {dc_round:.4} > 0"
    );
}

#[test]
fn criterion_11_commands_are_deterministic_across_thread_counts() {
    let binary = env!("CARGO_BIN_EXE_hueforge");
    let inputs = [corpus("hue_wheel.hdr"), corpus("patches.hdr")];

    let run_all = |threads: &str| -> Vec<(String, Vec<u8>)> {
        let dir = tempfile::TempDir::new().unwrap();
        let out = dir.path().to_str().unwrap().to_string();

        let tm = Command::new(binary)
            .env("HUEFORGE_THREADS", threads)
            .args([
                "tonemap", "--tmo", "reinhard_global", "--tmo", "drago", "--compensate", "--out",
                &out,
            ])
            .args(inputs.iter())
            .output()
            .unwrap();
        assert!(tm.status.success());

        let cmp = Command::new(binary)
            .env("HUEFORGE_THREADS", threads)
            .args([
                "compare",
                "--tmo",
                "reinhard_global",
                "--tmo",
                "drago",
                "--baseline",
                "mantiuk",
                "--no-gamma",
                "--heatmap",
                "--format",
                "csv",
                "--out",
                &out,
            ])
            .args(inputs.iter())
            .output()
            .unwrap();
        assert!(cmp.status.success());

        let met = Command::new(binary)
            .env("HUEFORGE_THREADS", threads)
            .args([
                "metrics",
                "--hdr",
                corpus("hue_wheel.hdr").to_str().unwrap(),
                "--ldr",
                &format!("{out}/hue_wheel__drago.png"),
                "--format",
                "json",
                "--out",
                &out,
            ])
            .output()
            .unwrap();
        assert!(met.status.success());

        let cpn = Command::new(binary)
            .env("HUEFORGE_THREADS", threads)
            .args([
                "compensate",
                "--hdr",
                corpus("hue_wheel.hdr").to_str().unwrap(),
                "--ldr",
                &format!("{out}/hue_wheel__drago.png"),
                "--out",
                &out,
            ])
            .output()
            .unwrap();
        assert!(cpn.status.success());

        let mut files: Vec<(String, Vec<u8>)> = fs::read_dir(dir.path())
            .unwrap()
            .map(|entry| {
                let entry = entry.unwrap();
                (
                    entry.file_name().to_string_lossy().into_owned(),
                    fs::read(entry.path()).unwrap(),
                )
            })
            .collect();
        files.sort_by(|a, b| a.0.cmp(&b.0));
        files
    };

    let single = run_all("1");
    let single_again = run_all("1");
    let eight = run_all("8");

    assert_eq!(single.len(), single_again.len());
    assert!(single.len() > 10);
    for ((name_a, bytes_a), (name_b, bytes_b)) in single.iter().zip(&single_again) {
        assert_eq!(name_a, name_b);
        assert_eq!(bytes_a, bytes_b, "rerun differs for {name_a}");
    }
    for ((name_a, bytes_a), (name_b, bytes_b)) in single.iter().zip(&eight) {
        assert_eq!(name_a, name_b);
        assert_eq!(bytes_a, bytes_b, "thread count changed {name_a}");
    }
    println!(
        "criterion 11 PASS: {} output files byte-identical across reruns and \
         HUEFORGE_THREADS in {{1, 8}}",
        single.len()
    );
}

#[test]
fn tmqi_band_on_a_corpus_image() {
    // Companion check to the sanity criterion: a real tone mapping of a
    // corpus image lands inside the plausible quality band.
    let hdr = load_hdr(&corpus("scene.hdr")).unwrap();
    let config = TmoConfig::with_operator(TmOperator::ReinhardGlobal);
    let run = tone_map(&hdr, &config, Some(2.2)).unwrap();
    let score = metrics::tmqi(&hdr, &run.ldr).unwrap();
    assert!(
        (0.70..=0.97).contains(&score.q),
        "Q = {} outside the expected band",
        score.q
    );
    println!("tmqi band PASS: Q = {:.4} within [0.70, 0.97]", score.q);
}
