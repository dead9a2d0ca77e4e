//! Implementations of the four subcommands.

use std::fs;
use std::path::{Path, PathBuf};

use log::{info, warn};
use rayon::prelude::*;

use hueforge_core::baseline::MantiukConfig;
use hueforge_core::io::{load_hdr, load_ldr, save_ldr};
use hueforge_core::metrics::{heatmap, mean_luminance};
use hueforge_core::tmo::{TmOperator, TmoConfig};
use hueforge_core::types::LdrImage;
use hueforge_core::{Error, Result};

use crate::args::{Baseline, CompareArgs, CompensateArgs, MetricsArgs, PipelineArgs, ReportFormat, TonemapArgs};
use crate::manifest::{BaselineManifest, RunManifest};
use crate::pipeline::{compensate, mantiuk_baseline, tone_map};
use crate::report::{measure, render_rows, render_table, ReportRow};

pub const METHOD_CONVENTIONAL: &str = "conventional";
pub const METHOD_PROPOSED: &str = "proposed";
pub const METHOD_MANTIUK: &str = "mantiuk";

/// Worker pool capped by the `HUEFORGE_THREADS` environment variable.
fn thread_pool() -> rayon::ThreadPool {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(value) = std::env::var("HUEFORGE_THREADS") {
        match value.parse::<usize>() {
            Ok(n) if n > 0 => builder = builder.num_threads(n),
            _ => warn!("ignoring invalid HUEFORGE_THREADS value '{value}'"),
        }
    }
    builder.build().expect("thread pool construction")
}

fn tmo_config(args: &PipelineArgs, operator: TmOperator) -> TmoConfig {
    TmoConfig {
        operator,
        key_value: args.alpha,
        drago_bias: args.bias,
        durand_contrast: args.contrast,
        ..TmoConfig::default()
    }
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "image".into())
}

fn ensure_out_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    Ok(())
}

pub fn tonemap(args: &TonemapArgs) -> Result<i32> {
    ensure_out_dir(&args.out)?;
    let pool = thread_pool();

    let per_input: Vec<Result<Vec<String>>> = pool.install(|| {
        args.inputs
            .par_iter()
            .map(|input| -> Result<Vec<String>> {
                let hdr = load_hdr(input)?;
                let mut written = Vec::new();
                for &operator in &args.pipeline.tmo {
                    let config = tmo_config(&args.pipeline, operator);
                    let run = tone_map(&hdr, &config, args.pipeline.gamma())?;
                    let base = format!("{}__{}", stem(input), operator);
                    let name = format!("{base}.png");
                    save_ldr(&run.ldr, &args.out.join(&name))?;
                    written.push(name);
                    if args.compensate {
                        let fixed = compensate(&run.ldr, &hdr)?;
                        let name = format!("{base}__compensated.png");
                        save_ldr(&fixed, &args.out.join(&name))?;
                        written.push(name);
                    }
                }
                Ok(written)
            })
            .collect()
    });

    let mut outputs = Vec::new();
    for result in per_input {
        outputs.extend(result?);
    }

    let manifest = RunManifest {
        command: "tonemap",
        inputs: args.inputs.clone(),
        operators: args.pipeline.tmo.clone(),
        alpha: args.pipeline.alpha,
        drago_bias: args.pipeline.bias,
        durand_contrast: args.pipeline.contrast,
        gamma: args.pipeline.gamma(),
        compensate: args.compensate,
        baseline: None,
        outputs,
    };
    let path = manifest.write(&args.out)?;
    info!("wrote {}", path.display());
    Ok(0)
}

pub fn compensate_cmd(args: &CompensateArgs) -> Result<i32> {
    ensure_out_dir(&args.out)?;
    let hdr = load_hdr(&args.hdr)?;
    let ldr = load_ldr(&args.ldr)?;
    let fixed = compensate(&ldr, &hdr)?;
    let path = args.out.join(format!("{}__compensated.png", stem(&args.ldr)));
    save_ldr(&fixed, &path)?;
    println!("{}", path.display());
    Ok(0)
}

pub fn metrics_cmd(args: &MetricsArgs) -> Result<i32> {
    ensure_out_dir(&args.out)?;
    let hdr = load_hdr(&args.hdr)?;
    let ldr = load_ldr(&args.ldr)?;
    let measurement = measure(&hdr, &ldr)?;

    let row = ReportRow {
        image: stem(&args.ldr),
        tmo: args.tmo.map(|t| t.name().to_string()).unwrap_or_else(|| "unknown".into()),
        method: if args.compensate {
            METHOD_PROPOSED.into()
        } else {
            METHOD_CONVENTIONAL.into()
        },
        metrics: measurement.report,
    };

    let csv = args.format == ReportFormat::Csv;
    let rendered = render_rows(std::slice::from_ref(&row), csv);
    let report_path = args.out.join(if csv { "report.csv" } else { "report.json" });
    fs::write(&report_path, &rendered)?;
    print!("{rendered}");

    if args.heatmap {
        write_heatmaps(&args.out, &row.image, &row.tmo, &row.method, &measurement)?;
    }
    Ok(0)
}

fn write_heatmaps(
    out: &Path,
    image: &str,
    tmo: &str,
    method: &str,
    measurement: &crate::report::Measurement,
) -> Result<()> {
    let dc = heatmap(
        &measurement.delta_c_map.values,
        measurement.delta_c_map.width(),
        measurement.delta_c_map.height(),
        None,
    )?;
    save_ldr(&dc, &out.join(format!("{image}__{tmo}__{method}__delta_c_map.png")))?;
    let dh = heatmap(
        &measurement.delta_h_map.values,
        measurement.delta_h_map.width(),
        measurement.delta_h_map.height(),
        None,
    )?;
    save_ldr(&dh, &out.join(format!("{image}__{tmo}__{method}__delta_h_map.png")))?;
    Ok(())
}

struct CompareUnit {
    rows: Vec<ReportRow>,
    heatmap_jobs: Vec<(String, String, String, crate::report::Measurement)>,
}

fn compare_one(
    input: &Path,
    args: &CompareArgs,
) -> Result<CompareUnit> {
    let hdr = load_hdr(input)?;
    let image = stem(input);
    let mut rows = Vec::new();
    let mut heatmap_jobs = Vec::new();

    for &operator in &args.pipeline.tmo {
        let config = tmo_config(&args.pipeline, operator);
        let run = tone_map(&hdr, &config, args.pipeline.gamma())?;

        let mut variants: Vec<(&str, LdrImage)> =
            vec![(METHOD_CONVENTIONAL, run.ldr.clone())];
        variants.push((METHOD_PROPOSED, compensate(&run.ldr, &hdr)?));
        if args.baseline == Some(Baseline::Mantiuk) {
            let baseline = mantiuk_baseline(
                &hdr,
                &run,
                &MantiukConfig::default(),
                args.pipeline.gamma(),
            )?;
            info!(
                "{image}/{operator}: baseline saturation {:.4} (contrast ratio {:.4})",
                baseline.saturation,
                baseline.contrast_ratio.unwrap_or(f64::NAN)
            );
            variants.push((METHOD_MANTIUK, baseline.ldr));
        }

        for (method, ldr) in variants {
            let measurement = measure(&hdr, &ldr)?;
            rows.push(ReportRow {
                image: image.clone(),
                tmo: operator.name().into(),
                method: method.into(),
                metrics: measurement.report,
            });
            if args.heatmap {
                heatmap_jobs.push((image.clone(), operator.name().into(), method.into(), measurement));
            }
        }
    }
    Ok(CompareUnit { rows, heatmap_jobs })
}

pub fn compare(args: &CompareArgs) -> Result<i32> {
    ensure_out_dir(&args.out)?;
    let pool = thread_pool();

    let results: Vec<Result<CompareUnit>> = pool.install(|| {
        args.inputs
            .par_iter()
            .map(|input| compare_one(input, args))
            .collect()
    });

    let mut rows = Vec::new();
    let mut gaps = Vec::new();
    for (input, result) in args.inputs.iter().zip(results) {
        match result {
            Ok(unit) => {
                for (image, tmo, method, measurement) in &unit.heatmap_jobs {
                    write_heatmaps(&args.out, image, tmo, method, measurement)?;
                }
                rows.extend(unit.rows);
            }
            Err(err) => gaps.push((input.clone(), err)),
        }
    }

    let csv = args.format == ReportFormat::Csv;
    let rendered = render_rows(&rows, csv);
    let report_name = if csv { "report.csv" } else { "report.json" };
    fs::write(args.out.join(report_name), &rendered)?;
    print!("{}", render_table(&rows));

    let manifest = RunManifest {
        command: "compare",
        inputs: args.inputs.clone(),
        operators: args.pipeline.tmo.clone(),
        alpha: args.pipeline.alpha,
        drago_bias: args.pipeline.bias,
        durand_contrast: args.pipeline.contrast,
        gamma: args.pipeline.gamma(),
        compensate: true,
        baseline: args.baseline.map(|_| {
            let cfg = MantiukConfig::default();
            BaselineManifest {
                method: METHOD_MANTIUK,
                variant: "nonlinear",
                k1: cfg.k1,
                k2: cfg.k2,
            }
        }),
        outputs: vec![report_name.to_string()],
    };
    manifest.write(&args.out)?;

    if gaps.is_empty() {
        Ok(0)
    } else {
        for (path, err) in &gaps {
            eprintln!("skipped {}: {err}", path.display());
        }
        Ok(1)
    }
}

/// Adjusts a compensated image back to a reference mean luminance. Exposed
/// for tests and ad-hoc use; the compare pipeline reports unadjusted scores.
pub fn adjust_to_reference(ldr: &LdrImage, reference: &LdrImage) -> Result<LdrImage> {
    hueforge_core::metrics::mean_luminance_adjust(ldr, mean_luminance(reference))
}

/// Maps an error to the documented process exit code: 1 for I/O and file
/// format problems, 3 for validation failures (usage errors exit 2 via
/// argument parsing).
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Io(_) | Error::Format { .. } => 1,
        Error::Validation(_) | Error::DimensionMismatch(_) => 3,
    }
}
