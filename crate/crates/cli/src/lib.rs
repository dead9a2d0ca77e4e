//! Batch front-end for hue-preserving tone mapping.
//!
//! Four subcommands cover the experimental workflow end to end:
//!
//! - `tonemap` — HDR inputs to 8-bit PNGs, one per input per operator.
//! - `compensate` — transplant HDR hues onto an existing tone-mapped image.
//! - `metrics` — Δc, ΔH and TMQI for one HDR/LDR pair, as JSON or CSV.
//! - `compare` — the full conventional/proposed(/baseline) matrix over a
//!   corpus, with the better cell flagged per metric.
//!
//! Every command is deterministic given its inputs and flags: the pipeline
//! contains no randomness, images are processed in a worker pool (capped by
//! `HUEFORGE_THREADS`) whose results are collected in input order, and
//! reports are assembled sequentially.
//!
//! Exit codes: 0 success, 1 I/O or unreadable input, 2 usage, 3 validation.

pub mod args;
pub mod commands;
pub mod manifest;
pub mod pipeline;
pub mod report;

use args::{Cli, Command};

/// Runs a parsed command line, returning the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let result = match &cli.command {
        Command::Tonemap(args) => commands::tonemap(args),
        Command::Compensate(args) => commands::compensate_cmd(args),
        Command::Metrics(args) => commands::metrics_cmd(args),
        Command::Compare(args) => commands::compare(args),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            commands::exit_code(&err)
        }
    }
}
