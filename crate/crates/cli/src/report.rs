//! Report rows shared by the metrics and compare commands.

use serde::Serialize;

use hueforge_core::metrics::{self, DeltaHConfig, MetricMap, MetricReport};
use hueforge_core::types::{HdrImage, LdrImage};
use hueforge_core::Result;

/// One report row: identifiers plus the scalar metrics.
#[derive(Debug, Clone, Serialize)]
pub struct ReportRow {
    pub image: String,
    pub tmo: String,
    pub method: String,
    #[serde(flatten)]
    pub metrics: MetricReport,
}

impl ReportRow {
    pub fn csv(&self) -> String {
        self.metrics.csv_row(&self.image, &self.tmo, &self.method)
    }
}

/// All three metrics for one image pair, with the per-pixel maps kept for
/// heatmap output.
pub struct Measurement {
    pub report: MetricReport,
    pub delta_c_map: MetricMap,
    pub delta_h_map: MetricMap,
}

pub fn measure(hdr: &HdrImage, ldr: &LdrImage) -> Result<Measurement> {
    let delta_c_map = metrics::delta_c(hdr, ldr)?;
    let delta_h_map = metrics::delta_h(hdr, ldr, &DeltaHConfig::default())?;
    let tmqi = metrics::tmqi(hdr, ldr)?;
    Ok(Measurement {
        report: MetricReport {
            delta_c: delta_c_map.mean,
            delta_h: delta_h_map.mean,
            tmqi_q: tmqi.q,
            tmqi_s: tmqi.s,
            tmqi_n: tmqi.n,
        },
        delta_c_map,
        delta_h_map,
    })
}

/// Serializes rows as a JSON array or CSV (header + rows).
pub fn render_rows(rows: &[ReportRow], csv: bool) -> String {
    if csv {
        let mut out = String::from(metrics::CSV_HEADER);
        out.push('\n');
        for row in rows {
            out.push_str(&row.csv());
            out.push('\n');
        }
        out
    } else {
        let mut out = serde_json::to_string_pretty(rows).expect("rows serialize");
        out.push('\n');
        out
    }
}

/// Plain-text comparison table with the better cell of each metric flagged
/// with `*` within every (image, tmo) group. Lower is better for the hue
/// metrics, higher for TMQI.
pub fn render_table(rows: &[ReportRow]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<18} {:<16} {:<13} {:>12} {:>12} {:>10}\n",
        "image", "tmo", "method", "delta_c", "delta_h", "tmqi_q"
    ));
    let mut i = 0;
    while i < rows.len() {
        let group_end = rows[i..]
            .iter()
            .take_while(|r| r.image == rows[i].image && r.tmo == rows[i].tmo)
            .count()
            + i;
        let group = &rows[i..group_end];
        let best_dc = group
            .iter()
            .map(|r| r.metrics.delta_c)
            .fold(f64::INFINITY, f64::min);
        let best_dh = group
            .iter()
            .map(|r| r.metrics.delta_h)
            .fold(f64::INFINITY, f64::min);
        let best_q = group
            .iter()
            .map(|r| r.metrics.tmqi_q)
            .fold(f64::NEG_INFINITY, f64::max);
        for row in group {
            let flag = |value: f64, best: f64| {
                if value == best {
                    '*'
                } else {
                    ' '
                }
            };
            out.push_str(&format!(
                "{:<18} {:<16} {:<13} {:>11.6}{} {:>11.6}{} {:>9.4}{}\n",
                row.image,
                row.tmo,
                row.method,
                row.metrics.delta_c,
                flag(row.metrics.delta_c, best_dc),
                row.metrics.delta_h,
                flag(row.metrics.delta_h, best_dh),
                row.metrics.tmqi_q,
                flag(row.metrics.tmqi_q, best_q),
            ));
        }
        i = group_end;
    }
    out
}
