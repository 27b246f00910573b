//! Result-file formats: a fixed-header CSV (one row per grid point and
//! index, full 17-significant-digit precision, `#` comment preamble carrying
//! the run metadata) and a lossless JSON document. Either can be loaded back
//! for collapse analysis; JSON round-trips bit-exactly.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sombor::ensemble::{SpecSummary, SweepPoint, SweepResult};
use sombor::theory;
use sombor::{IndexSpec, ModelFamily};

use crate::{CliError, CliResult};

pub const SWEEP_CSV_HEADER: [&str; 17] = [
    "model",
    "n",
    "n1",
    "n2",
    "control",
    "mean_k",
    "mean_k1",
    "mean_k2",
    "empirical_mean_k",
    "alpha",
    "beta",
    "mean",
    "stderr",
    "normalized",
    "dense_prediction",
    "replicas",
    "master_seed",
];

/// 17 significant digits, enough to reproduce the f64 bit pattern.
pub fn full(x: f64) -> String {
    format!("{x:.16e}")
}

fn tool_version() -> &'static str {
    env!("CARGO_PKG_VERSION")
}

/// Normalized-scale dense-limit overlay for one point/spec, when defined.
fn dense_prediction(model: ModelFamily, point: &SweepPoint, spec: IndexSpec) -> Option<f64> {
    match model {
        ModelFamily::Er { .. } | ModelFamily::Rg { .. } => {
            theory::predict_scaled_uniform(spec, point.mean_k)
                .ok()
                .map(|p| p.value)
        }
        ModelFamily::Br { n1, n2 } if n1 == n2 => {
            theory::predict_scaled_uniform(spec, point.mean_k)
                .ok()
                .map(|p| p.value)
        }
        ModelFamily::Br { n1, n2 } => {
            let value =
                theory::predict_br_dense(spec, n1, n2, point.control).value / (n1 + n2) as f64;
            value.is_finite().then_some(value)
        }
    }
}

pub fn write_sweep_csv(path: &Path, result: &SweepResult) -> CliResult<()> {
    let mut file = std::fs::File::create(path)?;
    writeln!(file, "# sombor {}", tool_version())?;
    match result.model {
        ModelFamily::Er { n } => writeln!(file, "# model: er n={n}")?,
        ModelFamily::Rg { n } => writeln!(file, "# model: rg n={n}")?,
        ModelFamily::Br { n1, n2 } => writeln!(file, "# model: br n1={n1} n2={n2}")?,
    }
    writeln!(file, "# replicas: {}", result.replicas)?;
    writeln!(file, "# master_seed: {}", result.master_seed)?;
    writeln!(
        file,
        "# controls: {}",
        result
            .points
            .iter()
            .map(|p| full(p.control))
            .collect::<Vec<_>>()
            .join(",")
    )?;

    let mut writer = csv::Writer::from_writer(file);
    writer.write_record(SWEEP_CSV_HEADER)?;
    let (n, n1, n2) = match result.model {
        ModelFamily::Er { n } | ModelFamily::Rg { n } => (n, None, None),
        ModelFamily::Br { n1, n2 } => (n1 + n2, Some(n1), Some(n2)),
    };
    for point in &result.points {
        for summary in &point.indices {
            let (k1, k2) = match point.mean_k_sets {
                Some((k1, k2)) => (full(k1), full(k2)),
                None => (String::new(), String::new()),
            };
            let prediction = dense_prediction(result.model, point, summary.spec)
                .map(full)
                .unwrap_or_default();
            writer.write_record([
                result.model.label().to_string(),
                n.to_string(),
                n1.map(|v| v.to_string()).unwrap_or_default(),
                n2.map(|v| v.to_string()).unwrap_or_default(),
                full(point.control),
                full(point.mean_k),
                k1,
                k2,
                full(point.empirical_mean_k),
                full(summary.spec.alpha()),
                full(summary.spec.beta()),
                full(summary.mean),
                full(summary.std_error),
                full(summary.normalized),
                prediction,
                point.replicas.to_string(),
                result.master_seed.to_string(),
            ])?;
        }
    }
    writer.flush()?;
    Ok(())
}

/// JSON result document; the version pin makes any file self-describing.
#[derive(Debug, Serialize, Deserialize)]
pub struct SweepDocument {
    pub version: String,
    pub result: SweepResult,
}

pub fn write_sweep_json(path: &Path, result: &SweepResult) -> CliResult<()> {
    let doc = SweepDocument {
        version: tool_version().to_string(),
        result: result.clone(),
    };
    let text = serde_json::to_string_pretty(&doc)
        .map_err(|e| CliError::runtime(format!("json encoding failed: {e}")))?;
    std::fs::write(path, text)?;
    Ok(())
}

pub fn load_sweep(path: &Path) -> CliResult<SweepResult> {
    match path.extension().and_then(|e| e.to_str()) {
        Some("json") => load_sweep_json(path),
        _ => load_sweep_csv(path),
    }
}

fn load_sweep_json(path: &Path) -> CliResult<SweepResult> {
    let text = std::fs::read_to_string(path)?;
    let doc: SweepDocument = serde_json::from_str(&text)
        .map_err(|e| CliError::config(format!("malformed result file {}: {e}", path.display())))?;
    Ok(doc.result)
}

#[derive(Debug, Deserialize)]
struct CsvRow {
    model: String,
    n: usize,
    n1: Option<usize>,
    n2: Option<usize>,
    control: f64,
    mean_k: f64,
    mean_k1: Option<f64>,
    mean_k2: Option<f64>,
    empirical_mean_k: f64,
    alpha: f64,
    beta: f64,
    mean: f64,
    stderr: f64,
    normalized: f64,
    #[allow(dead_code)]
    dense_prediction: Option<f64>,
    replicas: u64,
    master_seed: u64,
}

/// Rebuilds a sweep from its CSV rows. The CSV is a projection (wall time
/// and the empirical-degree error bar are not stored); everything the
/// collapse analysis needs survives.
fn load_sweep_csv(path: &Path) -> CliResult<SweepResult> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_path(path)
        .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
    let rows: Vec<CsvRow> = reader
        .deserialize()
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::config(format!("malformed result file {}: {e}", path.display())))?;
    if rows.is_empty() {
        return Err(CliError::config(format!(
            "{} contains no rows",
            path.display()
        )));
    }

    let first = &rows[0];
    let model = match first.model.as_str() {
        "er" => ModelFamily::Er { n: first.n },
        "rg" => ModelFamily::Rg { n: first.n },
        "br" => ModelFamily::Br {
            n1: first
                .n1
                .ok_or_else(|| CliError::config("br rows need n1"))?,
            n2: first
                .n2
                .ok_or_else(|| CliError::config("br rows need n2"))?,
        },
        other => {
            return Err(CliError::config(format!(
                "unknown model '{other}' in {}",
                path.display()
            )))
        }
    };

    let mut specs: Vec<IndexSpec> = Vec::new();
    let mut points: Vec<SweepPoint> = Vec::new();
    for row in &rows {
        if row.model != first.model || row.n != first.n || row.master_seed != first.master_seed {
            return Err(CliError::config(format!(
                "{} mixes runs (model/n/seed change between rows)",
                path.display()
            )));
        }
        let spec = IndexSpec::new(row.alpha, row.beta).map_err(CliError::from)?;
        if !specs.contains(&spec) {
            specs.push(spec);
        }
        let summary = SpecSummary {
            spec,
            mean: row.mean,
            std_error: row.stderr,
            normalized: row.normalized,
        };
        match points.last_mut() {
            Some(point) if point.control == row.control => point.indices.push(summary),
            _ => {
                if points.last().is_some_and(|p| p.control >= row.control) {
                    return Err(CliError::config(format!(
                        "{} is not a single ordered sweep (control values repeat or \
                         decrease)",
                        path.display()
                    )));
                }
                points.push(SweepPoint {
                    control: row.control,
                    mean_k: row.mean_k,
                    mean_k_sets: row.mean_k1.zip(row.mean_k2),
                    empirical_mean_k: row.empirical_mean_k,
                    empirical_mean_k_std_error: 0.0,
                    indices: vec![summary],
                    replicas: row.replicas,
                })
            }
        }
    }

    let replicas = points.first().map(|p| p.replicas as usize).unwrap_or(0);
    Ok(SweepResult {
        model,
        specs,
        points,
        replicas,
        master_seed: first.master_seed,
        wall_time_secs: 0.0,
    })
}
