//! The four subcommands: sweep, collapse, correlate, predict.

use std::io::Write;
use std::path::{Path, PathBuf};

use sombor::ensemble::{
    collapse_distance, normalize_for_collapse, run_sweep, Curve, SweepPlan, SweepResult,
};
use sombor::spectral::index_entropy_correlation;
use sombor::theory;
use sombor::{IndexSpec, ModelFamily};

use crate::config::{self, GridSpec, Merged, OutputFormat};
use crate::output::{self, full};
use crate::{CliError, CliResult, CommonArgs};

fn build_plan(merged: &Merged, family: ModelFamily, specs: Vec<IndexSpec>) -> CliResult<SweepPlan> {
    let replicas = merged.replicas_for(family.n());
    let plan = match merged.grid()? {
        GridSpec::MeanDegree(ks) => {
            SweepPlan::from_mean_degrees(family, &ks, specs, replicas, merged.seed)
        }
        GridSpec::Control(controls) => {
            SweepPlan::from_controls(family, controls, specs, replicas, merged.seed)
        }
    };
    plan.map_err(CliError::from)
}

fn write_result(merged: &Merged, result: &SweepResult) -> CliResult<PathBuf> {
    let path = merged
        .out
        .clone()
        .ok_or_else(|| CliError::config("--out is required"))?;
    match merged.format_for(&path)? {
        OutputFormat::Csv => output::write_sweep_csv(&path, result)?,
        OutputFormat::Json => output::write_sweep_json(&path, result)?,
    }
    Ok(path)
}

pub fn sweep(args: CommonArgs) -> CliResult<()> {
    let merged = config::merge(&args, None)?;
    let family = merged.family()?;
    let specs = merged.index_specs()?;
    let plan = build_plan(&merged, family, specs)?;
    // fail on config problems (bad --out directory and the like) before
    // spending time sampling
    merged
        .out
        .as_ref()
        .ok_or_else(|| CliError::config("--out is required"))?;
    let result = run_sweep(&plan)?;
    let path = write_result(&merged, &result)?;
    eprintln!(
        "wrote {} ({} points x {} indices, {} replicas each, {:.2}s)",
        path.display(),
        result.points.len(),
        result.specs.len(),
        result.replicas,
        result.wall_time_secs
    );
    Ok(())
}

pub fn collapse(
    args: CommonArgs,
    inputs: Vec<PathBuf>,
    sizes: Vec<usize>,
    threshold: Option<f64>,
    merged_out: Option<PathBuf>,
) -> CliResult<()> {
    let merged = config::merge(&args, None)?;
    let inputs = if inputs.is_empty() {
        merged.inputs.clone()
    } else {
        inputs
    };
    let sizes = if sizes.is_empty() {
        merged.sizes.clone()
    } else {
        sizes
    };
    let threshold = threshold.or(merged.threshold).unwrap_or(0.05);

    let results: Vec<SweepResult> = if !inputs.is_empty() {
        if inputs.len() < 2 {
            return Err(CliError::config(
                "collapse needs at least two --inputs files",
            ));
        }
        if !sizes.is_empty() {
            return Err(CliError::config(
                "pass either --inputs or --sizes, not both",
            ));
        }
        inputs
            .iter()
            .map(|p| output::load_sweep(p))
            .collect::<CliResult<_>>()?
    } else if sizes.len() >= 2 {
        run_inline_multi_size(&merged, &sizes)?
    } else {
        return Err(CliError::config(
            "collapse needs >= 2 result files (--inputs) or an inline plan (--sizes)",
        ));
    };

    // indices to compare: explicit, or every spec common to all runs
    let specs: Vec<IndexSpec> = if merged.index.is_empty() && merged.alpha.is_empty() {
        results[0]
            .specs
            .iter()
            .copied()
            .filter(|s| results.iter().all(|r| r.specs.contains(s)))
            .collect()
    } else {
        merged.index_specs()?
    };
    if specs.is_empty() {
        return Err(CliError::config("result files share no index specs"));
    }

    let mut merged_curves: Vec<Curve> = Vec::new();
    let mut failures = 0usize;
    for &spec in &specs {
        let curves: Vec<Curve> = results
            .iter()
            .map(|r| normalize_for_collapse(r, spec).map_err(CliError::from))
            .collect::<CliResult<_>>()?;
        let distance = collapse_distance(&curves)?;
        let verdict = if distance < threshold { "PASS" } else { "FAIL" };
        if distance >= threshold {
            failures += 1;
        }
        let name = spec
            .name()
            .map(str::to_owned)
            .unwrap_or_else(|| format!("ka({}, {})", spec.alpha(), spec.beta()));
        println!("{name}: collapse distance {distance:.6} -> {verdict} (threshold {threshold})");
        merged_curves.extend(curves);
    }
    if failures == 0 {
        println!("all {} indices collapse within {threshold}", specs.len());
    } else {
        println!("{failures} of {} indices exceed {threshold}", specs.len());
    }

    if let Some(path) = merged_out {
        write_curves_csv(&path, &merged_curves)?;
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}

fn run_inline_multi_size(merged: &Merged, sizes: &[usize]) -> CliResult<Vec<SweepResult>> {
    let model = merged.model.as_deref().unwrap_or("er");
    let specs = merged.index_specs()?;
    sizes
        .iter()
        .map(|&size| {
            let family = match model {
                "er" => ModelFamily::Er { n: size },
                "rg" => ModelFamily::Rg { n: size },
                "br" => ModelFamily::Br { n1: size, n2: size },
                other => {
                    return Err(CliError::config(format!(
                        "unknown model '{other}' (expected er, rg, or br)"
                    )))
                }
            };
            let plan = build_plan(merged, family, specs.clone())?;
            run_sweep(&plan).map_err(CliError::from)
        })
        .collect()
}

fn write_curves_csv(path: &Path, curves: &[Curve]) -> CliResult<()> {
    let mut writer = csv::Writer::from_path(path)?;
    writer.write_record(["curve", "x", "y"])?;
    for curve in curves {
        for (&x, &y) in curve.xs.iter().zip(&curve.ys) {
            writer.write_record([curve.label.clone(), full(x), full(y)])?;
        }
    }
    writer.flush()?;
    Ok(())
}

pub fn correlate(args: CommonArgs, spectral_replicas: Option<usize>) -> CliResult<()> {
    let merged = config::merge(&args, spectral_replicas)?;
    let family = merged.family()?;
    let grid = match merged.grid()? {
        GridSpec::MeanDegree(ks) => ks,
        GridSpec::Control(_) => {
            return Err(CliError::config(
                "correlate scans a mean-degree grid; pass --grid k:...",
            ))
        }
    };
    if merged.alpha.is_empty() {
        return Err(CliError::config("correlate requires --alpha values"));
    }
    if merged.alpha.contains(&0.0) {
        return Err(CliError::config(
            "alpha = 0 has no complexity index (beta = -1/alpha)",
        ));
    }
    let replicas = merged.replicas_for(family.n());
    let spectral = merged
        .spectral_replicas
        .unwrap_or_else(|| (replicas / 10).max(1));
    let out = merged
        .out
        .clone()
        .ok_or_else(|| CliError::config("--out is required"))?;

    let mut all = Vec::new();
    for &alpha in &merged.alpha {
        let curves =
            index_entropy_correlation(family, &grid, alpha, replicas, spectral, merged.seed)?;
        println!("alpha {alpha}: rho = {:.6}", curves.rho);
        all.push(curves);
    }

    // curve file: one row per (alpha, grid point)
    let mut file = std::fs::File::create(&out)?;
    writeln!(file, "# sombor {}", env!("CARGO_PKG_VERSION"))?;
    writeln!(
        file,
        "# model: {} n={} | replicas: {replicas} index / {spectral} spectral | master_seed: {}",
        family.label(),
        family.n(),
        merged.seed
    )?;
    let mut writer = csv::Writer::from_writer(file);
    writer.write_record([
        "alpha",
        "mean_k",
        "scaled_index",
        "normalized_entropy",
        "rho",
    ])?;
    for curves in &all {
        for i in 0..curves.mean_degrees.len() {
            writer.write_record([
                full(curves.alpha),
                full(curves.mean_degrees[i]),
                full(curves.scaled_index[i]),
                full(curves.normalized_entropy[i]),
                full(curves.rho),
            ])?;
        }
    }
    writer.flush()?;

    // scatter-pair file: entropy on x, scaled index on y
    let scatter_path = scatter_path(&out);
    let mut writer = csv::Writer::from_path(&scatter_path)?;
    writer.write_record(["alpha", "normalized_entropy", "scaled_index"])?;
    for curves in &all {
        for i in 0..curves.mean_degrees.len() {
            writer.write_record([
                full(curves.alpha),
                full(curves.normalized_entropy[i]),
                full(curves.scaled_index[i]),
            ])?;
        }
    }
    writer.flush()?;
    eprintln!("wrote {} and {}", out.display(), scatter_path.display());
    Ok(())
}

fn scatter_path(out: &Path) -> PathBuf {
    let stem = out
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("correlate");
    let ext = out.extension().and_then(|s| s.to_str()).unwrap_or("csv");
    out.with_file_name(format!("{stem}.scatter.{ext}"))
}

pub fn predict(args: CommonArgs) -> CliResult<()> {
    let merged = config::merge(&args, None)?;
    let family = merged.family()?;
    let specs = merged.index_specs()?;
    let points: Vec<(f64, f64)> = match merged.grid()? {
        GridSpec::MeanDegree(ks) => ks
            .iter()
            .map(|&k| family.control_for_mean_degree(k).map(|c| (c, k)))
            .collect::<sombor::Result<_>>()?,
        GridSpec::Control(cs) => cs
            .iter()
            .map(|&c| family.with_control(c).mean_degree().map(|k| (c, k)))
            .collect::<sombor::Result<_>>()?,
    };

    let n = family.n() as f64;
    let mut rows: Vec<[String; 6]> = Vec::new();
    for &(control, mean_k) in &points {
        for &spec in &specs {
            let (normalized, absolute) = match family {
                ModelFamily::Br { n1, n2 } if n1 != n2 => {
                    let abs = theory::predict_br_dense(spec, n1, n2, control).value;
                    (abs / n, abs)
                }
                _ => {
                    let norm = theory::predict_scaled_uniform(spec, mean_k)?.value;
                    (norm, norm * n)
                }
            };
            rows.push([
                format!("{control:.6}"),
                format!("{mean_k:.4}"),
                format!("{}", spec.alpha()),
                format!("{}", spec.beta()),
                format!("{normalized:.6}"),
                format!("{absolute:.6}"),
            ]);
        }
    }

    println!(
        "dense-limit predictions for {} (n = {}); trust requires mean_k >= 10",
        family.label(),
        family.n()
    );
    println!(
        "{:>12} {:>10} {:>7} {:>7} {:>14} {:>16}",
        "control", "mean_k", "alpha", "beta", "normalized", "absolute"
    );
    for row in &rows {
        println!(
            "{:>12} {:>10} {:>7} {:>7} {:>14} {:>16}",
            row[0], row[1], row[2], row[3], row[4], row[5]
        );
    }
    if let ModelFamily::Br { n1, n2 } = family {
        for spec in [IndexSpec::modified_sombor(), IndexSpec::banhatti_sombor()] {
            if specs.contains(&spec) {
                let p_star = theory::br_scaling_parameter(spec, n1, n2)?;
                println!("p* ({}) = {p_star:.6e}", spec.name().unwrap_or("?"));
            }
        }
    }

    if let Some(path) = &merged.out {
        let mut writer = csv::Writer::from_path(path)?;
        writer.write_record([
            "control",
            "mean_k",
            "alpha",
            "beta",
            "normalized",
            "absolute",
        ])?;
        for row in &rows {
            writer.write_record(row)?;
        }
        writer.flush()?;
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}
