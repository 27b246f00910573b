//! Browser bindings for interactive exploration: a size-collapse explorer,
//! a complexity-measure profile across alpha, and a random-geometric-graph
//! snapshot for drawing.
//!
//! Each export returns a JSON payload; the page in `www/` renders them on
//! plain canvases. The compute paths are ordinary library calls and are
//! unit-tested on the host.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use sombor::ensemble::{
    collapse_distance, mean_degree_grid, normalize_for_collapse, run_sweep, SweepPlan,
};
use sombor::generators::sample_rg_embedded;
use sombor::indices::{banhatti_sombor, modified_sombor, sombor};
use sombor::spectral::{mean_eigenvector_entropy, pearson_correlation};
use sombor::theory;
use sombor::{IndexSpec, ModelFamily, SeedSpec};

#[derive(Serialize)]
struct CurveOut {
    label: String,
    xs: Vec<f64>,
    ys: Vec<f64>,
}

#[derive(Serialize)]
struct SweepCollapseOut {
    model: String,
    index_label: String,
    alpha: f64,
    beta: f64,
    curves: Vec<CurveOut>,
    theory: CurveOut,
    collapse_distance: f64,
}

#[derive(Serialize)]
struct AlphaCurve {
    alpha: f64,
    xs: Vec<f64>,
    ys: Vec<f64>,
}

#[derive(Serialize)]
struct AlphaRho {
    alpha: f64,
    rho: f64,
}

#[derive(Serialize)]
struct ComplexityOut {
    model: String,
    n: usize,
    boundaries: [f64; 2],
    curves: Vec<AlphaCurve>,
    entropy: Option<CurveOut>,
    rhos: Vec<AlphaRho>,
}

#[derive(Serialize)]
struct SnapshotOut {
    n: usize,
    r: f64,
    points: Vec<[f64; 2]>,
    edges: Vec<[u32; 2]>,
    edge_count: usize,
    mean_degree: f64,
    expected_mean_degree: f64,
    sombor: f64,
    msombor: f64,
    bsombor: f64,
}

fn family_for(model: &str, size: usize) -> Result<ModelFamily, String> {
    match model {
        "er" => Ok(ModelFamily::Er { n: size }),
        "rg" => Ok(ModelFamily::Rg { n: size }),
        // per-set size, so curves stay comparable with er/rg of the same n
        "br" => Ok(ModelFamily::Br { n1: size, n2: size }),
        other => Err(format!("unknown model '{other}'")),
    }
}

fn index_for(name: &str, alpha: f64, beta: f64) -> Result<(IndexSpec, String), String> {
    match name {
        "sombor" => Ok((IndexSpec::sombor(), "sombor".into())),
        "msombor" => Ok((IndexSpec::modified_sombor(), "modified sombor".into())),
        "bsombor" => Ok((IndexSpec::banhatti_sombor(), "banhatti-sombor".into())),
        "ka" => {
            let spec = IndexSpec::new(alpha, beta).map_err(|e| e.to_string())?;
            Ok((spec, format!("ka({alpha}, {beta})")))
        }
        other => Err(format!("unknown index '{other}'")),
    }
}

fn encode<T: Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string(value).map_err(|e| e.to_string())
}

/// Sweeps the same index over several graph sizes and reports the size-
/// normalized curves against mean degree, the dense-limit overlay, and the
/// collapse distance between the curves.
#[allow(clippy::too_many_arguments)]
pub fn sweep_collapse_impl(
    model: &str,
    sizes_csv: &str,
    index_name: &str,
    alpha: f64,
    beta: f64,
    k_lo: f64,
    k_hi: f64,
    points: u32,
    replicas: u32,
    seed: u64,
) -> Result<String, String> {
    let (spec, index_label) = index_for(index_name, alpha, beta)?;
    let sizes: Vec<usize> = sizes_csv
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| format!("malformed size '{s}'"))
        })
        .collect::<Result<_, String>>()?;
    if sizes.is_empty() {
        return Err("no sizes given".into());
    }
    let grid = mean_degree_grid(k_lo, k_hi, points as usize).map_err(|e| e.to_string())?;

    let mut curves = Vec::new();
    let mut raw = Vec::new();
    for &size in &sizes {
        let family = family_for(model, size)?;
        let plan = SweepPlan::from_mean_degrees(family, &grid, vec![spec], replicas as usize, seed)
            .map_err(|e| e.to_string())?;
        let result = run_sweep(&plan).map_err(|e| e.to_string())?;
        let curve = normalize_for_collapse(&result, spec).map_err(|e| e.to_string())?;
        curves.push(CurveOut {
            label: curve.label.clone(),
            xs: curve.xs.clone(),
            ys: curve.ys.clone(),
        });
        raw.push(curve);
    }

    let theory_grid = mean_degree_grid(k_lo, k_hi, 60).map_err(|e| e.to_string())?;
    let theory = CurveOut {
        label: "dense limit".into(),
        xs: theory_grid.clone(),
        ys: theory_grid
            .iter()
            .map(|&k| theory::predict_scaled_uniform(spec, k).map(|p| p.value))
            .collect::<sombor::Result<_>>()
            .map_err(|e| e.to_string())?,
    };

    let distance = if raw.len() >= 2 {
        collapse_distance(&raw).map_err(|e| e.to_string())?
    } else {
        0.0
    };

    encode(&SweepCollapseOut {
        model: model.into(),
        index_label,
        alpha: spec.alpha(),
        beta: spec.beta(),
        curves,
        theory,
        collapse_distance: distance,
    })
}

/// Scaled complexity curves `2^{1+1/alpha} <KA_{alpha,-1/alpha}>/n` for a
/// list of alpha values, optionally overlaid with the normalized
/// eigenvector entropy and its per-alpha Pearson correlation.
#[allow(clippy::too_many_arguments)]
pub fn complexity_profile_impl(
    model: &str,
    size: u32,
    alphas_csv: &str,
    k_lo: f64,
    k_hi: f64,
    points: u32,
    replicas: u32,
    with_entropy: bool,
    spectral_replicas: u32,
    seed: u64,
) -> Result<String, String> {
    let family = family_for(model, size as usize)?;
    let alphas: Vec<f64> = alphas_csv
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| format!("malformed alpha '{s}'"))
        })
        .collect::<Result<_, String>>()?;
    if alphas.is_empty() || alphas.contains(&0.0) {
        return Err("alphas must be nonzero".into());
    }
    let grid = mean_degree_grid(k_lo, k_hi, points as usize).map_err(|e| e.to_string())?;

    let specs: Vec<IndexSpec> = alphas
        .iter()
        .map(|&a| IndexSpec::complexity(a).map_err(|e| e.to_string()))
        .collect::<Result<_, String>>()?;
    let plan = SweepPlan::from_mean_degrees(family, &grid, specs, replicas as usize, seed)
        .map_err(|e| e.to_string())?;
    let result = run_sweep(&plan).map_err(|e| e.to_string())?;

    let curves: Vec<AlphaCurve> = alphas
        .iter()
        .enumerate()
        .map(|(idx, &alpha)| {
            let scale = (1.0 + 1.0 / alpha).exp2();
            AlphaCurve {
                alpha,
                xs: grid.clone(),
                ys: result
                    .points
                    .iter()
                    .map(|pt| scale * pt.indices[idx].normalized)
                    .collect(),
            }
        })
        .collect();

    let (entropy, rhos) = if with_entropy {
        let ys: Vec<f64> = plan
            .controls
            .iter()
            .enumerate()
            .map(|(i, &control)| {
                let params = family.with_control(control);
                mean_eigenvector_entropy(
                    &params,
                    spectral_replicas.max(1) as usize,
                    sombor::mix_seed(seed, 0x5350_4543 + i as u64),
                )
                .map(|r| r.normalized)
            })
            .collect::<sombor::Result<_>>()
            .map_err(|e| e.to_string())?;
        let rhos = curves
            .iter()
            .map(|c| {
                pearson_correlation(&c.ys, &ys)
                    .map(|rho| AlphaRho {
                        alpha: c.alpha,
                        rho,
                    })
                    .map_err(|e| e.to_string())
            })
            .collect::<Result<Vec<_>, String>>()?;
        (
            Some(CurveOut {
                label: "normalized eigenvector entropy".into(),
                xs: grid.clone(),
                ys,
            }),
            rhos,
        )
    } else {
        (None, Vec::new())
    };

    encode(&ComplexityOut {
        model: model.into(),
        n: family.n(),
        boundaries: [0.1, 10.0],
        curves,
        entropy,
        rhos,
    })
}

/// One random geometric graph on the unit square: coordinates, edges, and
/// the three classic indices, for direct drawing.
pub fn rg_snapshot_impl(n: u32, r: f64, seed: u64) -> Result<String, String> {
    let (graph, points) =
        sample_rg_embedded(n as usize, r, SeedSpec::new(seed, 0)).map_err(|e| e.to_string())?;
    let expected = theory::rg_mean_degree(n as usize, r).map_err(|e| e.to_string())?;
    encode(&SnapshotOut {
        n: n as usize,
        r,
        points,
        edges: graph.edges().iter().map(|&(u, v)| [u, v]).collect(),
        edge_count: graph.edge_count(),
        mean_degree: graph.mean_degree(),
        expected_mean_degree: expected,
        sombor: sombor(&graph),
        msombor: modified_sombor(&graph),
        bsombor: banhatti_sombor(&graph),
    })
}

#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn sweep_collapse(
    model: &str,
    sizes_csv: &str,
    index_name: &str,
    alpha: f64,
    beta: f64,
    k_lo: f64,
    k_hi: f64,
    points: u32,
    replicas: u32,
    seed: u64,
) -> Result<String, JsError> {
    sweep_collapse_impl(
        model, sizes_csv, index_name, alpha, beta, k_lo, k_hi, points, replicas, seed,
    )
    .map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn complexity_profile(
    model: &str,
    size: u32,
    alphas_csv: &str,
    k_lo: f64,
    k_hi: f64,
    points: u32,
    replicas: u32,
    with_entropy: bool,
    spectral_replicas: u32,
    seed: u64,
) -> Result<String, JsError> {
    complexity_profile_impl(
        model,
        size,
        alphas_csv,
        k_lo,
        k_hi,
        points,
        replicas,
        with_entropy,
        spectral_replicas,
        seed,
    )
    .map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn rg_snapshot(n: u32, r: f64, seed: u64) -> Result<String, JsError> {
    rg_snapshot_impl(n, r, seed).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_collapse_payload_shape() {
        let json =
            sweep_collapse_impl("er", "40,80", "sombor", 0.0, 0.0, 1.0, 10.0, 6, 30, 9).unwrap();
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["curves"].as_array().unwrap().len(), 2);
        assert_eq!(value["theory"]["xs"].as_array().unwrap().len(), 60);
        let distance = value["collapse_distance"].as_f64().unwrap();
        assert!((0.0..0.5).contains(&distance), "distance {distance}");
        assert_eq!(value["index_label"], "sombor");
    }

    #[test]
    fn sweep_collapse_rejects_bad_input() {
        assert!(sweep_collapse_impl("er", "", "sombor", 0.0, 0.0, 1.0, 10.0, 6, 30, 9).is_err());
        assert!(sweep_collapse_impl("hex", "40", "sombor", 0.0, 0.0, 1.0, 10.0, 6, 30, 9).is_err());
        assert!(sweep_collapse_impl("er", "40", "nope", 0.0, 0.0, 1.0, 10.0, 6, 30, 9).is_err());
        assert!(sweep_collapse_impl("er", "40", "sombor", 0.0, 0.0, 10.0, 1.0, 6, 30, 9).is_err());
    }

    #[test]
    fn complexity_profile_with_entropy() {
        let json =
            complexity_profile_impl("er", 40, "-2,2", 0.2, 12.0, 5, 25, true, 3, 11).unwrap();
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["curves"].as_array().unwrap().len(), 2);
        assert_eq!(value["rhos"].as_array().unwrap().len(), 2);
        let entropy = value["entropy"]["ys"].as_array().unwrap();
        assert_eq!(entropy.len(), 5);
        // entropy rises across the transition
        assert!(entropy[4].as_f64().unwrap() > entropy[0].as_f64().unwrap());
        assert!(complexity_profile_impl("er", 40, "0", 0.2, 12.0, 5, 5, false, 1, 1).is_err());
    }

    #[test]
    fn rg_snapshot_is_drawable_and_consistent() {
        let json = rg_snapshot_impl(50, 0.25, 4).unwrap();
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        let points = value["points"].as_array().unwrap();
        assert_eq!(points.len(), 50);
        for p in points {
            let (x, y) = (p[0].as_f64().unwrap(), p[1].as_f64().unwrap());
            assert!((0.0..=1.0).contains(&x) && (0.0..=1.0).contains(&y));
        }
        let edges = value["edges"].as_array().unwrap();
        assert_eq!(edges.len(), value["edge_count"].as_u64().unwrap() as usize);
        assert!(value["sombor"].as_f64().unwrap() > 0.0);
        assert!(rg_snapshot_impl(50, 3.0, 4).is_err());
    }
}
