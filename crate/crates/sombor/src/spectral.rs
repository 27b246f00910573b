//! Randomly weighted adjacency matrices, eigenvector Shannon entropies, and
//! the correlation between scaled complexity indices and entropy.
//!
//! Weights follow the convention under which the two structural limits map
//! onto classic random-matrix ensembles: an empty graph gives a random
//! diagonal matrix (Poisson ensemble), a complete graph a GOE member with
//! diagonal variance twice the off-diagonal variance. The entropy of a GOE
//! eigenvector averages to about `ln(n / 2.07)`, which normalizes the
//! delocalization scale.

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_distr::{Distribution, StandardNormal};
use rand_pcg::Pcg64Mcg;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ensemble::{run_sweep, EnsembleStats, SweepPlan};
use crate::error::{Error, Result};
use crate::generators::{mix_seed, ModelFamily, ModelParams, SeedSpec};
use crate::graph::Graph;
use crate::indices::IndexSpec;

/// Stream label separating matrix-weight draws from the topology draws that
/// share the same replica seed.
const WEIGHT_STREAM: u64 = 0x5745_4947_4854_5321;

/// Stream label separating the spectral replicas of a correlation scan from
/// its index replicas.
const SPECTRAL_STREAM: u64 = 0x5350_4543_5452_414c;

/// Dense symmetric matrix with random weights on the diagonal and on graph
/// edges, zero elsewhere.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedAdjacency {
    matrix: DMatrix<f64>,
}

impl WeightedAdjacency {
    pub fn n(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.matrix
    }
}

/// Builds the weighted adjacency matrix of a graph: diagonal entries i.i.d.
/// standard normal, edge entries i.i.d. normal with variance 1/2 mirrored
/// across the diagonal, non-edges zero. Deterministic given the seed, and
/// drawn from a stream independent of the topology stream of the same seed.
pub fn build_weighted_adjacency(graph: &Graph, seed: SeedSpec) -> WeightedAdjacency {
    let n = graph.n();
    let mut rng = Pcg64Mcg::seed_from_u64(seed.substream(WEIGHT_STREAM));
    let mut matrix = DMatrix::<f64>::zeros(n, n);
    for u in 0..n {
        matrix[(u, u)] = StandardNormal.sample(&mut rng);
    }
    let edge_std = 0.5f64.sqrt();
    for &(u, v) in graph.edges() {
        let w: f64 = StandardNormal.sample(&mut rng);
        let w = w * edge_std;
        matrix[(u as usize, v as usize)] = w;
        matrix[(v as usize, u as usize)] = w;
    }
    WeightedAdjacency { matrix }
}

/// Shannon entropy `-Σ a_j² ln a_j²` of a unit-norm amplitude vector, with
/// the `0 ln 0` terms taken as zero.
pub fn shannon_entropy(amplitudes: &[f64]) -> Result<f64> {
    let norm: f64 = amplitudes.iter().map(|a| a * a).sum();
    if (norm - 1.0).abs() > 1e-8 {
        return Err(Error::InvalidParameter(format!(
            "amplitudes must have unit norm, got squared norm {norm}"
        )));
    }
    Ok(entropy_unchecked(amplitudes.iter().copied()))
}

fn entropy_unchecked(amplitudes: impl Iterator<Item = f64>) -> f64 {
    let mut s = 0.0;
    for a in amplitudes {
        let p = a * a;
        if p > 0.0 {
            s -= p * p.ln();
        }
    }
    s
}

/// Mean eigenvector entropy of a GOE matrix of dimension `n`: `ln(n/2.07)`.
pub fn goe_entropy(n: usize) -> f64 {
    (n as f64 / 2.07).ln()
}

/// Ensemble-averaged eigenvector entropy, raw and normalized by the GOE
/// value.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct EntropyResult {
    /// Mean of `S_i` over all eigenvectors of all replicas, in nats.
    pub mean_entropy: f64,
    /// `mean_entropy / ln(n/2.07)`.
    pub normalized: f64,
    pub n: usize,
    pub replica_count: usize,
}

/// Samples `replicas` graphs, builds weighted adjacency matrices,
/// diagonalizes them, and averages the Shannon entropy over every
/// eigenvector of every replica.
pub fn mean_eigenvector_entropy(
    params: &ModelParams,
    replicas: usize,
    master_seed: u64,
) -> Result<EntropyResult> {
    params.validate()?;
    if replicas == 0 {
        return Err(Error::InvalidParameter(
            "replicas must be at least 1".into(),
        ));
    }
    let n = params.n();
    let max_entropy = (n as f64).ln() + 1e-9;

    let sums: Vec<f64> = (0..replicas)
        .into_par_iter()
        .map(|replica| -> Result<f64> {
            let seed = SeedSpec::new(master_seed, replica as u64);
            let graph = params.sample(seed)?;
            let weighted = build_weighted_adjacency(&graph, seed);
            let eigen = weighted
                .into_matrix()
                .try_symmetric_eigen(1e-13, 50_000)
                .ok_or_else(|| {
                    Error::Numeric(format!(
                        "eigensolver failed to converge for replica {replica}, master seed \
                         {master_seed}"
                    ))
                })?;
            let mut sum = 0.0;
            for column in eigen.eigenvectors.column_iter() {
                let s = entropy_unchecked(column.iter().copied());
                // tiny negative values arise from rounding in p ln p when a
                // component is within an ulp of 1
                if !(-1e-9..=max_entropy).contains(&s) {
                    return Err(Error::Numeric(format!(
                        "eigenvector entropy {s} outside [0, ln n] for replica {replica}, \
                         master seed {master_seed}"
                    )));
                }
                sum += s;
            }
            Ok(sum)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut stats = EnsembleStats::new();
    for sum in &sums {
        stats.push(sum / n as f64);
    }
    let mean_entropy = stats.mean();
    Ok(EntropyResult {
        mean_entropy,
        normalized: mean_entropy / goe_entropy(n),
        n,
        replica_count: replicas,
    })
}

/// Sample Pearson correlation coefficient of two equal-length sequences.
pub fn pearson_correlation(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::InvalidParameter(format!(
            "correlation needs two equal-length sequences of at least 2 values, got {} and {}",
            xs.len(),
            ys.len()
        )));
    }
    let n = xs.len() as f64;
    let mean_x = xs.iter().sum::<f64>() / n;
    let mean_y = ys.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut var_x = 0.0;
    let mut var_y = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        cov += (x - mean_x) * (y - mean_y);
        var_x += (x - mean_x) * (x - mean_x);
        var_y += (y - mean_y) * (y - mean_y);
    }
    if var_x == 0.0 || var_y == 0.0 {
        return Err(Error::UndefinedCorrelation(
            "one of the sequences is constant".into(),
        ));
    }
    Ok((cov / (var_x * var_y).sqrt()).clamp(-1.0, 1.0))
}

/// Paired curves from a correlation scan, plus their Pearson coefficient.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorrelationCurves {
    pub alpha: f64,
    pub mean_degrees: Vec<f64>,
    /// `2^{1+1/α} ⟨KA¹_{α,-1/α}⟩ / n` per grid point.
    pub scaled_index: Vec<f64>,
    /// `⟨S⟩ / ln(n/2.07)` per grid point.
    pub normalized_entropy: Vec<f64>,
    pub rho: f64,
}

/// Minimum relative span a curve must cover for its correlation against
/// another curve to be meaningful; grids that stay inside one regime are
/// rejected as degenerate.
const MIN_RELATIVE_SPAN: f64 = 0.05;

/// Scans a mean-degree grid, computing the scaled complexity index
/// `2^{1+1/α} ⟨KA¹_{α,-1/α}⟩/n` from `index_replicas` graphs per point and
/// the normalized eigenvector entropy from `spectral_replicas` independent
/// graphs per point, and returns both curves with their Pearson
/// correlation.
pub fn index_entropy_correlation(
    family: ModelFamily,
    k_grid: &[f64],
    alpha: f64,
    index_replicas: usize,
    spectral_replicas: usize,
    master_seed: u64,
) -> Result<CorrelationCurves> {
    let spec = IndexSpec::complexity(alpha)?;
    let scale = (1.0 + 1.0 / alpha).exp2();

    let plan =
        SweepPlan::from_mean_degrees(family, k_grid, vec![spec], index_replicas, master_seed)?;
    let sweep = run_sweep(&plan)?;
    let scaled_index: Vec<f64> = sweep
        .points
        .iter()
        .map(|pt| scale * pt.indices[0].normalized)
        .collect();

    let spectral_master = mix_seed(master_seed, SPECTRAL_STREAM);
    let normalized_entropy: Vec<f64> = plan
        .controls
        .iter()
        .enumerate()
        .map(|(i, &control)| {
            let params = family.with_control(control);
            mean_eigenvector_entropy(
                &params,
                spectral_replicas,
                mix_seed(spectral_master, i as u64),
            )
            .map(|r| r.normalized)
        })
        .collect::<Result<Vec<_>>>()?;

    for (name, curve) in [("index", &scaled_index), ("entropy", &normalized_entropy)] {
        let max = curve.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let min = curve.iter().copied().fold(f64::INFINITY, f64::min);
        if max - min < MIN_RELATIVE_SPAN * max.abs().max(1e-12) {
            return Err(Error::UndefinedCorrelation(format!(
                "{name} curve spans only [{min}, {max}]; the grid does not cross the transition"
            )));
        }
    }

    let rho = pearson_correlation(&scaled_index, &normalized_entropy)?;
    Ok(CorrelationCurves {
        alpha,
        mean_degrees: k_grid.to_vec(),
        scaled_index,
        normalized_entropy,
        rho,
    })
}
