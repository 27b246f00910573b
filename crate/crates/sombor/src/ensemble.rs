//! Monte-Carlo sweep driver: sample replica ensembles over a control-
//! parameter grid, average observables with streaming statistics, and
//! assemble collapse-ready curves.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::{mix_seed, ModelFamily, SeedSpec};
use crate::indices::{ka1_index, IndexSpec};
use crate::theory;

/// Single-pass mean/variance accumulator (Welford). Two accumulators can be
/// merged associatively, so replica batches may be combined in any grouping.
#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
pub struct EnsembleStats {
    count: u64,
    mean: f64,
    m2: f64,
}

impl EnsembleStats {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    /// Combines two accumulators as if their streams were concatenated.
    pub fn merge(&self, other: &Self) -> Self {
        if self.count == 0 {
            return *other;
        }
        if other.count == 0 {
            return *self;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        let mean = self.mean + delta * other.count as f64 / count as f64;
        let m2 = self.m2
            + other.m2
            + delta * delta * self.count as f64 * other.count as f64 / count as f64;
        Self { count, mean, m2 }
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Unbiased sample variance; zero until two values have been seen.
    pub fn variance(&self) -> f64 {
        if self.count > 1 {
            self.m2 / (self.count - 1) as f64
        } else {
            0.0
        }
    }

    /// Standard error of the mean, `sqrt(variance / count)`.
    pub fn std_error(&self) -> f64 {
        if self.count > 0 {
            (self.variance() / self.count as f64).sqrt()
        } else {
            0.0
        }
    }
}

/// A sweep definition: model family, control grid, indices to average,
/// replica budget per grid point, and the master seed everything derives
/// from.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepPlan {
    pub model: ModelFamily,
    pub controls: Vec<f64>,
    pub specs: Vec<IndexSpec>,
    pub replicas: usize,
    pub master_seed: u64,
}

impl SweepPlan {
    pub fn from_controls(
        model: ModelFamily,
        controls: Vec<f64>,
        specs: Vec<IndexSpec>,
        replicas: usize,
        master_seed: u64,
    ) -> Result<Self> {
        let plan = Self {
            model,
            controls,
            specs,
            replicas,
            master_seed,
        };
        plan.validate()?;
        Ok(plan)
    }

    /// Builds a plan from target mean degrees, inverting each to the
    /// model's control parameter.
    pub fn from_mean_degrees(
        model: ModelFamily,
        mean_degrees: &[f64],
        specs: Vec<IndexSpec>,
        replicas: usize,
        master_seed: u64,
    ) -> Result<Self> {
        let controls = mean_degrees
            .iter()
            .map(|&k| model.control_for_mean_degree(k))
            .collect::<Result<Vec<_>>>()?;
        Self::from_controls(model, controls, specs, replicas, master_seed)
    }

    pub fn validate(&self) -> Result<()> {
        if self.controls.is_empty() {
            return Err(Error::InvalidParameter("sweep grid is empty".into()));
        }
        if !self.controls.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidParameter(
                "sweep grid must be strictly increasing".into(),
            ));
        }
        if self.specs.is_empty() {
            return Err(Error::InvalidParameter("no index specs requested".into()));
        }
        if self.replicas == 0 {
            return Err(Error::InvalidParameter(
                "replicas must be at least 1".into(),
            ));
        }
        for &control in &self.controls {
            self.model.with_control(control).validate()?;
        }
        Ok(())
    }
}

/// Ensemble summary for one index at one grid point.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SpecSummary {
    pub spec: IndexSpec,
    pub mean: f64,
    pub std_error: f64,
    /// Size-normalized mean `⟨X⟩/n`, the quantity that scales with ⟨k⟩.
    pub normalized: f64,
}

/// One grid point of a completed sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepPoint {
    /// Control value (p for ER/BR, r for RG).
    pub control: f64,
    /// Analytic graph-wide mean degree at this control value.
    pub mean_k: f64,
    /// Analytic per-set mean degrees `(⟨k₁⟩, ⟨k₂⟩)` for bipartite models.
    pub mean_k_sets: Option<(f64, f64)>,
    /// Ensemble mean of the empirical mean degree, kept as a diagnostic.
    pub empirical_mean_k: f64,
    pub empirical_mean_k_std_error: f64,
    pub indices: Vec<SpecSummary>,
    pub replicas: u64,
}

/// A completed sweep: per-point averages plus everything needed to
/// reproduce the run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepResult {
    pub model: ModelFamily,
    pub specs: Vec<IndexSpec>,
    pub points: Vec<SweepPoint>,
    pub replicas: usize,
    pub master_seed: u64,
    pub wall_time_secs: f64,
}

/// Runs a sweep. Replicas of one grid point execute concurrently; their
/// observables are folded in replica order, so results are bit-identical
/// across thread counts and schedules.
pub fn run_sweep(plan: &SweepPlan) -> Result<SweepResult> {
    plan.validate()?;
    let started = std::time::Instant::now();
    let mut points = Vec::with_capacity(plan.controls.len());
    for (point_index, &control) in plan.controls.iter().enumerate() {
        points.push(run_point(plan, point_index, control)?);
    }
    Ok(SweepResult {
        model: plan.model,
        specs: plan.specs.clone(),
        points,
        replicas: plan.replicas,
        master_seed: plan.master_seed,
        wall_time_secs: started.elapsed().as_secs_f64(),
    })
}

fn run_point(plan: &SweepPlan, point_index: usize, control: f64) -> Result<SweepPoint> {
    let params = plan.model.with_control(control);
    let point_seed = mix_seed(plan.master_seed, point_index as u64);
    let n = params.n() as f64;

    let per_replica: Vec<(f64, Vec<f64>)> = (0..plan.replicas)
        .into_par_iter()
        .map(|replica| -> Result<(f64, Vec<f64>)> {
            let seed = SeedSpec::new(point_seed, replica as u64);
            let graph = params.sample(seed)?;
            let values = plan
                .specs
                .iter()
                .map(|&spec| {
                    let value = ka1_index(&graph, spec);
                    if value.is_finite() {
                        Ok(value)
                    } else {
                        Err(Error::Numeric(format!(
                            "non-finite index for (alpha, beta) = ({}, {}) at grid point \
                             {point_index} (control {control}), replica {replica}, master seed \
                             {}",
                            spec.alpha(),
                            spec.beta(),
                            plan.master_seed
                        )))
                    }
                })
                .collect::<Result<Vec<f64>>>()?;
            Ok((graph.mean_degree(), values))
        })
        .collect::<Result<Vec<_>>>()?;

    // fold in replica order for reproducibility
    let mut degree_stats = EnsembleStats::new();
    let mut spec_stats = vec![EnsembleStats::new(); plan.specs.len()];
    for (mean_degree, values) in &per_replica {
        degree_stats.push(*mean_degree);
        for (stats, &value) in spec_stats.iter_mut().zip(values) {
            stats.push(value);
        }
    }

    let mean_k = params.mean_degree()?;
    let mean_k_sets = match params {
        crate::ModelParams::Br { n1, n2, p } => Some(theory::br_mean_degrees(n1, n2, p)),
        _ => None,
    };
    let indices = plan
        .specs
        .iter()
        .zip(&spec_stats)
        .map(|(&spec, stats)| SpecSummary {
            spec,
            mean: stats.mean(),
            std_error: stats.std_error(),
            normalized: stats.mean() / n,
        })
        .collect();

    Ok(SweepPoint {
        control,
        mean_k,
        mean_k_sets,
        empirical_mean_k: degree_stats.mean(),
        empirical_mean_k_std_error: degree_stats.std_error(),
        indices,
        replicas: degree_stats.count(),
    })
}

/// A labeled curve of (x, y) samples with strictly increasing x.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Curve {
    pub label: String,
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
}

/// Extracts the collapse-normalized curve for one index from a sweep.
///
/// Degree-uniform ensembles (ER, RG, and bipartite with equal sets) emit
/// `(⟨k⟩, ⟨X⟩/n)`. Bipartite sweeps with unequal sets use the
/// index-specific normalizations under which their dense-limit curves
/// coincide: the Sombor index divides by `√(n₁²+n₂²)` against
/// `⟨k₁⟩⟨k₂⟩`; the modified Sombor and Banhatti-Sombor indices are scaled
/// onto `p/p*` axes with their respective probability scales.
pub fn normalize_for_collapse(result: &SweepResult, spec: IndexSpec) -> Result<Curve> {
    let spec_pos = result
        .specs
        .iter()
        .position(|&s| s == spec)
        .ok_or_else(|| {
            Error::InvalidParameter(format!(
                "sweep does not contain index (alpha, beta) = ({}, {})",
                spec.alpha(),
                spec.beta()
            ))
        })?;

    let spec_label = spec
        .name()
        .map(str::to_owned)
        .unwrap_or_else(|| format!("ka({}, {})", spec.alpha(), spec.beta()));

    match result.model {
        ModelFamily::Er { n } | ModelFamily::Rg { n } => Ok(Curve {
            label: format!("{}-n{}-{}", result.model.label(), n, spec_label),
            xs: result.points.iter().map(|pt| pt.mean_k).collect(),
            ys: result
                .points
                .iter()
                .map(|pt| pt.indices[spec_pos].normalized)
                .collect(),
        }),
        ModelFamily::Br { n1, n2 } if n1 == n2 => Ok(Curve {
            label: format!("br-n{}x{}-{}", n1, n2, spec_label),
            xs: result.points.iter().map(|pt| pt.mean_k).collect(),
            ys: result
                .points
                .iter()
                .map(|pt| pt.indices[spec_pos].normalized)
                .collect(),
        }),
        ModelFamily::Br { n1, n2 } => {
            let hyp = ((n1 * n1 + n2 * n2) as f64).sqrt();
            let label = format!("br-n{}x{}-{}", n1, n2, spec_label);
            if spec == IndexSpec::sombor() {
                let xs = result
                    .points
                    .iter()
                    .map(|pt| {
                        let (k1, k2) = pt.mean_k_sets.expect("bipartite sweep has set degrees");
                        k1 * k2
                    })
                    .collect();
                let ys = result
                    .points
                    .iter()
                    .map(|pt| pt.indices[spec_pos].mean / hyp)
                    .collect();
                Ok(Curve { label, xs, ys })
            } else if spec == IndexSpec::modified_sombor() {
                let p_star = theory::br_scaling_parameter(spec, n1, n2)?;
                let xs = result.points.iter().map(|pt| pt.control / p_star).collect();
                let ys = result
                    .points
                    .iter()
                    .map(|pt| pt.indices[spec_pos].mean * hyp / (n1 as f64 * n2 as f64))
                    .collect();
                Ok(Curve { label, xs, ys })
            } else if spec == IndexSpec::banhatti_sombor() {
                let p_star = theory::br_scaling_parameter(spec, n1, n2)?;
                let xs = result.points.iter().map(|pt| pt.control / p_star).collect();
                let ys = result
                    .points
                    .iter()
                    .map(|pt| pt.indices[spec_pos].mean / hyp)
                    .collect();
                Ok(Curve { label, xs, ys })
            } else {
                Err(Error::InvalidParameter(format!(
                    "no collapse normalization defined for (alpha, beta) = ({}, {}) on \
                     bipartite graphs with unequal sets",
                    spec.alpha(),
                    spec.beta()
                )))
            }
        }
    }
}

/// Maximum relative spread between curves over their common x-range.
///
/// Curves are interpolated onto the union of their x-grids (linear in
/// log-x); at each grid value the spread is `(max - min) / mean`. Points
/// with non-positive x are dropped since the interpolation is logarithmic.
pub fn collapse_distance(curves: &[Curve]) -> Result<f64> {
    if curves.len() < 2 {
        return Err(Error::InvalidParameter(
            "collapse distance needs at least two curves".into(),
        ));
    }
    let positive: Vec<(Vec<f64>, Vec<f64>)> = curves
        .iter()
        .map(|c| {
            let pairs: Vec<(f64, f64)> =
                c.xs.iter()
                    .zip(&c.ys)
                    .filter(|(&x, _)| x > 0.0)
                    .map(|(&x, &y)| (x, y))
                    .collect();
            (
                pairs.iter().map(|&(x, _)| x).collect(),
                pairs.iter().map(|&(_, y)| y).collect(),
            )
        })
        .collect();

    let lo = positive
        .iter()
        .map(|(xs, _)| xs.first().copied().unwrap_or(f64::INFINITY))
        .fold(f64::NEG_INFINITY, f64::max);
    let hi = positive
        .iter()
        .map(|(xs, _)| xs.last().copied().unwrap_or(f64::NEG_INFINITY))
        .fold(f64::INFINITY, f64::min);
    if !(lo.is_finite() && hi.is_finite()) || lo > hi {
        return Err(Error::InvalidParameter(
            "curves have disjoint x-ranges".into(),
        ));
    }

    let mut grid: Vec<f64> = positive
        .iter()
        .flat_map(|(xs, _)| xs.iter().copied())
        .filter(|&x| (lo..=hi).contains(&x))
        .collect();
    grid.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
    grid.dedup();

    let mut worst = 0.0f64;
    for &x in &grid {
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        let mut sum = 0.0;
        for (xs, ys) in &positive {
            let y = log_x_interpolate(xs, ys, x);
            min = min.min(y);
            max = max.max(y);
            sum += y;
        }
        let mean = sum / positive.len() as f64;
        let spread = if max == min { 0.0 } else { (max - min) / mean };
        if !spread.is_finite() {
            return Err(Error::Numeric(format!(
                "relative spread undefined at x = {x} (mean {mean})"
            )));
        }
        worst = worst.max(spread);
    }
    Ok(worst)
}

fn log_x_interpolate(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    let idx = xs.partition_point(|&v| v < x);
    if idx < xs.len() && xs[idx] == x {
        return ys[idx];
    }
    debug_assert!(idx > 0 && idx < xs.len(), "interpolation outside range");
    let (x0, x1) = (xs[idx - 1], xs[idx]);
    let (y0, y1) = (ys[idx - 1], ys[idx]);
    let t = (x.ln() - x0.ln()) / (x1.ln() - x0.ln());
    y0 + t * (y1 - y0)
}

/// Log-spaced grid of target mean degrees.
pub fn mean_degree_grid(lo: f64, hi: f64, count: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0 && hi > lo) || count < 2 {
        return Err(Error::InvalidParameter(format!(
            "need 0 < lo < hi and at least two points, got [{lo}, {hi}] x {count}"
        )));
    }
    let ratio = hi / lo;
    Ok((0..count)
        .map(|i| lo * ratio.powf(i as f64 / (count - 1) as f64))
        .collect())
}
