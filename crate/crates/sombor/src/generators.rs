//! Seedable samplers for the three random-graph models.
//!
//! Every replica draws from its own Pcg64Mcg stream whose seed is derived
//! from `(master_seed, replica_index)` by a splitmix-style mixer, so
//! replicas are independent and can be generated concurrently without a shared
//! sequential generator.

use rand::{RngExt, SeedableRng};
use rand_pcg::Pcg64Mcg;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{BipartitePartition, Graph};
use crate::theory;

const SQRT_2: f64 = std::f64::consts::SQRT_2;

/// Splitmix64-style finalizer combining two words into a well-mixed stream
/// seed. Full avalanche on both inputs.
pub fn mix_seed(a: u64, b: u64) -> u64 {
    let mut z = a ^ b.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Identifies one replica's random stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedSpec {
    pub master_seed: u64,
    pub replica_index: u64,
}

impl SeedSpec {
    pub fn new(master_seed: u64, replica_index: u64) -> Self {
        Self {
            master_seed,
            replica_index,
        }
    }

    /// The derived 64-bit stream seed for this replica.
    pub fn stream_seed(&self) -> u64 {
        mix_seed(self.master_seed, self.replica_index)
    }

    /// A labeled substream, used when one replica needs several independent
    /// streams (graph topology vs. matrix weights).
    pub fn substream(&self, label: u64) -> u64 {
        mix_seed(self.stream_seed(), label)
    }

    pub(crate) fn rng(&self) -> Pcg64Mcg {
        Pcg64Mcg::seed_from_u64(self.stream_seed())
    }
}

/// Samples an Erdős–Rényi graph: each of the `n(n-1)/2` unordered pairs is
/// an edge independently with probability `p`.
pub fn sample_er(n: usize, p: f64, seed: SeedSpec) -> Result<Graph> {
    check_count(n)?;
    check_probability(p)?;
    let mut rng = seed.rng();
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in (u + 1)..n as u32 {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::from_sorted_edges(n, edges))
}

/// Samples a random geometric graph: `n` points i.i.d. uniform on the unit
/// square, with an edge wherever the Euclidean distance is ≤ `r`.
pub fn sample_rg(n: usize, r: f64, seed: SeedSpec) -> Result<Graph> {
    sample_rg_embedded(n, r, seed).map(|(g, _)| g)
}

/// As [`sample_rg`], but also returns the sampled point coordinates (used by
/// visualization front ends).
pub fn sample_rg_embedded(n: usize, r: f64, seed: SeedSpec) -> Result<(Graph, Vec<[f64; 2]>)> {
    check_count(n)?;
    if !(0.0..=SQRT_2).contains(&r) {
        return Err(Error::InvalidParameter(format!(
            "connection radius must lie in [0, sqrt(2)], got {r}"
        )));
    }
    let mut rng = seed.rng();
    let points: Vec<[f64; 2]> = (0..n)
        .map(|_| [rng.random::<f64>(), rng.random::<f64>()])
        .collect();
    // squared distances against r^2; ties d == r count as connected
    let r2 = r * r;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            let dx = points[u][0] - points[v][0];
            let dy = points[u][1] - points[v][1];
            if dx * dx + dy * dy <= r2 {
                edges.push((u as u32, v as u32));
            }
        }
    }
    Ok((Graph::from_sorted_edges(n, edges), points))
}

/// Samples a bipartite random graph on sets of size `n1` and `n2`: each of
/// the `n1·n2` cross pairs is an edge independently with probability `p`.
pub fn sample_br(
    n1: usize,
    n2: usize,
    p: f64,
    seed: SeedSpec,
) -> Result<(Graph, BipartitePartition)> {
    check_count(n1)?;
    check_count(n2)?;
    check_probability(p)?;
    let partition = BipartitePartition::new(n1, n2)?;
    let mut rng = seed.rng();
    let mut edges = Vec::new();
    for u in 0..n1 as u32 {
        for v in n1 as u32..(n1 + n2) as u32 {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Ok((Graph::from_sorted_edges(n1 + n2, edges), partition))
}

fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "probability must lie in [0, 1], got {p}"
        )));
    }
    Ok(())
}

fn check_count(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "vertex count must be at least 1".into(),
        ));
    }
    Ok(())
}

/// Full parameter set for one ensemble: model plus control value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum ModelParams {
    Er { n: usize, p: f64 },
    Rg { n: usize, r: f64 },
    Br { n1: usize, n2: usize, p: f64 },
}

impl ModelParams {
    pub fn validate(&self) -> Result<()> {
        match *self {
            ModelParams::Er { n, p } => {
                check_count(n)?;
                check_probability(p)
            }
            ModelParams::Rg { n, r } => {
                check_count(n)?;
                if (0.0..=SQRT_2).contains(&r) {
                    Ok(())
                } else {
                    Err(Error::InvalidParameter(format!(
                        "connection radius must lie in [0, sqrt(2)], got {r}"
                    )))
                }
            }
            ModelParams::Br { n1, n2, p } => {
                check_count(n1)?;
                check_count(n2)?;
                check_probability(p)
            }
        }
    }

    /// Total vertex count.
    pub fn n(&self) -> usize {
        match *self {
            ModelParams::Er { n, .. } | ModelParams::Rg { n, .. } => n,
            ModelParams::Br { n1, n2, .. } => n1 + n2,
        }
    }

    /// Analytic graph-wide mean degree for these parameters.
    pub fn mean_degree(&self) -> Result<f64> {
        match *self {
            ModelParams::Er { n, p } => Ok(theory::er_mean_degree(n, p)),
            ModelParams::Rg { n, r } => theory::rg_mean_degree(n, r),
            ModelParams::Br { n1, n2, p } => {
                let (k1, k2) = theory::br_mean_degrees(n1, n2, p);
                Ok((n1 as f64 * k1 + n2 as f64 * k2) / (n1 + n2) as f64)
            }
        }
    }

    /// Samples one replica. Bipartite structure, when present, is implied by
    /// the index-range convention of [`BipartitePartition`].
    pub fn sample(&self, seed: SeedSpec) -> Result<Graph> {
        match *self {
            ModelParams::Er { n, p } => sample_er(n, p, seed),
            ModelParams::Rg { n, r } => sample_rg(n, r, seed),
            ModelParams::Br { n1, n2, p } => sample_br(n1, n2, p, seed).map(|(g, _)| g),
        }
    }
}

/// A model with its structural size fixed but the control parameter (p or r)
/// left free; sweeps and correlation scans iterate over controls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum ModelFamily {
    Er { n: usize },
    Rg { n: usize },
    Br { n1: usize, n2: usize },
}

impl ModelFamily {
    pub fn n(&self) -> usize {
        match *self {
            ModelFamily::Er { n } | ModelFamily::Rg { n } => n,
            ModelFamily::Br { n1, n2 } => n1 + n2,
        }
    }

    /// Instantiates parameters at a given control value (p for ER/BR, r for
    /// RG).
    pub fn with_control(&self, control: f64) -> ModelParams {
        match *self {
            ModelFamily::Er { n } => ModelParams::Er { n, p: control },
            ModelFamily::Rg { n } => ModelParams::Rg { n, r: control },
            ModelFamily::Br { n1, n2 } => ModelParams::Br { n1, n2, p: control },
        }
    }

    /// Inverts the analytic mean-degree formula to find the control value
    /// realizing graph-wide mean degree `k`.
    pub fn control_for_mean_degree(&self, k: f64) -> Result<f64> {
        if k < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "target mean degree must be nonnegative, got {k}"
            )));
        }
        match *self {
            ModelFamily::Er { n } => {
                let p = k / (n as f64 - 1.0);
                check_probability(p).map_err(|_| {
                    Error::InvalidParameter(format!(
                        "mean degree {k} is unreachable for ER with n = {n}"
                    ))
                })?;
                Ok(p)
            }
            ModelFamily::Rg { n } => theory::rg_radius_for_mean_degree(n, k),
            ModelFamily::Br { n1, n2 } => {
                // graph-wide <k> = 2 n1 n2 p / (n1 + n2)
                let p = k * (n1 + n2) as f64 / (2.0 * n1 as f64 * n2 as f64);
                check_probability(p).map_err(|_| {
                    Error::InvalidParameter(format!(
                        "mean degree {k} is unreachable for BR with n1 = {n1}, n2 = {n2}"
                    ))
                })?;
                Ok(p)
            }
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            ModelFamily::Er { .. } => "er",
            ModelFamily::Rg { .. } => "rg",
            ModelFamily::Br { .. } => "br",
        }
    }
}
