//! Closed-form mean-degree formulas and dense-limit index predictions for
//! the three models. These serve as overlay curves in outputs and as
//! oracles in tests.
//!
//! The dense-limit forms assume vertex degrees concentrate near the mean
//! degree; they are intended for ⟨k⟩ ≫ 1 and evaluated verbatim elsewhere.
//! Callers decide whether a given ⟨k⟩ is inside the regime.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::indices::IndexSpec;

const SQRT_2: f64 = std::f64::consts::SQRT_2;

/// Validity regime of a closed-form prediction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    /// Degrees concentrate near ⟨k⟩; trustworthy for ⟨k⟩ ≫ 1 (checked
    /// downstream against ⟨k⟩ ≥ 10).
    DenseLimit,
}

/// A closed-form prediction tagged with its validity regime.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    pub value: f64,
    pub regime: Regime,
}

impl Prediction {
    fn dense(value: f64) -> Self {
        Self {
            value,
            regime: Regime::DenseLimit,
        }
    }
}

/// Mean degree of an Erdős–Rényi graph: `(n-1) p`.
pub fn er_mean_degree(n: usize, p: f64) -> f64 {
    (n as f64 - 1.0) * p
}

/// Connection probability of a random geometric graph on the unit square:
/// the probability that two independent uniform points lie within distance
/// `r` of each other.
pub fn rg_connection_probability(r: f64) -> Result<f64> {
    if !(0.0..=SQRT_2).contains(&r) {
        return Err(Error::InvalidParameter(format!(
            "connection radius must lie in [0, sqrt(2)], got {r}"
        )));
    }
    let r2 = r * r;
    let value = if r <= 1.0 {
        r2 * (std::f64::consts::PI - 8.0 * r / 3.0 + r2 / 2.0)
    } else {
        1.0 / 3.0 - 2.0 * r2 * (1.0 - (1.0 / r).asin() + (1.0 / r).acos())
            + 4.0 / 3.0 * (2.0 * r2 + 1.0) * (r2 - 1.0).sqrt()
            - r2 * r2 / 2.0
    };
    // clamp fp noise at the endpoints
    Ok(value.clamp(0.0, 1.0))
}

/// Mean degree of a random geometric graph: `(n-1) g(r)`.
pub fn rg_mean_degree(n: usize, r: f64) -> Result<f64> {
    Ok((n as f64 - 1.0) * rg_connection_probability(r)?)
}

/// Inverts `(n-1) g(r) = k` for `r` by bisection on the monotone connection
/// probability; the result satisfies `|g(r) - k/(n-1)| ≤ 1e-12`.
pub fn rg_radius_for_mean_degree(n: usize, k: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidParameter(
            "mean-degree inversion needs n >= 2".into(),
        ));
    }
    let target = k / (n as f64 - 1.0);
    if !(0.0..=1.0).contains(&target) {
        return Err(Error::InvalidParameter(format!(
            "mean degree {k} is unreachable for a geometric graph with n = {n}"
        )));
    }
    let (mut lo, mut hi) = (0.0f64, SQRT_2);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if rg_connection_probability(mid)? < target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Mean degrees `(⟨k₁⟩, ⟨k₂⟩) = (n₂ p, n₁ p)` of the two sets of a
/// bipartite random graph.
pub fn br_mean_degrees(n1: usize, n2: usize, p: f64) -> (f64, f64) {
    (n2 as f64 * p, n1 as f64 * p)
}

/// Dense-limit prediction for the size-normalized index of degree-uniform
/// models: `⟨X⟩/n ≈ 2^{β-1} ⟨k⟩^{1+αβ}`.
///
/// Covers ER and RG ensembles, and BR ensembles with equal set sizes, which
/// all share this scaled form.
pub fn predict_scaled_uniform(spec: IndexSpec, mean_k: f64) -> Result<Prediction> {
    if mean_k <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "dense-limit prediction needs mean degree > 0, got {mean_k}"
        )));
    }
    let exponent = 1.0 + spec.alpha() * spec.beta();
    Ok(Prediction::dense(
        (spec.beta() - 1.0).exp2() * mean_k.powf(exponent),
    ))
}

/// Dense-limit prediction for the unnormalized index of a bipartite random
/// graph: `⟨X⟩ ≈ n₁ n₂ p [(n₁p)^α + (n₂p)^α]^β`.
pub fn predict_br_dense(spec: IndexSpec, n1: usize, n2: usize, p: f64) -> Prediction {
    if p == 0.0 {
        return Prediction::dense(0.0);
    }
    let (k2, k1) = (n1 as f64 * p, n2 as f64 * p);
    let edges = n1 as f64 * n2 as f64 * p;
    Prediction::dense(edges * (k1.powf(spec.alpha()) + k2.powf(spec.alpha())).powf(spec.beta()))
}

/// Closed-form bipartite dense limit of the Sombor index:
/// `√(n₁² + n₂²) · n₁ n₂ p²`.
pub fn predict_br_sombor(n1: usize, n2: usize, p: f64) -> Prediction {
    let (n1, n2) = (n1 as f64, n2 as f64);
    Prediction::dense((n1 * n1 + n2 * n2).sqrt() * n1 * n2 * p * p)
}

/// Closed-form bipartite dense limit of the modified Sombor index:
/// `n₁ n₂ / √(n₁² + n₂²)`, independent of `p`.
pub fn predict_br_modified_sombor(n1: usize, n2: usize) -> Prediction {
    let (n1, n2) = (n1 as f64, n2 as f64);
    Prediction::dense(n1 * n2 / (n1 * n1 + n2 * n2).sqrt())
}

/// Closed-form bipartite dense limit of the Banhatti-Sombor index:
/// `√(n₁² + n₂²)`, independent of `p`.
pub fn predict_br_banhatti_sombor(n1: usize, n2: usize) -> Prediction {
    let (n1, n2) = (n1 as f64, n2 as f64);
    Prediction::dense((n1 * n1 + n2 * n2).sqrt())
}

/// Closed-form bipartite dense limit of the α-Sombor index:
/// `(n₁^α + n₂^α)^{1/α} · n₁ n₂ p²`.
pub fn predict_br_alpha_sombor(alpha: f64, n1: usize, n2: usize, p: f64) -> Result<Prediction> {
    if alpha == 0.0 {
        return Err(Error::InvalidParameter("alpha must be nonzero".into()));
    }
    let (n1, n2) = (n1 as f64, n2 as f64);
    Ok(Prediction::dense(
        (n1.powf(alpha) + n2.powf(alpha)).powf(1.0 / alpha) * n1 * n2 * p * p,
    ))
}

/// The probability scale `p*` that collapses bipartite curves of the two
/// saturating indices onto a single curve of `p/p*`.
pub fn br_scaling_parameter(spec: IndexSpec, n1: usize, n2: usize) -> Result<f64> {
    let (x1, x2) = (n1 as f64, n2 as f64);
    let hyp = (x1 * x1 + x2 * x2).sqrt();
    if spec == IndexSpec::modified_sombor() {
        Ok(1.0 / hyp)
    } else if spec == IndexSpec::banhatti_sombor() {
        Ok(hyp / (x1 * x2))
    } else {
        Err(Error::InvalidParameter(format!(
            "no probability scale defined for (alpha, beta) = ({}, {})",
            spec.alpha(),
            spec.beta()
        )))
    }
}
