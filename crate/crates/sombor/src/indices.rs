//! The `KA¹_{α,β}` index family and its named specializations, computed as
//! edge sums `Σ (k_u^α + k_v^α)^β` over a graph.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A point `(α, β)` in the first KA-index family.
///
/// Named constructors cover the specializations in common use:
/// Sombor `(2, 1/2)`, modified Sombor `(2, -1/2)`, Banhatti-Sombor
/// `(-2, 1/2)`, α-Sombor `(α, 1/α)`, sum-connectivity `(1, β)`, and the
/// complexity-measure slice `(α, -1/α)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IndexSpec {
    alpha: f64,
    beta: f64,
}

impl IndexSpec {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "index exponents must be finite, got alpha = {alpha}, beta = {beta}"
            )));
        }
        Ok(Self { alpha, beta })
    }

    /// Sombor index: `(2, 1/2)`.
    pub const fn sombor() -> Self {
        Self {
            alpha: 2.0,
            beta: 0.5,
        }
    }

    /// Modified Sombor index: `(2, -1/2)`.
    pub const fn modified_sombor() -> Self {
        Self {
            alpha: 2.0,
            beta: -0.5,
        }
    }

    /// First Banhatti-Sombor index: `(-2, 1/2)`.
    pub const fn banhatti_sombor() -> Self {
        Self {
            alpha: -2.0,
            beta: 0.5,
        }
    }

    /// α-Sombor index `(α, 1/α)`; requires `α ≠ 0`.
    pub fn alpha_sombor(alpha: f64) -> Result<Self> {
        Self::reciprocal_pair(alpha, false)
    }

    /// General sum-connectivity index `(1, β)`.
    pub fn sum_connectivity(beta: f64) -> Result<Self> {
        Self::new(1.0, beta)
    }

    /// Complexity-measure slice `(α, -1/α)`; requires `α ≠ 0`.
    pub fn complexity(alpha: f64) -> Result<Self> {
        Self::reciprocal_pair(alpha, true)
    }

    fn reciprocal_pair(alpha: f64, negate: bool) -> Result<Self> {
        if alpha == 0.0 || !alpha.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "alpha must be finite and nonzero, got {alpha}"
            )));
        }
        let beta = if negate { -1.0 / alpha } else { 1.0 / alpha };
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Short name for reports when the exponent pair matches a classic index.
    pub fn name(&self) -> Option<&'static str> {
        if *self == Self::sombor() {
            Some("sombor")
        } else if *self == Self::modified_sombor() {
            Some("msombor")
        } else if *self == Self::banhatti_sombor() {
            Some("bsombor")
        } else {
            None
        }
    }
}

/// The conventional alpha grid for family sweeps: `[-2, 2]` in steps of
/// 0.2, omitting `alpha = 0` so the `1/alpha` slices stay defined. Exact
/// multiples of 0.2 (no accumulated rounding), 20 values.
pub fn alpha_sweep_grid() -> Vec<f64> {
    (-10..=10)
        .filter(|&i| i != 0)
        .map(|i| f64::from(i) / 5.0)
        .collect()
}

/// `x^e` with exact integer powers where the exponent is integral; the
/// common exponents ±1, ±2 stay in the fast multiplicative path.
#[inline]
fn power(x: f64, e: f64) -> f64 {
    if e == 0.5 {
        x.sqrt()
    } else if e == -0.5 {
        1.0 / x.sqrt()
    } else if e.fract() == 0.0 && e.abs() <= i32::MAX as f64 {
        x.powi(e as i32)
    } else {
        x.powf(e)
    }
}

/// Builds the table `k^α` for every degree value occurring in the graph.
/// Edge endpoints always have degree ≥ 1, so the k = 0 entry is never read.
fn degree_powers(graph: &Graph, alpha: f64) -> Vec<f64> {
    let max_deg = graph.degrees().iter().copied().max().unwrap_or(0) as usize;
    (0..=max_deg).map(|k| power(k as f64, alpha)).collect()
}

/// The first `(α, β)`-KA index: `Σ_{uv ∈ E} (k_u^α + k_v^α)^β`.
///
/// Returns 0 for graphs with no edges. For every finite spec and valid
/// graph the sum is finite (endpoint degrees are ≥ 1 by construction, so
/// negative exponents never divide by zero).
pub fn ka1_index(graph: &Graph, spec: IndexSpec) -> f64 {
    edge_sum(graph, spec, false)
}

/// As [`ka1_index`] but with Kahan-compensated accumulation, for graphs
/// large enough (n ≳ 10⁴) that plain summation error becomes visible.
pub fn ka1_index_compensated(graph: &Graph, spec: IndexSpec) -> f64 {
    edge_sum(graph, spec, true)
}

fn edge_sum(graph: &Graph, spec: IndexSpec, compensated: bool) -> f64 {
    if graph.edge_count() == 0 {
        return 0.0;
    }
    let powers = degree_powers(graph, spec.alpha);
    let degrees = graph.degrees();
    let mut sum = 0.0f64;
    let mut carry = 0.0f64;
    for &(u, v) in graph.edges() {
        let term = power(
            powers[degrees[u as usize] as usize] + powers[degrees[v as usize] as usize],
            spec.beta,
        );
        if compensated {
            let y = term - carry;
            let t = sum + y;
            carry = (t - sum) - y;
            sum = t;
        } else {
            sum += term;
        }
    }
    sum
}

/// Sombor index `Σ √(k_u² + k_v²)`.
pub fn sombor(graph: &Graph) -> f64 {
    ka1_index(graph, IndexSpec::sombor())
}

/// Modified Sombor index `Σ 1/√(k_u² + k_v²)`.
pub fn modified_sombor(graph: &Graph) -> f64 {
    ka1_index(graph, IndexSpec::modified_sombor())
}

/// First Banhatti-Sombor index `Σ √(1/k_u² + 1/k_v²)`.
pub fn banhatti_sombor(graph: &Graph) -> f64 {
    ka1_index(graph, IndexSpec::banhatti_sombor())
}

/// α-Sombor index `Σ (k_u^α + k_v^α)^{1/α}`; `α = 0` is rejected.
pub fn alpha_sombor(graph: &Graph, alpha: f64) -> Result<f64> {
    Ok(ka1_index(graph, IndexSpec::alpha_sombor(alpha)?))
}

/// General sum-connectivity index `Σ (k_u + k_v)^β`.
pub fn sum_connectivity(graph: &Graph, beta: f64) -> Result<f64> {
    Ok(ka1_index(graph, IndexSpec::sum_connectivity(beta)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    /// Independent oracle: recomputes degrees by scanning the edge list and
    /// sums with plain `powf`, sharing nothing with the production path.
    pub(crate) fn brute_force_ka1(graph: &Graph, alpha: f64, beta: f64) -> f64 {
        let mut degrees = vec![0.0f64; graph.n()];
        for &(u, v) in graph.edges() {
            degrees[u as usize] += 1.0;
            degrees[v as usize] += 1.0;
        }
        graph
            .edges()
            .iter()
            .map(|&(u, v)| {
                (degrees[u as usize].powf(alpha) + degrees[v as usize].powf(alpha)).powf(beta)
            })
            .sum()
    }

    fn path3() -> Graph {
        Graph::new(3, vec![(0, 1), (1, 2)]).unwrap()
    }

    fn complete(n: u32) -> Graph {
        Graph::new(
            n as usize,
            (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn named_examples() {
        let k2 = Graph::new(2, vec![(0, 1)]).unwrap();
        assert_relative_eq!(sombor(&k2), 2f64.sqrt(), max_relative = 1e-15);

        assert_relative_eq!(sombor(&path3()), 2.0 * 5f64.sqrt(), max_relative = 1e-15);

        let star = Graph::new(4, vec![(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_relative_eq!(
            modified_sombor(&star),
            3.0 / 10f64.sqrt(),
            max_relative = 1e-15
        );

        assert_relative_eq!(banhatti_sombor(&path3()), 5f64.sqrt(), max_relative = 1e-15);

        // six edges with degrees (3, 3): brute-force oracle agrees
        let k4 = complete(4);
        assert_relative_eq!(sombor(&k4), 6.0 * 3.0 * 2f64.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(
            sombor(&k4),
            brute_force_ka1(&k4, 2.0, 0.5),
            max_relative = 1e-14
        );
    }

    #[test]
    fn delegates_are_bit_identical() {
        let g = path3();
        assert_eq!(sombor(&g), ka1_index(&g, IndexSpec::sombor()));
        assert_eq!(
            modified_sombor(&g),
            ka1_index(&g, IndexSpec::modified_sombor())
        );
        assert_eq!(
            banhatti_sombor(&g),
            ka1_index(&g, IndexSpec::banhatti_sombor())
        );
    }

    #[test]
    fn alpha_sombor_and_sum_connectivity_examples() {
        let k2 = Graph::new(2, vec![(0, 1)]).unwrap();
        assert_relative_eq!(alpha_sombor(&k2, 1.0).unwrap(), 2.0, max_relative = 1e-15);
        assert_relative_eq!(
            sum_connectivity(&path3(), 1.0).unwrap(),
            6.0,
            max_relative = 1e-15
        );
        assert!(alpha_sombor(&k2, 0.0).is_err());
        assert!(IndexSpec::complexity(0.0).is_err());
        assert!(IndexSpec::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn empty_graphs_score_zero() {
        let g = Graph::new(6, vec![]).unwrap();
        for spec in [
            IndexSpec::sombor(),
            IndexSpec::modified_sombor(),
            IndexSpec::banhatti_sombor(),
            IndexSpec::new(1.3, -0.7).unwrap(),
        ] {
            assert_eq!(ka1_index(&g, spec), 0.0);
        }
    }

    #[test]
    fn alpha_sweep_grid_convention() {
        let grid = alpha_sweep_grid();
        assert_eq!(grid.len(), 20);
        assert_eq!(grid.first(), Some(&-2.0));
        assert_eq!(grid.last(), Some(&2.0));
        assert!(!grid.contains(&0.0));
        // steps of 0.2, except the 0.4 gap across the excluded zero
        assert!(grid.windows(2).all(|w| {
            let step = w[1] - w[0];
            (step - 0.2).abs() < 1e-15 || (w[0], w[1]) == (-0.2, 0.2)
        }));
        for probe in [-2.0, -1.0, -0.2, 0.2, 1.0, 2.0] {
            assert!(grid.contains(&probe), "missing {probe}");
        }
        // every grid point admits the reciprocal-exponent slices
        for &alpha in &grid {
            IndexSpec::alpha_sombor(alpha).unwrap();
            IndexSpec::complexity(alpha).unwrap();
        }
    }

    #[test]
    fn regular_graph_closed_form() {
        // on a k-regular graph KA¹ = |E| (2 k^α)^β exactly
        let cycle = Graph::new(6, vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)]).unwrap();
        for &(alpha, beta) in &[
            (2.0, 0.5),
            (-2.0, 0.5),
            (1.0, 2.0),
            (0.6, -1.4),
            (-1.0, 3.0),
        ] {
            let expected = 6.0 * (2.0 * power(2.0, alpha)).powf(beta);
            let got = ka1_index(&cycle, IndexSpec::new(alpha, beta).unwrap());
            assert_relative_eq!(got, expected, max_relative = 1e-12);
        }
        let k5 = complete(5);
        let expected = 10.0 * (2.0 * power(4.0, -2.0)).powf(0.5);
        assert_relative_eq!(banhatti_sombor(&k5), expected, max_relative = 1e-12);
    }

    #[test]
    fn specialization_identities() {
        let g = crate::generators::sample_er(30, 0.3, crate::SeedSpec::new(7, 0)).unwrap();
        assert_eq!(sombor(&g), ka1_index(&g, IndexSpec::new(2.0, 0.5).unwrap()));
        assert_eq!(
            modified_sombor(&g),
            ka1_index(&g, IndexSpec::new(2.0, -0.5).unwrap())
        );
        assert_eq!(
            banhatti_sombor(&g),
            ka1_index(&g, IndexSpec::new(-2.0, 0.5).unwrap())
        );
        for alpha in [-2.0, -0.6, 1.7] {
            assert_eq!(
                alpha_sombor(&g, alpha).unwrap(),
                ka1_index(&g, IndexSpec::new(alpha, 1.0 / alpha).unwrap())
            );
        }
        for beta in [-1.0, 0.5, 2.0] {
            assert_eq!(
                sum_connectivity(&g, beta).unwrap(),
                ka1_index(&g, IndexSpec::new(1.0, beta).unwrap())
            );
        }
    }

    #[test]
    fn compensated_sum_agrees_with_plain() {
        let g = crate::generators::sample_er(300, 0.1, crate::SeedSpec::new(8, 0)).unwrap();
        for spec in [IndexSpec::sombor(), IndexSpec::new(-1.3, 2.2).unwrap()] {
            assert_relative_eq!(
                ka1_index(&g, spec),
                ka1_index_compensated(&g, spec),
                max_relative = 1e-12
            );
        }
    }

    fn arbitrary_graph() -> impl Strategy<Value = Graph> {
        (2usize..16).prop_flat_map(|n| {
            let pairs: Vec<(u32, u32)> = (0..n as u32)
                .flat_map(|u| (u + 1..n as u32).map(move |v| (u, v)))
                .collect();
            proptest::collection::vec(proptest::bool::ANY, pairs.len()).prop_map(move |mask| {
                let edges = pairs
                    .iter()
                    .zip(&mask)
                    .filter(|(_, &keep)| keep)
                    .map(|(&e, _)| e)
                    .collect();
                Graph::new(n, edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn isomorphism_invariance(g in arbitrary_graph(), seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let mut rng = rand_pcg::Pcg64Mcg::seed_from_u64(seed);
            let mut relabel: Vec<u32> = (0..g.n() as u32).collect();
            relabel.shuffle(&mut rng);
            let permuted = Graph::new(
                g.n(),
                g.edges()
                    .iter()
                    .map(|&(u, v)| (relabel[u as usize], relabel[v as usize]))
                    .collect(),
            )
            .unwrap();
            for spec in [IndexSpec::sombor(), IndexSpec::banhatti_sombor(), IndexSpec::new(0.7, -1.1).unwrap()] {
                let a = ka1_index(&g, spec);
                let b = ka1_index(&permuted, spec);
                prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0));
            }
        }

        #[test]
        fn matches_brute_force_oracle(g in arbitrary_graph(), alpha in -2.5f64..2.5, beta in -2.5f64..2.5) {
            prop_assume!(alpha != 0.0);
            let spec = IndexSpec::new(alpha, beta).unwrap();
            let fast = ka1_index(&g, spec);
            let oracle = brute_force_ka1(&g, alpha, beta);
            prop_assert!((fast - oracle).abs() <= 1e-12 * oracle.abs().max(1e-12));
        }

        #[test]
        fn sombor_grows_under_edge_addition(g in arbitrary_graph(), pick in any::<u64>()) {
            let n = g.n() as u32;
            let missing: Vec<(u32, u32)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|e| !g.edges().contains(e))
                .collect();
            prop_assume!(!missing.is_empty());
            let e = missing[(pick % missing.len() as u64) as usize];
            let mut edges = g.edges().to_vec();
            edges.push(e);
            let bigger = Graph::new(g.n(), edges).unwrap();
            prop_assert!(sombor(&bigger) > sombor(&g));
        }
    }
}
