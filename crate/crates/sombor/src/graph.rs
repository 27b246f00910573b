//! Undirected simple graphs stored as edge lists with cached degrees.
//!
//! Index formulas are edge sums, so the edge list is the canonical storage;
//! dense matrices are only materialized by the spectral layer. Graphs are
//! immutable value objects once constructed and safe to share across
//! threads.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Undirected simple graph: `n` vertices labeled `0..n`, an edge list of
/// unordered pairs, and a degree array kept consistent with the edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    edges: Vec<(u32, u32)>,
    degrees: Vec<u32>,
}

impl Graph {
    /// Builds a graph from an arbitrary edge list, canonicalizing each pair
    /// to `(min, max)` and sorting. Rejects self-loops, duplicate edges, and
    /// out-of-range endpoints.
    pub fn new(n: usize, edges: Vec<(u32, u32)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("vertex count must be positive".into()));
        }
        let mut edges: Vec<(u32, u32)> = edges
            .into_iter()
            .map(|(u, v)| if u <= v { (u, v) } else { (v, u) })
            .collect();
        edges.sort_unstable();
        for win in edges.windows(2) {
            if win[0] == win[1] {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge ({}, {})",
                    win[0].0, win[0].1
                )));
            }
        }
        for &(u, v) in &edges {
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            if v as usize >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) out of range for n = {n}"
                )));
            }
        }
        Ok(Self::from_sorted_edges(n, edges))
    }

    /// Fast path for samplers that emit edges already canonical (`u < v`),
    /// strictly sorted, and in range.
    pub(crate) fn from_sorted_edges(n: usize, edges: Vec<(u32, u32)>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(edges.iter().all(|&(u, v)| u < v && (v as usize) < n));
        let mut degrees = vec![0u32; n];
        for &(u, v) in &edges {
            degrees[u as usize] += 1;
            degrees[v as usize] += 1;
        }
        Self { n, edges, degrees }
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edge list in canonical `(min, max)` sorted order.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// Degree of vertex `u`.
    ///
    /// Panics if `u >= n`; vertex labels are contiguous by construction so
    /// an out-of-range label is a caller bug.
    pub fn degree(&self, u: usize) -> usize {
        self.degrees[u] as usize
    }

    /// The cached degree array.
    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// Empirical mean degree `2|E|/n`.
    pub fn mean_degree(&self) -> f64 {
        2.0 * self.edges.len() as f64 / self.n as f64
    }

    /// Recomputes degrees from the edge list and checks them against the
    /// cache, along with the handshake identity. Used by tests and by
    /// debugging tools; construction already guarantees this.
    pub fn check_consistency(&self) -> Result<()> {
        let mut recomputed = vec![0u32; self.n];
        for &(u, v) in &self.edges {
            recomputed[u as usize] += 1;
            recomputed[v as usize] += 1;
        }
        if recomputed != self.degrees {
            return Err(Error::InvalidGraph(
                "cached degrees disagree with edge list".into(),
            ));
        }
        let degree_sum: u64 = self.degrees.iter().map(|&d| d as u64).sum();
        if degree_sum != 2 * self.edges.len() as u64 {
            return Err(Error::InvalidGraph("handshake identity violated".into()));
        }
        Ok(())
    }

    /// Parses the debug edge-list format: first line `n m`, then `m` lines
    /// `u v` with 0-based whitespace-separated endpoints.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty edge-list text".into()))?;
        let mut parts = header.split_whitespace();
        let n: usize = parse_field(parts.next(), "vertex count")?;
        let m: usize = parse_field(parts.next(), "edge count")?;
        let mut edges = Vec::with_capacity(m);
        for _ in 0..m {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("expected {m} edge lines")))?;
            let mut endpoints = line.split_whitespace();
            let u: u32 = parse_field(endpoints.next(), "edge endpoint")?;
            let v: u32 = parse_field(endpoints.next(), "edge endpoint")?;
            edges.push((u, v));
        }
        Self::new(n, edges)
    }

    /// Serializes to the debug edge-list format accepted by
    /// [`Graph::parse_edge_list`].
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

fn parse_field<T: std::str::FromStr>(field: Option<&str>, what: &str) -> Result<T> {
    field
        .ok_or_else(|| Error::Parse(format!("missing {what}")))?
        .parse()
        .map_err(|_| Error::Parse(format!("malformed {what}")))
}

/// Bipartition convention for bipartite graphs: vertices `0..n1` form set 1
/// and `n1..n1+n2` form set 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartitePartition {
    n1: usize,
    n2: usize,
}

impl BipartitePartition {
    pub fn new(n1: usize, n2: usize) -> Result<Self> {
        if n1 == 0 || n2 == 0 {
            return Err(Error::InvalidParameter(
                "bipartite sets must both be non-empty".into(),
            ));
        }
        Ok(Self { n1, n2 })
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    /// Total vertex count `n1 + n2`.
    pub fn n(&self) -> usize {
        self.n1 + self.n2
    }

    /// True when the pair has one endpoint in each set.
    pub fn is_cross_pair(&self, u: usize, v: usize) -> bool {
        (u < self.n1) != (v < self.n1)
    }

    /// Checks that every edge of `graph` crosses the partition.
    pub fn check_bipartite(&self, graph: &Graph) -> Result<()> {
        if graph.n() != self.n() {
            return Err(Error::InvalidGraph(format!(
                "partition covers {} vertices, graph has {}",
                self.n(),
                graph.n()
            )));
        }
        for &(u, v) in graph.edges() {
            if !self.is_cross_pair(u as usize, v as usize) {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) lies within one set"
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn k2() -> Graph {
        Graph::new(2, vec![(0, 1)]).unwrap()
    }

    fn star3() -> Graph {
        Graph::new(4, vec![(0, 1), (0, 2), (0, 3)]).unwrap()
    }

    #[test]
    fn degree_examples() {
        assert_eq!(k2().degree(0), 1);
        assert_eq!(Graph::new(3, vec![]).unwrap().degree(2), 0);
        assert_eq!(star3().degree(0), 3);
    }

    #[test]
    fn edge_count_examples() {
        assert_eq!(k2().edge_count(), 1);
        let complete4 = Graph::new(
            4,
            (0..4)
                .flat_map(|u| (u + 1..4).map(move |v| (u, v)))
                .collect(),
        )
        .unwrap();
        assert_eq!(complete4.edge_count(), 6);
        assert_eq!(Graph::new(10, vec![]).unwrap().edge_count(), 0);
    }

    #[test]
    fn mean_degree_examples() {
        assert_eq!(k2().mean_degree(), 1.0);
        let complete5 = Graph::new(
            5,
            (0..5)
                .flat_map(|u| (u + 1..5).map(move |v| (u, v)))
                .collect(),
        )
        .unwrap();
        assert_eq!(complete5.mean_degree(), 4.0);
        assert_eq!(Graph::new(7, vec![]).unwrap().mean_degree(), 0.0);
    }

    #[test]
    fn rejects_self_loop() {
        assert!(Graph::new(3, vec![(1, 1)]).is_err());
    }

    #[test]
    fn rejects_duplicate_edge_in_either_orientation() {
        assert!(Graph::new(3, vec![(0, 1), (1, 0)]).is_err());
        assert!(Graph::new(3, vec![(0, 1), (0, 1)]).is_err());
    }

    #[test]
    fn rejects_out_of_range_vertex() {
        assert!(Graph::new(3, vec![(0, 3)]).is_err());
        assert!(Graph::new(0, vec![]).is_err());
    }

    #[test]
    #[should_panic]
    fn degree_out_of_range_panics() {
        k2().degree(5);
    }

    #[test]
    fn edge_list_round_trip() {
        let g = star3();
        let text = g.to_edge_list();
        assert_eq!(text, "4 3\n0 1\n0 2\n0 3\n");
        let parsed = Graph::parse_edge_list(&text).unwrap();
        assert_eq!(parsed, g);
    }

    #[test]
    fn parse_rejects_malformed_text() {
        assert!(Graph::parse_edge_list("").is_err());
        assert!(Graph::parse_edge_list("3").is_err());
        assert!(Graph::parse_edge_list("3 2\n0 1").is_err());
        assert!(Graph::parse_edge_list("3 1\n0 x").is_err());
    }

    #[test]
    fn graphs_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<Graph>();
        assert_send_sync::<BipartitePartition>();
    }

    #[test]
    fn bipartite_checks_cross_edges() {
        let part = BipartitePartition::new(2, 2).unwrap();
        let cross = Graph::new(4, vec![(0, 2), (1, 3)]).unwrap();
        part.check_bipartite(&cross).unwrap();
        let within = Graph::new(4, vec![(0, 1)]).unwrap();
        assert!(part.check_bipartite(&within).is_err());
        assert!(BipartitePartition::new(0, 4).is_err());
    }

    proptest! {
        #[test]
        fn handshake_and_degree_cache_hold(n in 1usize..40, raw in proptest::collection::vec((0u32..40, 0u32..40), 0..120)) {
            let edges: Vec<(u32, u32)> = raw
                .into_iter()
                .filter(|&(u, v)| u != v && (u as usize) < n && (v as usize) < n)
                .map(|(u, v)| if u < v { (u, v) } else { (v, u) })
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .collect();
            let g = Graph::new(n, edges.clone()).unwrap();
            g.check_consistency().unwrap();
            let degree_sum: usize = (0..n).map(|u| g.degree(u)).sum();
            prop_assert_eq!(degree_sum, 2 * g.edge_count());
        }
    }
}
