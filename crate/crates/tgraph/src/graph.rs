//! Materialized graphs: build one from a code, recover a code from a
//! threshold graph, count edges without building anything, and export.
//!
//! Vertices are indexed by code position `0..n` (the `*` is position
//! `n - 1`). Exported labels follow the right-to-left reading: position `p`
//! is printed as `v{n - p}`, so the `*` is `v1` and the leftmost symbol is
//! `vn`.

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::code::{Bit, ThresholdCode};

/// Edges of the graph a code describes, without building adjacency storage.
/// A 1 at position `p` dominates everything to its right, so it contributes
/// `n - 1 - p` edges; the `*` has no weight either way.
pub fn edge_count(code: &ThresholdCode) -> u64 {
    let n = code.n();
    code.symbols()
        .iter()
        .enumerate()
        .filter(|&(_, &b)| b == Bit::One)
        .map(|(p, _)| (n - 1 - p) as u64)
        .sum()
}

/// Errors from [`Graph::from_edges`].
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EdgeListError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {vertex}: only simple graphs are supported")]
    SelfLoop { vertex: usize },
}

/// Errors from [`Graph::to_code`].
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CodeFromGraphError {
    #[error("a graph with no vertices has no creation code")]
    NoVertices,
    #[error(
        "not a threshold graph: none of the {remaining} remaining vertices is isolated or dominating"
    )]
    NotThreshold { remaining: usize },
}

/// A simple undirected graph with bitset adjacency rows.
///
/// Usually built from a [`ThresholdCode`], but [`Graph::from_edges`] accepts
/// any simple graph so that [`Graph::to_code`] can decide thresholdness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    rows: Vec<FixedBitSet>,
}

impl Graph {
    /// The graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            rows: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    /// Read a code right to left: each 1 at position `p` dominates all
    /// positions to its right (`p+1..n`), each 0 arrives isolated.
    pub fn from_code(code: &ThresholdCode) -> Self {
        let n = code.n();
        let mut g = Graph::empty(n);
        for (p, &bit) in code.symbols().iter().enumerate() {
            if bit == Bit::One {
                for q in p + 1..n {
                    g.add_edge(p, q);
                }
            }
        }
        g
    }

    /// Build from an explicit edge list. Edges may repeat; loops and
    /// out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, EdgeListError> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n {
                return Err(EdgeListError::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(EdgeListError::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(EdgeListError::SelfLoop { vertex: u });
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    fn add_edge(&mut self, u: usize, v: usize) {
        self.rows[u].insert(v);
        self.rows[v].insert(u);
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones(..)
    }

    /// Neighbor set of `v` as a bitset row.
    pub fn neighbors(&self, v: usize) -> &FixedBitSet {
        &self.rows[v]
    }

    pub fn edge_count(&self) -> u64 {
        self.rows.iter().map(|r| r.count_ones(..) as u64).sum::<u64>() / 2
    }

    /// All edges as position pairs `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in self.rows[u].ones() {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// The complement graph (no loops).
    pub fn complement(&self) -> Self {
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// Recover a creation code by peeling: the last-added vertex of a
    /// threshold graph is isolated or dominating, so repeatedly remove one
    /// (smallest index first, isolated preferred) and record its digit. The
    /// final remaining vertex is the `*`.
    ///
    /// For a graph built by [`Graph::from_code`] this returns the original
    /// code exactly; for other labelings of the same graph it returns the
    /// same digit sequence.
    pub fn to_code(&self) -> Result<ThresholdCode, CodeFromGraphError> {
        if self.n == 0 {
            return Err(CodeFromGraphError::NoVertices);
        }
        let mut alive = vec![true; self.n];
        let mut degree: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        let mut remaining = self.n;
        let mut symbols = Vec::with_capacity(self.n - 1);
        while remaining > 1 {
            let candidate = (0..self.n)
                .filter(|&v| alive[v])
                .find(|&v| degree[v] == 0)
                .map(|v| (v, Bit::Zero))
                .or_else(|| {
                    (0..self.n)
                        .filter(|&v| alive[v])
                        .find(|&v| degree[v] == remaining - 1)
                        .map(|v| (v, Bit::One))
                });
            let (peel, digit) =
                candidate.ok_or(CodeFromGraphError::NotThreshold { remaining })?;
            symbols.push(digit);
            alive[peel] = false;
            remaining -= 1;
            for u in self.rows[peel].ones() {
                if alive[u] {
                    degree[u] -= 1;
                }
            }
        }
        Ok(ThresholdCode::from_symbols(symbols))
    }

    /// Display label for position `p`: `v1` is the `*`, `vn` the leftmost
    /// symbol.
    pub fn vertex_label(&self, p: usize) -> String {
        format!("v{}", self.n - p)
    }

    /// Exported edges as label pairs `(i, j)` with `i > j`, sorted ascending.
    fn labeled_edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .edges()
            .iter()
            .map(|&(u, v)| (self.n - u, self.n - v)) // u < v so n-u > n-v
            .collect();
        out.sort_unstable();
        out
    }

    /// One `vi vj` pair per line, `i > j`, sorted by `(i, j)`.
    pub fn edge_list(&self) -> String {
        let mut out = String::new();
        for (i, j) in self.labeled_edges() {
            out.push_str(&format!("v{i} v{j}\n"));
        }
        out
    }

    /// Graphviz `dot` text: every vertex declared (isolated ones matter),
    /// then the edges in edge-list order.
    pub fn dot(&self) -> String {
        let mut out = String::from("graph threshold {\n");
        for k in 1..=self.n {
            out.push_str(&format!("  v{k};\n"));
        }
        for (i, j) in self.labeled_edges() {
            out.push_str(&format!("  v{i} -- v{j};\n"));
        }
        out.push_str("}\n");
        out
    }
}
