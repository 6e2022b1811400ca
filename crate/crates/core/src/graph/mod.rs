//! Immutable undirected weighted multigraph in compressed adjacency form.

mod dimacs;
mod generate;

pub use dimacs::{parse_graph, write_graph};
pub use generate::{generate, GenModel, GenSpec, WeightLaw};

use serde::Serialize;

use crate::error::{Error, Result};

/// Dense vertex index in `[0, n)`.
pub type VertexId = usize;

/// Edge weight. Always finite and non-negative.
pub type Weight = f64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub w: Weight,
}

/// One direction of an undirected edge as stored in an adjacency list.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfEdge {
    pub to: u32,
    pub edge: u32,
    pub w: Weight,
}

impl HalfEdge {
    #[inline]
    pub fn to(&self) -> VertexId {
        self.to as usize
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    offsets: Vec<usize>,
    arcs: Vec<HalfEdge>,
}

pub fn is_valid_weight(w: f64) -> bool {
    w.is_finite() && w >= 0.0
}

impl Graph {
    /// Builds a graph from an edge list. Parallel edges and self-loops are kept.
    ///
    /// Each vertex's adjacency lists its incident edges in edge-id order; a
    /// self-loop contributes two half-edges to its vertex.
    pub fn from_edges(n: usize, edges: Vec<Edge>) -> Result<Self> {
        assert!(n <= u32::MAX as usize && edges.len() <= u32::MAX as usize);
        let mut degree = vec![0usize; n + 1];
        for e in &edges {
            if e.u >= n {
                return Err(Error::VertexOutOfRange(e.u));
            }
            if e.v >= n {
                return Err(Error::VertexOutOfRange(e.v));
            }
            if !is_valid_weight(e.w) {
                return Err(Error::InvalidEdge {
                    u: e.u,
                    v: e.v,
                    w: e.w,
                });
            }
            degree[e.u + 1] += 1;
            degree[e.v + 1] += 1;
        }
        for i in 0..n {
            degree[i + 1] += degree[i];
        }
        let offsets = degree;
        let mut fill = offsets.clone();
        let mut arcs = vec![
            HalfEdge {
                to: 0,
                edge: 0,
                w: 0.0
            };
            2 * edges.len()
        ];
        for (id, e) in edges.iter().enumerate() {
            arcs[fill[e.u]] = HalfEdge {
                to: e.v as u32,
                edge: id as u32,
                w: e.w,
            };
            fill[e.u] += 1;
            arcs[fill[e.v]] = HalfEdge {
                to: e.u as u32,
                edge: id as u32,
                w: e.w,
            };
            fill[e.v] += 1;
        }
        Ok(Graph {
            n,
            edges,
            offsets,
            arcs,
        })
    }

    pub fn empty(n: usize) -> Self {
        Graph::from_edges(n, Vec::new()).expect("no edges to reject")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn neighbors(&self, v: VertexId) -> &[HalfEdge] {
        &self.arcs[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Edge multiset in canonical form: endpoints ordered, list sorted.
    pub fn canonical_edges(&self) -> Vec<(usize, usize, u64)> {
        let mut out: Vec<_> = self
            .edges
            .iter()
            .map(|e| (e.u.min(e.v), e.u.max(e.v), e.w.to_bits()))
            .collect();
        out.sort_unstable();
        out
    }

    /// Connectivity, weight extrema and maximum degree.
    pub fn validate(&self) -> GraphSummary {
        let min_w = self.edges.iter().map(|e| e.w).reduce(f64::min);
        let max_w = self.edges.iter().map(|e| e.w).reduce(f64::max);
        GraphSummary {
            connected: self.component_size(0) == self.n,
            min_w,
            max_w,
            max_degree: self.max_degree(),
        }
    }

    /// Number of vertices reachable from `start` (0 for an empty graph).
    pub fn component_size(&self, start: VertexId) -> usize {
        if self.n == 0 {
            return 0;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![start];
        seen[start] = true;
        let mut count = 0;
        while let Some(u) = stack.pop() {
            count += 1;
            for a in self.neighbors(u) {
                if !seen[a.to()] {
                    seen[a.to()] = true;
                    stack.push(a.to());
                }
            }
        }
        count
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphSummary {
    pub connected: bool,
    pub min_w: Option<Weight>,
    pub max_w: Option<Weight>,
    pub max_degree: usize,
}
