//! Reference Dijkstra, Bundle Dijkstra and the end-to-end pipeline.

mod bundle;
mod dijkstra;
mod invariants;
mod pipeline;

pub use bundle::{bundle_dijkstra, BundleOptions, Mutation, RelaxCounts, RunTrace};
pub use dijkstra::{dijkstra_reference, dijkstra_with, DijkstraRun};
pub use invariants::{check_run_invariants, InvariantViolation, ViolationKind};
pub use pipeline::{solve, Algorithm, Construction, SolveConfig, SolveOutcome};

use crate::graph::VertexId;

/// Per-vertex tentative or final distances; `f64::INFINITY` marks Unreached.
#[derive(Debug, Clone, PartialEq)]
pub struct DistArray {
    values: Vec<f64>,
    parent: Option<Vec<u32>>,
}

const NO_PARENT: u32 = u32::MAX;

impl DistArray {
    pub fn from_values(values: Vec<f64>) -> Self {
        DistArray {
            values,
            parent: None,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `None` when `v` is unreachable.
    pub fn get(&self, v: VertexId) -> Option<f64> {
        let d = self.values[v];
        d.is_finite().then_some(d)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn has_parents(&self) -> bool {
        self.parent.is_some()
    }

    /// Vertex sequence from the source to `v`, if parents were recorded and
    /// `v` is reachable.
    pub fn path_to(&self, v: VertexId) -> Option<Vec<VertexId>> {
        let parent = self.parent.as_ref()?;
        self.get(v)?;
        let mut path = vec![v];
        let mut cur = v;
        while parent[cur] != NO_PARENT {
            cur = parent[cur] as usize;
            path.push(cur);
            if path.len() > self.values.len() {
                return None;
            }
        }
        path.reverse();
        Some(path)
    }
}
