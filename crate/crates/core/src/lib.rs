//! Single-source shortest paths on undirected graphs with non-negative real
//! weights via Bundle Dijkstra.
//!
//! Only a sampled subset `R` of vertices ever enters the priority queue. Every
//! other vertex is bundled to its nearest sampled vertex and settled from the
//! small ball of vertices strictly closer to it than that vertex. The pipeline
//! is:
//!
//! 1. [`transform`] reduces the graph to bounded degree (zero-weight cycles).
//! 2. [`bundles`] samples `R` and builds `b(v)`, `Bundle(u)` and `Ball(v)`.
//! 3. [`solver::bundle_dijkstra`] runs the heap over `R` only.
//! 4. [`transform::lift_distances`] maps results back to the input vertices.
//!
//! All weight arithmetic flows through a [`meter::Meter`], so a run can count
//! the comparisons and additions it performs.

pub mod bundles;
pub mod error;
pub mod graph;
pub mod meter;
pub mod pq;
pub mod report;
pub mod rng;
pub mod solver;
pub mod transform;

pub use error::{Error, Result};
pub use graph::{Graph, VertexId, Weight};
pub use meter::{CostMeter, CostSnapshot, Meter, NoMeter};
