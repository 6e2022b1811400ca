//! Audit of an instrumented Bundle Dijkstra run against oracle distances.
//!
//! Checked properties, with `u_i` the vertex extracted in iteration `i`:
//!
//! 1. `d(u_i) = dist(s, u_i)` at extraction.
//! 2. `dist(s, u_i)` is nondecreasing in `i`.
//! 3. every value ever written to `d(v)` is at least `dist(s, v)`.
//! 4. after Step 1 of iteration `i`, `d(v) = dist(s, v)` on `Bundle(u_i)`.

use std::fmt;

use serde::Serialize;

use super::RunTrace;
use crate::graph::VertexId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ViolationKind {
    PopNotExact,
    PopOrder,
    BelowDistance,
    BundleNotSettled,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantViolation {
    pub kind: ViolationKind,
    /// 1-based extraction index; 0 for the initial write of `d(s)`.
    pub iteration: usize,
    pub vertex: VertexId,
    pub found: f64,
    pub expected: f64,
}

impl fmt::Display for InvariantViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?} at iteration {} on vertex {}: found {}, oracle {}",
            self.kind, self.iteration, self.vertex, self.found, self.expected
        )
    }
}

/// Properties 3 and 4 need a trace recorded with `instrument: true`; without
/// it only 1 and 2 are checked.
pub fn check_run_invariants(trace: &RunTrace, oracle: &[f64]) -> Vec<InvariantViolation> {
    let mut out = Vec::new();
    let mut last = f64::NEG_INFINITY;
    for (i, &(u, du)) in trace.popped.iter().enumerate() {
        let iteration = i + 1;
        let exact = oracle[u];
        if du != exact {
            out.push(InvariantViolation {
                kind: ViolationKind::PopNotExact,
                iteration,
                vertex: u,
                found: du,
                expected: exact,
            });
        }
        if exact < last {
            out.push(InvariantViolation {
                kind: ViolationKind::PopOrder,
                iteration,
                vertex: u,
                found: exact,
                expected: last,
            });
        }
        last = last.max(exact);
    }
    if let Some(writes) = &trace.writes {
        for &(iteration, v, d) in writes {
            let v = v as usize;
            if d < oracle[v] {
                out.push(InvariantViolation {
                    kind: ViolationKind::BelowDistance,
                    iteration,
                    vertex: v,
                    found: d,
                    expected: oracle[v],
                });
            }
        }
    }
    if let Some(snaps) = &trace.after_step1 {
        for (i, snap) in snaps.iter().enumerate() {
            for &(v, d) in snap {
                let v = v as usize;
                if d != oracle[v] {
                    out.push(InvariantViolation {
                        kind: ViolationKind::BundleNotSettled,
                        iteration: i + 1,
                        vertex: v,
                        found: d,
                        expected: oracle[v],
                    });
                }
            }
        }
    }
    out
}
