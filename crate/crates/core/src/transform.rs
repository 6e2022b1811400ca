//! Degree reduction by splitting vertices into zero-weight cycles.
//!
//! A vertex is replaced by pieces, each owning a consecutive slice of its
//! adjacency list, and the pieces are joined by zero-weight edges: one edge
//! for two pieces, a cycle for three or more. Every original edge connects
//! the pieces that own it at its two endpoints, so distances between any
//! representatives equal the original distances exactly.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TransformMode {
    None,
    /// One piece per incident edge; every degree becomes at most 3.
    Cycle3,
    /// Split only vertices above the cap, `cap - 2` edges per piece.
    Cap(usize),
}

impl FromStr for TransformMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "none" => Ok(TransformMode::None),
            "cycle3" => Ok(TransformMode::Cycle3),
            _ => {
                let cap = s
                    .strip_prefix("cap:")
                    .ok_or_else(|| format!("unknown transform {s:?}"))?;
                cap.parse()
                    .map(TransformMode::Cap)
                    .map_err(|_| format!("bad cap {cap:?}"))
            }
        }
    }
}

impl fmt::Display for TransformMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransformMode::None => f.write_str("none"),
            TransformMode::Cycle3 => f.write_str("cycle3"),
            TransformMode::Cap(c) => write!(f, "cap:{c}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct TransformedGraph {
    pub graph: Graph,
    rep_offsets: Vec<usize>,
    origin: Vec<VertexId>,
    /// Degree bound guaranteed for every transformed vertex.
    pub cap: usize,
    pub mode: TransformMode,
}

impl TransformedGraph {
    /// Transformed vertices standing for original vertex `v`, in piece order.
    pub fn reps(&self, v: VertexId) -> std::ops::Range<VertexId> {
        self.rep_offsets[v]..self.rep_offsets[v + 1]
    }

    pub fn representative(&self, v: VertexId) -> VertexId {
        self.rep_offsets[v]
    }

    pub fn origin(&self, x: VertexId) -> VertexId {
        self.origin[x]
    }

    pub fn original_n(&self) -> usize {
        self.rep_offsets.len() - 1
    }
}

pub fn apply(g: &Graph, mode: TransformMode) -> Result<TransformedGraph> {
    match mode {
        TransformMode::None => Ok(identity(g)),
        TransformMode::Cycle3 => Ok(constant_degree_transform(g)),
        TransformMode::Cap(cap) => degree_cap_transform(g, cap),
    }
}

pub fn identity(g: &Graph) -> TransformedGraph {
    let mut t = split(g, |d| d.max(1));
    t.cap = g.max_degree();
    t.mode = TransformMode::None;
    t
}

/// Every vertex of degree `d >= 1` becomes `d` pieces, one per incident edge.
pub fn constant_degree_transform(g: &Graph) -> TransformedGraph {
    let mut t = split(g, |_| 1);
    t.cap = 3;
    t.mode = TransformMode::Cycle3;
    t
}

/// Vertices of degree above `cap` become `ceil(d / (cap - 2))` pieces.
pub fn degree_cap_transform(g: &Graph, cap: usize) -> Result<TransformedGraph> {
    if cap < 3 {
        return Err(Error::BadCap(cap));
    }
    let mut t = split(g, |d| if d <= cap { d.max(1) } else { cap - 2 });
    t.cap = cap;
    t.mode = TransformMode::Cap(cap);
    Ok(t)
}

/// `slice(d)` is the number of incident edges per piece for a degree-`d` vertex.
fn split(g: &Graph, slice: impl Fn(usize) -> usize) -> TransformedGraph {
    let n = g.n();
    let mut rep_offsets = Vec::with_capacity(n + 1);
    rep_offsets.push(0);
    for v in 0..n {
        let d = g.degree(v);
        let pieces = if d == 0 { 1 } else { d.div_ceil(slice(d)) };
        rep_offsets.push(rep_offsets[v] + pieces);
    }
    let n_t = rep_offsets[n];
    let mut origin = Vec::with_capacity(n_t);
    for v in 0..n {
        origin.extend(std::iter::repeat_n(v, rep_offsets[v + 1] - rep_offsets[v]));
    }

    const UNSET: usize = usize::MAX;
    let mut ends = vec![[UNSET; 2]; g.m()];
    for (v, &base) in rep_offsets[..n].iter().enumerate() {
        let s = slice(g.degree(v)).max(1);
        for (j, a) in g.neighbors(v).iter().enumerate() {
            let piece = base + j / s;
            let e = a.edge as usize;
            let slot = if g.edges()[e].u == v && ends[e][0] == UNSET {
                0
            } else {
                1
            };
            ends[e][slot] = piece;
        }
    }

    let mut edges: Vec<Edge> = g
        .edges()
        .iter()
        .zip(&ends)
        .map(|(e, p)| Edge {
            u: p[0],
            v: p[1],
            w: e.w,
        })
        .collect();
    for v in 0..n {
        let (lo, hi) = (rep_offsets[v], rep_offsets[v + 1]);
        match hi - lo {
            0 | 1 => {}
            2 => edges.push(Edge {
                u: lo,
                v: lo + 1,
                w: 0.0,
            }),
            p => edges.extend((0..p).map(|i| Edge {
                u: lo + i,
                v: lo + (i + 1) % p,
                w: 0.0,
            })),
        }
    }
    let graph = Graph::from_edges(n_t, edges).expect("pieces and weights come from a valid graph");
    TransformedGraph {
        graph,
        rep_offsets,
        origin,
        cap: 0,
        mode: TransformMode::None,
    }
}

/// Maps per-transformed-vertex distances back to original vertices.
///
/// All representatives of a vertex are joined by zero-weight edges, so a
/// correct solver gives them bit-identical values; any disagreement is a
/// solver bug.
pub fn lift_distances(t: &TransformedGraph, dist_t: &[f64]) -> Result<Vec<f64>> {
    assert_eq!(dist_t.len(), t.graph.n());
    (0..t.original_n())
        .map(|v| {
            let reps = t.reps(v);
            let first = dist_t[reps.start];
            for x in reps {
                if dist_t[x].to_bits() != first.to_bits() {
                    return Err(Error::InternalInconsistency {
                        vertex: v,
                        a: first,
                        b: dist_t[x],
                    });
                }
            }
            Ok(first)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GenModel, GenSpec, WeightLaw};

    fn all_pairs(g: &Graph) -> Vec<Vec<f64>> {
        (0..g.n())
            .map(|s| crate::solver::dijkstra_reference(g, s).into_values())
            .collect()
    }

    fn check_preserved(g: &Graph, t: &TransformedGraph) {
        let orig = all_pairs(g);
        for (u, row) in orig.iter().enumerate() {
            for x in t.reps(u) {
                let d = crate::solver::dijkstra_reference(&t.graph, x).into_values();
                for (v, &want) in row.iter().enumerate() {
                    for y in t.reps(v) {
                        assert_eq!(d[y], want, "rep {x} of {u} to rep {y} of {v}");
                    }
                }
            }
        }
        assert!(t.graph.max_degree() <= t.cap);
    }

    fn edges(n: usize, list: &[(usize, usize, f64)]) -> Graph {
        Graph::from_edges(n, list.iter().map(|&(u, v, w)| Edge { u, v, w }).collect()).unwrap()
    }

    #[test]
    fn single_edge_stays_two_points() {
        let g = edges(2, &[(0, 1, 5.0)]);
        let t = constant_degree_transform(&g);
        assert_eq!(t.graph.n(), 2);
        assert_eq!(t.graph.edges(), &[Edge { u: 0, v: 1, w: 5.0 }]);
        assert_eq!((t.graph.degree(0), t.graph.degree(1)), (1, 1));
    }

    #[test]
    fn triangle_becomes_hexagon_gadget() {
        let g = edges(3, &[(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0)]);
        let t = constant_degree_transform(&g);
        assert_eq!(t.graph.n(), 6);
        let zero = t.graph.edges().iter().filter(|e| e.w == 0.0).count();
        let unit = t.graph.edges().iter().filter(|e| e.w == 1.0).count();
        assert_eq!((unit, zero), (3, 3));
        check_preserved(&g, &t);
    }

    #[test]
    fn star_center_becomes_cycle() {
        let g = edges(5, &[(0, 1, 1.0), (0, 2, 2.0), (0, 3, 3.0), (0, 4, 4.0)]);
        let t = constant_degree_transform(&g);
        assert_eq!(t.reps(0).len(), 4);
        let zero = t.graph.edges().iter().filter(|e| e.w == 0.0).count();
        assert_eq!(zero, 4);
        check_preserved(&g, &t);
    }

    #[test]
    fn zero_edge_count_formula() {
        for seed in 0..20 {
            let g = generate(&GenSpec {
                model: GenModel::Gnm,
                n: 30,
                m: 60,
                weights: WeightLaw::Uniform,
                seed,
                rows: None,
            })
            .unwrap();
            let t = constant_degree_transform(&g);
            let expected: usize = (0..g.n())
                .map(|v| match g.degree(v) {
                    0 | 1 => 0,
                    2 => 1,
                    d => d,
                })
                .sum();
            assert_eq!(t.graph.m() - g.m(), expected);
            assert_eq!(t.graph.n(), 2 * g.m());
        }
    }

    #[test]
    fn self_loops_and_isolated_vertices() {
        let g = edges(4, &[(0, 0, 1.0), (0, 1, 2.0), (1, 2, 0.0)]);
        let t = constant_degree_transform(&g);
        assert_eq!(t.reps(3).len(), 1);
        assert_eq!(t.reps(0).len(), 3);
        assert_eq!(t.graph.degree(t.representative(3)), 0);
        check_preserved(&g, &t);
    }

    #[test]
    fn generous_cap_is_identity() {
        let g = edges(4, &[(0, 1, 1.0), (0, 2, 1.0), (0, 3, 2.0), (1, 2, 3.0)]);
        let t = degree_cap_transform(&g, 3).unwrap();
        assert!((0..4).all(|v| t.reps(v).len() == 1));
        assert_eq!(t.graph.edges(), g.edges());
    }

    #[test]
    fn star_ten_with_cap_three() {
        let g = Graph::from_edges(
            11,
            (1..=10)
                .map(|v| Edge {
                    u: 0,
                    v,
                    w: v as f64,
                })
                .collect(),
        )
        .unwrap();
        let t = degree_cap_transform(&g, 3).unwrap();
        assert_eq!(t.reps(0).len(), 10);
        check_preserved(&g, &t);
    }

    #[test]
    fn dense_gnm_with_cap_ten() {
        let g = generate(&GenSpec {
            model: GenModel::Gnm,
            n: 50,
            m: 400,
            weights: WeightLaw::Uniform,
            seed: 3,
            rows: None,
        })
        .unwrap();
        let t = degree_cap_transform(&g, 10).unwrap();
        assert!(t.graph.max_degree() <= 10);
        let bound: usize = (0..g.n()).map(|v| 1 + g.degree(v).div_ceil(8)).sum();
        assert!(t.graph.n() <= bound);
        let orig = all_pairs(&g);
        let lifted: Vec<Vec<f64>> = (0..g.n())
            .map(|u| {
                let d = crate::solver::dijkstra_reference(&t.graph, t.representative(u));
                lift_distances(&t, &d.into_values()).unwrap()
            })
            .collect();
        assert_eq!(lifted, orig);
    }

    #[test]
    fn cap_below_three_rejected() {
        assert_eq!(
            degree_cap_transform(&Graph::empty(1), 2).unwrap_err(),
            Error::BadCap(2)
        );
    }

    #[test]
    fn lift_identity_and_mismatch() {
        let g = edges(2, &[(0, 1, 1.0)]);
        let t = identity(&g);
        assert_eq!(lift_distances(&t, &[0.0, 1.0]).unwrap(), vec![0.0, 1.0]);

        let g = edges(3, &[(0, 1, 1.0), (0, 2, 1.0)]);
        let t = constant_degree_transform(&g);
        let mut d = vec![0.0; t.graph.n()];
        d[t.reps(0).start + 1] = 0.5;
        assert!(matches!(
            lift_distances(&t, &d),
            Err(Error::InternalInconsistency { vertex: 0, .. })
        ));
    }

    #[test]
    fn mode_parsing() {
        assert_eq!("cap:7".parse(), Ok(TransformMode::Cap(7)));
        assert_eq!("cycle3".parse(), Ok(TransformMode::Cycle3));
        assert!("cap:x".parse::<TransformMode>().is_err());
    }
}
