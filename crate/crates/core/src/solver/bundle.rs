//! Bundle Dijkstra: the heap holds only `R`; each extraction settles the
//! popped vertex's whole bundle.
//!
//! When `u` is extracted:
//!
//! * Step 1 settles each `v ∈ Bundle(u)` from `u`, from every `y ∈ Ball(v)`,
//!   and across every edge `(z1, z2)` with `z2 ∈ Ball(v) ∪ {v}`.
//! * Step 2 pushes each settled `x ∈ Bundle(u)` across its edges `(x, y)`
//!   and on into `Ball(y)`.
//! * Step 3 lives in [`Run::relax`]: an improvement of a vertex outside `R`
//!   is forwarded to its bundled vertex `b(v)`.

use serde::Serialize;

use super::DistArray;
use crate::bundles::BundleStructure;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::meter::Meter;
use crate::pq::PairingHeap;

/// Deliberate defects for exercising the invariant checker.
#[doc(hidden)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub enum Mutation {
    #[default]
    None,
    /// Never forward improvements to `b(v)`.
    SkipStep3,
    /// Drop the `(z1, z2)` edge relaxations of Step 1.
    SkipBallBridges,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct BundleOptions {
    /// Record every write to `d(·)` and the bundle values after each Step 1
    /// so [`super::check_run_invariants`] can audit the run.
    pub instrument: bool,
    #[doc(hidden)]
    pub mutation: Mutation,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct RelaxCounts {
    pub step1: u64,
    pub step2: u64,
    pub step3: u64,
}

impl RelaxCounts {
    pub fn total(&self) -> u64 {
        self.step1 + self.step2 + self.step3
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunTrace {
    /// Extracted vertices with `d(u)` at extraction, in order.
    pub popped: Vec<(VertexId, f64)>,
    pub relax: RelaxCounts,
    /// Deepest chain of nested relaxations (Step 3 adds one level).
    pub max_relax_depth: usize,
    /// `(iteration, vertex, value)` for every write, when instrumented.
    pub writes: Option<Vec<(usize, u32, f64)>>,
    /// `(vertex, d)` over `Bundle(u_i)` right after Step 1 of iteration `i`.
    pub after_step1: Option<Vec<Vec<(u32, f64)>>>,
}

impl RunTrace {
    pub fn extract_mins(&self) -> usize {
        self.popped.len()
    }
}

#[derive(Clone, Copy)]
enum Step {
    One,
    Two,
    Three,
}

struct Run<'a, M: Meter> {
    g: &'a Graph,
    b: &'a BundleStructure,
    meter: &'a M,
    mutation: Mutation,
    d: Vec<f64>,
    heap: PairingHeap,
    trace: RunTrace,
    iteration: usize,
}

impl<M: Meter> Run<'_, M> {
    fn relax(&mut self, v: VertexId, dist: f64, step: Step, depth: usize) {
        match step {
            Step::One => self.trace.relax.step1 += 1,
            Step::Two => self.trace.relax.step2 += 1,
            Step::Three => self.trace.relax.step3 += 1,
        }
        self.trace.max_relax_depth = self.trace.max_relax_depth.max(depth);
        if !self.meter.less(dist, self.d[v]) {
            return;
        }
        self.d[v] = dist;
        if let Some(w) = self.trace.writes.as_mut() {
            w.push((self.iteration, v as u32, dist));
        }
        if self.heap.contains(v) {
            self.heap
                .decrease_key(v, dist, self.meter)
                .expect("strictly smaller key");
        } else if !self.b.in_r(v) && self.mutation != Mutation::SkipStep3 {
            let up = self.meter.add(dist, self.b.dist_to_b(v));
            self.relax(self.b.b(v), up, Step::Three, depth + 1);
        }
    }

    fn step1(&mut self, u: VertexId, du: f64) {
        let (g, b, meter) = (self.g, self.b, self.meter);
        for &v in &b.bundle(u)[1..] {
            let v = v as usize;
            if du.is_finite() {
                self.relax(v, meter.add(du, b.dist_to_b(v)), Step::One, 1);
            }
            for e in b.ball(v) {
                let dy = self.d[e.vertex()];
                if dy.is_finite() {
                    self.relax(v, meter.add(dy, e.dist), Step::One, 1);
                }
            }
            if self.mutation == Mutation::SkipBallBridges {
                continue;
            }
            for a in g.neighbors(v) {
                let dz1 = self.d[a.to()];
                if dz1.is_finite() {
                    self.relax(v, meter.add(dz1, a.w), Step::One, 1);
                }
            }
            for e in b.ball(v) {
                for a in g.neighbors(e.vertex()) {
                    let dz1 = self.d[a.to()];
                    if dz1.is_finite() {
                        let via = meter.add(dz1, a.w);
                        self.relax(v, meter.add(via, e.dist), Step::One, 1);
                    }
                }
            }
        }
    }

    fn step2(&mut self, u: VertexId) {
        let (g, b, meter) = (self.g, self.b, self.meter);
        for &x in b.bundle(u) {
            let dx = self.d[x as usize];
            if !dx.is_finite() {
                continue;
            }
            for a in g.neighbors(x as usize) {
                let y = a.to();
                let dy = meter.add(dx, a.w);
                self.relax(y, dy, Step::Two, 1);
                for e in b.ball(y) {
                    self.relax(e.vertex(), meter.add(dy, e.dist), Step::Two, 1);
                }
            }
        }
    }
}

fn check_structure(g: &Graph, s: VertexId, b: &BundleStructure) -> Result<()> {
    if b.n() != g.n() {
        return Err(Error::BadBundleStructure(format!(
            "structure covers {} vertices, graph has {}",
            b.n(),
            g.n()
        )));
    }
    if s >= g.n() || !b.in_r(s) {
        return Err(Error::BadBundleStructure(format!("source {s} is not in R")));
    }
    if let Some(v) = (0..g.n()).find(|&v| !b.in_r(b.b(v))) {
        return Err(Error::BadBundleStructure(format!("b({v}) is not in R")));
    }
    Ok(())
}

/// Exact distances from `s` for any valid bundle structure; only the running
/// time depends on how `R` was chosen.
pub fn bundle_dijkstra<M: Meter>(
    g: &Graph,
    s: VertexId,
    b: &BundleStructure,
    meter: &M,
    opts: &BundleOptions,
) -> Result<(DistArray, RunTrace)> {
    check_structure(g, s, b)?;
    let n = g.n();
    let mut run = Run {
        g,
        b,
        meter,
        mutation: opts.mutation,
        d: vec![f64::INFINITY; n],
        heap: PairingHeap::with_capacity(n),
        trace: RunTrace {
            popped: Vec::with_capacity(b.r().len()),
            writes: opts.instrument.then(Vec::new),
            after_step1: opts.instrument.then(Vec::new),
            ..RunTrace::default()
        },
        iteration: 0,
    };
    run.d[s] = 0.0;
    if let Some(w) = run.trace.writes.as_mut() {
        w.push((0, s as u32, 0.0));
    }
    for &u in b.r() {
        run.heap
            .insert(u, run.d[u], meter)
            .expect("R has no duplicates");
    }
    while let Some((u, du)) = run.heap.extract_min(meter) {
        run.iteration += 1;
        run.trace.popped.push((u, du));
        run.step1(u, du);
        if opts.instrument {
            let snap = b
                .bundle(u)
                .iter()
                .map(|&v| (v, run.d[v as usize]))
                .collect();
            run.trace.after_step1.as_mut().unwrap().push(snap);
        }
        run.step2(u);
    }
    Ok((DistArray::from_values(run.d), run.trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundles::{construct_from_r, construct_simple};
    use crate::graph::Edge;
    use crate::meter::NoMeter;
    use crate::solver::dijkstra_with;

    fn path012() -> Graph {
        Graph::from_edges(
            3,
            vec![Edge { u: 0, v: 1, w: 1.0 }, Edge { u: 1, v: 2, w: 2.0 }],
        )
        .unwrap()
    }

    #[test]
    fn injected_r_on_path() {
        let g = path012();
        let b = construct_from_r(&g, 0, &[0, 2], &NoMeter).unwrap();
        let (d, trace) = bundle_dijkstra(&g, 0, &b, &NoMeter, &BundleOptions::default()).unwrap();
        assert_eq!(d.values(), &[0.0, 1.0, 3.0]);
        assert_eq!(trace.popped, vec![(0, 0.0), (2, 3.0)]);
        assert_eq!(trace.max_relax_depth, 2);
    }

    #[test]
    fn full_r_degenerates_to_dijkstra() {
        let g = crate::graph::generate(&crate::graph::GenSpec {
            model: crate::graph::GenModel::Gnm,
            n: 60,
            m: 150,
            weights: crate::graph::WeightLaw::Unit,
            seed: 2,
            rows: None,
        })
        .unwrap();
        let all: Vec<_> = (0..60).collect();
        let b = construct_from_r(&g, 5, &all, &NoMeter).unwrap();
        let (d, trace) = bundle_dijkstra(&g, 5, &b, &NoMeter, &BundleOptions::default()).unwrap();
        let reference = dijkstra_with(&g, 5, &NoMeter);
        assert_eq!(d.values(), reference.dist.values());
        let order: Vec<_> = trace.popped.iter().map(|p| p.0).collect();
        assert_eq!(order, reference.order);
    }

    #[test]
    fn rejects_mismatched_structure() {
        let g = path012();
        let b = construct_simple(&g, 0, 2, 1, &NoMeter).unwrap();
        let bigger = Graph::empty(4);
        assert!(matches!(
            bundle_dijkstra(&bigger, 0, &b, &NoMeter, &BundleOptions::default()),
            Err(Error::BadBundleStructure(_))
        ));
        let b = construct_from_r(&g, 0, &[0], &NoMeter).unwrap();
        assert!(matches!(
            bundle_dijkstra(&g, 2, &b, &NoMeter, &BundleOptions::default()),
            Err(Error::BadBundleStructure(_))
        ));
    }

    #[test]
    fn unreachable_bundle_stays_unreached() {
        let g = Graph::from_edges(
            4,
            vec![Edge { u: 0, v: 1, w: 1.0 }, Edge { u: 2, v: 3, w: 1.0 }],
        )
        .unwrap();
        let b = construct_from_r(&g, 0, &[0], &NoMeter).unwrap();
        let (d, trace) = bundle_dijkstra(&g, 0, &b, &NoMeter, &BundleOptions::default()).unwrap();
        assert_eq!(d.values(), &[0.0, 1.0, f64::INFINITY, f64::INFINITY]);
        assert_eq!(trace.extract_mins(), b.r().len());
    }
}
