//! Sampled set `R`, bundled vertex `b(v)`, `Bundle(u)` and `Ball(v)`.
//!
//! Three constructions share one assembly path:
//!
//! * [`construct_simple`]: sample `R` with probability `1/k`, then search
//!   from every other vertex until the first `R` vertex is extracted.
//! * [`construct_improved`]: sample `R1`, run searches truncated after
//!   `threshold + 1` extractions, promote truncated sources to `R2`, and take
//!   `b(v)` as the first vertex of `R1 ∪ R2` in `v`'s extraction list.
//! * [`construct_from_r`]: untruncated searches against a caller-chosen `R`.
//!
//! `b(v)` is the first `R` vertex in `v`'s extraction order, which the
//! queue's `(distance, id)` order makes deterministic. `Ball(v)` holds the
//! vertices other than `v` strictly closer to `v` than `b(v)`, with their
//! distances, in extraction order.
//!
//! A vertex whose component holds no `R` vertex (possible only on
//! disconnected inputs) is promoted into `R` and tagged [`Provenance::R2`].

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::meter::Meter;
use crate::pq::PairingHeap;
use crate::rng::vertex_coin;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Provenance {
    R1,
    R2,
    Bundled,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BallEntry {
    pub vertex: u32,
    pub dist: f64,
}

impl BallEntry {
    #[inline]
    pub fn vertex(&self) -> VertexId {
        self.vertex as usize
    }
}

/// Aggregates over the per-vertex searches of one construction.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct SearchStats {
    pub searches: u64,
    /// Vertices extracted other than the search source, summed over searches.
    pub extracted: u64,
    /// Largest number of extractions of one search, source included.
    pub max_extracted: usize,
    pub max_heap: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BundleStructure {
    source: VertexId,
    in_r: Vec<bool>,
    r: Vec<VertexId>,
    provenance: Vec<Provenance>,
    b: Vec<u32>,
    dist_to_b: Vec<f64>,
    bundle_offsets: Vec<usize>,
    bundle_members: Vec<u32>,
    ball_offsets: Vec<usize>,
    balls: Vec<BallEntry>,
    pub search: SearchStats,
}

impl BundleStructure {
    pub fn n(&self) -> usize {
        self.in_r.len()
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    #[inline]
    pub fn in_r(&self, v: VertexId) -> bool {
        self.in_r[v]
    }

    /// `R` in increasing id order.
    pub fn r(&self) -> &[VertexId] {
        &self.r
    }

    pub fn provenance(&self, v: VertexId) -> Provenance {
        self.provenance[v]
    }

    #[inline]
    pub fn b(&self, v: VertexId) -> VertexId {
        self.b[v] as usize
    }

    /// `dist(v, b(v))`; zero for `v ∈ R`.
    #[inline]
    pub fn dist_to_b(&self, v: VertexId) -> f64 {
        self.dist_to_b[v]
    }

    /// Vertices bundled to `u`, `u` itself first. Empty for `u ∉ R`.
    #[inline]
    pub fn bundle(&self, u: VertexId) -> &[u32] {
        &self.bundle_members[self.bundle_offsets[u]..self.bundle_offsets[u + 1]]
    }

    /// Empty for `v ∈ R`.
    #[inline]
    pub fn ball(&self, v: VertexId) -> &[BallEntry] {
        &self.balls[self.ball_offsets[v]..self.ball_offsets[v + 1]]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum KRegime {
    ConstDegree,
    MidDensity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KChoice {
    pub k: u32,
    pub regime: KRegime,
    /// Extraction budget of a truncated search: `ceil(k log2 k)`.
    pub threshold: usize,
}

impl KChoice {
    /// Explicit `k` (at least 1). `k = 1` samples every vertex.
    pub fn with_k(k: u32, regime: KRegime) -> Self {
        let k = k.max(1);
        KChoice {
            k,
            regime,
            threshold: threshold_for(k),
        }
    }
}

pub fn threshold_for(k: u32) -> usize {
    let k = k as f64;
    ((k * k.log2()).ceil() as usize).max(1)
}

/// Picks `k` from transformed sizes with base-2 logs, clamped to `k >= 2`.
///
/// Sparse graphs use `sqrt(log n / log log n)`; the mid-density regime uses
/// `sqrt((n / m) log n)`.
pub fn choose_k(n_t: usize, m_t: usize, regime: KRegime) -> KChoice {
    let n = n_t.max(2) as f64;
    let log_n = n.log2();
    let raw = match regime {
        KRegime::ConstDegree => (log_n / log_n.log2().max(1.0)).sqrt(),
        KRegime::MidDensity => (n / m_t.max(1) as f64 * log_n).sqrt(),
    };
    KChoice::with_k((raw.round() as u32).max(2), regime)
}

/// Regime for a graph with `n` vertices and `m` edges: mid density when
/// `n log log n <= m < n log n`.
pub fn regime_for(n: usize, m: usize) -> KRegime {
    let nf = n.max(4) as f64;
    let log_n = nf.log2();
    let m = m as f64;
    if m >= nf * log_n.log2() && m < nf * log_n {
        KRegime::MidDensity
    } else {
        KRegime::ConstDegree
    }
}

/// Membership of `R1`: the source always, every other vertex independently
/// with probability `1/k`.
pub fn sample_r1(n: usize, source: VertexId, k: u32, seed: u64) -> Vec<bool> {
    (0..n)
        .map(|v| v == source || vertex_coin(seed, v, k))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    HitR1(VertexId),
    Truncated,
    /// The component ran out of vertices before either stop condition.
    Exhausted,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TruncationOutcome {
    /// Extracted vertices with their exact distance from the search source,
    /// in extraction order. The source comes first.
    pub v_extract: Vec<(VertexId, f64)>,
    pub verdict: Verdict,
    pub max_heap: usize,
}

/// Reusable state for many single-source searches on one graph.
pub struct Searcher {
    heap: PairingHeap,
    dist: Vec<f64>,
    done: Vec<bool>,
    touched: Vec<u32>,
}

impl Searcher {
    pub fn new(n: usize) -> Self {
        Searcher {
            heap: PairingHeap::with_capacity(n),
            dist: vec![f64::INFINITY; n],
            done: vec![false; n],
            touched: Vec::new(),
        }
    }

    /// Dijkstra from `v`, stopping at the first extracted vertex accepted by
    /// `in_r1`, or once more than `threshold` vertices have been extracted.
    pub fn run<M: Meter>(
        &mut self,
        g: &Graph,
        v: VertexId,
        in_r1: impl Fn(VertexId) -> bool,
        threshold: Option<usize>,
        meter: &M,
    ) -> TruncationOutcome {
        self.reset();
        let mut list = Vec::new();
        let mut max_heap = 1;
        self.dist[v] = 0.0;
        self.touched.push(v as u32);
        self.heap.insert(v, 0.0, meter).expect("fresh heap");
        let verdict = loop {
            let Some((u, du)) = self.heap.extract_min(meter) else {
                break Verdict::Exhausted;
            };
            self.done[u] = true;
            list.push((u, du));
            if in_r1(u) {
                break Verdict::HitR1(u);
            }
            if threshold.is_some_and(|t| list.len() > t) {
                break Verdict::Truncated;
            }
            for a in g.neighbors(u) {
                let x = a.to();
                if self.done[x] {
                    continue;
                }
                let d = meter.add(du, a.w);
                if !self.heap.contains(x) {
                    self.dist[x] = d;
                    self.touched.push(x as u32);
                    self.heap.insert(x, d, meter).expect("checked absent");
                    max_heap = max_heap.max(self.heap.len());
                } else if meter.less(d, self.dist[x]) {
                    self.dist[x] = d;
                    self.heap
                        .decrease_key(x, d, meter)
                        .expect("checked smaller");
                }
            }
        };
        TruncationOutcome {
            v_extract: list,
            verdict,
            max_heap,
        }
    }

    fn reset(&mut self) {
        for &x in &self.touched {
            self.dist[x as usize] = f64::INFINITY;
            self.done[x as usize] = false;
        }
        self.touched.clear();
        self.heap.clear();
    }
}

/// One-off truncated search from `v`. `threshold = None` searches until the
/// first `R1` vertex with no budget.
pub fn truncated_dijkstra<M: Meter>(
    g: &Graph,
    v: VertexId,
    in_r1: impl Fn(VertexId) -> bool,
    threshold: Option<usize>,
    meter: &M,
) -> TruncationOutcome {
    Searcher::new(g.n()).run(g, v, in_r1, threshold, meter)
}

pub fn construct_simple<M: Meter>(
    g: &Graph,
    source: VertexId,
    k: u32,
    seed: u64,
    meter: &M,
) -> Result<BundleStructure> {
    check_vertex(g, source)?;
    let in_r = sample_r1(g.n(), source, k.max(1), seed);
    Ok(construct_untruncated(g, source, in_r, meter))
}

pub fn construct_from_r<M: Meter>(
    g: &Graph,
    source: VertexId,
    r: &[VertexId],
    meter: &M,
) -> Result<BundleStructure> {
    check_vertex(g, source)?;
    let mut in_r = vec![false; g.n()];
    for &u in r {
        check_vertex(g, u)?;
        in_r[u] = true;
    }
    if !in_r[source] {
        return Err(Error::BadR(source));
    }
    Ok(construct_untruncated(g, source, in_r, meter))
}

fn check_vertex(g: &Graph, v: VertexId) -> Result<()> {
    if v < g.n() {
        Ok(())
    } else {
        Err(Error::VertexOutOfRange(v))
    }
}

fn construct_untruncated<M: Meter>(
    g: &Graph,
    source: VertexId,
    mut in_r: Vec<bool>,
    meter: &M,
) -> BundleStructure {
    let n = g.n();
    let mut asm = Assembly::new(n);
    let mut provenance: Vec<Provenance> = in_r
        .iter()
        .map(|&r| {
            if r {
                Provenance::R1
            } else {
                Provenance::Bundled
            }
        })
        .collect();
    let mut searcher = Searcher::new(n);
    for v in 0..n {
        if in_r[v] {
            asm.close_ball(v);
            continue;
        }
        let out = searcher.run(g, v, |u| in_r[u], None, meter);
        asm.record_search(&out);
        match out.verdict {
            Verdict::HitR1(_) => asm.bundle_from_list(v, &out.v_extract, |u| in_r[u]),
            Verdict::Exhausted => {
                in_r[v] = true;
                provenance[v] = Provenance::R2;
                asm.close_ball(v);
            }
            Verdict::Truncated => unreachable!("no budget"),
        }
    }
    asm.finish(source, in_r, provenance)
}

pub fn construct_improved<M: Meter>(
    g: &Graph,
    source: VertexId,
    choice: KChoice,
    seed: u64,
    meter: &M,
) -> Result<BundleStructure> {
    check_vertex(g, source)?;
    let n = g.n();
    let in_r1 = sample_r1(n, source, choice.k, seed);
    let mut asm = Assembly::new(n);
    let mut searcher = Searcher::new(n);

    let mut list_offsets = vec![0usize; n + 1];
    let mut lists: Vec<(u32, f64)> = Vec::new();
    let mut in_r = in_r1.clone();
    let mut provenance: Vec<Provenance> = in_r1
        .iter()
        .map(|&r| {
            if r {
                Provenance::R1
            } else {
                Provenance::Bundled
            }
        })
        .collect();
    for v in 0..n {
        if !in_r1[v] {
            let out = searcher.run(g, v, |u| in_r1[u], Some(choice.threshold), meter);
            asm.record_search(&out);
            match out.verdict {
                Verdict::HitR1(_) => {
                    lists.extend(out.v_extract.iter().map(|&(u, d)| (u as u32, d)));
                }
                Verdict::Truncated | Verdict::Exhausted => {
                    in_r[v] = true;
                    provenance[v] = Provenance::R2;
                }
            }
        }
        list_offsets[v + 1] = lists.len();
    }

    let mut list = Vec::new();
    for v in 0..n {
        if in_r[v] {
            asm.close_ball(v);
            continue;
        }
        list.clear();
        list.extend(
            lists[list_offsets[v]..list_offsets[v + 1]]
                .iter()
                .map(|&(u, d)| (u as usize, d)),
        );
        asm.bundle_from_list(v, &list, |u| in_r[u]);
    }
    Ok(asm.finish(source, in_r, provenance))
}

/// Linear-time assembly of `b`, balls and bundles from extraction lists.
struct Assembly {
    b: Vec<u32>,
    dist_to_b: Vec<f64>,
    ball_offsets: Vec<usize>,
    balls: Vec<BallEntry>,
    search: SearchStats,
}

impl Assembly {
    fn new(n: usize) -> Self {
        Assembly {
            b: (0..n as u32).collect(),
            dist_to_b: vec![0.0; n],
            ball_offsets: Vec::with_capacity(n + 1),
            balls: Vec::new(),
            search: SearchStats::default(),
        }
        .started()
    }

    fn started(mut self) -> Self {
        self.ball_offsets.push(0);
        self
    }

    fn record_search(&mut self, out: &TruncationOutcome) {
        let s = &mut self.search;
        s.searches += 1;
        s.extracted += out.v_extract.len() as u64 - 1;
        s.max_extracted = s.max_extracted.max(out.v_extract.len());
        s.max_heap = s.max_heap.max(out.max_heap);
    }

    fn close_ball(&mut self, _v: VertexId) {
        self.ball_offsets.push(self.balls.len());
    }

    /// Vertices must be closed in increasing id order.
    fn bundle_from_list(
        &mut self,
        v: VertexId,
        list: &[(VertexId, f64)],
        in_r: impl Fn(VertexId) -> bool,
    ) {
        debug_assert_eq!(self.ball_offsets.len(), v + 1);
        let pos = list
            .iter()
            .position(|&(u, _)| in_r(u))
            .expect("extraction list ends in R");
        let (bv, db) = list[pos];
        self.b[v] = bv as u32;
        self.dist_to_b[v] = db;
        self.balls.extend(
            list[..pos]
                .iter()
                .filter(|&&(w, d)| w != v && d < db)
                .map(|&(w, d)| BallEntry {
                    vertex: w as u32,
                    dist: d,
                }),
        );
        self.close_ball(v);
    }

    fn finish(
        self,
        source: VertexId,
        in_r: Vec<bool>,
        provenance: Vec<Provenance>,
    ) -> BundleStructure {
        let n = in_r.len();
        let mut counts = vec![0usize; n + 1];
        for v in 0..n {
            counts[self.b[v] as usize + 1] += 1;
        }
        for i in 0..n {
            counts[i + 1] += counts[i];
        }
        let bundle_offsets = counts;
        let mut fill = bundle_offsets.clone();
        let mut members = vec![0u32; n];
        for u in (0..n).filter(|&u| in_r[u]) {
            members[fill[u]] = u as u32;
            fill[u] += 1;
        }
        for v in (0..n).filter(|&v| !in_r[v]) {
            let u = self.b[v] as usize;
            members[fill[u]] = v as u32;
            fill[u] += 1;
        }
        let r = (0..n).filter(|&u| in_r[u]).collect();
        BundleStructure {
            source,
            in_r,
            r,
            provenance,
            b: self.b,
            dist_to_b: self.dist_to_b,
            bundle_offsets,
            bundle_members: members,
            ball_offsets: self.ball_offsets,
            balls: self.balls,
            search: self.search,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BundleStats {
    pub size_r: usize,
    pub size_r1: usize,
    pub size_r2: usize,
    pub sum_ball: usize,
    pub max_ball: usize,
    /// Mean number of vertices extracted per search, search source excluded.
    pub mean_sv: f64,
}

pub fn bundle_stats(b: &BundleStructure) -> BundleStats {
    let n = b.n();
    let size_r1 = (0..n)
        .filter(|&v| b.provenance(v) == Provenance::R1)
        .count();
    let size_r2 = (0..n)
        .filter(|&v| b.provenance(v) == Provenance::R2)
        .count();
    let max_ball = (0..n).map(|v| b.ball(v).len()).max().unwrap_or(0);
    let mean_sv = if b.search.searches == 0 {
        0.0
    } else {
        b.search.extracted as f64 / b.search.searches as f64
    };
    BundleStats {
        size_r: b.r().len(),
        size_r1,
        size_r2,
        sum_ball: b.balls.len(),
        max_ball,
        mean_sv,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;
    use crate::meter::NoMeter;

    fn path012() -> Graph {
        Graph::from_edges(
            3,
            vec![Edge { u: 0, v: 1, w: 1.0 }, Edge { u: 1, v: 2, w: 2.0 }],
        )
        .unwrap()
    }

    fn long_path(n: usize) -> Graph {
        Graph::from_edges(
            n,
            (1..n)
                .map(|i| Edge {
                    u: i - 1,
                    v: i,
                    w: 1.0,
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn choose_k_examples() {
        let c = choose_k(1 << 16, 3 << 15, KRegime::ConstDegree);
        assert_eq!((c.k, c.threshold), (2, 2));
        assert_eq!(choose_k(4, 4, KRegime::ConstDegree).k, 2);
        assert_eq!(choose_k(2, 1, KRegime::ConstDegree).k, 2);
        assert_eq!(choose_k(1 << 20, 1 << 22, KRegime::MidDensity).k, 2);
        // 2^64 vertices: sqrt(64 / 6) = 3.27.
        assert_eq!(choose_k(usize::MAX, usize::MAX, KRegime::ConstDegree).k, 3);
        assert_eq!(threshold_for(3), 5);
        assert_eq!(threshold_for(4), 8);
    }

    #[test]
    fn regime_boundaries() {
        let n = 1 << 16;
        assert_eq!(regime_for(n, 2 * n), KRegime::ConstDegree);
        assert_eq!(regime_for(n, 4 * n), KRegime::MidDensity);
        assert_eq!(regime_for(n, 15 * n), KRegime::MidDensity);
        assert_eq!(regime_for(n, 16 * n), KRegime::ConstDegree);
    }

    #[test]
    fn sampling_rules() {
        assert!(sample_r1(50, 3, 1, 9).iter().all(|&x| x));
        let a = sample_r1(500, 3, 4, 9);
        assert_eq!(a, sample_r1(500, 3, 4, 9));
        assert!(a[3]);
        let hits = a.iter().filter(|&&x| x).count();
        assert!(hits > 60 && hits < 200, "{hits}");
    }

    #[test]
    fn truncated_hits_r1_on_path() {
        let out = truncated_dijkstra(&path012(), 0, |u| u == 2, Some(10), &NoMeter);
        assert_eq!(out.v_extract, vec![(0, 0.0), (1, 1.0), (2, 3.0)]);
        assert_eq!(out.verdict, Verdict::HitR1(2));
    }

    #[test]
    fn truncated_adjacent_r1() {
        let g = Graph::from_edges(
            4,
            vec![
                Edge { u: 0, v: 1, w: 1.0 },
                Edge { u: 0, v: 2, w: 2.0 },
                Edge { u: 2, v: 3, w: 0.5 },
            ],
        )
        .unwrap();
        let out = truncated_dijkstra(&g, 0, |u| u == 1, Some(5), &NoMeter);
        assert_eq!(out.v_extract.len(), 2);
        assert_eq!(out.verdict, Verdict::HitR1(1));
    }

    #[test]
    fn truncation_budget() {
        let g = long_path(20);
        let out = truncated_dijkstra(&g, 0, |u| u == 19, Some(3), &NoMeter);
        assert_eq!(out.verdict, Verdict::Truncated);
        assert_eq!(out.v_extract.len(), 4);
        let out = truncated_dijkstra(&g, 0, |u| u == 3, Some(3), &NoMeter);
        assert_eq!(out.verdict, Verdict::HitR1(3));
        let out = truncated_dijkstra(&long_path(3), 0, |_| false, None, &NoMeter);
        assert_eq!(out.verdict, Verdict::Exhausted);
    }

    #[test]
    fn k_one_gives_singletons() {
        let g = long_path(10);
        let b = construct_simple(&g, 0, 1, 5, &NoMeter).unwrap();
        assert_eq!(b.r().len(), 10);
        assert!((0..10).all(|u| b.bundle(u) == [u as u32] && b.ball(u).is_empty()));
        let s = bundle_stats(&b);
        assert_eq!((s.sum_ball, s.size_r), (0, 10));
    }

    #[test]
    fn injected_r_on_path() {
        let b = construct_from_r(&path012(), 0, &[0, 2], &NoMeter).unwrap();
        assert_eq!(b.b(1), 0);
        assert_eq!(b.dist_to_b(1), 1.0);
        assert!(b.ball(1).is_empty());
        assert_eq!(b.bundle(0), &[0, 1]);
        assert_eq!(b.bundle(2), &[2]);
    }

    #[test]
    fn source_only_r_on_path() {
        let g = long_path(5);
        let b = construct_from_r(&g, 0, &[0], &NoMeter).unwrap();
        assert_eq!(b.bundle(0), &[0, 1, 2, 3, 4]);
        for v in 1..5 {
            assert_eq!(b.dist_to_b(v), v as f64);
            let ball: Vec<usize> = b.ball(v).iter().map(|e| e.vertex()).collect();
            let expected: Vec<usize> = (1..5).filter(|&w| w != v && v.abs_diff(w) < v).collect();
            let mut sorted = ball.clone();
            sorted.sort();
            assert_eq!(sorted, expected);
        }
    }

    #[test]
    fn missing_source_is_bad_r() {
        assert_eq!(
            construct_from_r(&path012(), 0, &[2], &NoMeter).unwrap_err(),
            Error::BadR(0)
        );
    }

    #[test]
    fn full_r_is_trivial() {
        let b = construct_from_r(&path012(), 1, &[0, 1, 2], &NoMeter).unwrap();
        assert_eq!(bundle_stats(&b).sum_ball, 0);
        assert_eq!(b.search.searches, 0);
    }

    #[test]
    fn uncovered_component_is_promoted() {
        let g = Graph::from_edges(
            4,
            vec![Edge { u: 0, v: 1, w: 1.0 }, Edge { u: 2, v: 3, w: 1.0 }],
        )
        .unwrap();
        let b = construct_from_r(&g, 0, &[0], &NoMeter).unwrap();
        assert_eq!(b.r(), &[0, 2]);
        assert_eq!(b.provenance(2), Provenance::R2);
        assert_eq!(b.b(3), 2);
        let c = construct_improved(&g, 0, KChoice::with_k(2, KRegime::ConstDegree), 1, &NoMeter)
            .unwrap();
        assert!((0..4).all(|v| c.in_r(c.b(v))));
    }

    #[test]
    fn cluster_gadget_forces_r2() {
        // Vertex 0 sits in a tight clique of 8; the only other R1 vertex is
        // far away, so the search from 0 exhausts its budget first.
        let mut edges = Vec::new();
        for u in 0..8 {
            for v in u + 1..8 {
                edges.push(Edge { u, v, w: 0.125 });
            }
        }
        edges.push(Edge {
            u: 7,
            v: 8,
            w: 100.0,
        });
        let g = Graph::from_edges(9, edges).unwrap();
        let choice = KChoice::with_k(2, KRegime::ConstDegree);
        let seed = (0..10_000)
            .find(|&s| {
                let r = sample_r1(9, 8, 2, s);
                !r[0] && (1..8).all(|v| !r[v])
            })
            .expect("a seed leaving the clique unsampled");
        let b = construct_improved(&g, 8, choice, seed, &NoMeter).unwrap();
        assert_eq!(b.provenance(0), Provenance::R2);
        assert_eq!(b.b(0), 0);
        assert!(b.ball(0).is_empty());
    }
}
