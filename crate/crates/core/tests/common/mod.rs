#![allow(dead_code)]

use bsssp::graph::{generate, Edge, GenModel, GenSpec, Graph, WeightLaw};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

/// O(n^2) array-scan Dijkstra sharing no code with the library: no heap, no
/// meter, plain `f64` addition.
pub fn oracle_sssp(g: &Graph, s: usize) -> Vec<f64> {
    let n = g.n();
    let mut adj = vec![Vec::new(); n];
    for e in g.edges() {
        adj[e.u].push((e.v, e.w));
        adj[e.v].push((e.u, e.w));
    }
    let mut dist = vec![f64::INFINITY; n];
    let mut done = vec![false; n];
    dist[s] = 0.0;
    loop {
        let mut best = None;
        for v in 0..n {
            if !done[v] && dist[v].is_finite() && best.is_none_or(|b: usize| dist[v] < dist[b]) {
                best = Some(v);
            }
        }
        let Some(u) = best else { break };
        done[u] = true;
        for &(x, w) in &adj[u] {
            if dist[u] + w < dist[x] {
                dist[x] = dist[u] + w;
            }
        }
    }
    dist
}

pub fn all_pairs(g: &Graph) -> Vec<Vec<f64>> {
    (0..g.n()).map(|s| oracle_sssp(g, s)).collect()
}

pub fn rng(seed: u64) -> Xoshiro256PlusPlus {
    Xoshiro256PlusPlus::seed_from_u64(seed)
}

pub const LAWS: [WeightLaw; 3] = [
    WeightLaw::Unit,
    WeightLaw::Uniform,
    WeightLaw::ExpRatio(1e6),
];

/// Connected random graph with `n` vertices, then perturbed: some weights
/// zeroed, some copied from other edges, a few parallel edges and
/// self-loops added.
pub fn messy_graph(n: usize, law: WeightLaw, seed: u64) -> Graph {
    let mut r = rng(seed ^ 0xA5A5);
    let max_m = n * (n - 1) / 2;
    let m = if n < 2 {
        0
    } else {
        r.random_range(n - 1..=(3 * n).min(max_m))
    };
    let base = generate(&GenSpec {
        model: GenModel::Gnm,
        n,
        m,
        weights: law,
        seed,
        rows: None,
    })
    .expect("feasible spec");
    let mut edges: Vec<Edge> = base.edges().to_vec();
    if !edges.is_empty() {
        let weights: Vec<f64> = edges.iter().map(|e| e.w).collect();
        for e in edges.iter_mut() {
            match r.random_range(0..10) {
                0 => e.w = 0.0,
                1 => e.w = *weights.choose(&mut r).unwrap(),
                _ => {}
            }
        }
        for _ in 0..r.random_range(0..=n / 10 + 1) {
            let e = *edges.choose(&mut r).unwrap();
            edges.push(Edge {
                w: *weights.choose(&mut r).unwrap(),
                ..e
            });
        }
        if r.random_bool(0.3) {
            let v = r.random_range(0..n);
            edges.push(Edge { u: v, v, w: 0.0 });
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Original graph sizes for sweeps: mostly small, occasionally near the cap.
pub fn sweep_size(r: &mut Xoshiro256PlusPlus, nmax: usize) -> usize {
    if r.random_bool(0.2) {
        r.random_range(2..=nmax)
    } else {
        r.random_range(2..=nmax.min(60))
    }
}
