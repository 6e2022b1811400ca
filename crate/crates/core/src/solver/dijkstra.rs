use super::{DistArray, NO_PARENT};
use crate::graph::{Graph, VertexId};
use crate::meter::{Meter, NoMeter};
use crate::pq::PairingHeap;

#[derive(Debug, Clone)]
pub struct DijkstraRun {
    pub dist: DistArray,
    /// Extraction order; ties leave in increasing id order.
    pub order: Vec<VertexId>,
}

/// Plain Dijkstra with parent pointers: the oracle every other solver is
/// checked against.
pub fn dijkstra_reference(g: &Graph, s: VertexId) -> DistArray {
    dijkstra_with(g, s, &NoMeter).dist
}

/// Vertices enter the queue when first reached, so the queue never holds
/// Unreached keys.
pub fn dijkstra_with<M: Meter>(g: &Graph, s: VertexId, meter: &M) -> DijkstraRun {
    let n = g.n();
    assert!(s < n, "source {s} outside graph of {n} vertices");
    let mut dist = vec![f64::INFINITY; n];
    let mut parent = vec![NO_PARENT; n];
    let mut done = vec![false; n];
    let mut heap = PairingHeap::with_capacity(n);
    let mut order = Vec::new();
    dist[s] = 0.0;
    heap.insert(s, 0.0, meter).expect("empty heap");
    while let Some((u, du)) = heap.extract_min(meter) {
        done[u] = true;
        order.push(u);
        for a in g.neighbors(u) {
            let x = a.to();
            if done[x] {
                continue;
            }
            let d = meter.add(du, a.w);
            if !heap.contains(x) {
                dist[x] = d;
                parent[x] = u as u32;
                heap.insert(x, d, meter).expect("checked absent");
            } else if meter.less(d, dist[x]) {
                dist[x] = d;
                parent[x] = u as u32;
                heap.decrease_key(x, d, meter).expect("checked smaller");
            }
        }
    }
    DijkstraRun {
        dist: DistArray {
            values: dist,
            parent: Some(parent),
        },
        order,
    }
}
