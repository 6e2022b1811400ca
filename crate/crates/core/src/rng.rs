//! Seeded random sources.
//!
//! Graph generators draw from one xoshiro256++ stream seeded with
//! `seed_from_u64` (SplitMix64 expansion of the 64-bit seed). Vertex sampling
//! is split per vertex: vertex `v` gets its own SplitMix64 stream keyed by
//! `(seed, v)`, so membership in the sample depends only on the seed and the
//! vertex id, never on visiting order.

use rand::{Rng, RngCore, SeedableRng};
use rand_xoshiro::{SplitMix64, Xoshiro256PlusPlus};

use crate::graph::VertexId;

pub type GraphRng = Xoshiro256PlusPlus;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

pub fn graph_rng(seed: u64) -> GraphRng {
    Xoshiro256PlusPlus::seed_from_u64(seed)
}

pub fn vertex_rng(seed: u64, v: VertexId) -> SplitMix64 {
    let key = SplitMix64::seed_from_u64(seed).next_u64();
    SplitMix64::seed_from_u64(key ^ (v as u64).wrapping_add(1).wrapping_mul(GOLDEN_GAMMA))
}

/// Bernoulli trial with success probability `1/k` for vertex `v`.
pub fn vertex_coin(seed: u64, v: VertexId, k: u32) -> bool {
    assert!(k >= 1);
    vertex_rng(seed, v).random_ratio(1, k)
}
