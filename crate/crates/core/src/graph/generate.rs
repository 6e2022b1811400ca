//! Deterministic workload generators.
//!
//! Random weights are snapped to a dyadic grid (multiples of 2^-24 for
//! `uniform`, 2^-12 for `exp`), so path sums over desk-sized graphs are exact
//! in `f64` and solvers that associate additions differently still agree
//! bit for bit.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use super::{Edge, Graph, Weight};
use crate::error::{Error, Result};
use crate::rng::{graph_rng, GraphRng};

const UNIFORM_STEPS: u32 = 1 << 24;
const EXP_GRID: f64 = 4096.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GenModel {
    /// Connected G(n, m): a random spanning tree plus uniformly random extra
    /// simple edges.
    Gnm,
    Grid,
    Cycle,
    Path,
    Star,
    /// About sqrt(n) blocks of consecutive ids, mostly intra-block edges.
    Clustered,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum WeightLaw {
    Unit,
    /// Uniform on (0, 1].
    Uniform,
    /// `r^U` for `U ~ Uniform[0, 1)`: weights span `[1, r)`.
    ExpRatio(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GenSpec {
    pub model: GenModel,
    pub n: usize,
    /// Edge count; ignored by models whose edge count is fixed by `n`.
    pub m: usize,
    pub weights: WeightLaw,
    pub seed: u64,
    /// Grid height. Defaults to the largest divisor of `n` not above sqrt(n).
    pub rows: Option<usize>,
}

impl FromStr for GenModel {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "gnm" => GenModel::Gnm,
            "grid" => GenModel::Grid,
            "cycle" => GenModel::Cycle,
            "path" => GenModel::Path,
            "star" => GenModel::Star,
            "clustered" => GenModel::Clustered,
            _ => return Err(format!("unknown model {s:?}")),
        })
    }
}

impl fmt::Display for GenModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GenModel::Gnm => "gnm",
            GenModel::Grid => "grid",
            GenModel::Cycle => "cycle",
            GenModel::Path => "path",
            GenModel::Star => "star",
            GenModel::Clustered => "clustered",
        };
        f.write_str(s)
    }
}

impl FromStr for WeightLaw {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "unit" => Ok(WeightLaw::Unit),
            "uniform" => Ok(WeightLaw::Uniform),
            _ => {
                let ratio = s
                    .strip_prefix("exp:")
                    .or_else(|| s.strip_prefix("exp-ratio:"))
                    .ok_or_else(|| format!("unknown weight law {s:?}"))?;
                let r: f64 = ratio.parse().map_err(|_| format!("bad ratio {ratio:?}"))?;
                if !(r.is_finite() && r >= 1.0) {
                    return Err(format!("ratio must be a finite number >= 1, got {r}"));
                }
                Ok(WeightLaw::ExpRatio(r))
            }
        }
    }
}

impl fmt::Display for WeightLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightLaw::Unit => f.write_str("unit"),
            WeightLaw::Uniform => f.write_str("uniform"),
            WeightLaw::ExpRatio(r) => write!(f, "exp:{r}"),
        }
    }
}

impl WeightLaw {
    pub fn sample(&self, rng: &mut GraphRng) -> Weight {
        match *self {
            WeightLaw::Unit => 1.0,
            WeightLaw::Uniform => {
                (rng.random_range(0..UNIFORM_STEPS) + 1) as f64 / UNIFORM_STEPS as f64
            }
            WeightLaw::ExpRatio(r) => {
                let x = r.powf(rng.random::<f64>());
                ((x * EXP_GRID).floor() / EXP_GRID).max(1.0)
            }
        }
    }
}

/// Same spec, same graph: the output is a pure function of `spec`.
pub fn generate(spec: &GenSpec) -> Result<Graph> {
    let mut rng = graph_rng(spec.seed);
    if let WeightLaw::ExpRatio(r) = spec.weights {
        if !(r.is_finite() && r >= 1.0) {
            return Err(Error::Infeasible(format!("weight ratio {r} must be >= 1")));
        }
    }
    let n = spec.n;
    let pairs = match spec.model {
        GenModel::Path => {
            require(n >= 1, "path needs n >= 1")?;
            (1..n).map(|i| (i - 1, i)).collect()
        }
        GenModel::Cycle => {
            require(n >= 3, "cycle needs n >= 3")?;
            (0..n).map(|i| (i, (i + 1) % n)).collect()
        }
        GenModel::Star => {
            require(n >= 2, "star needs n >= 2")?;
            (1..n).map(|i| (0, i)).collect()
        }
        GenModel::Grid => grid_pairs(n, spec.rows)?,
        GenModel::Gnm => gnm_pairs(n, spec.m, &mut rng)?,
        GenModel::Clustered => clustered_pairs(n, spec.m, &mut rng)?,
    };
    let edges = pairs
        .into_iter()
        .map(|(u, v)| Edge {
            u,
            v,
            w: spec.weights.sample(&mut rng),
        })
        .collect();
    Graph::from_edges(n, edges)
}

fn require(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Infeasible(msg.to_string()))
    }
}

fn grid_pairs(n: usize, rows: Option<usize>) -> Result<Vec<(usize, usize)>> {
    let rows = match rows {
        Some(r) => {
            require(
                r >= 1 && n.is_multiple_of(r),
                &format!("{r} rows do not tile {n} vertices"),
            )?;
            r
        }
        None => {
            let r = (1..=n.isqrt())
                .rev()
                .find(|&r| n.is_multiple_of(r))
                .unwrap_or(0);
            require(
                r >= 2,
                &format!("{n} vertices do not form a rectangular grid"),
            )?;
            r
        }
    };
    let cols = n / rows;
    let mut pairs = Vec::with_capacity(2 * n);
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                pairs.push((v, v + 1));
            }
            if r + 1 < rows {
                pairs.push((v, v + cols));
            }
        }
    }
    Ok(pairs)
}

fn max_simple_edges(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

fn random_tree(ids: &[usize], rng: &mut GraphRng, out: &mut Vec<(usize, usize)>) {
    let mut order = ids.to_vec();
    order.shuffle(rng);
    for i in 1..order.len() {
        let parent = order[rng.random_range(0..i)];
        out.push((parent, order[i]));
    }
}

fn key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

fn gnm_pairs(n: usize, m: usize, rng: &mut GraphRng) -> Result<Vec<(usize, usize)>> {
    require(n >= 1, "gnm needs n >= 1")?;
    require(m + 1 >= n, &format!("m = {m} < n - 1 cannot be connected"))?;
    require(
        m <= max_simple_edges(n),
        &format!("m = {m} exceeds the simple-graph maximum"),
    )?;
    let ids: Vec<usize> = (0..n).collect();
    let mut pairs = Vec::with_capacity(m);
    random_tree(&ids, rng, &mut pairs);
    let mut used: HashSet<(usize, usize)> = pairs.iter().map(|&(u, v)| key(u, v)).collect();
    if 2 * m > max_simple_edges(n) {
        let mut rest: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|p| !used.contains(p))
            .collect();
        rest.shuffle(rng);
        pairs.extend(rest.into_iter().take(m - pairs.len()));
    } else {
        while pairs.len() < m {
            let u = rng.random_range(0..n);
            let v = rng.random_range(0..n);
            if u != v && used.insert(key(u, v)) {
                pairs.push((u, v));
            }
        }
    }
    Ok(pairs)
}

fn clustered_pairs(n: usize, m: usize, rng: &mut GraphRng) -> Result<Vec<(usize, usize)>> {
    require(n >= 1, "clustered needs n >= 1")?;
    require(m + 1 >= n, &format!("m = {m} < n - 1 cannot be connected"))?;
    require(
        4 * m <= max_simple_edges(n) + 3 * n,
        "m too dense for the clustered model",
    )?;
    let blocks = ((n as f64).sqrt().round() as usize).max(1);
    let size = n.div_ceil(blocks);
    let ranges: Vec<_> = (0..n)
        .step_by(size)
        .map(|lo| lo..(lo + size).min(n))
        .collect();
    let mut pairs = Vec::with_capacity(m);
    for r in &ranges {
        random_tree(&r.clone().collect::<Vec<_>>(), rng, &mut pairs);
    }
    for w in ranges.windows(2) {
        let u = rng.random_range(w[0].clone());
        let v = rng.random_range(w[1].clone());
        pairs.push((u, v));
    }
    let mut used: HashSet<(usize, usize)> = pairs.iter().map(|&(u, v)| key(u, v)).collect();
    while pairs.len() < m {
        let (u, v) = if rng.random_bool(0.9) {
            let r = &ranges[rng.random_range(0..ranges.len())];
            (rng.random_range(r.clone()), rng.random_range(r.clone()))
        } else {
            (rng.random_range(0..n), rng.random_range(0..n))
        };
        if u != v && used.insert(key(u, v)) {
            pairs.push((u, v));
        }
    }
    Ok(pairs)
}
