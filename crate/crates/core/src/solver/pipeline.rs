use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::Serialize;

use super::{
    bundle_dijkstra, check_run_invariants, dijkstra_reference, dijkstra_with, BundleOptions,
    InvariantViolation, Mutation, RunTrace,
};
use crate::bundles::{
    bundle_stats, choose_k, construct_from_r, construct_improved, construct_simple, regime_for,
    BundleStats, KChoice, KRegime,
};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::meter::{CostMeter, CostSnapshot, Meter, NoMeter};
use crate::transform::{self, lift_distances, TransformMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Bundle,
    Dijkstra,
}

impl FromStr for Algorithm {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "bundle" => Ok(Algorithm::Bundle),
            "dijkstra" => Ok(Algorithm::Dijkstra),
            _ => Err(format!("unknown algorithm {s:?}")),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Bundle => "bundle",
            Algorithm::Dijkstra => "dijkstra",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Construction {
    Simple,
    Improved,
    /// `R` given as original vertex ids; all representatives of each listed
    /// vertex join `R`. Must list the source.
    FromR(Vec<VertexId>),
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Construction::Simple => f.write_str("simple"),
            Construction::Improved => f.write_str("improved"),
            Construction::FromR(r) => write!(f, "fromR[{}]", r.len()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveConfig {
    pub algorithm: Algorithm,
    pub construction: Construction,
    pub transform: TransformMode,
    /// Overrides the automatic choice of `k`.
    pub k: Option<u32>,
    pub seed: u64,
    pub metered: bool,
    pub trace: bool,
    /// Run instrumented and audit the run against reference distances.
    pub check_invariants: bool,
    #[doc(hidden)]
    pub mutation: Mutation,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            algorithm: Algorithm::Bundle,
            construction: Construction::Improved,
            transform: TransformMode::Cycle3,
            k: None,
            seed: 0,
            metered: false,
            trace: false,
            check_invariants: false,
            mutation: Mutation::None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    /// Per original vertex; `f64::INFINITY` for Unreached.
    pub distances: Vec<f64>,
    pub n: usize,
    pub m: usize,
    pub n_t: usize,
    pub m_t: usize,
    pub k: Option<KChoice>,
    pub stats: Option<BundleStats>,
    pub cost: Option<CostSnapshot>,
    pub extract_mins: usize,
    pub wall: Duration,
    pub trace: Option<RunTrace>,
    pub violations: Vec<InvariantViolation>,
}

/// transform, choose `k`, build bundles, run Bundle Dijkstra from a
/// representative of `s`, lift back. `Algorithm::Dijkstra` runs the
/// reference solver on the input graph instead.
pub fn solve(g: &Graph, s: VertexId, cfg: &SolveConfig) -> Result<SolveOutcome> {
    if s >= g.n() {
        return Err(Error::VertexOutOfRange(s));
    }
    if cfg.metered {
        let meter = CostMeter::new();
        let mut out = run(g, s, cfg, &meter)?;
        out.cost = Some(meter.snapshot());
        Ok(out)
    } else {
        run(g, s, cfg, &NoMeter)
    }
}

fn run<M: Meter>(g: &Graph, s: VertexId, cfg: &SolveConfig, meter: &M) -> Result<SolveOutcome> {
    let start = Instant::now();
    if cfg.algorithm == Algorithm::Dijkstra {
        let r = dijkstra_with(g, s, meter);
        return Ok(SolveOutcome {
            extract_mins: r.order.len(),
            distances: r.dist.into_values(),
            n: g.n(),
            m: g.m(),
            n_t: g.n(),
            m_t: g.m(),
            k: None,
            stats: None,
            cost: None,
            wall: start.elapsed(),
            trace: None,
            violations: Vec::new(),
        });
    }

    let t = transform::apply(g, cfg.transform)?;
    let tg = &t.graph;
    let ts = t.representative(s);
    let regime = match cfg.transform {
        TransformMode::Cycle3 => KRegime::ConstDegree,
        _ => regime_for(tg.n(), tg.m()),
    };
    let choice = match cfg.k {
        Some(k) => KChoice::with_k(k, regime),
        None => choose_k(tg.n(), tg.m(), regime),
    };
    let b = match &cfg.construction {
        Construction::Simple => construct_simple(tg, ts, choice.k, cfg.seed, meter)?,
        Construction::Improved => construct_improved(tg, ts, choice, cfg.seed, meter)?,
        Construction::FromR(r) => {
            if !r.contains(&s) {
                return Err(Error::BadR(s));
            }
            let mut rt = Vec::new();
            for &v in r {
                if v >= g.n() {
                    return Err(Error::VertexOutOfRange(v));
                }
                rt.extend(t.reps(v));
            }
            construct_from_r(tg, ts, &rt, meter)?
        }
    };
    let opts = BundleOptions {
        instrument: cfg.check_invariants,
        mutation: cfg.mutation,
    };
    let (dist_t, trace) = bundle_dijkstra(tg, ts, &b, meter, &opts)?;
    let distances = lift_distances(&t, dist_t.values())?;
    let wall = start.elapsed();

    let violations = if cfg.check_invariants {
        let oracle = dijkstra_reference(tg, ts);
        check_run_invariants(&trace, oracle.values())
    } else {
        Vec::new()
    };
    Ok(SolveOutcome {
        distances,
        n: g.n(),
        m: g.m(),
        n_t: tg.n(),
        m_t: tg.m(),
        k: Some(choice),
        stats: Some(bundle_stats(&b)),
        cost: None,
        extract_mins: trace.extract_mins(),
        wall,
        trace: (cfg.trace || cfg.check_invariants).then_some(trace),
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Edge, GenModel, GenSpec, WeightLaw};

    fn gnm(n: usize, m: usize, seed: u64) -> Graph {
        generate(&GenSpec {
            model: GenModel::Gnm,
            n,
            m,
            weights: WeightLaw::Uniform,
            seed,
            rows: None,
        })
        .unwrap()
    }

    #[test]
    fn both_algorithms_agree() {
        let g = gnm(80, 200, 4);
        let d = solve(
            &g,
            3,
            &SolveConfig {
                algorithm: Algorithm::Dijkstra,
                ..Default::default()
            },
        )
        .unwrap();
        for construction in [
            Construction::Simple,
            Construction::Improved,
            Construction::FromR(vec![3, 10, 20]),
        ] {
            for transform in [
                TransformMode::Cycle3,
                TransformMode::Cap(4),
                TransformMode::None,
            ] {
                let cfg = SolveConfig {
                    construction: construction.clone(),
                    transform,
                    seed: 9,
                    ..Default::default()
                };
                let b = solve(&g, 3, &cfg).unwrap();
                assert_eq!(b.distances, d.distances, "{construction} {transform}");
            }
        }
    }

    #[test]
    fn isolated_vertex_unreached() {
        let g = Graph::from_edges(3, vec![Edge { u: 0, v: 1, w: 1.0 }]).unwrap();
        let out = solve(&g, 0, &SolveConfig::default()).unwrap();
        assert_eq!(out.distances, vec![0.0, 1.0, f64::INFINITY]);
    }

    #[test]
    fn metering_is_observational() {
        let g = gnm(100, 250, 1);
        let plain = solve(&g, 0, &SolveConfig::default()).unwrap();
        let metered = solve(
            &g,
            0,
            &SolveConfig {
                metered: true,
                ..Default::default()
            },
        )
        .unwrap();
        let bits = |d: &[f64]| d.iter().map(|x| x.to_bits()).collect::<Vec<_>>();
        assert_eq!(bits(&plain.distances), bits(&metered.distances));
        assert!(metered.cost.unwrap().total() > 0);
        assert!(plain.cost.is_none());
    }

    #[test]
    fn from_r_must_hold_source() {
        let g = gnm(10, 20, 1);
        let cfg = SolveConfig {
            construction: Construction::FromR(vec![1, 2]),
            ..Default::default()
        };
        assert_eq!(solve(&g, 0, &cfg).unwrap_err(), Error::BadR(0));
    }

    #[test]
    fn checked_run_has_no_violations() {
        let g = gnm(60, 120, 5);
        let cfg = SolveConfig {
            check_invariants: true,
            ..Default::default()
        };
        let out = solve(&g, 0, &cfg).unwrap();
        assert!(out.violations.is_empty());
        assert!(out.trace.unwrap().writes.is_some());
    }
}
