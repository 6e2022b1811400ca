use bsssp::bundles::{
    bundle_stats, choose_k, construct_improved, construct_simple, regime_for, KChoice, KRegime,
};
use bsssp::graph::generate;
use bsssp::transform::{self, TransformMode};
use bsssp::NoMeter;
use clap::{Args, ValueEnum};
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::gen::{descriptor, spec, FamilyArgs};
use crate::input::write_output;

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum StatsConstruction {
    Simple,
    Improved,
}

#[derive(Args, Debug)]
pub struct StatsArgs {
    /// Sampling parameter; chosen from the transformed graph when absent.
    #[arg(long)]
    pub k: Option<u32>,
    /// Number of seeds, starting at `--seed`.
    #[arg(long, default_value_t = 30)]
    pub seeds: u64,
    #[arg(long, env = "BSSSP_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub m: usize,
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long, default_value = "cycle3")]
    pub transform: TransformMode,
    #[arg(long, value_enum, default_value = "improved")]
    pub construction: StatsConstruction,
    #[arg(long, default_value_t = 0)]
    pub source: usize,
}

#[derive(Serialize)]
struct Summary {
    mean: f64,
    /// Sample standard deviation; zero for a single seed.
    sd: f64,
}

fn summarize(xs: &[f64]) -> Summary {
    let n = xs.len() as f64;
    if xs.is_empty() {
        return Summary {
            mean: f64::NAN,
            sd: f64::NAN,
        };
    }
    let mean = xs.iter().sum::<f64>() / n;
    let sd = if xs.len() < 2 {
        0.0
    } else {
        (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
    };
    Summary { mean, sd }
}

#[derive(Serialize)]
struct SeedRow {
    seed: u64,
    input: String,
    n_t: usize,
    m_t: usize,
    k: u32,
    size_r: usize,
    size_r1: usize,
    size_r2: usize,
    sum_ball: usize,
    max_ball: usize,
    mean_sv: f64,
}

#[derive(Serialize)]
struct StatsReport {
    construction: &'static str,
    transform: String,
    seeds: u64,
    threshold: Option<usize>,
    size_r: Summary,
    size_r1: Summary,
    /// `1 + (n_t - 1) / k` averaged over seeds, with the binomial standard
    /// deviation of `|R1|`.
    size_r1_expected: Summary,
    r2_fraction: Summary,
    /// `2 (1 - 1/k)^threshold`, for the improved construction.
    r2_fraction_bound: Option<f64>,
    sum_ball_per_mk: Summary,
    mean_sv: Summary,
    per_seed: Vec<SeedRow>,
}

pub fn run(a: &StatsArgs) -> CliResult<()> {
    let mut rows = Vec::new();
    let mut r1_expected = Vec::new();
    let mut r1_var = Vec::new();
    let mut threshold = None;
    for seed in a.seed..a.seed + a.seeds {
        let gs = spec(&a.family, a.n, a.m, seed);
        let g = generate(&gs)?;
        let t = transform::apply(&g, a.transform)?;
        let tg = &t.graph;
        if a.source >= g.n() {
            return Err(CliError::Usage(format!(
                "source {} out of range for n = {}",
                a.source,
                g.n()
            )));
        }
        let regime = match a.transform {
            TransformMode::Cycle3 => KRegime::ConstDegree,
            _ => regime_for(tg.n(), tg.m()),
        };
        let choice = match a.k {
            Some(k) => KChoice::with_k(k, regime),
            None => choose_k(tg.n(), tg.m(), regime),
        };
        let ts = t.representative(a.source);
        let b = match a.construction {
            StatsConstruction::Simple => construct_simple(tg, ts, choice.k, seed, &NoMeter)?,
            StatsConstruction::Improved => {
                threshold = Some(choice.threshold);
                construct_improved(tg, ts, choice, seed, &NoMeter)?
            }
        };
        let st = bundle_stats(&b);
        let p = 1.0 / choice.k as f64;
        r1_expected.push(1.0 + (tg.n() - 1) as f64 * p);
        r1_var.push((tg.n() - 1) as f64 * p * (1.0 - p));
        rows.push(SeedRow {
            seed,
            input: descriptor(&gs),
            n_t: tg.n(),
            m_t: tg.m(),
            k: choice.k,
            size_r: st.size_r,
            size_r1: st.size_r1,
            size_r2: st.size_r2,
            sum_ball: st.sum_ball,
            max_ball: st.max_ball,
            mean_sv: st.mean_sv,
        });
    }
    let col = |f: &dyn Fn(&SeedRow) -> f64| summarize(&rows.iter().map(f).collect::<Vec<_>>());
    let r1_mean = summarize(&r1_expected).mean;
    let r1_sd = (r1_var.iter().sum::<f64>() / r1_var.len().max(1) as f64).sqrt();
    let k_mean = col(&|r| r.k as f64).mean;
    let report = StatsReport {
        construction: match a.construction {
            StatsConstruction::Simple => "simple",
            StatsConstruction::Improved => "improved",
        },
        transform: a.transform.to_string(),
        seeds: a.seeds,
        threshold,
        size_r: col(&|r| r.size_r as f64),
        size_r1: col(&|r| r.size_r1 as f64),
        size_r1_expected: Summary {
            mean: r1_mean,
            sd: r1_sd,
        },
        r2_fraction: col(&|r| r.size_r2 as f64 / r.n_t as f64),
        r2_fraction_bound: threshold.map(|t| 2.0 * (1.0 - 1.0 / k_mean).powi(t as i32)),
        sum_ball_per_mk: col(&|r| r.sum_ball as f64 / (r.m_t as f64 * r.k as f64)),
        mean_sv: col(&|r| r.mean_sv),
        per_seed: rows,
    };
    write_output(None, &(serde_json::to_string_pretty(&report)? + "\n"))
}
