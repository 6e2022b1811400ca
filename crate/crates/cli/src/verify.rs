use bsssp::graph::{generate, write_graph, GenModel, GenSpec, WeightLaw};
use bsssp::rng::vertex_rng;
use bsssp::solver::{dijkstra_reference, solve, Construction, Mutation, SolveConfig};
use bsssp::transform::TransformMode;
use clap::{Args, ValueEnum};
use rand::Rng;
use std::io::Write;

use crate::error::{is_internal, CliError, CliResult};
use crate::gen::descriptor;

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum MutateArg {
    Step3,
    Bridges,
}

impl MutateArg {
    pub fn mutation(arg: Option<MutateArg>) -> Mutation {
        match arg {
            None => Mutation::None,
            Some(MutateArg::Step3) => Mutation::SkipStep3,
            Some(MutateArg::Bridges) => Mutation::SkipBallBridges,
        }
    }

    fn flag(arg: Option<MutateArg>) -> &'static str {
        match arg {
            None => "",
            Some(MutateArg::Step3) => " --mutate step3",
            Some(MutateArg::Bridges) => " --mutate bridges",
        }
    }
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 100)]
    pub trials: u64,
    /// Largest vertex count drawn for a trial graph.
    #[arg(long, default_value_t = 200)]
    pub nmax: usize,
    #[arg(long, env = "BSSSP_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Run a deliberately broken solver to check that verification notices.
    #[arg(long, value_enum, hide = true)]
    pub mutate: Option<MutateArg>,
}

/// Everything needed to rerun one trial.
struct Trial {
    spec: GenSpec,
    source: usize,
    construction: Construction,
    transform: TransformMode,
}

impl Trial {
    fn draw(seed: u64, i: u64, nmax: usize) -> Trial {
        let mut r = vertex_rng(seed, i as usize);
        let n = r.random_range(2..=nmax.max(2));
        let max_m = n * (n - 1) / 2;
        let m = r.random_range(n - 1..=(3 * n).min(max_m));
        let weights = [
            WeightLaw::Unit,
            WeightLaw::Uniform,
            WeightLaw::ExpRatio(1e6),
        ][r.random_range(0..3)];
        let spec = GenSpec {
            model: GenModel::Gnm,
            n,
            m,
            weights,
            seed: r.random(),
            rows: None,
        };
        let construction = if r.random_bool(0.5) {
            Construction::Simple
        } else {
            Construction::Improved
        };
        let transform = [
            TransformMode::Cycle3,
            TransformMode::None,
            TransformMode::Cap(4),
        ][r.random_range(0..3)];
        Trial {
            source: r.random_range(0..n),
            spec,
            construction,
            transform,
        }
    }

    fn reproducer(&self, cfg: &SolveConfig, mutate: Option<MutateArg>) -> String {
        let s = &self.spec;
        format!(
            "graph: {}\n\
             bsssp gen --model gnm --n {} --m {} --weights {} --seed {} --out repro.gr\n\
             bsssp solve --graph repro.gr --source {} --construction {} --transform {} --seed {} --check{}\n",
            descriptor(s),
            s.n,
            s.m,
            s.weights,
            s.seed,
            self.source,
            self.construction,
            self.transform,
            cfg.seed,
            MutateArg::flag(mutate)
        )
    }
}

pub fn run(a: &VerifyArgs) -> CliResult<()> {
    let mutation = MutateArg::mutation(a.mutate);
    for i in 0..a.trials {
        let t = Trial::draw(a.seed, i, a.nmax);
        let g = generate(&t.spec)?;
        let cfg = SolveConfig {
            construction: t.construction.clone(),
            transform: t.transform,
            seed: t.spec.seed,
            check_invariants: true,
            mutation,
            ..Default::default()
        };
        let expected = dijkstra_reference(&g, t.source).into_values();
        let problem = match solve(&g, t.source, &cfg) {
            Ok(out) if !out.violations.is_empty() => Some(format!(
                "{} invariant violations, first: {}",
                out.violations.len(),
                out.violations[0]
            )),
            Ok(out) => out
                .distances
                .iter()
                .zip(&expected)
                .position(|(a, b)| a.to_bits() != b.to_bits())
                .map(|v| {
                    format!(
                        "vertex {v}: bundle {} vs reference {}",
                        out.distances[v], expected[v]
                    )
                }),
            Err(e) if is_internal(&e) => Some(e.to_string()),
            Err(e) => return Err(e.into()),
        };
        if let Some(problem) = problem {
            // Best effort: the exit code carries the verdict even if stdout is closed.
            let mut stdout = std::io::stdout().lock();
            let _ = write!(
                stdout,
                "trial {i} failed: {problem}\n{}{}",
                t.reproducer(&cfg, a.mutate),
                write_graph(&g)
            );
            return Err(CliError::Mismatch(format!(
                "verification failed on trial {i} of {}",
                a.trials
            )));
        }
    }
    println!("verified {} trials", a.trials);
    Ok(())
}
