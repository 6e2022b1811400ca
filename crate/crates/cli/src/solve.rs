use std::path::PathBuf;

use bsssp::report::{distance_dump, RunReport};
use bsssp::solver::{solve, Algorithm, SolveConfig};
use bsssp::transform::TransformMode;
use clap::{Args, ValueEnum};

use crate::error::{CliError, CliResult};
use crate::input::{parse_construction, read_graph, write_output};
use crate::verify::MutateArg;

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Solver flags shared by `solve` and `bench`.
#[derive(Args, Debug, Clone)]
pub struct SolverArgs {
    /// Override the automatic choice of k.
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long, env = "BSSSP_SEED", default_value_t = 0)]
    pub seed: u64,
    /// simple, improved or fromR:<file>.
    #[arg(long, default_value = "improved")]
    pub construction: String,
    /// none, cycle3 or cap:<d>.
    #[arg(long, default_value = "cycle3")]
    pub transform: TransformMode,
    /// Count comparisons and additions.
    #[arg(long)]
    pub metered: bool,
}

impl SolverArgs {
    pub fn config(&self, algorithm: Algorithm) -> CliResult<SolveConfig> {
        Ok(SolveConfig {
            algorithm,
            construction: parse_construction(&self.construction)?,
            transform: self.transform,
            k: self.k,
            seed: self.seed,
            metered: self.metered,
            ..Default::default()
        })
    }
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    /// DIMACS shortest-path file.
    #[arg(long)]
    pub graph: PathBuf,
    /// 0-based source vertex.
    #[arg(long, default_value_t = 0)]
    pub source: usize,
    #[arg(long, default_value = "bundle")]
    pub algo: Algorithm,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Write one `vertex distance` line per vertex, `inf` for Unreached.
    #[arg(long)]
    pub dist_out: Option<PathBuf>,
    /// Run instrumented and audit the run; exits 3 on any violation.
    #[arg(long)]
    pub check: bool,
    #[arg(long, value_enum, hide = true)]
    pub mutate: Option<MutateArg>,
}

pub fn run(a: &SolveArgs) -> CliResult<()> {
    let g = read_graph(&a.graph)?;
    if a.source >= g.n() {
        return Err(CliError::Usage(format!(
            "source {} out of range for n = {}",
            a.source,
            g.n()
        )));
    }
    let cfg = SolveConfig {
        check_invariants: a.check,
        mutation: MutateArg::mutation(a.mutate),
        ..a.solver.config(a.algo)?
    };
    let out = solve(&g, a.source, &cfg)?;
    if let Some(v) = out.violations.first() {
        return Err(CliError::Invariant(format!(
            "{v} ({} in total)",
            out.violations.len()
        )));
    }
    if let Some(path) = &a.dist_out {
        write_output(Some(path), &distance_dump(&out.distances))?;
    }
    let report = RunReport::new(a.graph.display().to_string(), a.source, &cfg, &out);
    print_report(&report, a.format)
}

pub fn print_report(report: &RunReport, format: Format) -> CliResult<()> {
    match format {
        Format::Json => write_output(None, &(serde_json::to_string(report)? + "\n"))?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(std::io::stdout());
            w.serialize(report)?;
            w.flush().map_err(|e| CliError::Output(e.to_string()))?;
        }
    }
    Ok(())
}
