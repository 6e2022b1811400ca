use std::path::PathBuf;

use bsssp::graph::{generate, write_graph, GenModel, GenSpec, WeightLaw};
use clap::Args;

use crate::error::CliResult;
use crate::input::write_output;

/// Graph family flags shared by `gen`, `bench` and `stats`.
#[derive(Args, Debug, Clone)]
pub struct FamilyArgs {
    /// gnm, grid, cycle, path, star or clustered.
    #[arg(long, default_value = "gnm")]
    pub model: GenModel,
    /// unit, uniform or exp:<ratio>.
    #[arg(long, default_value = "uniform")]
    pub weights: WeightLaw,
    /// Grid height; defaults to the largest divisor of n not above sqrt(n).
    #[arg(long)]
    pub rows: Option<usize>,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long)]
    pub n: usize,
    /// Edge count for gnm and clustered; ignored by the fixed-shape models.
    #[arg(long, default_value_t = 0)]
    pub m: usize,
    #[arg(long, env = "BSSSP_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn spec(family: &FamilyArgs, n: usize, m: usize, seed: u64) -> GenSpec {
    GenSpec {
        model: family.model,
        n,
        m,
        weights: family.weights,
        seed,
        rows: family.rows,
    }
}

pub fn descriptor(s: &GenSpec) -> String {
    format!(
        "{}:n={},m={},weights={},seed={}",
        s.model, s.n, s.m, s.weights, s.seed
    )
}

pub fn run(a: &GenArgs) -> CliResult<()> {
    let g = generate(&spec(&a.family, a.n, a.m, a.seed))?;
    write_output(a.out.as_deref(), &write_graph(&g))
}
