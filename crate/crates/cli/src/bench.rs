use bsssp::graph::generate;
use bsssp::report::RunReport;
use bsssp::solver::{solve, Algorithm};
use clap::Args;

use crate::error::{CliError, CliResult};
use crate::gen::{descriptor, spec, FamilyArgs};
use crate::solve::SolverArgs;

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// `2^a..2^b` for every power of two in range, or a comma list such as
    /// `1000,2^14`.
    #[arg(long, value_parser = parse_sizes, default_value = "2^12..2^17")]
    pub sizes: Sizes,
    #[arg(long, default_value_t = 1)]
    pub reps: usize,
    /// Comma-separated algorithms.
    #[arg(long, value_delimiter = ',', default_value = "bundle")]
    pub algo: Vec<Algorithm>,
    /// Edges per vertex for gnm and clustered.
    #[arg(long, default_value_t = 2.0)]
    pub density: f64,
    #[arg(long, default_value_t = 0)]
    pub source: usize,
    #[command(flatten)]
    pub family: FamilyArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Debug, Clone)]
pub struct Sizes(pub Vec<usize>);

fn parse_size(s: &str) -> Result<usize, String> {
    match s.split_once('^') {
        Some(("2", e)) => {
            let e: u32 = e.parse().map_err(|_| format!("bad exponent in {s:?}"))?;
            1usize
                .checked_shl(e)
                .ok_or_else(|| format!("{s} is too large"))
        }
        Some(_) => Err(format!("only powers of 2 are supported, got {s:?}")),
        None => s.parse().map_err(|_| format!("bad size {s:?}")),
    }
}

pub fn parse_sizes(s: &str) -> Result<Sizes, String> {
    if let Some((lo, hi)) = s.split_once("..") {
        let (lo, hi) = (parse_size(lo)?, parse_size(hi)?);
        if !lo.is_power_of_two() || !hi.is_power_of_two() || lo > hi {
            return Err(format!("range {s:?} needs powers of two, low to high"));
        }
        let mut out = vec![lo];
        while *out.last().unwrap() < hi {
            out.push(out.last().unwrap() * 2);
        }
        Ok(Sizes(out))
    } else {
        s.split(',')
            .map(|t| parse_size(t.trim()))
            .collect::<Result<_, _>>()
            .map(Sizes)
    }
}

/// CSV header: `rep` followed by the report fields.
fn header() -> CliResult<Vec<String>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.serialize(RunReport::default())?;
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Output(e.to_string()))?;
    let mut r = csv::Reader::from_reader(bytes.as_slice());
    let mut fields = vec!["rep".to_string()];
    fields.extend(r.headers()?.iter().map(str::to_string));
    Ok(fields)
}

pub fn run(a: &BenchArgs) -> CliResult<()> {
    let mut out = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(std::io::stdout());
    out.write_record(header()?)?;
    for &n in &a.sizes.0 {
        let m = (a.density * n as f64).round() as usize;
        let gs = spec(&a.family, n, m, a.solver.seed);
        let g = generate(&gs)?;
        if a.source >= g.n() {
            return Err(CliError::Usage(format!(
                "source {} out of range for n = {n}",
                a.source
            )));
        }
        let input = descriptor(&gs);
        for rep in 0..a.reps {
            for &algo in &a.algo {
                let cfg = a.solver.config(algo)?;
                let report =
                    RunReport::new(input.clone(), a.source, &cfg, &solve(&g, a.source, &cfg)?);
                out.write_field(rep.to_string())?;
                out.serialize(&report)?;
            }
        }
        out.flush().map_err(|e| CliError::Output(e.to_string()))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_lists() {
        assert_eq!(
            parse_sizes("2^12..2^14").unwrap().0,
            vec![4096, 8192, 16384]
        );
        assert_eq!(parse_sizes("100, 2^3").unwrap().0, vec![100, 8]);
        assert!(parse_sizes("3^2").is_err());
        assert!(parse_sizes("2^5..2^3").is_err());
        assert!(parse_sizes("100..200").is_err());
    }
}
