use std::fs;
use std::io::Write;
use std::path::Path;

use bsssp::graph::{parse_graph, Graph};
use bsssp::solver::Construction;

use crate::error::{CliError, CliResult};

pub fn read_graph(path: &Path) -> CliResult<Graph> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_graph(&text).map_err(|source| CliError::Input {
        path: path.display().to_string(),
        source,
    })
}

/// `simple`, `improved` or `fromR:<file>`, where the file lists 0-based
/// vertex ids separated by whitespace; `#` starts a comment.
pub fn parse_construction(s: &str) -> CliResult<Construction> {
    match s {
        "simple" => Ok(Construction::Simple),
        "improved" => Ok(Construction::Improved),
        _ => {
            let path = s
                .strip_prefix("fromR:")
                .ok_or_else(|| CliError::Usage(format!("unknown construction {s:?}")))?;
            read_r_file(Path::new(path)).map(Construction::FromR)
        }
    }
}

fn read_r_file(path: &Path) -> CliResult<Vec<usize>> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let mut ids = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("");
        for tok in line.split_whitespace() {
            let id = tok.parse().map_err(|_| {
                CliError::Usage(format!("{}: bad vertex id {tok:?}", path.display()))
            })?;
            ids.push(id);
        }
    }
    Ok(ids)
}

/// Writes to `path`, or to standard output when `None`.
pub fn write_output(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::io(p, e)),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Output(e.to_string())),
    }
}
