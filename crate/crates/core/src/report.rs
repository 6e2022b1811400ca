//! Machine-readable run reports.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::solver::{Algorithm, SolveConfig, SolveOutcome};

/// One solver run. Every field except `wall_ms` is a deterministic function
/// of the input and configuration.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub input: String,
    pub algorithm: String,
    pub construction: Option<String>,
    pub transform: Option<String>,
    pub source: usize,
    pub k: Option<u32>,
    pub threshold: Option<usize>,
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    pub n_t: usize,
    pub m_t: usize,
    pub size_r: Option<usize>,
    pub size_r1: Option<usize>,
    pub size_r2: Option<usize>,
    pub sum_ball: Option<usize>,
    pub max_ball: Option<usize>,
    pub mean_sv: Option<f64>,
    pub comparisons: Option<u64>,
    pub additions: Option<u64>,
    pub extract_mins: usize,
    pub reached: usize,
    pub wall_ms: f64,
    pub checksum: String,
}

impl RunReport {
    pub fn new(
        input: impl Into<String>,
        source: usize,
        cfg: &SolveConfig,
        out: &SolveOutcome,
    ) -> Self {
        let bundle = cfg.algorithm == Algorithm::Bundle;
        RunReport {
            input: input.into(),
            algorithm: cfg.algorithm.to_string(),
            construction: bundle.then(|| cfg.construction.to_string()),
            transform: bundle.then(|| cfg.transform.to_string()),
            source,
            k: out.k.map(|k| k.k),
            threshold: out.k.map(|k| k.threshold),
            seed: cfg.seed,
            n: out.n,
            m: out.m,
            n_t: out.n_t,
            m_t: out.m_t,
            size_r: out.stats.map(|s| s.size_r),
            size_r1: out.stats.map(|s| s.size_r1),
            size_r2: out.stats.map(|s| s.size_r2),
            sum_ball: out.stats.map(|s| s.sum_ball),
            max_ball: out.stats.map(|s| s.max_ball),
            mean_sv: out.stats.map(|s| s.mean_sv),
            comparisons: out.cost.map(|c| c.comparisons),
            additions: out.cost.map(|c| c.additions),
            extract_mins: out.extract_mins,
            reached: out.distances.iter().filter(|d| d.is_finite()).count(),
            wall_ms: out.wall.as_secs_f64() * 1e3,
            checksum: checksum(&out.distances),
        }
    }
}

/// SHA-256 over the little-endian bit patterns of the distances, first 16
/// hex digits. Unreached hashes as the bits of `+inf`.
pub fn checksum(distances: &[f64]) -> String {
    let mut h = Sha256::new();
    for d in distances {
        h.update(d.to_bits().to_le_bytes());
    }
    hex::encode(&h.finalize()[..8])
}

/// Formats a distance for dumps: 17 significant digits, `inf` for Unreached.
pub fn format_distance(d: f64) -> String {
    if d.is_finite() {
        let s = format!("{d:.16e}");
        // Prefer the plain form when it round-trips, e.g. `3` rather than `3.0000000000000000e0`.
        let plain = format!("{d}");
        if plain.parse::<f64>().ok() == Some(d) && plain.len() <= s.len() {
            plain
        } else {
            s
        }
    } else {
        "inf".to_string()
    }
}

/// One `vertex distance` line per vertex.
pub fn distance_dump(distances: &[f64]) -> String {
    let mut out = String::with_capacity(distances.len() * 12);
    for (v, &d) in distances.iter().enumerate() {
        out.push_str(&v.to_string());
        out.push(' ');
        out.push_str(&format_distance(d));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checksum_is_stable_and_sensitive() {
        let a = checksum(&[0.0, 1.0, f64::INFINITY]);
        assert_eq!(a, checksum(&[0.0, 1.0, f64::INFINITY]));
        assert_eq!(a.len(), 16);
        assert_ne!(a, checksum(&[0.0, 1.0, 2.0]));
    }

    #[test]
    fn dump_format() {
        assert_eq!(distance_dump(&[0.0, 1.0, 3.0]), "0 0\n1 1\n2 3\n");
        assert_eq!(distance_dump(&[f64::INFINITY]), "0 inf\n");
        for d in [0.1, 1.0 / 3.0, 123456.789e10, 5e-324] {
            assert_eq!(
                format_distance(d).parse::<f64>().unwrap().to_bits(),
                d.to_bits()
            );
        }
    }
}
