//! DIMACS shortest-path style text (`p sp n m`, `a u v w`, `c ...`).
//!
//! Each `a` line is one undirected edge with 1-based endpoints. Files written
//! by directed tools that list both directions therefore load as parallel
//! edge pairs, which leaves every distance unchanged.

use std::fmt::Write as _;

use super::{is_valid_weight, Edge, Graph};
use crate::error::{Error, Result};

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let mut fields = raw.split_whitespace();
        let Some(tag) = fields.next() else { continue };
        match tag {
            "c" => {}
            "p" => {
                if header.is_some() {
                    return Err(parse_err(line, "duplicate problem line"));
                }
                let kind = fields.next();
                if kind != Some("sp") {
                    return Err(parse_err(line, "expected `p sp <n> <m>`"));
                }
                let n = next_count(&mut fields, line)?;
                let m = next_count(&mut fields, line)?;
                if fields.next().is_some() {
                    return Err(parse_err(line, "trailing fields on problem line"));
                }
                edges.reserve(m);
                header = Some((n, m));
            }
            "a" => {
                let Some((n, _)) = header else {
                    return Err(parse_err(line, "edge line before problem line"));
                };
                let u = next_id(&mut fields, line, n)?;
                let v = next_id(&mut fields, line, n)?;
                let text = fields
                    .next()
                    .ok_or_else(|| parse_err(line, "missing weight"))?;
                let w: f64 = text.parse().map_err(|_| Error::BadWeight {
                    line,
                    text: text.to_string(),
                })?;
                if !is_valid_weight(w) {
                    return Err(Error::BadWeight {
                        line,
                        text: text.to_string(),
                    });
                }
                if fields.next().is_some() {
                    return Err(parse_err(line, "trailing fields on edge line"));
                }
                edges.push(Edge { u, v, w });
            }
            other => return Err(parse_err(line, &format!("unknown line type {other:?}"))),
        }
    }
    let (n, m) = header.ok_or_else(|| parse_err(last_line.max(1), "missing problem line"))?;
    if edges.len() != m {
        return Err(parse_err(
            last_line.max(1),
            &format!("problem line declares {m} edges, found {}", edges.len()),
        ));
    }
    Graph::from_edges(n, edges)
}

/// Serializes in edge-id order. Weights use the shortest representation that
/// parses back to the same `f64`.
pub fn write_graph(g: &Graph) -> String {
    let mut out = String::with_capacity(16 * (g.m() + 1));
    writeln!(out, "p sp {} {}", g.n(), g.m()).unwrap();
    for e in g.edges() {
        writeln!(out, "a {} {} {}", e.u + 1, e.v + 1, e.w).unwrap();
    }
    out
}

fn parse_err(line: usize, msg: &str) -> Error {
    Error::Parse {
        line,
        msg: msg.to_string(),
    }
}

fn next_count<'a>(fields: &mut impl Iterator<Item = &'a str>, line: usize) -> Result<usize> {
    fields
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| parse_err(line, "expected a non-negative integer"))
}

fn next_id<'a>(fields: &mut impl Iterator<Item = &'a str>, line: usize, n: usize) -> Result<usize> {
    let id: u64 = fields
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| parse_err(line, "expected a vertex id"))?;
    if id == 0 || id > n as u64 {
        return Err(Error::OutOfRange { line, id, n });
    }
    Ok(id as usize - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GenModel, GenSpec, WeightLaw};
    use proptest::prelude::*;

    #[test]
    fn parses_minimal_input() {
        let g = parse_graph("p sp 3 2\na 1 2 1\na 2 3 2").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(
            g.edges(),
            &[Edge { u: 0, v: 1, w: 1.0 }, Edge { u: 1, v: 2, w: 2.0 }]
        );
    }

    #[test]
    fn parses_isolated_vertex() {
        let g = parse_graph("c lonely\np sp 1 0\n").unwrap();
        assert_eq!((g.n(), g.m()), (1, 0));
    }

    #[test]
    fn rejects_out_of_range_id() {
        assert!(matches!(
            parse_graph("p sp 3 1\na 1 4 1"),
            Err(Error::OutOfRange {
                line: 2,
                id: 4,
                n: 3
            })
        ));
        assert!(matches!(
            parse_graph("p sp 3 1\na 0 1 1"),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn rejects_bad_weights() {
        for w in ["-1", "nan", "NaN", "inf", "abc"] {
            let text = format!("p sp 2 1\na 1 2 {w}");
            assert!(
                matches!(parse_graph(&text), Err(Error::BadWeight { line: 2, .. })),
                "{w}"
            );
        }
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(matches!(
            parse_graph("a 1 2 1\np sp 2 1"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_graph("p sp 2 1\na 1 2"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph("p sp 2 2\na 1 2 1"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_graph("p max 2 1\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_graph("x\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(parse_graph(""), Err(Error::Parse { .. })));
    }

    #[test]
    fn duplicate_lines_are_parallel_edges() {
        let g = parse_graph("p sp 2 2\na 1 2 1\na 1 2 1").unwrap();
        assert_eq!(g.m(), 2);
        assert_eq!(g.degree(0), 2);
    }

    #[test]
    fn writes_single_vertex() {
        assert_eq!(write_graph(&Graph::empty(1)), "p sp 1 0\n");
    }

    #[test]
    fn path_round_trip() {
        let g = parse_graph("p sp 3 2\na 1 2 1\na 2 3 2").unwrap();
        let back = parse_graph(&write_graph(&g)).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn random_gnm_round_trip() {
        for seed in 0..100 {
            let g = generate(&GenSpec {
                model: GenModel::Gnm,
                n: 40,
                m: 90,
                weights: WeightLaw::Uniform,
                seed,
                rows: None,
            })
            .unwrap();
            let back = parse_graph(&write_graph(&g)).unwrap();
            assert_eq!(back.canonical_edges(), g.canonical_edges());
            assert_eq!(back.n(), g.n());
        }
    }

    proptest! {
        #[test]
        fn round_trip_arbitrary_weights(
            n in 1usize..20,
            raw in proptest::collection::vec((0usize..20, 0usize..20, 0.0f64..1e9), 0..40)
        ) {
            let edges: Vec<_> = raw.into_iter().map(|(u, v, w)| Edge { u: u % n, v: v % n, w }).collect();
            let g = Graph::from_edges(n, edges).unwrap();
            let back = parse_graph(&write_graph(&g)).unwrap();
            prop_assert_eq!(back, g);
        }
    }
}
