//! Text graph format.
//!
//! ```text
//! n m [d] [weighted]
//! u v [weight]        (m lines, 0-based ids)
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. The writer emits edges
//! in rank order, so equal graphs serialize byte-identically.

use std::fmt::Write as _;
use std::path::Path;

use super::{QueryGraph, VertexId, Weight};
use crate::error::{Error, Result};

pub fn parse_graph(text: &str) -> Result<QueryGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing header".into(),
    })?;
    let perr = |line: usize, msg: String| Error::Parse { line, msg };
    let mut tokens = header.split_whitespace();
    let n: usize = tokens
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| perr(hline, "header must start with `n m`".into()))?;
    let m: usize = tokens
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| perr(hline, "header must start with `n m`".into()))?;
    let mut degree_bound = None;
    let mut weighted = false;
    for t in tokens {
        if t == "weighted" {
            weighted = true;
        } else if let (Ok(d), false, None) = (t.parse::<usize>(), weighted, degree_bound) {
            degree_bound = Some(d);
        } else {
            return Err(perr(hline, format!("unexpected header token `{t}`")));
        }
    }

    let mut plain = Vec::new();
    let mut heavy = Vec::new();
    for (lineno, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let expect = if weighted { 3 } else { 2 };
        if toks.len() != expect {
            return Err(perr(lineno, format!("expected {expect} fields, found {}", toks.len())));
        }
        let u: VertexId = toks[0].parse().map_err(|_| perr(lineno, format!("bad vertex `{}`", toks[0])))?;
        let v: VertexId = toks[1].parse().map_err(|_| perr(lineno, format!("bad vertex `{}`", toks[1])))?;
        if weighted {
            let w = Weight::parse(toks[2]).ok_or_else(|| perr(lineno, format!("bad weight `{}`", toks[2])))?;
            heavy.push((u, v, w));
        } else {
            plain.push((u, v));
        }
    }
    let found = if weighted { heavy.len() } else { plain.len() };
    if found != m {
        return Err(perr(hline, format!("header declares {m} edges, file has {found}")));
    }
    if weighted {
        QueryGraph::from_weighted_edges(n, &heavy, degree_bound)
    } else {
        QueryGraph::from_edges(n, &plain, degree_bound)
    }
}

pub fn write_graph(g: &QueryGraph) -> String {
    let mut out = String::new();
    write!(out, "{} {}", g.n(), g.m()).unwrap();
    if let Some(d) = g.degree_bound() {
        write!(out, " {d}").unwrap();
    }
    if g.is_weighted() {
        out.push_str(" weighted");
    }
    out.push('\n');
    for e in g.edges() {
        if g.is_weighted() {
            writeln!(out, "{} {} {}", e.u, e.v, g.weight(e).unwrap()).unwrap();
        } else {
            writeln!(out, "{} {}", e.u, e.v).unwrap();
        }
    }
    out
}

pub fn load_graph(path: impl AsRef<Path>) -> Result<QueryGraph> {
    parse_graph(&std::fs::read_to_string(path)?)
}

pub fn save_graph(g: &QueryGraph, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, write_graph(g))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_header_variants() {
        let g = parse_graph("3 2\n0 1\n1 2\n").unwrap();
        assert_eq!((g.n(), g.m(), g.degree_bound(), g.is_weighted()), (3, 2, None, false));
        let g = parse_graph("# c\n3 2 2 weighted\n\n1 2 2.5\n0 1 1\n").unwrap();
        assert_eq!(g.degree_bound(), Some(2));
        assert_eq!(g.max_weight(), Weight::from_raw(2_500_000));
        let g = parse_graph("2 1 weighted\n0 1 3\n").unwrap();
        assert_eq!(g.degree_bound(), None);
    }

    #[test]
    fn reports_bad_input_with_line_numbers() {
        assert!(matches!(parse_graph(""), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_graph("3 2\n0 1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_graph("3 1\n0 x\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_graph("3 1 weighted\n0 1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_graph("3 1 bogus\n0 1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_graph("3 2\n0 1\n1 0\n"), Err(Error::NotSimple(_))));
        assert!(matches!(parse_graph("3 1\n1 1\n"), Err(Error::NotSimple(_))));
        assert!(matches!(parse_graph("3 2 1\n0 1\n1 2\n"), Err(Error::DegreeBound { .. })));
    }

    #[test]
    fn writer_sorts_by_rank() {
        let g = parse_graph("4 3\n2 3\n1 0\n0 3\n").unwrap();
        assert_eq!(write_graph(&g), "4 3\n0 1\n0 3\n2 3\n");
    }

    proptest! {
        #[test]
        fn write_parse_roundtrip(n in 2usize..12, raw in proptest::collection::vec((0usize..12, 0usize..12, 1u64..5_000_000u64), 0..30)) {
            let mut seen = std::collections::HashSet::new();
            let edges: Vec<_> = raw.into_iter()
                .filter(|&(u, v, _)| u < n && v < n && u != v)
                .filter(|&(u, v, _)| seen.insert((u.min(v), u.max(v))))
                .map(|(u, v, w)| (u, v, Weight::from_raw(w + Weight::SCALE)))
                .collect();
            let g = QueryGraph::from_weighted_edges(n, &edges, None).unwrap();
            let text = write_graph(&g);
            let back = parse_graph(&text).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(write_graph(&back), text);
        }
    }
}
