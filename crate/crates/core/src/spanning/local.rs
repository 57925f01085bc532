//! Per-edge membership answers.

use std::collections::VecDeque;

use super::global::SpanStructure;
use super::{Rule, SpanConfig, SpannerDecision};
use crate::error::{Error, Result};
use crate::graph::{EdgeRef, QueryGraph, VertexId};
use crate::oracles::{BuiltOracle, CoveringOracle};

fn decision(edge: EdgeRef, keep: bool, rule: Rule) -> SpannerDecision {
    SpannerDecision { edge, keep, rule }
}

/// Covering oracle for the bounded-degree algorithm, at parameter `eps/W`.
pub fn bounded_oracle<'g>(g: &'g QueryGraph, cfg: &SpanConfig) -> Result<BuiltOracle<'g>> {
    cfg.validate()?;
    cfg.oracle.build(g, cfg.epsilon / cfg.wmax, cfg.seed)
}

/// Bounded-degree rule: `e = {u, v}` is dropped iff `G[S_u ∪ S_v] - e` joins
/// `u` and `v` through edges lighter than `e`, i.e. `e` is the heaviest edge
/// of a cycle inside the two covers.
pub fn local_edge_bounded(g: &QueryGraph, e: EdgeRef, oracle: &dyn CoveringOracle) -> Result<SpannerDecision> {
    if g.degree_bound().is_none() {
        return Err(Error::UnboundedDegree);
    }
    if !g.is_weighted() {
        return Err(Error::Unweighted);
    }
    let key = g.weight_key_checked(e)?;
    let mut set = oracle.cover(e.u)?.set;
    set.extend(oracle.cover(e.v)?.set);
    set.sort_unstable();
    set.dedup();
    let local = |x: VertexId| set.binary_search(&x).ok();
    let mut lighter: Vec<Vec<usize>> = vec![Vec::new(); set.len()];
    for (i, &x) in set.iter().enumerate() {
        for &y in g.neighbors(x)? {
            if let Some(j) = local(y) {
                if g.weight_key(EdgeRef::new(x, y)) < key {
                    lighter[i].push(j);
                }
            }
        }
    }
    let (s, t) = (local(e.u).expect("u in its cover"), local(e.v).expect("v in its cover"));
    let mut seen = vec![false; set.len()];
    seen[s] = true;
    let mut queue = VecDeque::from([s]);
    while let Some(x) = queue.pop_front() {
        if x == t {
            return Ok(decision(e, false, Rule::CycleRuleNo));
        }
        for &y in &lighter[x] {
            if !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    Ok(decision(e, true, Rule::CycleRuleYes))
}

/// Unbounded-degree rule, answering membership in the global `E'` for the
/// same configuration and seed.
pub fn local_edge_unbounded(s: &SpanStructure, e: EdgeRef) -> Result<SpannerDecision> {
    let g = s.graph();
    g.weight_key_checked(e)?;
    let hu = g.degree_query(e.u)? as f64 > s.delta();
    let hv = g.degree_query(e.v)? as f64 > s.delta();
    let (cu, cv) = match (hu, hv) {
        (true, true) => return Ok(decision(e, true, Rule::HeavyHeavy)),
        (false, false) => {
            if s.part_of(e.u) != s.part_of(e.v) {
                return Ok(decision(e, true, Rule::CutEdge));
            }
            let (f, su) = s.locate(e.u)?;
            let sv = f.subpart_of(e.v).expect("same part");
            if su == sv {
                let keep = f.is_tree_edge(e);
                return Ok(decision(e, keep, if keep { Rule::SubpartTree } else { Rule::SubpartReject }));
            }
            match (f.subparts[su].center, f.subparts[sv].center) {
                (Some(a), Some(b)) if a != b => (a, b),
                _ => return Ok(decision(e, false, Rule::SubpartReject)),
            }
        }
        _ => {
            let (light, heavy) = if hu { (e.v, e.u) } else { (e.u, e.v) };
            let (f, sp) = s.locate(light)?;
            let sub = &f.subparts[sp];
            let center = sub.center.expect("a sub-part with a heavy neighbour has a center");
            if center == heavy {
                return Ok(decision(e, sub.link == Some(e), Rule::CenterLink));
            }
            (center, heavy)
        }
    };
    Ok(match s.sample_lightest(cu, cv)? {
        None => decision(e, true, Rule::ClusterNull),
        Some(f) if s.beats_sample(e, Some(f)) => decision(e, true, Rule::ClusterSampleWin),
        Some(_) => decision(e, false, Rule::ClusterSampleLose),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Weight;
    use crate::oracles::{BallOracle, OracleSpec};
    use crate::spanning::{build_global, spans_components};

    fn w(x: u64) -> Weight {
        Weight::from_int(x)
    }

    #[test]
    fn triangle_cycle_rule() {
        let g = QueryGraph::from_weighted_edges(3, &[(0, 1, w(1)), (1, 2, w(2)), (0, 2, w(3))], Some(2)).unwrap();
        let o = BallOracle::new(&g, 1, 10);
        assert!(local_edge_bounded(&g, EdgeRef::new(0, 1), &o).unwrap().keep);
        assert!(local_edge_bounded(&g, EdgeRef::new(1, 2), &o).unwrap().keep);
        let d = local_edge_bounded(&g, EdgeRef::new(0, 2), &o).unwrap();
        assert_eq!((d.keep, d.rule), (false, Rule::CycleRuleNo));
    }

    #[test]
    fn bridges_always_kept() {
        // two triangles joined by a heavy bridge 2-3
        let edges = [(0, 1, w(1)), (1, 2, w(1)), (0, 2, w(1)), (2, 3, w(4)), (3, 4, w(1)), (4, 5, w(1)), (3, 5, w(2))];
        let g = QueryGraph::from_weighted_edges(6, &edges, Some(3)).unwrap();
        for r in 0..4 {
            let o = BallOracle::new(&g, r, 10);
            assert!(local_edge_bounded(&g, EdgeRef::new(2, 3), &o).unwrap().keep);
        }
        let cfg = SpanConfig::new(0.5, 4.0, 0);
        let s = SpanStructure::new(&g, &cfg).unwrap();
        assert!(local_edge_unbounded(&s, EdgeRef::new(2, 3)).unwrap().keep);
    }

    #[test]
    fn unbounded_matches_global_on_small_hubs() {
        // wheel-like graph: hubs 0 and 1 around a weighted path
        let p = 12;
        let mut edges = Vec::new();
        for i in 0..p - 1 {
            edges.push((2 + i, 3 + i, w(1 + (i as u64 * 7) % 5)));
        }
        for i in 0..p {
            let hub = if i < p / 2 { 0 } else { 1 };
            edges.push((hub, 2 + i, w(1 + (i as u64 * 3) % 5)));
        }
        edges.push((0, 1, w(5)));
        let g = QueryGraph::from_weighted_edges(p + 2, &edges, None).unwrap();
        let cfg = SpanConfig {
            heavy_threshold: Some(3.0),
            sample_size: Some(2),
            oracle: OracleSpec::Exhaustive { k: Some(3) },
            ..SpanConfig::new(0.5, 5.0, 11)
        };
        let global = build_global(&g, &cfg).unwrap();
        let s = SpanStructure::new(&g, &cfg).unwrap();
        let mut kept = Vec::new();
        for e in g.edges() {
            let d = local_edge_unbounded(&s, e).unwrap();
            assert_eq!(d.keep, global.contains(e), "{e} {:?}", d.rule);
            if d.keep {
                kept.push(e);
            }
        }
        assert!(spans_components(&g, &kept));
    }

    #[test]
    fn missing_edge_is_an_error() {
        let g = QueryGraph::from_weighted_edges(3, &[(0, 1, w(1))], Some(2)).unwrap();
        let o = BallOracle::new(&g, 1, 10);
        assert!(local_edge_bounded(&g, EdgeRef::new(0, 2), &o).is_err());
    }
}
