//! One-sided testing of monotone, additive properties through covers.

use std::collections::VecDeque;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{QueryCounts, QueryGraph, VertexId};
use crate::hamiltonicity::Verdict;
use crate::oracles::{check_eps, CoveringOracle};
use crate::prf::Prf;

/// A graph property decided on small materialized subgraphs.
#[derive(Clone, Copy)]
pub struct PropertyDecider {
    pub name: &'static str,
    pub decide: fn(&QueryGraph) -> bool,
    /// Caller's claim that the property survives edge and vertex deletion.
    pub monotone: bool,
    /// Caller's claim that it holds on a disjoint union iff on both sides.
    pub additive: bool,
}

impl std::fmt::Debug for PropertyDecider {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PropertyDecider")
            .field("name", &self.name)
            .field("monotone", &self.monotone)
            .field("additive", &self.additive)
            .finish()
    }
}

/// Two-coloring by BFS.
pub fn is_bipartite(g: &QueryGraph) -> bool {
    odd_cycle(g).is_none()
}

/// Some vertex on an odd closed walk, if there is one.
fn odd_cycle(g: &QueryGraph) -> Option<VertexId> {
    let mut color: Vec<Option<bool>> = vec![None; g.n()];
    for s in 0..g.n() {
        if color[s].is_some() {
            continue;
        }
        color[s] = Some(false);
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            let cx = color[x].unwrap();
            for &y in g.adj(x) {
                match color[y] {
                    None => {
                        color[y] = Some(!cx);
                        queue.push_back(y);
                    }
                    Some(cy) if cy == cx => return Some(x),
                    _ => {}
                }
            }
        }
    }
    None
}

pub fn bipartite_decider() -> PropertyDecider {
    PropertyDecider {
        name: "bipartite",
        decide: is_bipartite,
        monotone: true,
        additive: true,
    }
}

pub fn decider_by_name(name: &str) -> Result<PropertyDecider> {
    match name {
        "bipartite" => Ok(bipartite_decider()),
        other => Err(Error::Usage(format!("unknown property `{other}`"))),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PropertyConfig {
    /// Sample size is `ceil(sample_factor · d / eps)`.
    pub sample_factor: f64,
    /// Largest cover handed to the decider.
    pub max_cover: usize,
}

impl Default for PropertyConfig {
    fn default() -> Self {
        PropertyConfig {
            sample_factor: 4.0,
            max_cover: 100_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PropertyOutcome {
    pub property: String,
    pub verdict: Verdict,
    /// A cover whose induced subgraph violates the property.
    pub witness: Option<Vec<VertexId>>,
    pub sample_size: usize,
    pub samples_used: usize,
    pub cap_violations: usize,
    pub queries: QueryCounts,
}

/// Samples `ceil(4d/eps)` vertices and rejects iff some cover's induced
/// subgraph violates the property. The oracle should be built with
/// parameter `eps/2`.
pub fn test_property(
    g: &QueryGraph,
    decider: &PropertyDecider,
    eps: f64,
    oracle: &dyn CoveringOracle,
    seed: u64,
    cfg: &PropertyConfig,
) -> Result<PropertyOutcome> {
    check_eps(eps)?;
    let d = g.degree_bound().ok_or(Error::UnboundedDegree)?;
    let start = g.counts();
    let sample_size = (cfg.sample_factor * d.max(1) as f64 / eps).ceil() as usize;
    let mut out = PropertyOutcome {
        property: decider.name.to_string(),
        verdict: Verdict::Accept,
        witness: None,
        sample_size,
        samples_used: 0,
        cap_violations: 0,
        queries: QueryCounts::default(),
    };
    if g.n() > 0 {
        let mut rng = Prf::new(seed, &format!("property/{}/sample", decider.name)).stream(&[]);
        for _ in 0..sample_size {
            let v = rng.gen_range(0..g.n());
            let cover = oracle.cover(v)?;
            out.samples_used += 1;
            out.cap_violations += cover.cap_violated as usize;
            if cover.len() > cfg.max_cover {
                return Err(Error::Budget {
                    what: "cover handed to the property decider",
                    size: cover.len(),
                    limit: cfg.max_cover,
                });
            }
            for &x in &cover.set {
                g.neighbors(x)?;
            }
            let (sub, _) = g.induced_subgraph(&cover.set)?;
            if !(decider.decide)(&sub) {
                out.verdict = Verdict::Reject;
                out.witness = Some(cover.set);
                break;
            }
        }
    }
    out.queries = g.counts().since(&start);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::BallOracle;

    fn cycle(n: usize) -> QueryGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        QueryGraph::from_edges(n, &edges, Some(2)).unwrap()
    }

    #[test]
    fn bipartite_examples() {
        assert!(is_bipartite(&cycle(6)));
        assert!(!is_bipartite(&cycle(5)));
        let tree = QueryGraph::from_edges(5, &[(0, 1), (0, 2), (2, 3), (2, 4)], None).unwrap();
        assert!(is_bipartite(&tree));
        assert!(is_bipartite(&QueryGraph::from_edges(0, &[], None).unwrap()));
    }

    #[test]
    fn decider_flags_hold_on_samples() {
        // additivity on a disjoint union, monotonicity on a subgraph
        let union = QueryGraph::from_edges(9, &[(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 4), (7, 8)], None).unwrap();
        let (a, _) = union.induced_subgraph(&[0, 1, 2, 3]).unwrap();
        let (b, _) = union.induced_subgraph(&[4, 5, 6, 7, 8]).unwrap();
        assert_eq!(is_bipartite(&union), is_bipartite(&a) && is_bipartite(&b));
        let (sub, _) = a.induced_subgraph(&[0, 1, 2]).unwrap();
        assert!(is_bipartite(&a) && is_bipartite(&sub));
    }

    #[test]
    fn accepts_bipartite_and_empty() {
        let g = cycle(40);
        let o = BallOracle::new(&g, 3, 50);
        for seed in 0..20 {
            let out = test_property(&g, &bipartite_decider(), 0.3, &o, seed, &PropertyConfig::default()).unwrap();
            assert_eq!(out.verdict, Verdict::Accept);
        }
        let empty = QueryGraph::from_edges(5, &[], Some(0)).unwrap();
        let o = BallOracle::new(&empty, 3, 50);
        let out = test_property(&empty, &bipartite_decider(), 0.3, &o, 0, &PropertyConfig::default()).unwrap();
        assert_eq!(out.verdict, Verdict::Accept);
    }

    #[test]
    fn rejects_triangles_with_witness() {
        let edges: Vec<_> = (0..10).flat_map(|t| [(3 * t, 3 * t + 1), (3 * t + 1, 3 * t + 2), (3 * t, 3 * t + 2)]).collect();
        let g = QueryGraph::from_edges(30, &edges, Some(2)).unwrap();
        let o = BallOracle::new(&g, 1, 10);
        let out = test_property(&g, &bipartite_decider(), 0.2, &o, 4, &PropertyConfig::default()).unwrap();
        assert_eq!(out.verdict, Verdict::Reject);
        let (sub, _) = g.induced_subgraph(&out.witness.unwrap()).unwrap();
        assert!(!is_bipartite(&sub));
    }
}
