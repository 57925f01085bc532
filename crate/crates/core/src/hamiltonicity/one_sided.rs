//! One-sided Hamiltonian-path tester for bounded-degree graphs.
//!
//! If `G` has a Hamiltonian path `P`, then for every vertex set `T` the path
//! enters and leaves `T` at most `|E(T, V\T)|` times in total, so `P`
//! restricted to `T` is a cover of `G[T]` with at most `cut/2 + 1` paths.
//! Any `T` that violates this is a certificate, which is why the tester can
//! never reject a graph that has a Hamiltonian path.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::path_cover::{min_path_cover, SubsetCoverTable, PATH_COVER_LIMIT};
use super::Verdict;
use crate::error::{Error, Result};
use crate::graph::{QueryCounts, QueryGraph, VertexId};
use crate::oracles::{check_eps, CoveringOracle};
use crate::prf::Prf;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OneSidedConfig {
    /// Sample size is `ceil(sample_factor · x / eps)`.
    pub sample_factor: f64,
    /// Connected subsets examined per cover before giving up.
    pub subset_cap: usize,
}

impl Default for OneSidedConfig {
    fn default() -> Self {
        OneSidedConfig {
            sample_factor: 4.0,
            subset_cap: 2_000_000,
        }
    }
}

/// `minpathcover(G[T]) - 1 > |E(T, V\T)| / 2`, a proof that `G` has no Hamiltonian path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub set: Vec<VertexId>,
    pub cover_size: usize,
    pub cut: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HamWitness {
    /// A connected cover with no outgoing edges that is not all of `V`.
    EmptyCut { cover: Vec<VertexId> },
    CutBound(Violation),
    /// The cover is all of `V` and its minimum path cover has more than one path.
    WholeGraph { cover_size: usize },
}

impl HamWitness {
    /// Re-derives the witness from `g` with exact computations.
    pub fn verify(&self, g: &QueryGraph) -> Result<bool> {
        Ok(match self {
            HamWitness::EmptyCut { cover } => {
                !cover.is_empty() && cover.len() < g.n() && g.cut_edges(cover).is_empty()
            }
            HamWitness::CutBound(v) => cut_bound_witness(g, &v.set)?.as_ref() == Some(v),
            HamWitness::WholeGraph { cover_size } => {
                let k = min_path_cover(g)?.size();
                k == *cover_size && k > 1
            }
        })
    }
}

/// Checks the path-count bound on `T`, returning the violation if there is one.
pub fn cut_bound_witness(g: &QueryGraph, t: &[VertexId]) -> Result<Option<Violation>> {
    let (sub, map) = g.induced_subgraph(t)?;
    let cover_size = min_path_cover(&sub)?.size();
    let cut = g.cut_edges(map.parents()).len();
    Ok((2 * cover_size > cut + 2).then(|| Violation {
        set: map.parents().to_vec(),
        cover_size,
        cut,
    }))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OneSidedOutcome {
    pub verdict: Verdict,
    pub witness: Option<HamWitness>,
    pub sample_size: usize,
    /// Samples examined before stopping.
    pub samples_used: usize,
    pub max_cover: usize,
    pub cap_violations: usize,
    pub subsets_checked: u64,
    pub queries: QueryCounts,
}

struct CoverCheck {
    witness: Option<HamWitness>,
    subsets: u64,
    cost: QueryCounts,
}

/// Samples `ceil(4x/eps)` vertices, asks the oracle for a cover of each and
/// rejects on the first certificate found among the cover's connected
/// subsets. The oracle should already be built with parameter `eps/6`.
pub fn test_ham_one_sided(
    g: &QueryGraph,
    eps: f64,
    oracle: &dyn CoveringOracle,
    seed: u64,
    cfg: &OneSidedConfig,
) -> Result<OneSidedOutcome> {
    check_eps(eps)?;
    if g.degree_bound().is_none() {
        return Err(Error::UnboundedDegree);
    }
    let start = g.counts();
    let sample_size = (cfg.sample_factor * oracle.size_bound() as f64 / eps).ceil().max(1.0) as usize;
    let mut out = OneSidedOutcome {
        verdict: Verdict::Accept,
        witness: None,
        sample_size,
        samples_used: 0,
        max_cover: 0,
        cap_violations: 0,
        subsets_checked: 0,
        queries: QueryCounts::default(),
    };
    if g.n() == 0 {
        return Ok(out);
    }
    let mut rng = Prf::new(seed, "ham/one-sided/sample").stream(&[]);
    let mut memo: HashMap<Vec<VertexId>, CoverCheck> = HashMap::new();
    for _ in 0..sample_size {
        let v = rand::Rng::gen_range(&mut rng, 0..g.n());
        let cover = oracle.cover(v)?;
        out.samples_used += 1;
        out.max_cover = out.max_cover.max(cover.len());
        out.cap_violations += cover.cap_violated as usize;
        let check = match memo.get(&cover.set) {
            Some(c) => {
                g.counter().charge(&c.cost);
                c
            }
            None => {
                let before = g.counts();
                let (witness, subsets) = check_cover(g, &cover.set, cfg.subset_cap)?;
                let cost = g.counts().since(&before);
                memo.entry(cover.set).or_insert(CoverCheck { witness, subsets, cost })
            }
        };
        out.subsets_checked += check.subsets;
        if let Some(w) = &check.witness {
            out.verdict = Verdict::Reject;
            out.witness = Some(w.clone());
            break;
        }
    }
    out.queries = g.counts().since(&start);
    Ok(out)
}

/// Steps on one cover `S`: the empty-cut test, then every connected `T ⊆ S`.
fn check_cover(g: &QueryGraph, s: &[VertexId], subset_cap: usize) -> Result<(Option<HamWitness>, u64)> {
    let mut deg = Vec::with_capacity(s.len());
    let mut lists = Vec::with_capacity(s.len());
    for &x in s {
        let nb = g.neighbors(x)?;
        deg.push(nb.len());
        lists.push(nb);
    }
    let local = |v: VertexId| s.binary_search(&v).ok();
    let internal: usize = lists.iter().map(|l| l.iter().filter(|&&y| local(y).is_some()).count()).sum();
    let cut = deg.iter().sum::<usize>() - internal;
    if cut == 0 {
        if s.len() < g.n() {
            return Ok((Some(HamWitness::EmptyCut { cover: s.to_vec() }), 0));
        }
        let k = min_path_cover(g)?.size();
        return Ok(((k > 1).then_some(HamWitness::WholeGraph { cover_size: k }), 0));
    }
    if s.len() > PATH_COVER_LIMIT {
        return Err(Error::Budget {
            what: "cover for subset enumeration",
            size: s.len(),
            limit: PATH_COVER_LIMIT,
        });
    }
    let adj: Vec<u32> = lists
        .iter()
        .map(|l| l.iter().filter_map(|&y| local(y)).fold(0u32, |m, i| m | (1 << i)))
        .collect();
    let table = SubsetCoverTable::build(&adj)?;
    let full: u32 = ((1u64 << s.len()) - 1) as u32;
    let mut checked = 0u64;
    for mask in 1..=full {
        if !connected(&adj, mask) {
            continue;
        }
        checked += 1;
        if checked > subset_cap as u64 {
            return Err(Error::Budget {
                what: "connected subsets of a cover",
                size: checked as usize,
                limit: subset_cap,
            });
        }
        let (mut degsum, mut twice_e) = (0usize, 0usize);
        let mut rest = mask;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            degsum += deg[i];
            twice_e += (adj[i] & mask).count_ones() as usize;
        }
        let t_cut = degsum - twice_e;
        let k = table.cover_size(mask);
        if 2 * k > t_cut + 2 {
            let set = (0..s.len()).filter(|&i| mask >> i & 1 == 1).map(|i| s[i]).collect();
            return Ok((
                Some(HamWitness::CutBound(Violation {
                    set,
                    cover_size: k,
                    cut: t_cut,
                })),
                checked,
            ));
        }
    }
    Ok((None, checked))
}

fn connected(adj: &[u32], mask: u32) -> bool {
    let mut reach = mask & mask.wrapping_neg();
    loop {
        let mut next = reach;
        let mut rest = reach;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            next |= adj[i] & mask;
        }
        if next == reach {
            return reach == mask;
        }
        reach = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::{exhaustive_partition, BallOracle, PartSize, PartitionOracle};

    fn graph(n: usize, edges: &[(usize, usize)], d: usize) -> QueryGraph {
        QueryGraph::from_edges(n, edges, Some(d)).unwrap()
    }

    #[test]
    fn cut_bound_examples() {
        let two_triangles = graph(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)], 2);
        assert_eq!(cut_bound_witness(&two_triangles, &[0, 1, 2]).unwrap(), None);

        // K_{1,5} hanging off a path by one edge
        let mut edges: Vec<_> = (1..=5).map(|l| (0, l)).collect();
        edges.extend([(5, 6), (6, 7)]);
        let g = graph(8, &edges, 5);
        let v = cut_bound_witness(&g, &[0, 1, 2, 3, 4, 5]).unwrap().unwrap();
        assert_eq!((v.cover_size, v.cut), (4, 1));

        let p4 = graph(4, &[(0, 1), (1, 2), (2, 3)], 2);
        assert_eq!(cut_bound_witness(&p4, &[0, 1, 2, 3]).unwrap(), None);
    }

    #[test]
    fn connectivity_of_masks() {
        // path 0-1-2
        let adj = [0b010, 0b101, 0b010];
        assert!(connected(&adj, 0b111));
        assert!(connected(&adj, 0b011));
        assert!(!connected(&adj, 0b101));
    }

    #[test]
    fn accepts_paths_and_grids() {
        let edges: Vec<_> = (0..29).map(|i| (i, i + 1)).collect();
        let p = graph(30, &edges, 2);
        let oracle = BallOracle::new(&p, 3, 22);
        for seed in 0..10 {
            let out = test_ham_one_sided(&p, 0.3, &oracle, seed, &OneSidedConfig::default()).unwrap();
            assert_eq!(out.verdict, Verdict::Accept);
        }
    }

    #[test]
    fn rejects_disjoint_paths_with_checkable_witness() {
        let edges: Vec<_> = (0..10).flat_map(|p| (0..3).map(move |i| (4 * p + i, 4 * p + i + 1))).collect();
        let g = graph(40, &edges, 2);
        let handle = exhaustive_partition(&g, 0.1, PartSize::Fixed(8));
        let out = test_ham_one_sided(&g, 0.2, &PartitionOracle::new(&handle), 1, &OneSidedConfig::default()).unwrap();
        assert_eq!(out.verdict, Verdict::Reject);
        assert!(out.witness.unwrap().verify(&g).unwrap());
    }

    #[test]
    fn whole_graph_cover_decided_exactly() {
        let star = graph(4, &[(0, 1), (0, 2), (0, 3)], 3);
        let big_ball = BallOracle::new(&star, 5, 10);
        let out = test_ham_one_sided(&star, 0.5, &big_ball, 0, &OneSidedConfig::default()).unwrap();
        assert_eq!(out.verdict, Verdict::Reject);
        assert_eq!(out.witness, Some(HamWitness::WholeGraph { cover_size: 2 }));

        let c5 = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)], 2);
        let out = test_ham_one_sided(&c5, 0.5, &BallOracle::new(&c5, 5, 10), 0, &OneSidedConfig::default()).unwrap();
        assert_eq!(out.verdict, Verdict::Accept);
    }

    #[test]
    fn oversized_cover_is_a_budget_error() {
        let edges: Vec<_> = (0..39).map(|i| (i, i + 1)).collect();
        let p = graph(40, &edges, 2);
        let oracle = BallOracle::new(&p, 12, 40);
        assert!(matches!(
            test_ham_one_sided(&p, 0.5, &oracle, 0, &OneSidedConfig::default()),
            Err(Error::Budget { .. })
        ));
    }
}
