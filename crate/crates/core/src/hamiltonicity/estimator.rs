//! Additive estimate of the distance to having a Hamiltonian path, for
//! graphs of unbounded degree.

use std::collections::HashMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::path_cover::min_path_cover;
use super::Verdict;
use crate::error::Result;
use crate::graph::{QueryCounts, QueryGraph};
use crate::oracles::{check_eps, OracleSpec};
use crate::prf::Prf;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EstimatorConfig {
    /// Arboricity bound of the excluded-minor class; heavy threshold is `8·r_arb/eps`.
    pub r_arb: f64,
    /// Sample size is `ceil(sample_factor / eps^2)`.
    pub sample_factor: f64,
}

impl Default for EstimatorConfig {
    fn default() -> Self {
        EstimatorConfig {
            r_arb: 9.0,
            sample_factor: 4.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HamEstimate {
    /// Estimated minimum path-cover size of `G`, i.e. `δ_HAM + 1` up to `±eps·n`.
    pub value: f64,
    pub epsilon: f64,
    pub sample_size: usize,
    pub samples: Vec<f64>,
    pub heavy_threshold: f64,
    pub heavy_count: usize,
    /// Cut size and part bound of the partition of `G[L]`.
    pub partition_cut: usize,
    pub partition_k: usize,
    pub queries: QueryCounts,
}

/// Splits off vertices of degree above `8·r_arb/eps`, partitions the rest
/// with parameter `eps/4`, and averages `x_v` over uniform samples:
/// `pc(G[S_v]) / |S_v|` for a light `v` in part `S_v`, 1 for a heavy `v`.
///
/// Only partition oracles qualify here.
pub fn estimate_ham_distance(
    g: &QueryGraph,
    eps: f64,
    oracle: &OracleSpec,
    seed: u64,
    cfg: &EstimatorConfig,
) -> Result<HamEstimate> {
    check_eps(eps)?;
    let start = g.counts();
    let n = g.n();
    let delta = 8.0 * cfg.r_arb / eps;
    let light: Vec<usize> = (0..n).filter(|&v| g.deg(v) as f64 <= delta).collect();
    let heavy_count = n - light.len();
    let (gl, map) = g.induced_subgraph(&light)?;
    let handle = oracle.partition(&gl, eps / 4.0)?;

    let sample_size = (cfg.sample_factor / (eps * eps)).ceil() as usize;
    let mut rng = Prf::new(seed, "ham/estimate/sample").stream(&[]);
    let mut per_part: HashMap<usize, f64> = HashMap::new();
    let mut samples = Vec::with_capacity(sample_size);
    if n > 0 {
        for _ in 0..sample_size {
            let v = rng.gen_range(0..n);
            let x = if g.degree_query(v)? as f64 > delta {
                1.0
            } else {
                let local = map.local(v).expect("light vertex is in G[L]");
                let idx = handle.part_index(local);
                match per_part.get(&idx) {
                    Some(&x) => x,
                    None => {
                        let part = &handle.parts[idx];
                        let (sub, _) = gl.induced_subgraph(part)?;
                        let x = min_path_cover(&sub)?.size() as f64 / part.len() as f64;
                        per_part.insert(idx, x);
                        x
                    }
                }
            };
            samples.push(x);
        }
    }
    let mean = if samples.is_empty() {
        0.0
    } else {
        samples.iter().sum::<f64>() / samples.len() as f64
    };
    Ok(HamEstimate {
        value: mean * n as f64,
        epsilon: eps,
        sample_size,
        samples,
        heavy_threshold: delta,
        heavy_count,
        partition_cut: handle.cut_edge_count,
        partition_k: handle.k,
        queries: g.counts().since(&start),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TolerantOutcome {
    pub verdict: Verdict,
    pub threshold: f64,
    pub estimate: HamEstimate,
}

/// Runs the estimator at `eps/8` and accepts iff the estimate is below `3/4·eps·n`.
pub fn tolerant_test_ham(
    g: &QueryGraph,
    eps: f64,
    oracle: &OracleSpec,
    seed: u64,
    cfg: &EstimatorConfig,
) -> Result<TolerantOutcome> {
    check_eps(eps)?;
    let estimate = estimate_ham_distance(g, eps / 8.0, oracle, seed, cfg)?;
    let threshold = 0.75 * eps * g.n() as f64;
    Ok(TolerantOutcome {
        verdict: if estimate.value < threshold {
            Verdict::Accept
        } else {
            Verdict::Reject
        },
        threshold,
        estimate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn isolated_vertices_estimate_n() {
        let g = QueryGraph::from_edges(100, &[], None).unwrap();
        let est = estimate_ham_distance(&g, 0.5, &OracleSpec::AUTO_PARTITION, 1, &EstimatorConfig::default()).unwrap();
        assert_eq!(est.value, 100.0);
        assert!(est.samples.iter().all(|&x| x == 1.0));
    }

    #[test]
    fn hamiltonian_grid_estimate_is_small() {
        let w = 12;
        let mut edges = Vec::new();
        for r in 0..w {
            for c in 0..w {
                if c + 1 < w {
                    edges.push((r * w + c, r * w + c + 1));
                }
                if r + 1 < w {
                    edges.push((r * w + c, (r + 1) * w + c));
                }
            }
        }
        let g = QueryGraph::from_edges(w * w, &edges, None).unwrap();
        let oracle = OracleSpec::Exhaustive { k: Some(16) };
        let small = (0..9)
            .filter(|&s| {
                let est = estimate_ham_distance(&g, 0.25, &oracle, s, &EstimatorConfig::default()).unwrap();
                assert_eq!(est.heavy_count, 0);
                est.value <= 0.25 * 144.0
            })
            .count();
        assert!(small >= 5);
    }

    #[test]
    fn heavy_vertices_count_as_one() {
        // star with 200 leaves: the center is heavy at eps = 1
        let edges: Vec<_> = (1..=200).map(|l| (0, l)).collect();
        let g = QueryGraph::from_edges(201, &edges, None).unwrap();
        let est = estimate_ham_distance(&g, 1.0, &OracleSpec::AUTO_PARTITION, 3, &EstimatorConfig::default()).unwrap();
        assert_eq!(est.heavy_count, 1);
        assert!((est.value - 201.0).abs() < 1e-9);
    }

    #[test]
    fn covering_oracles_are_refused() {
        let g = QueryGraph::from_edges(3, &[(0, 1)], Some(2)).unwrap();
        let ball = OracleSpec::Ball { radius: Some(1), cap: 4 };
        assert!(matches!(
            tolerant_test_ham(&g, 0.5, &ball, 0, &EstimatorConfig::default()),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn tolerant_accepts_at_eps_one() {
        let edges: Vec<_> = (0..49).map(|i| (i, i + 1)).collect();
        let g = QueryGraph::from_edges(50, &edges, None).unwrap();
        let out = tolerant_test_ham(&g, 1.0, &OracleSpec::AUTO_PARTITION, 0, &EstimatorConfig::default()).unwrap();
        assert_eq!(out.verdict, Verdict::Accept);
    }
}
