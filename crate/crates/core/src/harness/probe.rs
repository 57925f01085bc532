//! How query counts move with `n` at fixed parameters.

use serde::{Deserialize, Serialize};

use super::{execute_all, GraphSource, RunOptions, RunSpec, Task};
use crate::error::{Error, Result};
use crate::generators::{Family, GenSpec};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeRow {
    pub n: usize,
    pub mean_m: f64,
    pub runs: usize,
    /// Mean over runs of the per-item query mean.
    pub mean_queries: f64,
    pub max_queries: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeSpec {
    pub family: Family,
    pub ns: Vec<usize>,
    pub epsilon: f64,
    pub task: Task,
    pub seeds: Vec<u64>,
    pub wmax: Option<u64>,
    pub block: Option<usize>,
}

impl ProbeSpec {
    pub fn run_specs(&self) -> Vec<RunSpec> {
        let mut out = Vec::new();
        for &n in &self.ns {
            for &seed in &self.seeds {
                out.push(RunSpec {
                    graph: GraphSource::Generate(GenSpec {
                        family: self.family,
                        n,
                        seed,
                        wmax: self.wmax,
                        block: self.block,
                    }),
                    seed,
                    epsilon: self.epsilon,
                    task: self.task.clone(),
                });
            }
        }
        out
    }
}

/// One row per `n`, averaging the task's per-item query count over seeds.
pub fn query_scaling_probe(spec: &ProbeSpec, threads: Option<usize>) -> Result<Vec<ProbeRow>> {
    let records = execute_all(&spec.run_specs(), RunOptions::default(), threads)?;
    let per_n = spec.seeds.len().max(1);
    spec.ns
        .iter()
        .zip(records.chunks(per_n))
        .map(|(&n, rs)| {
            if let Some(e) = rs.iter().find_map(|r| r.error.as_ref()) {
                return Err(Error::Usage(format!("probe at n = {n} failed: {e}")));
            }
            let q: Vec<f64> = rs
                .iter()
                .map(|r| r.queries_per_item.unwrap_or(r.queries.total() as f64))
                .collect();
            Ok(ProbeRow {
                n,
                mean_m: rs.iter().map(|r| r.m as f64).sum::<f64>() / rs.len() as f64,
                runs: rs.len(),
                mean_queries: q.iter().sum::<f64>() / q.len() as f64,
                max_queries: q.iter().copied().fold(0.0, f64::max),
            })
        })
        .collect()
}

/// `max/min` of the row means; 1 means perfectly flat.
pub fn spread(rows: &[ProbeRow]) -> f64 {
    let lo = rows.iter().map(|r| r.mean_queries).fold(f64::INFINITY, f64::min);
    let hi = rows.iter().map(|r| r.mean_queries).fold(0.0, f64::max);
    if lo > 0.0 {
        hi / lo
    } else if hi == 0.0 {
        1.0
    } else {
        f64::INFINITY
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_n_single_row() {
        let spec = ProbeSpec {
            family: Family::Grid,
            ns: vec![49],
            epsilon: 0.5,
            task: Task::Kruskal {},
            seeds: vec![1, 2],
            wmax: Some(2),
            block: None,
        };
        let rows = query_scaling_probe(&spec, None).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(spread(&rows), 1.0);
    }

    #[test]
    fn kruskal_grows_with_n() {
        let spec = ProbeSpec {
            family: Family::Grid,
            ns: vec![100, 1000],
            epsilon: 0.5,
            task: Task::Kruskal {},
            seeds: vec![1],
            wmax: Some(2),
            block: None,
        };
        let rows = query_scaling_probe(&spec, None).unwrap();
        assert!(rows[1].mean_queries > 5.0 * rows[0].mean_queries);
    }
}
