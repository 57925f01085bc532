//! Global BFS-chunking partition, the baseline partition oracle.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{CoverResult, CoveringOracle, OracleKind};
use crate::error::Result;
use crate::graph::{QueryGraph, VertexId};

/// Part-size policy for [`exhaustive_partition`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PartSize {
    Fixed(usize),
    /// Double `k` from 1 until the measured cut is at most `eps·n` (or `k ≥ n`).
    Auto,
}

/// A materialized partition of `V` into connected parts.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartitionHandle {
    pub parts: Vec<Vec<VertexId>>,
    pub part_of: Vec<usize>,
    pub cut_edge_count: usize,
    /// Largest part size allowed when the partition was built.
    pub k: usize,
}

impl PartitionHandle {
    /// Builds a handle from arbitrary parts, measuring the cut.
    pub fn from_parts(g: &QueryGraph, mut parts: Vec<Vec<VertexId>>, k: usize) -> Self {
        for p in &mut parts {
            p.sort_unstable();
        }
        parts.sort_unstable_by_key(|p| p[0]);
        let mut part_of = vec![usize::MAX; g.n()];
        for (i, p) in parts.iter().enumerate() {
            for &v in p {
                part_of[v] = i;
            }
        }
        let cut_edge_count = g.edges().filter(|e| part_of[e.u] != part_of[e.v]).count();
        PartitionHandle {
            parts,
            part_of,
            cut_edge_count,
            k,
        }
    }

    /// The part containing `v`.
    pub fn partition_query(&self, v: VertexId) -> &[VertexId] {
        &self.parts[self.part_of[v]]
    }

    pub fn part_index(&self, v: VertexId) -> usize {
        self.part_of[v]
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn max_part_size(&self) -> usize {
        self.parts.iter().map(Vec::len).max().unwrap_or(0)
    }
}

fn chunk(g: &QueryGraph, k: usize) -> PartitionHandle {
    let n = g.n();
    let mut assigned = vec![false; n];
    let mut parts = Vec::new();
    let mut queue = VecDeque::new();
    for s in 0..n {
        if assigned[s] {
            continue;
        }
        assigned[s] = true;
        let mut part = vec![s];
        queue.clear();
        queue.push_back(s);
        'grow: while let Some(x) = queue.pop_front() {
            for &y in g.adj(x) {
                if part.len() == k {
                    break 'grow;
                }
                if !assigned[y] {
                    assigned[y] = true;
                    part.push(y);
                    queue.push_back(y);
                }
            }
        }
        parts.push(part);
    }
    PartitionHandle::from_parts(g, parts, k)
}

/// Greedy partition: grow a BFS part from the least unassigned id until it
/// has `k` vertices, repeat. The cut size is measured and reported; whether
/// it meets `eps·n` is the caller's call, except in [`PartSize::Auto`].
pub fn exhaustive_partition(g: &QueryGraph, eps: f64, k: PartSize) -> PartitionHandle {
    match k {
        PartSize::Fixed(k) => chunk(g, k.max(1)),
        PartSize::Auto => {
            let budget = eps * g.n() as f64;
            let mut k = 1;
            loop {
                let h = chunk(g, k);
                if h.cut_edge_count as f64 <= budget || k >= g.n() {
                    return h;
                }
                k = (2 * k).min(g.n());
            }
        }
    }
}

/// A partition handle answering covering queries with the exact part.
pub struct PartitionOracle<'h> {
    handle: &'h PartitionHandle,
}

impl<'h> PartitionOracle<'h> {
    pub fn new(handle: &'h PartitionHandle) -> Self {
        PartitionOracle { handle }
    }
}

impl CoveringOracle for PartitionOracle<'_> {
    fn cover(&self, v: VertexId) -> Result<CoverResult> {
        if v >= self.handle.part_of.len() {
            return Err(crate::error::Error::InvalidVertex(v, self.handle.part_of.len()));
        }
        Ok(CoverResult {
            anchor: v,
            set: self.handle.partition_query(v).to_vec(),
            cap_violated: false,
        })
    }

    fn size_bound(&self) -> usize {
        self.handle.k
    }

    fn kind(&self) -> OracleKind {
        OracleKind::Exhaustive
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::induces_connected;

    fn path(n: usize) -> QueryGraph {
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        QueryGraph::from_edges(n, &edges, None).unwrap()
    }

    #[test]
    fn nine_path_in_threes() {
        let h = exhaustive_partition(&path(9), 0.1, PartSize::Fixed(3));
        assert_eq!(h.parts, vec![vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8]]);
        assert_eq!(h.cut_edge_count, 2);
        assert_eq!(h.partition_query(4), &[3, 4, 5]);
        assert_eq!(h.partition_query(4), h.partition_query(4));
    }

    #[test]
    fn large_k_gives_one_part() {
        let h = exhaustive_partition(&path(7), 0.1, PartSize::Fixed(10));
        assert_eq!(h.len(), 1);
        assert_eq!(h.cut_edge_count, 0);
        assert_eq!(h.partition_query(3), &[0, 1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn grid_parts_are_structural() {
        let mut edges = Vec::new();
        for r in 0..4 {
            for c in 0..4 {
                if c < 3 {
                    edges.push((4 * r + c, 4 * r + c + 1));
                }
                if r < 3 {
                    edges.push((4 * r + c, 4 * r + c + 4));
                }
            }
        }
        let g = QueryGraph::from_edges(16, &edges, Some(4)).unwrap();
        let h = exhaustive_partition(&g, 0.1, PartSize::Fixed(4));
        let mut seen = vec![0; 16];
        for p in &h.parts {
            assert!(p.len() <= 4);
            assert!(induces_connected(&g, p));
            for &v in p {
                seen[v] += 1;
            }
        }
        assert!(seen.iter().all(|&c| c == 1));
        let brute = g.edges().filter(|e| h.part_of[e.u] != h.part_of[e.v]).count();
        assert_eq!(h.cut_edge_count, brute);
    }

    #[test]
    fn auto_k_meets_budget() {
        let g = path(100);
        let h = exhaustive_partition(&g, 0.05, PartSize::Auto);
        assert!(h.cut_edge_count <= 5);
        assert!(h.k >= 20);
    }
}
