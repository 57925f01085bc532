use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::graph::{EdgeRef, QueryGraph, Weight};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Msf {
    /// Rank-sorted.
    pub edges: Vec<EdgeRef>,
    pub total_weight: Weight,
}

impl Msf {
    pub fn contains(&self, e: EdgeRef) -> bool {
        self.edges.binary_search(&e).is_ok()
    }
}

/// The unique minimum spanning forest under weight-then-rank order.
///
/// Reads every incidence list through counted queries.
pub fn kruskal_msf(g: &QueryGraph) -> Msf {
    let mut edges = Vec::with_capacity(g.m());
    for v in 0..g.n() {
        let list = g.neighbors(v).expect("vertex in range");
        edges.extend(list.iter().filter(|&&x| x > v).map(|&x| g.weight_key(EdgeRef::new(v, x))));
    }
    edges.sort_unstable();
    let mut uf = UnionFind::<usize>::new(g.n());
    let mut out = Vec::with_capacity(g.n().saturating_sub(1));
    let mut total = 0u64;
    for (w, e) in edges {
        if uf.union(e.u, e.v) {
            out.push(e);
            total += w.raw();
        }
    }
    out.sort_unstable();
    Msf {
        edges: out,
        total_weight: Weight::from_raw(total),
    }
}

/// Total weight of an edge set.
pub fn total_weight(g: &QueryGraph, edges: &[EdgeRef]) -> Weight {
    Weight::from_raw(edges.iter().map(|&e| g.weight(e).expect("edge exists").raw()).sum())
}

/// Whether `edges` connects every pair of vertices that `g` connects.
pub fn spans_components(g: &QueryGraph, edges: &[EdgeRef]) -> bool {
    let mut uf = UnionFind::<usize>::new(g.n());
    let mut merges = 0;
    for e in edges {
        merges += uf.union(e.u, e.v) as usize;
    }
    merges + g.components().len() == g.n()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(x: u64) -> Weight {
        Weight::from_int(x)
    }

    #[test]
    fn triangle_drops_heaviest() {
        let g = QueryGraph::from_weighted_edges(3, &[(0, 1, w(1)), (1, 2, w(2)), (0, 2, w(3))], None).unwrap();
        let msf = kruskal_msf(&g);
        assert_eq!(msf.edges, vec![EdgeRef::new(0, 1), EdgeRef::new(1, 2)]);
        assert_eq!(msf.total_weight, w(3));
    }

    #[test]
    fn trees_and_forests() {
        let tree = QueryGraph::from_weighted_edges(4, &[(0, 1, w(5)), (1, 2, w(1)), (1, 3, w(2))], None).unwrap();
        assert_eq!(kruskal_msf(&tree).edges.len(), 3);
        let two = QueryGraph::from_weighted_edges(5, &[(0, 1, w(1)), (2, 3, w(1)), (3, 4, w(2)), (2, 4, w(3))], None).unwrap();
        let msf = kruskal_msf(&two);
        assert_eq!(msf.edges, vec![EdgeRef::new(0, 1), EdgeRef::new(2, 3), EdgeRef::new(3, 4)]);
        assert!(spans_components(&two, &msf.edges));
        assert!(!spans_components(&two, &msf.edges[..2]));
    }

    #[test]
    fn ties_follow_rank() {
        let g = QueryGraph::from_weighted_edges(3, &[(0, 1, w(1)), (1, 2, w(1)), (0, 2, w(1))], None).unwrap();
        assert_eq!(kruskal_msf(&g).edges, vec![EdgeRef::new(0, 1), EdgeRef::new(0, 2)]);
    }

    #[test]
    fn reads_every_list_once() {
        let g = QueryGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)], None).unwrap();
        kruskal_msf(&g);
        assert_eq!(g.counts().degree, 4);
        assert_eq!(g.counts().neighbor, 6);
    }
}
