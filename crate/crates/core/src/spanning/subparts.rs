//! Controlled Borůvka inside one part.

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{induces_connected, EdgeRef, QueryGraph, VertexId, Weight};

type Key = (Weight, EdgeRef);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subpart {
    pub members: Vec<VertexId>,
    /// Heavy endpoint of `link`.
    pub center: Option<VertexId>,
    /// Lightest edge from the sub-part to a heavy vertex.
    pub link: Option<EdgeRef>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubpartForest {
    /// The part, sorted.
    pub part: Vec<VertexId>,
    /// Tree edges `A`, rank-sorted.
    pub tree_edges: Vec<EdgeRef>,
    /// Ordered by smallest member.
    pub subparts: Vec<Subpart>,
    subpart_of: Vec<usize>,
    pub rounds: usize,
}

impl SubpartForest {
    /// Index of the sub-part holding `v`, if `v` is in the part.
    pub fn subpart_of(&self, v: VertexId) -> Option<usize> {
        self.part.binary_search(&v).ok().map(|i| self.subpart_of[i])
    }

    pub fn subpart(&self, v: VertexId) -> Option<&Subpart> {
        self.subpart_of(v).map(|i| &self.subparts[i])
    }

    pub fn is_tree_edge(&self, e: EdgeRef) -> bool {
        self.tree_edges.binary_search(&e).is_ok()
    }

    pub fn links(&self) -> impl Iterator<Item = EdgeRef> + '_ {
        self.subparts.iter().filter_map(|s| s.link)
    }
}

/// Grows sub-parts of the connected light part `part`.
///
/// Each round, a sub-part `B` is active when it has an edge to the rest of
/// the part and that lightest edge beats its lightest edge to a heavy vertex
/// (or it has none). Every active sub-part adds its lightest internal edge
/// and the sub-parts merge; the loop stops once nothing is active. Each final
/// sub-part then records its lightest heavy edge, whose heavy end is its
/// center.
pub fn subparts(g: &QueryGraph, part: &[VertexId], is_heavy: impl Fn(VertexId) -> bool) -> Result<SubpartForest> {
    let mut part = part.to_vec();
    part.sort_unstable();
    part.dedup();
    if part.is_empty() || !induces_connected(g, &part) {
        return Err(Error::Usage("sub-parts need a connected, non-empty part".into()));
    }
    if let Some(&h) = part.iter().find(|&&v| is_heavy(v)) {
        return Err(Error::Usage(format!("part contains heavy vertex {h}")));
    }
    let local = |v: VertexId| part.binary_search(&v).ok();
    let s = part.len();
    // per local vertex: (key, other local) inside the part, and lightest heavy edge
    let mut inner: Vec<Vec<(Key, usize)>> = Vec::with_capacity(s);
    let mut to_heavy: Vec<Option<Key>> = Vec::with_capacity(s);
    for &x in &part {
        let mut mine = Vec::new();
        let mut best_h: Option<Key> = None;
        for &y in g.neighbors(x)? {
            let key = g.weight_key(EdgeRef::new(x, y));
            if let Some(j) = local(y) {
                mine.push((key, j));
            } else if is_heavy(y) {
                if best_h.map_or(true, |b| key < b) {
                    best_h = Some(key);
                }
            }
        }
        inner.push(mine);
        to_heavy.push(best_h);
    }

    let mut uf = UnionFind::<usize>::new(s);
    let mut tree_edges = Vec::new();
    let mut rounds = 0;
    loop {
        let mut best_in: Vec<Option<Key>> = vec![None; s];
        let mut best_h: Vec<Option<Key>> = vec![None; s];
        for i in 0..s {
            let ri = uf.find(i);
            if let Some(k) = to_heavy[i] {
                if best_h[ri].map_or(true, |b| k < b) {
                    best_h[ri] = Some(k);
                }
            }
            for &(k, j) in &inner[i] {
                if uf.find(j) != ri && best_in[ri].map_or(true, |b| k < b) {
                    best_in[ri] = Some(k);
                }
            }
        }
        let chosen: Vec<EdgeRef> = (0..s)
            .filter(|&r| uf.find(r) == r)
            .filter_map(|r| match (best_in[r], best_h[r]) {
                (Some(inn), Some(h)) if inn < h => Some(inn.1),
                (Some(inn), None) => Some(inn.1),
                _ => None,
            })
            .collect();
        if chosen.is_empty() {
            break;
        }
        rounds += 1;
        for e in chosen {
            let (a, b) = (local(e.u).unwrap(), local(e.v).unwrap());
            if uf.union(a, b) {
                tree_edges.push(e);
            }
        }
    }
    tree_edges.sort_unstable();

    let labels = uf.into_labeling();
    let mut slot = vec![usize::MAX; s];
    let mut count = 0;
    let mut subpart_of = vec![0; s];
    for i in 0..s {
        if slot[labels[i]] == usize::MAX {
            slot[labels[i]] = count;
            count += 1;
        }
        subpart_of[i] = slot[labels[i]];
    }
    let mut subs: Vec<Subpart> = vec![
        Subpart {
            members: Vec::new(),
            center: None,
            link: None,
        };
        count
    ];
    let mut link_key: Vec<Option<Key>> = vec![None; count];
    for i in 0..s {
        let sp = subpart_of[i];
        subs[sp].members.push(part[i]);
        if let Some(k) = to_heavy[i] {
            if link_key[sp].map_or(true, |b| k < b) {
                link_key[sp] = Some(k);
            }
        }
    }
    for (sp, key) in link_key.into_iter().enumerate() {
        if let Some((_, e)) = key {
            subs[sp].link = Some(e);
            subs[sp].center = Some(if local(e.u).is_some() { e.v } else { e.u });
        }
    }
    Ok(SubpartForest {
        part,
        tree_edges,
        subparts: subs,
        subpart_of,
        rounds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(x: u64) -> Weight {
        Weight::from_int(x)
    }

    #[test]
    fn no_heavy_neighbours_spans_the_part() {
        let g = QueryGraph::from_weighted_edges(3, &[(0, 1, w(1)), (1, 2, w(2))], None).unwrap();
        let f = subparts(&g, &[0, 1, 2], |_| false).unwrap();
        assert_eq!(f.subparts.len(), 1);
        assert_eq!(f.tree_edges, vec![EdgeRef::new(0, 1), EdgeRef::new(1, 2)]);
        assert_eq!(f.subparts[0].center, None);
    }

    #[test]
    fn cheap_heavy_edges_freeze_both_ends() {
        // a=0, b=1, heavy h=2 adjacent to both with weight 1
        let g = QueryGraph::from_weighted_edges(3, &[(0, 1, w(5)), (0, 2, w(1)), (1, 2, w(1))], None).unwrap();
        let f = subparts(&g, &[0, 1], |v| v == 2).unwrap();
        assert!(f.tree_edges.is_empty());
        assert_eq!(f.subparts.len(), 2);
        assert_eq!(f.rounds, 0);
        assert!(f.subparts.iter().all(|s| s.center == Some(2)));
        assert_eq!(f.subparts[0].link, Some(EdgeRef::new(0, 2)));
    }

    #[test]
    fn singleton_part() {
        let g = QueryGraph::from_weighted_edges(2, &[(0, 1, w(1))], None).unwrap();
        let f = subparts(&g, &[0], |v| v == 1).unwrap();
        assert_eq!(f.subparts.len(), 1);
        assert!(f.tree_edges.is_empty());
        assert_eq!(f.subparts[0].center, Some(1));
    }

    #[test]
    fn errors_on_bad_parts() {
        let g = QueryGraph::from_weighted_edges(3, &[(0, 1, w(1))], None).unwrap();
        assert!(subparts(&g, &[0, 2], |_| false).is_err());
        assert!(subparts(&g, &[0, 1], |v| v == 1).is_err());
    }

    #[test]
    fn tree_edges_lie_in_the_part_msf() {
        use crate::spanning::kruskal_msf;
        let g = QueryGraph::from_weighted_edges(
            5,
            &[(0, 1, w(3)), (1, 2, w(1)), (2, 3, w(4)), (0, 3, w(2)), (3, 4, w(5)), (1, 4, w(6))],
            None,
        )
        .unwrap();
        let f = subparts(&g, &[0, 1, 2, 3, 4], |_| false).unwrap();
        let msf = kruskal_msf(&g);
        assert_eq!(f.tree_edges, msf.edges);
        assert!(f.rounds <= 3);
    }
}
