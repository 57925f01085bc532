//! Exact minimum path covers.
//!
//! [`SubsetCoverTable`] solves every induced subgraph of a graph with at most
//! [`PATH_COVER_LIMIT`] vertices at once. For a vertex set `M`, let `f(M, u)`
//! be the fewest paths covering `M` when paths are laid down one after another
//! and `u` is the last vertex placed. Adding `u` to `M \ {u}` either extends
//! the previous last path (if some optimal end of `M \ {u}` is adjacent to
//! `u`) or opens a new path, so `f(M, u)` is `c(M \ {u})` or one more. Keeping
//! only `c(M)` and the set of ends achieving it is therefore exact.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{QueryGraph, VertexId};

/// Largest connected piece the bitmask DP accepts.
pub const PATH_COVER_LIMIT: usize = 22;

/// A vertex-disjoint path cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathCoverCert {
    pub paths: Vec<Vec<VertexId>>,
}

impl PathCoverCert {
    pub fn size(&self) -> usize {
        self.paths.len()
    }

    /// Checks disjointness, coverage of `V(g)` and adjacency along each path.
    pub fn verify(&self, g: &QueryGraph) -> bool {
        let mut seen = vec![false; g.n()];
        for path in &self.paths {
            if path.is_empty() {
                return false;
            }
            for &v in path {
                if v >= g.n() || std::mem::replace(&mut seen[v], true) {
                    return false;
                }
            }
            if path.windows(2).any(|w| !g.has_edge(w[0], w[1])) {
                return false;
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// Minimum path cover size of every vertex subset of a small graph.
pub struct SubsetCoverTable {
    n: usize,
    adj: Vec<u32>,
    cover: Vec<u8>,
    ends: Vec<u32>,
}

impl SubsetCoverTable {
    /// `adj[i]` is the neighbor mask of local vertex `i`.
    pub fn build(adj: &[u32]) -> Result<Self> {
        let n = adj.len();
        if n > PATH_COVER_LIMIT {
            return Err(Error::Budget {
                what: "path-cover piece",
                size: n,
                limit: PATH_COVER_LIMIT,
            });
        }
        let size = 1usize << n;
        let mut cover = vec![0u8; size];
        let mut ends = vec![0u32; size];
        for mask in 1..size {
            let mut best = u8::MAX;
            let mut best_ends = 0u32;
            let mut rest = mask as u32;
            while rest != 0 {
                let u = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let prev = mask & !(1 << u);
                let f = if prev == 0 {
                    1
                } else if adj[u] & ends[prev] != 0 {
                    cover[prev]
                } else {
                    cover[prev] + 1
                };
                if f < best {
                    best = f;
                    best_ends = 1 << u;
                } else if f == best {
                    best_ends |= 1 << u;
                }
            }
            cover[mask] = best;
            ends[mask] = best_ends;
        }
        Ok(SubsetCoverTable {
            n,
            adj: adj.to_vec(),
            cover,
            ends,
        })
    }

    pub fn from_graph(g: &QueryGraph) -> Result<Self> {
        if g.n() > PATH_COVER_LIMIT {
            return Err(Error::Budget {
                what: "path-cover piece",
                size: g.n(),
                limit: PATH_COVER_LIMIT,
            });
        }
        let adj: Vec<u32> = (0..g.n())
            .map(|v| g.adj(v).iter().fold(0u32, |m, &x| m | (1 << x)))
            .collect();
        Self::build(&adj)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn neighbor_mask(&self, v: usize) -> u32 {
        self.adj[v]
    }

    /// Minimum path cover size of the subgraph induced by `mask` (0 for the empty set).
    pub fn cover_size(&self, mask: u32) -> usize {
        self.cover[mask as usize] as usize
    }

    /// An optimal cover of `mask`, in local ids.
    pub fn witness(&self, mask: u32) -> Vec<Vec<usize>> {
        let mut paths = Vec::new();
        if mask == 0 {
            return paths;
        }
        let mut mask = mask as usize;
        let mut u = self.ends[mask].trailing_zeros() as usize;
        let mut current = vec![u];
        loop {
            let prev = mask & !(1 << u);
            if prev == 0 {
                break;
            }
            let link = self.adj[u] & self.ends[prev];
            if link != 0 && self.cover[prev] == self.cover[mask] {
                u = link.trailing_zeros() as usize;
            } else {
                paths.push(std::mem::take(&mut current));
                u = self.ends[prev].trailing_zeros() as usize;
            }
            current.push(u);
            mask = prev;
        }
        paths.push(current);
        paths
    }
}

/// Exact minimum path cover of a forest, any size.
///
/// Greedy in post-order: a vertex joins up to two children whose path still
/// ends at them. Returns `None` when `g` has a cycle.
pub fn forest_path_cover(g: &QueryGraph) -> Option<PathCoverCert> {
    let n = g.n();
    if g.m() + g.components().len() != n {
        return None;
    }
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut visited = vec![false; n];
    for root in 0..n {
        if visited[root] {
            continue;
        }
        visited[root] = true;
        let mut stack = vec![root];
        while let Some(x) = stack.pop() {
            order.push(x);
            for &y in g.adj(x) {
                if !visited[y] {
                    visited[y] = true;
                    parent[y] = x;
                    stack.push(y);
                }
            }
        }
    }
    // linked[v] holds up to two chosen path neighbors
    let mut linked: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    for &v in order.iter().rev() {
        let p = parent[v];
        if p != usize::MAX && linked[v].len() < 2 && linked[p].len() < 2 {
            linked[v].push(p);
            linked[p].push(v);
        }
    }
    let mut done = vec![false; n];
    let mut paths = Vec::new();
    for s in 0..n {
        if done[s] || linked[s].len() == 2 {
            continue;
        }
        let mut path = vec![s];
        done[s] = true;
        let mut prev = usize::MAX;
        let mut cur = s;
        while let Some(&next) = linked[cur].iter().find(|&&x| x != prev) {
            path.push(next);
            done[next] = true;
            prev = cur;
            cur = next;
        }
        paths.push(path);
    }
    Some(PathCoverCert { paths })
}

/// Exact minimum path cover, solved per connected component.
///
/// Tree components of any size use the forest greedy; other components must
/// fit the bitmask budget.
pub fn min_path_cover(g: &QueryGraph) -> Result<PathCoverCert> {
    let mut paths = Vec::new();
    for comp in g.components() {
        let (sub, map) = g.induced_subgraph(&comp)?;
        let local = if sub.m() + 1 == sub.n() {
            forest_path_cover(&sub).expect("tree component")
        } else {
            let table = SubsetCoverTable::from_graph(&sub)?;
            let full = ((1u64 << sub.n()) - 1) as u32;
            PathCoverCert {
                paths: table.witness(full),
            }
        };
        paths.extend(
            local
                .paths
                .into_iter()
                .map(|p| p.into_iter().map(|v| map.parent(v)).collect::<Vec<_>>()),
        );
    }
    Ok(PathCoverCert { paths })
}

/// Distance to having a Hamiltonian path: minimum path cover size minus one.
pub fn ham_distance(g: &QueryGraph) -> Result<usize> {
    Ok(min_path_cover(g)?.size().saturating_sub(1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> QueryGraph {
        QueryGraph::from_edges(n, edges, None).unwrap()
    }

    #[test]
    fn path_star_and_empty() {
        let p5 = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        assert_eq!(min_path_cover(&p5).unwrap().size(), 1);
        let star = graph(4, &[(0, 1), (0, 2), (0, 3)]);
        let cert = min_path_cover(&star).unwrap();
        assert_eq!(cert.size(), 2);
        assert!(cert.verify(&star));
        assert_eq!(min_path_cover(&graph(4, &[])).unwrap().size(), 4);
    }

    #[test]
    fn ham_distance_examples() {
        let c6 = graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]);
        assert_eq!(ham_distance(&c6).unwrap(), 0);
        assert_eq!(ham_distance(&graph(4, &[(0, 1), (0, 2), (0, 3)])).unwrap(), 1);
        assert_eq!(ham_distance(&graph(6, &[(0, 1), (2, 3), (4, 5)])).unwrap(), 2);
        assert_eq!(ham_distance(&graph(0, &[])).unwrap(), 0);
    }

    #[test]
    fn table_witness_matches_cover_size_on_every_subset() {
        // K4 minus an edge plus a pendant: small enough to check all 32 subsets
        let g = graph(5, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (3, 4)]);
        let table = SubsetCoverTable::from_graph(&g).unwrap();
        for mask in 1u32..32 {
            let w = table.witness(mask);
            assert_eq!(w.len(), table.cover_size(mask), "mask {mask:b}");
            let covered: u32 = w.iter().flatten().fold(0, |m, &v| m | (1 << v));
            assert_eq!(covered, mask);
            for p in &w {
                assert!(p.windows(2).all(|e| g.has_edge(e[0], e[1])));
            }
        }
    }

    #[test]
    fn budget_error_for_large_cyclic_component() {
        let n = PATH_COVER_LIMIT + 1;
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        let g = graph(n, &edges);
        assert!(matches!(min_path_cover(&g), Err(Error::Budget { size, .. }) if size == n));
    }

    #[test]
    fn forest_greedy_agrees_with_dp_on_random_trees() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..300 {
            let n = rng.gen_range(1..=16);
            let edges: Vec<_> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
            let g = graph(n, &edges);
            let greedy = forest_path_cover(&g).unwrap();
            assert!(greedy.verify(&g));
            let table = SubsetCoverTable::from_graph(&g).unwrap();
            assert_eq!(greedy.size(), table.cover_size(((1u64 << n) - 1) as u32));
        }
        assert!(forest_path_cover(&graph(3, &[(0, 1), (1, 2), (0, 2)])).is_none());
    }

    #[test]
    fn large_trees_use_the_forest_greedy() {
        // caterpillar: spine 0..50, one leaf per spine vertex
        let mut edges: Vec<_> = (0..49).map(|i| (i, i + 1)).collect();
        edges.extend((0..50).map(|i| (i, 50 + i)));
        let g = graph(100, &edges);
        let cert = min_path_cover(&g).unwrap();
        assert!(cert.verify(&g));
        assert_eq!(cert.size(), forest_path_cover(&g).unwrap().size());
    }
}
