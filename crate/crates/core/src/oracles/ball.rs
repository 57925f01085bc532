//! BFS-ball covering oracle.

use std::collections::HashMap;

use super::{CoverResult, CoveringOracle, OracleKind};
use crate::error::Result;
use crate::graph::{QueryGraph, VertexId};

/// Returns the BFS ball of a fixed radius, cut off after `cap` vertices.
pub struct BallOracle<'g> {
    g: &'g QueryGraph,
    radius: usize,
    cap: usize,
}

impl<'g> BallOracle<'g> {
    pub fn new(g: &'g QueryGraph, radius: usize, cap: usize) -> Self {
        BallOracle {
            g,
            radius,
            cap: cap.max(1),
        }
    }

    pub fn radius(&self) -> usize {
        self.radius
    }
}

/// Ball of `radius` around `v`, truncated in BFS order once it holds `cap`
/// vertices. Truncation sets `cap_violated`; the truncated ball is still
/// connected.
pub fn ball_cover_query(g: &QueryGraph, v: VertexId, radius: usize, cap: usize) -> Result<CoverResult> {
    g.check_vertex(v)?;
    let cap = cap.max(1);
    let mut dist: HashMap<VertexId, usize> = HashMap::from([(v, 0)]);
    let mut order = vec![v];
    let mut head = 0;
    let mut cap_violated = false;
    'bfs: while head < order.len() {
        let x = order[head];
        head += 1;
        let dx = dist[&x];
        if dx == radius {
            continue;
        }
        for &y in g.neighbors(x)? {
            if dist.contains_key(&y) {
                continue;
            }
            if order.len() == cap {
                cap_violated = true;
                break 'bfs;
            }
            dist.insert(y, dx + 1);
            order.push(y);
        }
    }
    order.sort_unstable();
    Ok(CoverResult {
        anchor: v,
        set: order,
        cap_violated,
    })
}

impl CoveringOracle for BallOracle<'_> {
    fn cover(&self, v: VertexId) -> Result<CoverResult> {
        ball_cover_query(self.g, v, self.radius, self.cap)
    }

    fn size_bound(&self) -> usize {
        self.cap
    }

    fn kind(&self) -> OracleKind {
        OracleKind::Ball
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radius_examples() {
        let c4 = QueryGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)], Some(2)).unwrap();
        assert_eq!(ball_cover_query(&c4, 2, 0, 10).unwrap().set, vec![2]);
        assert_eq!(ball_cover_query(&c4, 0, 1, 10).unwrap().set, vec![0, 1, 3]);
        let all = ball_cover_query(&c4, 0, 5, 10).unwrap();
        assert_eq!(all.set, vec![0, 1, 2, 3]);
        assert!(!all.cap_violated);
    }

    #[test]
    fn cap_truncates_and_flags() {
        let path = QueryGraph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)], Some(2)).unwrap();
        let r = ball_cover_query(&path, 0, 10, 3).unwrap();
        assert_eq!(r.set, vec![0, 1, 2]);
        assert!(r.cap_violated);
        let exact = ball_cover_query(&path, 0, 2, 3).unwrap();
        assert!(!exact.cap_violated);
    }
}
