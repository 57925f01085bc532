//! Query-access graph model.
//!
//! [`QueryGraph`] is an immutable simple undirected graph. Algorithms that are
//! meant to be sublinear read it through the counted query methods
//! ([`QueryGraph::neighbor_query`], [`QueryGraph::degree_query`],
//! [`QueryGraph::random_neighbor_query`], [`QueryGraph::neighbors`]); exact
//! oracles and generators use the uncounted accessors ([`QueryGraph::adj`],
//! [`QueryGraph::deg`]).

pub mod io;

use std::cmp::Ordering;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Vertex ids are `0..n`; their numeric order is the total order over `V`.
pub type VertexId = usize;

/// Edge weight in fixed point, `Weight::SCALE` units per 1.0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Weight(u64);

impl Weight {
    pub const SCALE: u64 = 1_000_000;
    pub const ONE: Weight = Weight(Self::SCALE);

    pub fn from_raw(raw: u64) -> Self {
        Weight(raw)
    }

    pub fn from_int(w: u64) -> Self {
        Weight(w * Self::SCALE)
    }

    pub fn raw(self) -> u64 {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64 / Self::SCALE as f64
    }

    /// Parses a non-negative decimal with at most six fractional digits.
    pub fn parse(s: &str) -> Option<Weight> {
        let (int, frac) = match s.split_once('.') {
            Some((i, f)) => (i, f),
            None => (s, ""),
        };
        if int.is_empty() && frac.is_empty() {
            return None;
        }
        if frac.len() > 6 || !int.bytes().all(|b| b.is_ascii_digit()) || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let int: u64 = if int.is_empty() { 0 } else { int.parse().ok()? };
        let mut frac_val: u64 = if frac.is_empty() { 0 } else { frac.parse().ok()? };
        for _ in frac.len()..6 {
            frac_val *= 10;
        }
        int.checked_mul(Self::SCALE)?.checked_add(frac_val).map(Weight)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let int = self.0 / Self::SCALE;
        let frac = self.0 % Self::SCALE;
        if frac == 0 {
            write!(f, "{int}")
        } else {
            let s = format!("{frac:06}");
            write!(f, "{int}.{}", s.trim_end_matches('0'))
        }
    }
}

/// Undirected edge with canonical endpoints `u < v`.
///
/// The derived `Ord` is the edge ranking: lexicographic on `(min id, max id)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeRef {
    pub u: VertexId,
    pub v: VertexId,
}

impl EdgeRef {
    /// Panics on a self-loop.
    pub fn new(a: VertexId, b: VertexId) -> Self {
        assert_ne!(a, b, "self-loop {a}");
        EdgeRef {
            u: a.min(b),
            v: a.max(b),
        }
    }

    pub fn has_endpoint(&self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }

    pub fn other(&self, x: VertexId) -> VertexId {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

impl fmt::Display for EdgeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.u, self.v)
    }
}

/// Snapshot of query counts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryCounts {
    pub neighbor: u64,
    pub degree: u64,
    pub random_neighbor: u64,
}

impl QueryCounts {
    pub fn total(&self) -> u64 {
        self.neighbor + self.degree + self.random_neighbor
    }

    pub fn since(&self, earlier: &QueryCounts) -> QueryCounts {
        QueryCounts {
            neighbor: self.neighbor - earlier.neighbor,
            degree: self.degree - earlier.degree,
            random_neighbor: self.random_neighbor - earlier.random_neighbor,
        }
    }
}

/// Race-free query accounting, shared by a graph and its induced subgraphs.
#[derive(Debug, Default)]
pub struct QueryCounter {
    neighbor: AtomicU64,
    degree: AtomicU64,
    random_neighbor: AtomicU64,
}

impl QueryCounter {
    pub fn snapshot(&self) -> QueryCounts {
        QueryCounts {
            neighbor: self.neighbor.load(AtomicOrdering::Relaxed),
            degree: self.degree.load(AtomicOrdering::Relaxed),
            random_neighbor: self.random_neighbor.load(AtomicOrdering::Relaxed),
        }
    }

    /// Charges a previously recorded cost, used when a memoized computation is replayed.
    pub fn charge(&self, c: &QueryCounts) {
        self.neighbor.fetch_add(c.neighbor, AtomicOrdering::Relaxed);
        self.degree.fetch_add(c.degree, AtomicOrdering::Relaxed);
        self.random_neighbor.fetch_add(c.random_neighbor, AtomicOrdering::Relaxed);
    }

    fn reset(&self) {
        self.neighbor.store(0, AtomicOrdering::Relaxed);
        self.degree.store(0, AtomicOrdering::Relaxed);
        self.random_neighbor.store(0, AtomicOrdering::Relaxed);
    }
}

/// Answer to an incidence-list query.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NeighborAnswer {
    Vertex(VertexId, Option<Weight>),
    /// The vertex has fewer neighbors than the requested index.
    Absent,
}

/// Maps between an induced subgraph's local ids and its parent's ids.
///
/// Local ids are assigned in increasing parent-id order, so the edge ranking
/// of the subgraph agrees with the parent's.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabel {
    to_parent: Vec<VertexId>,
}

impl Relabel {
    pub fn parent(&self, local: VertexId) -> VertexId {
        self.to_parent[local]
    }

    pub fn local(&self, parent: VertexId) -> Option<VertexId> {
        self.to_parent.binary_search(&parent).ok()
    }

    pub fn parents(&self) -> &[VertexId] {
        &self.to_parent
    }

    pub fn len(&self) -> usize {
        self.to_parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.to_parent.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct QueryGraph {
    adj: Vec<Vec<VertexId>>,
    weights: Option<Vec<Vec<Weight>>>,
    degree_bound: Option<usize>,
    m: usize,
    counter: Arc<QueryCounter>,
}

impl PartialEq for QueryGraph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj && self.weights == other.weights && self.degree_bound == other.degree_bound
    }
}

impl QueryGraph {
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)], degree_bound: Option<usize>) -> Result<Self> {
        Self::build(n, edges.iter().map(|&(u, v)| (u, v, None)), degree_bound, false)
    }

    pub fn from_weighted_edges(
        n: usize,
        edges: &[(VertexId, VertexId, Weight)],
        degree_bound: Option<usize>,
    ) -> Result<Self> {
        Self::build(n, edges.iter().map(|&(u, v, w)| (u, v, Some(w))), degree_bound, true)
    }

    fn build(
        n: usize,
        edges: impl Iterator<Item = (VertexId, VertexId, Option<Weight>)>,
        degree_bound: Option<usize>,
        weighted: bool,
    ) -> Result<Self> {
        let mut lists: Vec<Vec<(VertexId, Weight)>> = vec![Vec::new(); n];
        let mut m = 0;
        for (u, v, w) in edges {
            if u >= n {
                return Err(Error::InvalidVertex(u, n));
            }
            if v >= n {
                return Err(Error::InvalidVertex(v, n));
            }
            if u == v {
                return Err(Error::NotSimple(format!("self-loop at {u}")));
            }
            let w = w.unwrap_or(Weight::ONE);
            if weighted && w < Weight::ONE {
                return Err(Error::WeightTooSmall(w.to_string()));
            }
            lists[u].push((v, w));
            lists[v].push((u, w));
            m += 1;
        }
        for (u, list) in lists.iter_mut().enumerate() {
            list.sort_unstable_by_key(|&(v, _)| v);
            if let Some(pair) = list.windows(2).find(|p| p[0].0 == p[1].0) {
                return Err(Error::NotSimple(format!("parallel edge {{{u},{}}}", pair[0].0)));
            }
            if let Some(d) = degree_bound {
                if list.len() > d {
                    return Err(Error::DegreeBound {
                        vertex: u,
                        degree: list.len(),
                        bound: d,
                    });
                }
            }
        }
        let adj = lists.iter().map(|l| l.iter().map(|&(v, _)| v).collect()).collect();
        let weights = weighted.then(|| lists.iter().map(|l| l.iter().map(|&(_, w)| w).collect()).collect());
        Ok(QueryGraph {
            adj,
            weights,
            degree_bound,
            m,
            counter: Arc::new(QueryCounter::default()),
        })
    }

    /// Same graph with a (checked) degree bound, sharing nothing with `self`'s counters.
    pub fn with_degree_bound(&self, d: Option<usize>) -> Result<Self> {
        if let Some(d) = d {
            if let Some(v) = (0..self.n()).find(|&v| self.deg(v) > d) {
                return Err(Error::DegreeBound {
                    vertex: v,
                    degree: self.deg(v),
                    bound: d,
                });
            }
        }
        Ok(QueryGraph {
            adj: self.adj.clone(),
            weights: self.weights.clone(),
            degree_bound: d,
            m: self.m,
            counter: Arc::new(QueryCounter::default()),
        })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.is_some()
    }

    pub fn degree_bound(&self) -> Option<usize> {
        self.degree_bound
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// W_G, the maximum edge weight (1 for unweighted or edgeless graphs).
    pub fn max_weight(&self) -> Weight {
        self.weights
            .as_ref()
            .and_then(|ws| ws.iter().flatten().copied().max())
            .unwrap_or(Weight::ONE)
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::InvalidVertex(v, self.n()))
        }
    }

    // ---- uncounted access ----

    pub fn adj(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn deg(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Weight of an existing edge; `Weight::ONE` on unweighted graphs.
    pub fn weight(&self, e: EdgeRef) -> Result<Weight> {
        let pos = self.adj[e.u].binary_search(&e.v).map_err(|_| Error::MissingEdge(e.u, e.v))?;
        Ok(self.weights.as_ref().map_or(Weight::ONE, |ws| ws[e.u][pos]))
    }

    fn weight_at(&self, u: VertexId, pos: usize) -> Weight {
        self.weights.as_ref().map_or(Weight::ONE, |ws| ws[u][pos])
    }

    /// All edges in rank order.
    pub fn edges(&self) -> impl Iterator<Item = EdgeRef> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| EdgeRef { u, v }))
    }

    /// Edges incident to `v` together with their weights, uncounted.
    pub fn incident(&self, v: VertexId) -> impl Iterator<Item = (EdgeRef, Weight)> + '_ {
        self.adj[v]
            .iter()
            .enumerate()
            .map(move |(i, &x)| (EdgeRef::new(v, x), self.weight_at(v, i)))
    }

    /// Strict total order on edges: by weight, ties broken by rank.
    pub fn compare_weight(&self, e1: EdgeRef, e2: EdgeRef) -> Result<Ordering> {
        let w1 = self.weight(e1)?;
        let w2 = self.weight(e2)?;
        Ok(w1.cmp(&w2).then(e1.cmp(&e2)))
    }

    /// Sort key realizing [`QueryGraph::compare_weight`].
    pub fn weight_key(&self, e: EdgeRef) -> (Weight, EdgeRef) {
        (self.weight(e).expect("edge exists"), e)
    }

    pub fn weight_key_checked(&self, e: EdgeRef) -> Result<(Weight, EdgeRef)> {
        self.check_vertex(e.v)?;
        Ok((self.weight(e)?, e))
    }

    // ---- counted queries ----

    pub fn counter(&self) -> &QueryCounter {
        &self.counter
    }

    pub fn counts(&self) -> QueryCounts {
        self.counter.snapshot()
    }

    pub fn reset_counters(&self) {
        self.counter.reset()
    }

    /// The `i`-th neighbor of `v` (1-based), or `Absent` when `deg(v) < i`.
    pub fn neighbor_query(&self, v: VertexId, i: usize) -> Result<NeighborAnswer> {
        self.check_vertex(v)?;
        if i == 0 {
            return Err(Error::Usage("neighbor index is 1-based".into()));
        }
        self.counter.neighbor.fetch_add(1, AtomicOrdering::Relaxed);
        Ok(match self.adj[v].get(i - 1) {
            Some(&u) => NeighborAnswer::Vertex(u, self.weights.as_ref().map(|ws| ws[v][i - 1])),
            None => NeighborAnswer::Absent,
        })
    }

    pub fn degree_query(&self, v: VertexId) -> Result<usize> {
        self.check_vertex(v)?;
        self.counter.degree.fetch_add(1, AtomicOrdering::Relaxed);
        Ok(self.adj[v].len())
    }

    /// Uniform neighbor of `v` drawn from `rng`.
    pub fn random_neighbor_query<R: Rng + ?Sized>(&self, v: VertexId, rng: &mut R) -> Result<VertexId> {
        self.check_vertex(v)?;
        self.counter.random_neighbor.fetch_add(1, AtomicOrdering::Relaxed);
        let list = &self.adj[v];
        if list.is_empty() {
            return Err(Error::IsolatedVertex(v));
        }
        Ok(list[rng.gen_range(0..list.len())])
    }

    /// Reads the whole incidence list of `v`: one degree query plus `deg(v)` neighbor queries.
    pub fn neighbors(&self, v: VertexId) -> Result<&[VertexId]> {
        self.check_vertex(v)?;
        self.counter.degree.fetch_add(1, AtomicOrdering::Relaxed);
        self.counter
            .neighbor
            .fetch_add(self.adj[v].len() as u64, AtomicOrdering::Relaxed);
        Ok(&self.adj[v])
    }

    // ---- derived graphs ----

    /// `G[S]` with local ids in increasing parent order. Shares this graph's query counter.
    pub fn induced_subgraph(&self, set: &[VertexId]) -> Result<(QueryGraph, Relabel)> {
        let mut to_parent = set.to_vec();
        to_parent.sort_unstable();
        to_parent.dedup();
        if let Some(&bad) = to_parent.last().filter(|&&v| v >= self.n()) {
            return Err(Error::InvalidVertex(bad, self.n()));
        }
        let relabel = Relabel { to_parent };
        let mut adj = Vec::with_capacity(relabel.len());
        let mut weights = self.weights.as_ref().map(|_| Vec::with_capacity(relabel.len()));
        let mut deg_sum = 0;
        for &p in relabel.parents() {
            let mut list = Vec::new();
            let mut wl = Vec::new();
            for (i, &x) in self.adj[p].iter().enumerate() {
                if let Some(local) = relabel.local(x) {
                    list.push(local);
                    wl.push(self.weight_at(p, i));
                }
            }
            deg_sum += list.len();
            adj.push(list);
            if let Some(ws) = weights.as_mut() {
                ws.push(wl);
            }
        }
        Ok((
            QueryGraph {
                adj,
                weights,
                degree_bound: self.degree_bound,
                m: deg_sum / 2,
                counter: Arc::clone(&self.counter),
            },
            relabel,
        ))
    }

    /// `E(S, V \ S)` in rank order.
    pub fn cut_edges(&self, set: &[VertexId]) -> Vec<EdgeRef> {
        let mut inside = vec![false; self.n()];
        for &v in set {
            inside[v] = true;
        }
        let mut out: Vec<EdgeRef> = set
            .iter()
            .filter(|&&v| v < self.n())
            .flat_map(|&v| self.adj[v].iter().filter(|&&x| !inside[x]).map(move |&x| EdgeRef::new(v, x)))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// `|E(S, V \ S)|` for a set given as a membership mask.
    pub fn cut_size_mask(&self, set: &[VertexId], inside: &[bool]) -> usize {
        set.iter().map(|&v| self.adj[v].iter().filter(|&&x| !inside[x]).count()).sum()
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut comp = vec![usize::MAX; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut head = 0;
            while head < members.len() {
                let x = members[head];
                head += 1;
                for &y in &self.adj[x] {
                    if comp[y] == usize::MAX {
                        comp[y] = id;
                        members.push(y);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }
}

/// Whether `set` induces a connected subgraph of `g` (empty sets are not connected).
pub fn induces_connected(g: &QueryGraph, set: &[VertexId]) -> bool {
    if set.is_empty() {
        return false;
    }
    let mut inside = std::collections::HashSet::with_capacity(set.len());
    inside.extend(set.iter().copied());
    let mut seen = std::collections::HashSet::with_capacity(set.len());
    let mut stack = vec![set[0]];
    seen.insert(set[0]);
    while let Some(x) = stack.pop() {
        for &y in g.adj(x) {
            if inside.contains(&y) && seen.insert(y) {
                stack.push(y);
            }
        }
    }
    seen.len() == inside.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cycle4() -> QueryGraph {
        QueryGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)], None).unwrap()
    }

    #[test]
    fn neighbor_query_in_sorted_order() {
        let g = cycle4();
        assert_eq!(g.neighbor_query(0, 1).unwrap(), NeighborAnswer::Vertex(1, None));
        assert_eq!(g.neighbor_query(0, 2).unwrap(), NeighborAnswer::Vertex(3, None));
        assert_eq!(g.neighbor_query(0, 3).unwrap(), NeighborAnswer::Absent);
        assert_eq!(g.counts().neighbor, 3);
        assert!(matches!(g.neighbor_query(9, 1), Err(Error::InvalidVertex(9, 4))));
    }

    #[test]
    fn weighted_neighbor_carries_weight() {
        let g = QueryGraph::from_weighted_edges(
            3,
            &[(0, 1, Weight::from_int(1)), (1, 2, Weight::from_int(2)), (0, 2, Weight::from_int(3))],
            None,
        )
        .unwrap();
        assert_eq!(g.neighbor_query(0, 1).unwrap(), NeighborAnswer::Vertex(1, Some(Weight::from_int(1))));
    }

    #[test]
    fn rejects_non_simple_input() {
        assert!(matches!(QueryGraph::from_edges(3, &[(0, 0)], None), Err(Error::NotSimple(_))));
        assert!(matches!(QueryGraph::from_edges(3, &[(0, 1), (1, 0)], None), Err(Error::NotSimple(_))));
        assert!(matches!(QueryGraph::from_edges(3, &[(0, 5)], None), Err(Error::InvalidVertex(5, 3))));
        assert!(matches!(
            QueryGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)], Some(2)),
            Err(Error::DegreeBound { vertex: 0, .. })
        ));
        assert!(QueryGraph::from_weighted_edges(2, &[(0, 1, Weight::from_raw(10))], None).is_err());
    }

    #[test]
    fn random_neighbor_of_leaf_and_isolated() {
        let g = QueryGraph::from_edges(3, &[(0, 1)], None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            assert_eq!(g.random_neighbor_query(0, &mut rng).unwrap(), 1);
        }
        assert!(matches!(g.random_neighbor_query(2, &mut rng), Err(Error::IsolatedVertex(2))));
        assert_eq!(g.counts().random_neighbor, 21);
    }

    #[test]
    fn random_neighbor_is_uniform_on_star() {
        // chi-square against uniform over 3 leaves, 3000 draws
        let g = QueryGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)], None).unwrap();
        let mut rng = crate::prf::Prf::new(11, "test").stream(&[0]);
        let mut counts = [0usize; 4];
        for _ in 0..3000 {
            counts[g.random_neighbor_query(0, &mut rng).unwrap()] += 1;
        }
        for &c in &counts[1..] {
            assert!((900..=1100).contains(&c), "{counts:?}");
        }
        let chi2: f64 = counts[1..].iter().map(|&c| (c as f64 - 1000.0).powi(2) / 1000.0).sum();
        // 99.9th percentile of chi-square with 2 dof
        assert!(chi2 < 13.82, "chi2 = {chi2}");
    }

    #[test]
    fn compare_weight_breaks_ties_by_rank() {
        let g = QueryGraph::from_weighted_edges(
            4,
            &[(0, 1, Weight::from_int(2)), (2, 3, Weight::from_int(2)), (1, 2, Weight::from_int(3))],
            None,
        )
        .unwrap();
        let (a, b, c) = (EdgeRef::new(0, 1), EdgeRef::new(2, 3), EdgeRef::new(1, 2));
        assert_eq!(g.compare_weight(a, c).unwrap(), Ordering::Less);
        assert_eq!(g.compare_weight(a, b).unwrap(), Ordering::Less);
        assert_eq!(g.compare_weight(b, a).unwrap(), Ordering::Greater);
        assert_eq!(g.compare_weight(a, a).unwrap(), Ordering::Equal);
        assert!(g.compare_weight(a, EdgeRef::new(0, 3)).is_err());
    }

    #[test]
    fn induced_subgraph_examples() {
        let path = QueryGraph::from_edges(3, &[(0, 1), (1, 2)], None).unwrap();
        let (sub, map) = path.induced_subgraph(&[0, 2]).unwrap();
        assert_eq!((sub.n(), sub.m()), (2, 0));
        assert_eq!(map.parents(), &[0, 2]);

        let tri = QueryGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)], None).unwrap();
        let (sub, _) = tri.induced_subgraph(&[2, 0, 1]).unwrap();
        assert_eq!(sub, tri);

        let (sub, map) = cycle4().induced_subgraph(&[0, 1, 2]).unwrap();
        assert_eq!(sub.edges().collect::<Vec<_>>(), vec![EdgeRef::new(0, 1), EdgeRef::new(1, 2)]);
        assert_eq!(map.local(3), None);
    }

    #[test]
    fn induced_subgraph_shares_counter() {
        let g = cycle4();
        let (sub, _) = g.induced_subgraph(&[0, 1]).unwrap();
        sub.neighbor_query(0, 1).unwrap();
        assert_eq!(g.counts().neighbor, 1);
    }

    #[test]
    fn cut_edge_examples() {
        let g = cycle4();
        assert_eq!(g.cut_edges(&[0, 1]), vec![EdgeRef::new(0, 3), EdgeRef::new(1, 2)]);
        assert!(g.cut_edges(&[0, 1, 2, 3]).is_empty());
        assert!(g.cut_edges(&[]).is_empty());
    }

    #[test]
    fn weight_parse_and_display() {
        assert_eq!(Weight::parse("2").unwrap(), Weight::from_int(2));
        assert_eq!(Weight::parse("1.5").unwrap().raw(), 1_500_000);
        assert_eq!(Weight::parse("1.000001").unwrap().raw(), 1_000_001);
        assert!(Weight::parse("1.0000001").is_none());
        assert!(Weight::parse("-1").is_none());
        assert!(Weight::parse("").is_none());
        assert_eq!(Weight::from_raw(1_250_000).to_string(), "1.25");
        assert_eq!(Weight::from_int(3).to_string(), "3");
    }
}
