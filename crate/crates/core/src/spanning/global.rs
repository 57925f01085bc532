use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use super::subparts::{subparts, SubpartForest};
use super::SpanConfig;
use crate::error::{Error, Result};
use crate::graph::{EdgeRef, QueryCounts, QueryGraph, Relabel, VertexId, Weight};
use crate::oracles::PartitionHandle;
use crate::prf::Prf;

/// Everything derived from `(graph, config)` before any edge is decided.
pub struct SpanStructure<'g> {
    g: &'g QueryGraph,
    cfg: SpanConfig,
    delta: f64,
    heavy: Vec<bool>,
    light: Relabel,
    /// Partition of `G[L]`, in `G[L]`'s local ids.
    partition: PartitionHandle,
    q: usize,
    prf: Prf,
    forests: Mutex<HashMap<usize, Arc<SubpartForest>>>,
}

impl<'g> SpanStructure<'g> {
    pub fn new(g: &'g QueryGraph, cfg: &SpanConfig) -> Result<Self> {
        cfg.validate()?;
        if !g.is_weighted() {
            return Err(Error::Unweighted);
        }
        if g.max_weight().as_f64() > cfg.wmax {
            return Err(Error::Usage(format!(
                "edge weight {} exceeds wmax {}",
                g.max_weight(),
                cfg.wmax
            )));
        }
        let delta = cfg.delta();
        let heavy: Vec<bool> = (0..g.n()).map(|v| g.deg(v) as f64 > delta).collect();
        let light: Vec<VertexId> = (0..g.n()).filter(|&v| !heavy[v]).collect();
        let (gl, map) = g.induced_subgraph(&light)?;
        let partition = cfg.oracle.partition(&gl, cfg.oracle_param())?;
        let q = cfg.sample_size_for(g.n(), partition.k);
        Ok(SpanStructure {
            g,
            cfg: cfg.clone(),
            delta,
            heavy,
            light: map,
            partition,
            q,
            prf: Prf::new(cfg.seed, "span/sample"),
            forests: Mutex::new(HashMap::new()),
        })
    }

    pub fn graph(&self) -> &'g QueryGraph {
        self.g
    }

    pub fn config(&self) -> &SpanConfig {
        &self.cfg
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn sample_size(&self) -> usize {
        self.q
    }

    pub fn is_heavy(&self, v: VertexId) -> bool {
        self.heavy[v]
    }

    pub fn heavy_count(&self) -> usize {
        self.heavy.iter().filter(|&&h| h).count()
    }

    pub fn partition(&self) -> &PartitionHandle {
        &self.partition
    }

    /// Index of the part holding light vertex `v`.
    pub fn part_of(&self, v: VertexId) -> Option<usize> {
        self.light.local(v).map(|l| self.partition.part_index(l))
    }

    /// Part `idx` in parent ids.
    pub fn part(&self, idx: usize) -> Vec<VertexId> {
        self.partition.parts[idx].iter().map(|&l| self.light.parent(l)).collect()
    }

    pub fn forest(&self, idx: usize) -> Result<Arc<SubpartForest>> {
        if let Some(f) = self.forests.lock().unwrap().get(&idx) {
            return Ok(Arc::clone(f));
        }
        let f = Arc::new(subparts(self.g, &self.part(idx), |v| self.heavy[v])?);
        Ok(Arc::clone(self.forests.lock().unwrap().entry(idx).or_insert(f)))
    }

    /// Forest of light `v`'s part and `v`'s sub-part index in it.
    pub fn locate(&self, v: VertexId) -> Result<(Arc<SubpartForest>, usize)> {
        let idx = self
            .part_of(v)
            .ok_or_else(|| Error::Usage(format!("vertex {v} is heavy")))?;
        let f = self.forest(idx)?;
        let sp = f.subpart_of(v).expect("vertex lies in its own part");
        Ok((f, sp))
    }

    /// The heavy vertex whose cluster holds `v`: `v` itself when heavy.
    pub fn cluster(&self, v: VertexId) -> Result<Option<VertexId>> {
        if self.heavy[v] {
            return Ok(Some(v));
        }
        let (f, sp) = self.locate(v)?;
        Ok(f.subparts[sp].center)
    }

    fn sampled_neighbors(&self, a: VertexId) -> Result<Vec<VertexId>> {
        let deg = self.g.degree_query(a)?;
        if self.q >= deg {
            return Ok(self.g.neighbors(a)?.to_vec());
        }
        (0..self.q as u64)
            .map(|slot| {
                let mut rng = self.prf.stream(&[a as u64, slot]);
                self.g.random_neighbor_query(a, &mut rng)
            })
            .collect()
    }

    fn consider(&self, best: &mut Option<(Weight, EdgeRef)>, e: EdgeRef) {
        let key = self.g.weight_key(e);
        if best.map_or(true, |b| key < b) {
            *best = Some(key);
        }
    }

    fn collect(&self, a: VertexId, b: VertexId, best: &mut Option<(Weight, EdgeRef)>) -> Result<()> {
        let mut scanned = HashSet::new();
        for y in self.sampled_neighbors(a)? {
            if y == b {
                self.consider(best, EdgeRef::new(a, b));
                continue;
            }
            if self.heavy[y] {
                continue;
            }
            let (f, sp) = self.locate(y)?;
            match f.subparts[sp].center {
                Some(c) if c == b => self.consider(best, EdgeRef::new(a, y)),
                Some(c) if c == a => {
                    if !scanned.insert((f.part[0], sp)) {
                        continue;
                    }
                    for &z in &f.subparts[sp].members {
                        for &w in self.g.neighbors(z)? {
                            if w == b || (!self.heavy[w] && self.cluster(w)? == Some(b)) {
                                self.consider(best, EdgeRef::new(z, w));
                            }
                        }
                    }
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// Lightest edge between clusters `C(a)` and `C(b)` seen through `q`
    /// sampled incidences of each center, or `None`.
    pub fn sample_lightest(&self, a: VertexId, b: VertexId) -> Result<Option<EdgeRef>> {
        if a == b || !self.heavy[a] || !self.heavy[b] {
            return Err(Error::Usage(format!("cluster sampling needs two distinct heavy centers, got {a} and {b}")));
        }
        let mut best = None;
        self.collect(a, b, &mut best)?;
        self.collect(b, a, &mut best)?;
        Ok(best.map(|(_, e)| e))
    }

    /// Whether `e` survives against the cluster pair `(a, b)`.
    pub fn beats_sample(&self, e: EdgeRef, sample: Option<EdgeRef>) -> bool {
        sample.map_or(true, |f| self.g.weight_key(e) <= self.g.weight_key(f))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GlobalSpanner {
    /// `E'`, rank-sorted.
    pub edges: Vec<EdgeRef>,
    pub heavy_heavy: Vec<EdgeRef>,
    pub partition_cut: Vec<EdgeRef>,
    pub subpart_tree: Vec<EdgeRef>,
    pub center_links: Vec<EdgeRef>,
    pub inter_cluster: Vec<EdgeRef>,
    pub inter_cluster_candidates: usize,
    pub heavy_count: usize,
    pub heavy_threshold: f64,
    pub sample_size: usize,
    pub max_rounds: usize,
    pub total_weight: Weight,
    pub queries: QueryCounts,
}

impl GlobalSpanner {
    pub fn contains(&self, e: EdgeRef) -> bool {
        self.edges.binary_search(&e).is_ok()
    }
}

/// Builds `E'` step by step: heavy-heavy edges, partition cut edges,
/// sub-part trees and center links, then one sampled winner per pair of
/// adjacent clusters.
pub fn build_global(g: &QueryGraph, cfg: &SpanConfig) -> Result<GlobalSpanner> {
    let start = g.counts();
    let s = SpanStructure::new(g, cfg)?;
    let mut chosen: HashSet<EdgeRef> = HashSet::new();

    let heavy_heavy: Vec<EdgeRef> = g.edges().filter(|e| s.is_heavy(e.u) && s.is_heavy(e.v)).collect();
    chosen.extend(&heavy_heavy);

    let partition_cut: Vec<EdgeRef> = g
        .edges()
        .filter(|e| !s.is_heavy(e.u) && !s.is_heavy(e.v) && s.part_of(e.u) != s.part_of(e.v))
        .collect();
    chosen.extend(&partition_cut);

    let mut subpart_tree = Vec::new();
    let mut center_links = Vec::new();
    let mut max_rounds = 0;
    for idx in 0..s.partition().len() {
        let f = s.forest(idx)?;
        max_rounds = max_rounds.max(f.rounds);
        subpart_tree.extend_from_slice(&f.tree_edges);
        center_links.extend(f.links());
    }
    chosen.extend(&subpart_tree);
    chosen.extend(&center_links);

    let mut samples: HashMap<(VertexId, VertexId), Option<EdgeRef>> = HashMap::new();
    let mut inter_cluster = Vec::new();
    let mut candidates = 0;
    for e in g.edges() {
        if chosen.contains(&e) {
            continue;
        }
        let (Some(cu), Some(cv)) = (s.cluster(e.u)?, s.cluster(e.v)?) else {
            continue;
        };
        if cu == cv {
            continue;
        }
        candidates += 1;
        let key = (cu.min(cv), cu.max(cv));
        let sample = match samples.get(&key) {
            Some(&x) => x,
            None => {
                let x = s.sample_lightest(key.0, key.1)?;
                samples.insert(key, x);
                x
            }
        };
        if s.beats_sample(e, sample) {
            inter_cluster.push(e);
        }
    }
    chosen.extend(&inter_cluster);

    let mut edges: Vec<EdgeRef> = chosen.into_iter().collect();
    edges.sort_unstable();
    let total_weight = super::total_weight(g, &edges);
    Ok(GlobalSpanner {
        edges,
        heavy_heavy,
        partition_cut,
        subpart_tree,
        center_links,
        inter_cluster,
        inter_cluster_candidates: candidates,
        heavy_count: s.heavy_count(),
        heavy_threshold: s.delta(),
        sample_size: s.sample_size(),
        max_rounds,
        total_weight,
        queries: g.counts().since(&start),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::OracleSpec;
    use crate::spanning::{kruskal_msf, spans_components};

    fn w(x: u64) -> Weight {
        Weight::from_int(x)
    }

    #[test]
    fn tree_is_kept_whole() {
        let g = QueryGraph::from_weighted_edges(5, &[(0, 1, w(2)), (1, 2, w(1)), (1, 3, w(3)), (3, 4, w(1))], None).unwrap();
        let out = build_global(&g, &SpanConfig::new(0.5, 4.0, 1)).unwrap();
        assert_eq!(out.edges.len(), 4);
        assert_eq!(out.total_weight, kruskal_msf(&g).total_weight);
    }

    #[test]
    fn single_cluster_has_no_sampled_edges() {
        // hub 0 joined to a weighted path 1..=8
        let mut edges: Vec<_> = (1..8).map(|i| (i, i + 1, w(1 + (i as u64 * 7) % 3))).collect();
        edges.extend((1..=8).map(|i| (0, i, w(1 + (i as u64 * 5) % 4))));
        let g = QueryGraph::from_weighted_edges(9, &edges, None).unwrap();
        let cfg = SpanConfig {
            heavy_threshold: Some(4.0),
            ..SpanConfig::new(0.5, 4.0, 3)
        };
        let out = build_global(&g, &cfg).unwrap();
        assert_eq!(out.heavy_count, 1);
        assert!(out.heavy_heavy.is_empty());
        assert!(out.inter_cluster.is_empty());
        assert_eq!(out.inter_cluster_candidates, 0);
        assert!(spans_components(&g, &out.edges));
    }

    #[test]
    fn full_sampling_finds_the_unique_bridge_between_clusters() {
        // two hubs 0 and 1, each with a private leaf path, joined by one light-light edge
        let edges = [
            (0, 2, w(1)),
            (0, 3, w(1)),
            (0, 4, w(1)),
            (1, 5, w(1)),
            (1, 6, w(1)),
            (1, 7, w(1)),
            (4, 5, w(3)),
        ];
        let g = QueryGraph::from_weighted_edges(8, &edges, None).unwrap();
        let cfg = SpanConfig {
            heavy_threshold: Some(2.0),
            oracle: OracleSpec::Exhaustive { k: Some(1) },
            ..SpanConfig::new(0.5, 4.0, 0)
        };
        let s = SpanStructure::new(&g, &cfg).unwrap();
        assert_eq!(s.sample_lightest(0, 1).unwrap(), Some(EdgeRef::new(4, 5)));
        assert_eq!(s.sample_lightest(1, 0).unwrap(), Some(EdgeRef::new(4, 5)));
        let out = build_global(&g, &cfg).unwrap();
        assert!(out.contains(EdgeRef::new(4, 5)));
        assert!(spans_components(&g, &out.edges));
    }

    #[test]
    fn no_edges_between_clusters_gives_none() {
        let edges = [(0, 2, w(1)), (0, 3, w(1)), (0, 4, w(1)), (1, 5, w(1)), (1, 6, w(1)), (1, 7, w(1))];
        let g = QueryGraph::from_weighted_edges(8, &edges, None).unwrap();
        let cfg = SpanConfig {
            heavy_threshold: Some(2.0),
            ..SpanConfig::new(0.5, 4.0, 0)
        };
        let s = SpanStructure::new(&g, &cfg).unwrap();
        assert_eq!(s.sample_lightest(0, 1).unwrap(), None);
        assert!(s.sample_lightest(0, 2).is_err());
    }

    #[test]
    fn rejects_unweighted_and_overweight() {
        let g = QueryGraph::from_edges(2, &[(0, 1)], None).unwrap();
        assert!(matches!(build_global(&g, &SpanConfig::new(0.5, 2.0, 0)), Err(Error::Unweighted)));
        let g = QueryGraph::from_weighted_edges(2, &[(0, 1, w(5))], None).unwrap();
        assert!(build_global(&g, &SpanConfig::new(0.5, 2.0, 0)).is_err());
    }
}
