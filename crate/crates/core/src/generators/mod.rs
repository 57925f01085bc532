//! Seeded planar instances with known ground truth.
//!
//! Every family is planar by construction and ships a rotation system that
//! [`embedding::is_planar_embedding`] verifies. Hamiltonian-tagged families
//! carry a planted Hamiltonian path; forest families get their exact path
//! cover from the forest greedy, so `ham_distance` is certified at any size.

pub mod embedding;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{QueryGraph, VertexId, Weight};
use crate::hamiltonicity::path_cover::{forest_path_cover, min_path_cover, PathCoverCert, PATH_COVER_LIMIT};
use crate::prf::Prf;
use crate::spanning::kruskal_msf;
use embedding::Rotation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Grid,
    RandomTree,
    CycleChordsPlanar,
    Apollonian,
    StarForest,
    DisjointPaths,
    /// Stars `K_{1,s}` joined leaf-to-leaf into a chain.
    StarChain,
    /// Triangles joined by single edges into a chain.
    TriangleChain,
    /// A path plus two hubs adjacent to every path vertex and to each other.
    DoubleFan,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::Grid,
        Family::RandomTree,
        Family::CycleChordsPlanar,
        Family::Apollonian,
        Family::StarForest,
        Family::DisjointPaths,
        Family::StarChain,
        Family::TriangleChain,
        Family::DoubleFan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Grid => "grid",
            Family::RandomTree => "random_tree",
            Family::CycleChordsPlanar => "cycle_chords_planar",
            Family::Apollonian => "apollonian",
            Family::StarForest => "star_forest",
            Family::DisjointPaths => "disjoint_paths",
            Family::StarChain => "star_chain",
            Family::TriangleChain => "triangle_chain",
            Family::DoubleFan => "double_fan",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown family `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub family: Family,
    pub n: usize,
    pub seed: u64,
    /// Weight upper bound `W`; weights are drawn from `{1, ..., W·10^6} / 10^6`.
    pub wmax: Option<u64>,
    /// Family-specific block size: grid width, leaves per star, vertices per
    /// path, or maximum chord span.
    pub block: Option<usize>,
}

impl GenSpec {
    pub fn new(family: Family, n: usize, seed: u64) -> Self {
        GenSpec {
            family,
            n,
            seed,
            wmax: None,
            block: None,
        }
    }

    pub fn weighted(mut self, wmax: u64) -> Self {
        self.wmax = Some(wmax);
        self
    }

    pub fn block(mut self, block: usize) -> Self {
        self.block = Some(block);
        self
    }
}

/// What is known about an instance by construction or by exact computation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroundTruth {
    pub spec: GenSpec,
    pub n: usize,
    pub m: usize,
    pub degree_bound: Option<usize>,
    pub hamiltonian_path: Option<bool>,
    /// Certified `δ_HAM`, when known exactly.
    pub ham_distance: Option<usize>,
    /// Minimum number of edge deletions to make the graph bipartite, when known.
    pub bipartite_distance: Option<usize>,
    pub planted_order: Option<Vec<VertexId>>,
    pub msf_weight: Option<Weight>,
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub graph: QueryGraph,
    pub truth: GroundTruth,
    pub embedding: Rotation,
    /// Optimal path cover when one is known.
    pub path_cover: Option<PathCoverCert>,
}

struct Raw {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    rotation: Rotation,
    degree_bound: Option<usize>,
    hamiltonian_order: Option<Vec<VertexId>>,
    bipartite_distance: Option<usize>,
}

impl Raw {
    fn with_sorted_rotation(n: usize, edges: Vec<(VertexId, VertexId)>, degree_bound: Option<usize>) -> Raw {
        let mut rotation = vec![Vec::new(); n];
        for &(u, v) in &edges {
            rotation[u].push(v);
            rotation[v].push(u);
        }
        for r in &mut rotation {
            r.sort_unstable();
        }
        Raw {
            n,
            edges,
            rotation,
            degree_bound,
            hamiltonian_order: None,
            bipartite_distance: None,
        }
    }
}

const MSF_LIMIT: usize = 100_000;

pub fn generate(spec: &GenSpec) -> Result<Instance> {
    let prf = Prf::new(spec.seed, &format!("generate/{}", spec.family));
    let mut rng = prf.stream(&[spec.n as u64]);
    let raw = match spec.family {
        Family::Grid => grid(spec),
        Family::RandomTree => random_tree(spec, &mut rng),
        Family::CycleChordsPlanar => cycle_chords(spec, &mut rng),
        Family::Apollonian => apollonian(spec, &mut rng),
        Family::StarForest => star_forest(spec),
        Family::DisjointPaths => disjoint_paths(spec),
        Family::StarChain => star_chain(spec),
        Family::TriangleChain => triangle_chain(spec),
        Family::DoubleFan => double_fan(spec),
    }?;

    let graph = match spec.wmax {
        Some(w) => {
            if w == 0 {
                return Err(Error::Usage("wmax must be at least 1".into()));
            }
            let mut sorted: Vec<(VertexId, VertexId)> =
                raw.edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
            sorted.sort_unstable();
            let mut wrng = prf.derive("weights").stream(&[]);
            let weighted: Vec<_> = sorted
                .into_iter()
                .map(|(u, v)| (u, v, Weight::from_raw(wrng.gen_range(Weight::SCALE..=w * Weight::SCALE))))
                .collect();
            QueryGraph::from_weighted_edges(raw.n, &weighted, raw.degree_bound)?
        }
        None => QueryGraph::from_edges(raw.n, &raw.edges, raw.degree_bound)?,
    };

    let path_cover = if let Some(order) = &raw.hamiltonian_order {
        Some(PathCoverCert {
            paths: vec![order.clone()],
        })
    } else if let Some(cert) = forest_path_cover(&graph) {
        Some(cert)
    } else if graph.n() <= PATH_COVER_LIMIT {
        Some(min_path_cover(&graph)?)
    } else {
        None
    };
    if let Some(cert) = &path_cover {
        debug_assert!(cert.verify(&graph));
    }
    let ham_distance = path_cover.as_ref().map(|c| c.size().saturating_sub(1));
    let msf_weight = (graph.is_weighted() && graph.n() <= MSF_LIMIT).then(|| {
        let w = kruskal_msf(&graph).total_weight;
        graph.reset_counters();
        w
    });
    let truth = GroundTruth {
        spec: spec.clone(),
        n: graph.n(),
        m: graph.m(),
        degree_bound: graph.degree_bound(),
        hamiltonian_path: ham_distance.map(|d| d == 0),
        ham_distance,
        bipartite_distance: raw.bipartite_distance,
        planted_order: raw.hamiltonian_order.clone(),
        msf_weight,
    };
    Ok(Instance {
        graph,
        truth,
        embedding: raw.rotation,
        path_cover,
    })
}

fn too_small(family: &'static str, min: usize, n: usize) -> Error {
    Error::TooSmall { family, min, n }
}

fn grid(spec: &GenSpec) -> Result<Raw> {
    if spec.n == 0 {
        return Err(too_small("grid", 1, spec.n));
    }
    let w = spec.block.unwrap_or_else(|| (spec.n as f64).sqrt().ceil() as usize).max(1);
    let h = spec.n.div_ceil(w);
    let id = |r: usize, c: usize| r * w + c;
    let mut edges = Vec::new();
    let mut rotation = vec![Vec::new(); w * h];
    for r in 0..h {
        for c in 0..w {
            if c + 1 < w {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < h {
                edges.push((id(r, c), id(r + 1, c)));
            }
            // counter-clockwise: right, up, left, down
            let rot = &mut rotation[id(r, c)];
            if c + 1 < w {
                rot.push(id(r, c + 1));
            }
            if r > 0 {
                rot.push(id(r - 1, c));
            }
            if c > 0 {
                rot.push(id(r, c - 1));
            }
            if r + 1 < h {
                rot.push(id(r + 1, c));
            }
        }
    }
    let order = (0..h)
        .flat_map(|r| (0..w).map(move |c| if r % 2 == 0 { id(r, c) } else { id(r, w - 1 - c) }))
        .collect();
    Ok(Raw {
        n: w * h,
        edges,
        rotation,
        degree_bound: Some(4),
        hamiltonian_order: Some(order),
        bipartite_distance: Some(0),
    })
}

/// Random recursive tree with maximum degree 4.
fn random_tree(spec: &GenSpec, rng: &mut impl Rng) -> Result<Raw> {
    if spec.n == 0 {
        return Err(too_small("random_tree", 1, spec.n));
    }
    let mut deg = vec![0usize; spec.n];
    let mut open: Vec<VertexId> = vec![0];
    let mut edges = Vec::with_capacity(spec.n);
    for v in 1..spec.n {
        let slot = rng.gen_range(0..open.len());
        let p = open[slot];
        edges.push((p, v));
        deg[p] += 1;
        deg[v] += 1;
        if deg[p] == 4 {
            open.swap_remove(slot);
        }
        open.push(v);
    }
    let mut raw = Raw::with_sorted_rotation(spec.n, edges, Some(4));
    raw.bipartite_distance = Some(0);
    Ok(raw)
}

/// A Hamiltonian cycle with non-crossing short chords drawn inside it, ids shuffled.
fn cycle_chords(spec: &GenSpec, rng: &mut impl Rng) -> Result<Raw> {
    let n = spec.n;
    if n < 3 {
        return Err(too_small("cycle_chords_planar", 3, n));
    }
    let span = spec.block.unwrap_or(6).max(2);
    // positions on the cycle; chords[p] lists partner positions
    let mut chords: Vec<Vec<usize>> = vec![Vec::new(); n];
    let crosses = |chords: &Vec<Vec<usize>>, a: usize, b: usize| {
        (a + 1..b).any(|x| chords[x].iter().any(|&y| y < a || y > b))
    };
    for a in 0..n {
        if !rng.gen_bool(0.5) {
            continue;
        }
        let b = a + rng.gen_range(2..=span);
        if b >= n || (a == 0 && b == n - 1) {
            continue;
        }
        if chords[a].len() >= 2 || chords[b].len() >= 2 || chords[a].contains(&b) || crosses(&chords, a, b) {
            continue;
        }
        chords[a].push(b);
        chords[b].push(a);
    }
    let mut label: Vec<VertexId> = (0..n).collect();
    label.shuffle(rng);
    let mut edges = Vec::new();
    for p in 0..n {
        edges.push((label[p], label[(p + 1) % n]));
        for &q in &chords[p] {
            if q > p {
                edges.push((label[p], label[q]));
            }
        }
    }
    // convex drawing: neighbors of p in order of (q - p) mod n
    let mut rotation = vec![Vec::new(); n];
    for p in 0..n {
        let mut nb: Vec<usize> = chords[p].clone();
        nb.push((p + 1) % n);
        nb.push((p + n - 1) % n);
        nb.sort_unstable_by_key(|&q| (q + n - p) % n);
        nb.dedup();
        rotation[label[p]] = nb.into_iter().map(|q| label[q]).collect();
    }
    let n_edges = edges.len();
    let mut seen = std::collections::HashSet::new();
    edges.retain(|&(u, v)| seen.insert((u.min(v), u.max(v))));
    debug_assert!(n > 3 || edges.len() <= n_edges);
    Ok(Raw {
        n,
        edges,
        rotation,
        degree_bound: Some(4),
        hamiltonian_order: Some(label),
        bipartite_distance: None,
    })
}

/// Random Apollonian network: repeatedly stack a vertex into a random triangular face.
fn apollonian(spec: &GenSpec, rng: &mut impl Rng) -> Result<Raw> {
    let n = spec.n;
    if n < 3 {
        return Err(too_small("apollonian", 3, n));
    }
    let mut edges = vec![(0, 1), (1, 2), (0, 2)];
    // counter-clockwise faces; the outer face (0, 2, 1) is never subdivided
    let mut faces: Vec<[VertexId; 3]> = vec![[0, 1, 2]];
    let mut rotation: Rotation = vec![vec![1, 2], vec![2, 0], vec![0, 1]];
    let insert_after = |rot: &mut Vec<VertexId>, after: VertexId, v: VertexId| {
        let i = rot.iter().position(|&x| x == after).expect("corner in rotation");
        rot.insert(i + 1, v);
    };
    for v in 3..n {
        let f = rng.gen_range(0..faces.len());
        let [a, b, c] = faces[f];
        edges.extend([(a, v), (b, v), (c, v)]);
        insert_after(&mut rotation[a], b, v);
        insert_after(&mut rotation[b], c, v);
        insert_after(&mut rotation[c], a, v);
        rotation.push(vec![a, b, c]);
        faces[f] = [a, b, v];
        faces.push([b, c, v]);
        faces.push([c, a, v]);
    }
    Ok(Raw {
        n,
        edges,
        rotation,
        degree_bound: None,
        hamiltonian_order: None,
        bipartite_distance: None,
    })
}

fn blocks(spec: &GenSpec, family: &'static str, size: usize) -> Result<usize> {
    if spec.n < size {
        return Err(too_small(family, size, spec.n));
    }
    Ok(spec.n / size)
}

fn star_forest(spec: &GenSpec) -> Result<Raw> {
    let leaves = spec.block.unwrap_or(3).max(1);
    let k = blocks(spec, "star_forest", leaves + 1)?;
    let mut edges = Vec::new();
    for s in 0..k {
        let c = s * (leaves + 1);
        edges.extend((1..=leaves).map(|l| (c, c + l)));
    }
    let mut raw = Raw::with_sorted_rotation(k * (leaves + 1), edges, Some(leaves));
    raw.bipartite_distance = Some(0);
    Ok(raw)
}

fn disjoint_paths(spec: &GenSpec) -> Result<Raw> {
    let len = spec.block.unwrap_or(4).max(1);
    let k = blocks(spec, "disjoint_paths", len)?;
    let edges = (0..k)
        .flat_map(|p| (0..len - 1).map(move |i| (p * len + i, p * len + i + 1)))
        .collect();
    let mut raw = Raw::with_sorted_rotation(k * len, edges, Some(2));
    raw.bipartite_distance = Some(0);
    Ok(raw)
}

fn star_chain(spec: &GenSpec) -> Result<Raw> {
    let leaves = spec.block.unwrap_or(3).max(2);
    let size = leaves + 1;
    let k = blocks(spec, "star_chain", size)?;
    let mut edges = Vec::new();
    for s in 0..k {
        let c = s * size;
        edges.extend((1..=leaves).map(|l| (c, c + l)));
        if s + 1 < k {
            // last leaf of this star to first leaf of the next
            edges.push((c + leaves, c + size + 1));
        }
    }
    let mut raw = Raw::with_sorted_rotation(k * size, edges, Some(leaves.max(2)));
    raw.bipartite_distance = Some(0);
    Ok(raw)
}

fn triangle_chain(spec: &GenSpec) -> Result<Raw> {
    let k = blocks(spec, "triangle_chain", 3)?;
    let mut edges = Vec::new();
    for t in 0..k {
        let a = 3 * t;
        edges.extend([(a, a + 1), (a + 1, a + 2), (a, a + 2)]);
        if t + 1 < k {
            edges.push((a + 2, a + 3));
        }
    }
    let mut raw = Raw::with_sorted_rotation(3 * k, edges, Some(3));
    raw.hamiltonian_order = Some((0..3 * k).collect());
    raw.bipartite_distance = Some(k);
    Ok(raw)
}

fn double_fan(spec: &GenSpec) -> Result<Raw> {
    if spec.n < 4 {
        return Err(too_small("double_fan", 4, spec.n));
    }
    let p = spec.n - 2;
    let (top, bottom) = (p, p + 1);
    let mut edges: Vec<_> = (0..p - 1).map(|i| (i, i + 1)).collect();
    edges.extend((0..p).flat_map(|i| [(i, top), (i, bottom)]));
    edges.push((top, bottom));
    let mut rotation: Rotation = (0..p)
        .map(|i| {
            let mut r = Vec::with_capacity(4);
            if i + 1 < p {
                r.push(i + 1);
            }
            r.push(top);
            if i > 0 {
                r.push(i - 1);
            }
            r.push(bottom);
            r
        })
        .collect();
    rotation.push((0..p).chain([bottom]).collect());
    rotation.push((0..p).rev().chain([top]).collect());
    let order = std::iter::once(top).chain(0..p).chain([bottom]).collect();
    Ok(Raw {
        n: spec.n,
        edges,
        rotation,
        degree_bound: None,
        hamiltonian_order: Some(order),
        bipartite_distance: None,
    })
}

/// Exact degree histogram, degree → vertex count.
pub fn degree_histogram(g: &QueryGraph) -> BTreeMap<usize, usize> {
    let mut hist = BTreeMap::new();
    for v in 0..g.n() {
        *hist.entry(g.deg(v)).or_insert(0) += 1;
    }
    hist
}

#[cfg(test)]
mod tests {
    use super::embedding::is_planar_embedding;
    use super::*;
    use crate::graph::io::write_graph;

    #[test]
    fn grid_3x3() {
        let inst = generate(&GenSpec::new(Family::Grid, 9, 0)).unwrap();
        assert_eq!((inst.graph.n(), inst.graph.m()), (9, 12));
        assert_eq!(inst.truth.hamiltonian_path, Some(true));
        assert!(inst.path_cover.unwrap().verify(&inst.graph));
        assert_eq!(
            degree_histogram(&inst.graph).into_iter().collect::<Vec<_>>(),
            vec![(2, 4), (3, 4), (4, 1)]
        );
    }

    #[test]
    fn histogram_examples() {
        let c4 = QueryGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)], None).unwrap();
        assert_eq!(degree_histogram(&c4).into_iter().collect::<Vec<_>>(), vec![(2, 4)]);
        let star = QueryGraph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)], None).unwrap();
        assert_eq!(degree_histogram(&star).into_iter().collect::<Vec<_>>(), vec![(1, 4), (4, 1)]);
    }

    #[test]
    fn star_forest_distance() {
        // five K_{1,3}: each needs two paths
        let inst = generate(&GenSpec::new(Family::StarForest, 20, 0).block(3)).unwrap();
        assert_eq!(inst.truth.ham_distance, Some(9));
        // five K_{1,4}: three paths each
        let inst = generate(&GenSpec::new(Family::StarForest, 25, 0).block(4)).unwrap();
        assert_eq!(inst.truth.ham_distance, Some(14));
    }

    #[test]
    fn planted_cycle_is_hamiltonian() {
        let inst = generate(&GenSpec::new(Family::CycleChordsPlanar, 20, 7)).unwrap();
        let order = inst.truth.planted_order.clone().unwrap();
        assert_eq!(order.len(), 20);
        assert!(inst.graph.has_edge(order[19], order[0]));
        assert!(inst.path_cover.unwrap().verify(&inst.graph));
        assert_eq!(inst.truth.ham_distance, Some(0));
    }

    #[test]
    fn every_family_is_planar_and_deterministic() {
        for family in Family::ALL {
            for seed in 0..3 {
                let spec = GenSpec::new(family, 60, seed).weighted(4);
                let a = generate(&spec).unwrap();
                let b = generate(&spec).unwrap();
                assert_eq!(write_graph(&a.graph), write_graph(&b.graph), "{family}");
                assert_eq!(a.truth, b.truth);
                assert!(is_planar_embedding(&a.graph, &a.embedding).unwrap(), "{family} seed {seed}");
                // Fact 1 with r = 9 (K_{3,3}) holds with room to spare for planar graphs
                assert!(a.graph.m() <= 3 * a.graph.n());
                if let Some(cert) = &a.path_cover {
                    assert!(cert.verify(&a.graph), "{family}");
                }
            }
        }
    }

    #[test]
    fn too_small_inputs() {
        assert!(matches!(
            generate(&GenSpec::new(Family::Apollonian, 2, 0)),
            Err(Error::TooSmall { min: 3, .. })
        ));
        assert!(generate(&GenSpec::new(Family::Grid, 0, 0)).is_err());
        assert!(generate(&GenSpec::new(Family::StarForest, 3, 0)).is_err());
    }

    #[test]
    fn weights_in_range() {
        let inst = generate(&GenSpec::new(Family::Grid, 100, 3).weighted(8)).unwrap();
        for e in inst.graph.edges() {
            let w = inst.graph.weight(e).unwrap();
            assert!(w >= Weight::from_int(1) && w <= Weight::from_int(8));
        }
        assert!(inst.truth.msf_weight.unwrap() >= Weight::from_int(99));
    }

    #[test]
    fn family_names_roundtrip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("torus".parse::<Family>().is_err());
    }
}
