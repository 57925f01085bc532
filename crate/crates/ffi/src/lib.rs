//! C interface to `minorfree`.
//!
//! Every function returns an [`MfStatus`]; on failure, [`mf_last_error`]
//! describes the problem. Handles are opaque and owned by the caller, who
//! releases them with the matching `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use minorfree::generators::{generate, GenSpec, GroundTruth};
use minorfree::graph::io::{load_graph, parse_graph};
use minorfree::hamiltonicity::{
    estimate_ham_distance, ham_distance, test_ham_one_sided, EstimatorConfig, OneSidedConfig,
};
use minorfree::harness::{execute, parse_run_spec, record_json, RunOptions};
use minorfree::oracles::OracleSpec;
use minorfree::property::{bipartite_decider, test_property, PropertyConfig};
use minorfree::spanning::{bounded_oracle, build_global, kruskal_msf, local_edge_bounded, SpanConfig};
use minorfree::{EdgeRef, Error, QueryGraph, Verdict, Weight};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Io = 4,
    Budget = 5,
    /// The graph lacks something the call needs: a degree bound or weights.
    Unsupported = 6,
    Internal = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MfOracleMode {
    Exhaustive = 0,
    Ball = 1,
    Walk = 2,
}

/// Covering-oracle choice. Zero `k` or `radius` means automatic.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct MfOracle {
    pub mode: MfOracleMode,
    pub k: usize,
    pub radius: usize,
    pub cap: usize,
    pub ell: u64,
    pub c: u32,
    pub walks_per_length: usize,
}

impl MfOracle {
    fn spec(&self) -> OracleSpec {
        let nonzero = |x: usize| (x > 0).then_some(x);
        match self.mode {
            MfOracleMode::Exhaustive => OracleSpec::Exhaustive { k: nonzero(self.k) },
            MfOracleMode::Ball => OracleSpec::Ball {
                radius: nonzero(self.radius),
                cap: self.cap,
            },
            MfOracleMode::Walk => OracleSpec::Walk {
                ell: self.ell,
                c: self.c,
                walks_per_length: self.walks_per_length,
                part_size_cap: self.cap,
            },
        }
    }
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MfQueryCounts {
    pub neighbor: u64,
    pub degree: u64,
    pub random_neighbor: u64,
}

pub struct MfGraph {
    graph: QueryGraph,
    truth: Option<GroundTruth>,
}

pub struct MfEdgeList {
    edges: Vec<EdgeRef>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> MfStatus {
    match e {
        Error::Budget { .. } => MfStatus::Budget,
        Error::UnboundedDegree | Error::Unweighted => MfStatus::Unsupported,
        Error::Parse { .. } | Error::Json(_) => MfStatus::Parse,
        Error::Io(_) => MfStatus::Io,
        _ => MfStatus::InvalidArgument,
    }
}

struct Fail(MfStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(MfStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> MfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            MfStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            MfStatus::Internal
        }
    }
}

unsafe fn graph_ref<'a>(g: *const MfGraph) -> Result<&'a MfGraph, Fail> {
    g.as_ref().ok_or_else(|| null("graph"))
}

unsafe fn out_ref<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn str_arg<'a>(s: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Fail(MfStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

fn boxed(graph: QueryGraph, truth: Option<GroundTruth>) -> *mut MfGraph {
    Box::into_raw(Box::new(MfGraph { graph, truth }))
}

/// Message for the last failed call on this thread, or null. Valid until the next call.
#[no_mangle]
pub extern "C" fn mf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[no_mangle]
pub extern "C" fn mf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Loads a graph in the text edge-list format.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mf_graph_load(path: *const c_char, out: *mut *mut MfGraph) -> MfStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = boxed(load_graph(str_arg(path, "path")?)?, None);
        Ok(())
    })
}

/// Parses a graph from text in the edge-list format.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mf_graph_parse(text: *const c_char, out: *mut *mut MfGraph) -> MfStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = boxed(parse_graph(str_arg(text, "text")?)?, None);
        Ok(())
    })
}

/// Builds a graph from `m` edges `(us[i], vs[i])`. `weights` may be null for
/// an unweighted graph. A negative `degree_bound` means none.
///
/// # Safety
/// `us` and `vs` (and `weights` when non-null) must point to `m` elements.
#[no_mangle]
pub unsafe extern "C" fn mf_graph_from_edges(
    n: usize,
    us: *const usize,
    vs: *const usize,
    weights: *const f64,
    m: usize,
    degree_bound: i64,
    out: *mut *mut MfGraph,
) -> MfStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        if m > 0 && (us.is_null() || vs.is_null()) {
            return Err(null("edge arrays"));
        }
        let (us, vs) = if m == 0 {
            (&[][..], &[][..])
        } else {
            (std::slice::from_raw_parts(us, m), std::slice::from_raw_parts(vs, m))
        };
        let bound = usize::try_from(degree_bound).ok();
        let g = if weights.is_null() {
            let edges: Vec<_> = us.iter().copied().zip(vs.iter().copied()).collect();
            QueryGraph::from_edges(n, &edges, bound)?
        } else {
            let ws = std::slice::from_raw_parts(weights, m);
            let mut edges = Vec::with_capacity(m);
            for i in 0..m {
                let w = ws[i];
                if !w.is_finite() || w < 0.0 {
                    return Err(Fail(MfStatus::InvalidArgument, format!("weight {w} is invalid")));
                }
                let raw = (w * Weight::SCALE as f64).round() as u64;
                edges.push((us[i], vs[i], Weight::from_raw(raw)));
            }
            QueryGraph::from_weighted_edges(n, &edges, bound)?
        };
        *out = boxed(g, None);
        Ok(())
    })
}

/// Generates an instance of a named family. `wmax == 0` leaves it unweighted.
///
/// # Safety
/// `family` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mf_generate(
    family: *const c_char,
    n: usize,
    seed: u64,
    wmax: u64,
    out: *mut *mut MfGraph,
) -> MfStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let family = str_arg(family, "family")?.parse()?;
        let mut spec = GenSpec::new(family, n, seed);
        if wmax > 0 {
            spec = spec.weighted(wmax);
        }
        let inst = generate(&spec)?;
        *out = boxed(inst.graph, Some(inst.truth));
        Ok(())
    })
}

/// # Safety
/// `g` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn mf_graph_free(g: *mut MfGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live graph handle or null.
#[no_mangle]
pub unsafe extern "C" fn mf_graph_vertex_count(g: *const MfGraph) -> usize {
    g.as_ref().map_or(0, |g| g.graph.n())
}

/// # Safety
/// `g` must be a live graph handle or null.
#[no_mangle]
pub unsafe extern "C" fn mf_graph_edge_count(g: *const MfGraph) -> usize {
    g.as_ref().map_or(0, |g| g.graph.m())
}

/// Queries charged to `g` since creation or the last reset.
///
/// # Safety
/// `g` must be a live graph handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mf_graph_query_counts(g: *const MfGraph, out: *mut MfQueryCounts) -> MfStatus {
    guard(|| {
        let c = graph_ref(g)?.graph.counts();
        *out_ref(out, "out")? = MfQueryCounts {
            neighbor: c.neighbor,
            degree: c.degree,
            random_neighbor: c.random_neighbor,
        };
        Ok(())
    })
}

/// # Safety
/// `g` must be a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn mf_graph_reset_queries(g: *const MfGraph) -> MfStatus {
    guard(|| {
        graph_ref(g)?.graph.reset_counters();
        Ok(())
    })
}

/// Certified distance to having a Hamiltonian path stored with a generated
/// instance; `*known` is false when there is none.
///
/// # Safety
/// `g` must be a live graph handle and the outputs valid pointers.
#[no_mangle]
pub unsafe extern "C" fn mf_graph_truth_ham_distance(g: *const MfGraph, known: *mut bool, out: *mut usize) -> MfStatus {
    guard(|| {
        let d = graph_ref(g)?.truth.as_ref().and_then(|t| t.ham_distance);
        *out_ref(known, "known")? = d.is_some();
        *out_ref(out, "out")? = d.unwrap_or(0);
        Ok(())
    })
}

/// Exact distance to having a Hamiltonian path.
///
/// # Safety
/// `g` must be a live graph handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mf_ham_distance(g: *const MfGraph, out: *mut usize) -> MfStatus {
    guard(|| {
        *out_ref(out, "out")? = ham_distance(&graph_ref(g)?.graph)?;
        Ok(())
    })
}

/// One-sided Hamiltonian-path test; the oracle is built at `eps/6`.
///
/// # Safety
/// `g` must be a live graph handle and `accept` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mf_test_ham_one_sided(
    g: *const MfGraph,
    eps: f64,
    oracle: MfOracle,
    seed: u64,
    accept: *mut bool,
) -> MfStatus {
    guard(|| {
        let g = &graph_ref(g)?.graph;
        let o = oracle.spec().build(g, eps / 6.0, seed)?;
        let r = test_ham_one_sided(g, eps, &o, seed, &OneSidedConfig::default())?;
        *out_ref(accept, "accept")? = r.verdict == Verdict::Accept;
        Ok(())
    })
}

/// Estimated distance to having a Hamiltonian path, within `eps·n` with
/// probability at least 2/3. Needs the exhaustive oracle.
///
/// # Safety
/// `g` must be a live graph handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mf_estimate_ham_distance(
    g: *const MfGraph,
    eps: f64,
    oracle: MfOracle,
    seed: u64,
    out: *mut f64,
) -> MfStatus {
    guard(|| {
        let g = &graph_ref(g)?.graph;
        let r = estimate_ham_distance(g, eps, &oracle.spec(), seed, &EstimatorConfig::default())?;
        *out_ref(out, "out")? = r.value - 1.0;
        Ok(())
    })
}

/// Weight of the minimum spanning forest.
///
/// # Safety
/// `g` must be a live graph handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mf_kruskal_weight(g: *const MfGraph, out: *mut f64) -> MfStatus {
    guard(|| {
        let g = &graph_ref(g)?.graph;
        if !g.is_weighted() {
            return Err(Error::Unweighted.into());
        }
        *out_ref(out, "out")? = kruskal_msf(g).total_weight.as_f64();
        Ok(())
    })
}

/// Global sparse spanning subgraph with default parameters and the given oracle.
///
/// # Safety
/// `g` must be a live graph handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mf_build_spanner(
    g: *const MfGraph,
    eps: f64,
    wmax: f64,
    oracle: MfOracle,
    seed: u64,
    out: *mut *mut MfEdgeList,
) -> MfStatus {
    guard(|| {
        let g = &graph_ref(g)?.graph;
        let cfg = SpanConfig {
            oracle: oracle.spec(),
            ..SpanConfig::new(eps, wmax, seed)
        };
        let s = build_global(g, &cfg)?;
        *out_ref(out, "out")? = Box::into_raw(Box::new(MfEdgeList { edges: s.edges }));
        Ok(())
    })
}

/// Whether the bounded-degree per-edge rule keeps `{u, v}`.
///
/// # Safety
/// `g` must be a live graph handle and `keep` a valid pointer.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn mf_local_edge_bounded(
    g: *const MfGraph,
    u: usize,
    v: usize,
    eps: f64,
    wmax: f64,
    oracle: MfOracle,
    seed: u64,
    keep: *mut bool,
) -> MfStatus {
    guard(|| {
        let g = &graph_ref(g)?.graph;
        g.check_vertex(u)?;
        g.check_vertex(v)?;
        if u == v {
            return Err(Fail(MfStatus::InvalidArgument, "self-loop".into()));
        }
        let cfg = SpanConfig {
            oracle: oracle.spec(),
            ..SpanConfig::new(eps, wmax, seed)
        };
        let o = bounded_oracle(g, &cfg)?;
        *out_ref(keep, "keep")? = local_edge_bounded(g, EdgeRef::new(u, v), &o)?.keep;
        Ok(())
    })
}

/// One-sided bipartiteness test; the oracle is built at `eps/2`.
///
/// # Safety
/// `g` must be a live graph handle and `accept` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mf_test_bipartite(
    g: *const MfGraph,
    eps: f64,
    oracle: MfOracle,
    seed: u64,
    accept: *mut bool,
) -> MfStatus {
    guard(|| {
        let g = &graph_ref(g)?.graph;
        let o = oracle.spec().build(g, eps / 2.0, seed)?;
        let r = test_property(g, &bipartite_decider(), eps, &o, seed, &PropertyConfig::default())?;
        *out_ref(accept, "accept")? = r.verdict == Verdict::Accept;
        Ok(())
    })
}

/// # Safety
/// `list` must be a live edge-list handle or null.
#[no_mangle]
pub unsafe extern "C" fn mf_edge_list_len(list: *const MfEdgeList) -> usize {
    list.as_ref().map_or(0, |l| l.edges.len())
}

/// # Safety
/// `list` must be a live edge-list handle and `u`, `v` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn mf_edge_list_get(list: *const MfEdgeList, i: usize, u: *mut usize, v: *mut usize) -> MfStatus {
    guard(|| {
        let l = list.as_ref().ok_or_else(|| null("list"))?;
        let e = l
            .edges
            .get(i)
            .ok_or_else(|| Fail(MfStatus::InvalidArgument, format!("index {i} out of {}", l.edges.len())))?;
        *out_ref(u, "u")? = e.u;
        *out_ref(v, "v")? = e.v;
        Ok(())
    })
}

/// # Safety
/// `list` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn mf_edge_list_free(list: *mut MfEdgeList) {
    if !list.is_null() {
        drop(Box::from_raw(list));
    }
}

/// Runs one harness spec given as JSON and returns its record as JSON.
/// Free the result with [`mf_string_free`].
///
/// # Safety
/// `spec_json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mf_run_json(spec_json: *const c_char, out: *mut *mut c_char) -> MfStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let spec = parse_run_spec(str_arg(spec_json, "spec_json")?)?;
        let text = record_json(&execute(0, &spec, RunOptions::default()))?;
        *out = CString::new(text).expect("JSON has no NUL").into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn mf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
