//! Partition and covering oracles.
//!
//! A covering oracle maps a vertex `v` to a connected set `S ∋ v` that is a
//! superset of `v`'s part in some fixed partition; a partition oracle returns
//! the part itself. Answers depend only on the graph, the parameters and the
//! seed, never on which queries came before.

pub mod ball;
pub mod exhaustive;
pub mod walk;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use ball::{ball_cover_query, BallOracle};
pub use exhaustive::{exhaustive_partition, PartSize, PartitionHandle, PartitionOracle};
pub use walk::{lazy_walk, OracleParams, TheoryScale, WalkOracle};

use crate::error::{Error, Result};
use crate::graph::{QueryGraph, VertexId};

/// A covering-oracle answer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverResult {
    pub anchor: VertexId,
    /// Sorted vertex set.
    pub set: Vec<VertexId>,
    /// The set outgrew the oracle's size cap.
    pub cap_violated: bool,
}

impl CoverResult {
    pub fn contains(&self, v: VertexId) -> bool {
        self.set.binary_search(&v).is_ok()
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleKind {
    Walk,
    Ball,
    Exhaustive,
}

impl fmt::Display for OracleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OracleKind::Walk => "walk",
            OracleKind::Ball => "ball",
            OracleKind::Exhaustive => "exhaustive",
        })
    }
}

pub trait CoveringOracle: Send + Sync {
    fn cover(&self, v: VertexId) -> Result<CoverResult>;

    /// The size bound `x` that sample-size formulas use.
    fn size_bound(&self) -> usize;

    fn kind(&self) -> OracleKind;
}

/// Serializable oracle choice, instantiated per graph and proximity parameter.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum OracleSpec {
    Exhaustive {
        /// `None` picks the part size automatically.
        #[serde(default)]
        k: Option<usize>,
    },
    Ball {
        /// `None` uses `ceil(1/eps)`.
        #[serde(default)]
        radius: Option<usize>,
        cap: usize,
    },
    Walk {
        ell: u64,
        c: u32,
        walks_per_length: usize,
        part_size_cap: usize,
    },
}

/// A covering oracle that owns whatever it was built from.
pub enum BuiltOracle<'g> {
    Walk(WalkOracle<'g>),
    Ball(BallOracle<'g>),
    Partition(PartitionHandle),
}

impl CoveringOracle for BuiltOracle<'_> {
    fn cover(&self, v: VertexId) -> Result<CoverResult> {
        match self {
            BuiltOracle::Walk(o) => o.cover(v),
            BuiltOracle::Ball(o) => o.cover(v),
            BuiltOracle::Partition(h) => PartitionOracle::new(h).cover(v),
        }
    }

    fn size_bound(&self) -> usize {
        match self {
            BuiltOracle::Walk(o) => o.size_bound(),
            BuiltOracle::Ball(o) => o.size_bound(),
            BuiltOracle::Partition(h) => h.k,
        }
    }

    fn kind(&self) -> OracleKind {
        match self {
            BuiltOracle::Walk(_) => OracleKind::Walk,
            BuiltOracle::Ball(_) => OracleKind::Ball,
            BuiltOracle::Partition(_) => OracleKind::Exhaustive,
        }
    }
}

impl OracleSpec {
    pub const AUTO_PARTITION: OracleSpec = OracleSpec::Exhaustive { k: None };

    pub fn kind(&self) -> OracleKind {
        match self {
            OracleSpec::Exhaustive { .. } => OracleKind::Exhaustive,
            OracleSpec::Ball { .. } => OracleKind::Ball,
            OracleSpec::Walk { .. } => OracleKind::Walk,
        }
    }

    /// Whether any parameter was set by hand rather than derived from `eps`.
    pub fn is_scaled(&self) -> bool {
        match self {
            OracleSpec::Exhaustive { .. } => false,
            OracleSpec::Ball { radius, .. } => radius.is_some(),
            OracleSpec::Walk { .. } => true,
        }
    }

    pub fn build<'g>(&self, g: &'g QueryGraph, eps: f64, seed: u64) -> Result<BuiltOracle<'g>> {
        check_eps(eps)?;
        Ok(match *self {
            OracleSpec::Exhaustive { .. } => BuiltOracle::Partition(self.partition(g, eps)?),
            OracleSpec::Ball { radius, cap } => {
                if g.degree_bound().is_none() {
                    return Err(Error::UnboundedDegree);
                }
                let radius = radius.unwrap_or_else(|| (1.0 / eps).ceil() as usize);
                BuiltOracle::Ball(BallOracle::new(g, radius, cap))
            }
            OracleSpec::Walk {
                ell,
                c,
                walks_per_length,
                part_size_cap,
            } => BuiltOracle::Walk(WalkOracle::new(
                g,
                OracleParams::scaled(eps, ell, c, walks_per_length, part_size_cap, seed),
            )?),
        })
    }

    /// A true partition; only the exhaustive oracle provides one.
    pub fn partition(&self, g: &QueryGraph, eps: f64) -> Result<PartitionHandle> {
        match *self {
            OracleSpec::Exhaustive { k } => Ok(exhaustive_partition(
                g,
                eps,
                k.map_or(PartSize::Auto, PartSize::Fixed),
            )),
            _ => Err(Error::Usage(format!(
                "{} oracle returns covers, but a partition oracle is required",
                self.kind()
            ))),
        }
    }
}

pub fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps <= 1.0 {
        Ok(())
    } else {
        Err(Error::Usage(format!("epsilon must be in (0, 1], got {eps}")))
    }
}

/// Partition induced by a covering oracle relative to a reference partition:
/// a reference part survives when every member's cover contains all of it,
/// and is split into singletons otherwise.
pub fn derive_partition(
    g: &QueryGraph,
    reference: &PartitionHandle,
    mut cover: impl FnMut(VertexId) -> Result<CoverResult>,
) -> Result<PartitionHandle> {
    let mut parts = Vec::new();
    for part in &reference.parts {
        let mut kept = true;
        for &v in part {
            let s = cover(v)?;
            if !part.iter().all(|&u| s.contains(u)) {
                kept = false;
                break;
            }
        }
        if kept {
            parts.push(part.clone());
        } else {
            parts.extend(part.iter().map(|&v| vec![v]));
        }
    }
    Ok(PartitionHandle::from_parts(g, parts, reference.k))
}
