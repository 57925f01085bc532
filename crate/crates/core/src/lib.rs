//! Sublinear algorithms for graphs that exclude a fixed minor.
//!
//! * [`graph`]: the counted query model every algorithm reads through.
//! * [`generators`]: seeded planar instances with certified ground truth.
//! * [`oracles`]: walk, ball and exhaustive partition/covering oracles.
//! * [`hamiltonicity`]: exact path covers, the distance estimator and the
//!   one-sided tester.
//! * [`spanning`]: exact MSF, the global spanner and two per-edge rules.
//! * [`property`]: one-sided testing of monotone additive properties.
//! * [`harness`]: reports, experiment suites and scaling probes.

pub mod error;
pub mod generators;
pub mod graph;
pub mod hamiltonicity;
pub mod harness;
pub mod oracles;
pub mod prf;
pub mod property;
pub mod spanning;

pub use error::{Error, Result};
pub use graph::{EdgeRef, QueryCounts, QueryGraph, VertexId, Weight};
pub use hamiltonicity::Verdict;
