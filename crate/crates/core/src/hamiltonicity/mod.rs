//! Hamiltonian-path distance: exact covers, a sampling estimator and a
//! one-sided tester.

pub mod estimator;
pub mod one_sided;
pub mod path_cover;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use estimator::{estimate_ham_distance, tolerant_test_ham, EstimatorConfig, HamEstimate, TolerantOutcome};
pub use one_sided::{cut_bound_witness, test_ham_one_sided, HamWitness, OneSidedConfig, OneSidedOutcome, Violation};
pub use path_cover::{forest_path_cover, ham_distance, min_path_cover, PathCoverCert, SubsetCoverTable, PATH_COVER_LIMIT};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Accept,
    Reject,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Accept => "accept",
            Verdict::Reject => "reject",
        })
    }
}
