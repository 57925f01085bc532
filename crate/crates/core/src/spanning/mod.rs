//! Sparse spanning subgraphs of near-minimum weight.
//!
//! [`SpanStructure`] holds everything a run derives from `(graph, config)`:
//! the heavy/light split, the partition of the light subgraph, sub-part
//! forests and cluster centers. Both [`build_global`] and
//! [`local_edge_unbounded`] read from it, so they agree edge by edge.

pub mod global;
pub mod kruskal;
pub mod local;
pub mod subparts;

use serde::{Deserialize, Serialize};

pub use global::{build_global, GlobalSpanner, SpanStructure};
pub use kruskal::{kruskal_msf, spans_components, total_weight, Msf};
pub use local::{bounded_oracle, local_edge_bounded, local_edge_unbounded};
pub use subparts::{subparts, Subpart, SubpartForest};

use crate::error::{Error, Result};
use crate::graph::EdgeRef;
use crate::oracles::{check_eps, OracleSpec};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpanConfig {
    pub epsilon: f64,
    /// Weight upper bound `W`.
    pub wmax: f64,
    /// Edge count of the excluded minor.
    pub r: f64,
    /// Overrides `Δ = 6r²W/eps`.
    #[serde(default)]
    pub heavy_threshold: Option<f64>,
    /// Overrides the per-center sample size `q`.
    #[serde(default)]
    pub sample_size: Option<usize>,
    pub oracle: OracleSpec,
    pub seed: u64,
}

impl SpanConfig {
    pub fn new(epsilon: f64, wmax: f64, seed: u64) -> Self {
        SpanConfig {
            epsilon,
            wmax,
            r: 9.0,
            heavy_threshold: None,
            sample_size: None,
            oracle: OracleSpec::AUTO_PARTITION,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_eps(self.epsilon)?;
        if self.wmax < 1.0 || self.r < 1.0 {
            return Err(Error::Usage("wmax and r must be at least 1".into()));
        }
        if self.sample_size == Some(0) {
            return Err(Error::Usage("sample size must be at least 1".into()));
        }
        Ok(())
    }

    /// Heavy-vertex degree threshold `Δ`.
    pub fn delta(&self) -> f64 {
        self.heavy_threshold
            .unwrap_or(6.0 * self.r * self.r * self.wmax / self.epsilon)
    }

    /// Proximity parameter handed to the partition oracle, `eps/(6W)`.
    pub fn oracle_param(&self) -> f64 {
        self.epsilon / (6.0 * self.wmax)
    }

    /// `q = ceil(8·W²r³xΔ·ln(n)/eps²)`, at least 1.
    pub fn sample_size_for(&self, n: usize, x: usize) -> usize {
        self.sample_size.unwrap_or_else(|| {
            let q = 8.0 * self.wmax.powi(2) * self.r.powi(3) * x as f64 * self.delta() * (n.max(2) as f64).ln()
                / self.epsilon.powi(2);
            q.ceil().clamp(1.0, usize::MAX as f64) as usize
        })
    }

    pub fn is_scaled(&self) -> bool {
        self.heavy_threshold.is_some() || self.sample_size.is_some() || self.oracle.is_scaled()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    HeavyHeavy,
    CutEdge,
    SubpartTree,
    SubpartReject,
    CenterLink,
    ClusterSampleWin,
    ClusterSampleLose,
    ClusterNull,
    CycleRuleNo,
    CycleRuleYes,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::HeavyHeavy => "heavy-heavy",
            Rule::CutEdge => "cut-edge",
            Rule::SubpartTree => "subpart-tree",
            Rule::SubpartReject => "subpart-reject",
            Rule::CenterLink => "center-link",
            Rule::ClusterSampleWin => "cluster-sample-win",
            Rule::ClusterSampleLose => "cluster-sample-lose",
            Rule::ClusterNull => "cluster-null",
            Rule::CycleRuleNo => "cycle-rule-no",
            Rule::CycleRuleYes => "cycle-rule-yes",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpannerDecision {
    pub edge: EdgeRef,
    pub keep: bool,
    pub rule: Rule,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_formulas() {
        let cfg = SpanConfig::new(0.5, 2.0, 0);
        assert_eq!(cfg.delta(), 6.0 * 81.0 * 2.0 / 0.5);
        assert!((cfg.oracle_param() - 0.5 / 12.0).abs() < 1e-12);
        assert!(cfg.sample_size_for(100, 10) > 1_000_000);
        assert!(!cfg.is_scaled());
        let scaled = SpanConfig {
            sample_size: Some(3),
            ..cfg
        };
        assert_eq!(scaled.sample_size_for(100, 10), 3);
        assert!(scaled.is_scaled());
    }

    #[test]
    fn rule_names_match_serde() {
        for rule in [Rule::HeavyHeavy, Rule::ClusterSampleWin, Rule::CycleRuleNo] {
            assert_eq!(serde_json::to_value(rule).unwrap(), rule.name());
        }
    }
}
