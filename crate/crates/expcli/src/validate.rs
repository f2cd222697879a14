//! Search-vs-oracle agreement over every connected ordered pair.

use std::fmt;

use freqroute::oracle::{best_route, check_oracle_bound, enumerate_paths, OracleBoundError};
use freqroute::{build_link_graph, MetricKind, Router, Scenario};

use crate::connected_pairs;

/// Absolute cost difference under which search and oracle agree.
pub const MATCH_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MetricTally {
    pub pairs: usize,
    /// Search cost within [`MATCH_TOLERANCE`] of the oracle optimum.
    pub matched: usize,
    /// Search returned the same vehicle sequence as the oracle.
    pub same_sequence: usize,
    /// Search route is one of the enumerated paths with identical stats.
    pub consistent: usize,
    /// Largest `(search - optimum) / optimum`.
    pub worst_rel_gap: f64,
    /// Largest cost difference among matched pairs.
    pub worst_matched_diff: f64,
    /// Search cost below the oracle optimum by more than the tolerance.
    pub below_optimum: usize,
}

impl MetricTally {
    pub fn match_rate(&self) -> f64 {
        if self.pairs == 0 {
            1.0
        } else {
            self.matched as f64 / self.pairs as f64
        }
    }

    fn merge(&mut self, other: &MetricTally) {
        self.pairs += other.pairs;
        self.matched += other.matched;
        self.same_sequence += other.same_sequence;
        self.consistent += other.consistent;
        self.below_optimum += other.below_optimum;
        self.worst_rel_gap = self.worst_rel_gap.max(other.worst_rel_gap);
        self.worst_matched_diff = self.worst_matched_diff.max(other.worst_matched_diff);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct OracleReport {
    pub scenarios: usize,
    pub distance: MetricTally,
    pub bandwidth: MetricTally,
}

impl OracleReport {
    pub fn tally(&self, kind: MetricKind) -> &MetricTally {
        match kind {
            MetricKind::Distance => &self.distance,
            MetricKind::BandwidthRatio => &self.bandwidth,
        }
    }

    fn tally_mut(&mut self, kind: MetricKind) -> &mut MetricTally {
        match kind {
            MetricKind::Distance => &mut self.distance,
            MetricKind::BandwidthRatio => &mut self.bandwidth,
        }
    }

    pub fn merge(&mut self, other: &OracleReport) {
        self.scenarios += other.scenarios;
        self.distance.merge(&other.distance);
        self.bandwidth.merge(&other.bandwidth);
    }

    /// Distance search must agree with the oracle everywhere.
    pub fn distance_exact(&self) -> bool {
        self.distance.matched == self.distance.pairs
    }
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "scenarios {}", self.scenarios)?;
        writeln!(
            f,
            "{:<10} {:>7} {:>8} {:>9} {:>14}",
            "metric", "pairs", "matched", "rate", "worst_rel_gap"
        )?;
        for kind in MetricKind::ALL {
            let t = self.tally(kind);
            writeln!(
                f,
                "{:<10} {:>7} {:>8} {:>8.2}% {:>14.6}",
                kind.as_str(),
                t.pairs,
                t.matched,
                100.0 * t.match_rate(),
                t.worst_rel_gap
            )?;
        }
        Ok(())
    }
}

/// Compares search against exhaustive enumeration on one scenario.
pub fn validate_against_oracle(scenario: &Scenario) -> Result<OracleReport, OracleBoundError> {
    check_oracle_bound(scenario)?;
    let graph = build_link_graph(scenario);
    let router = Router::new(scenario, &graph);
    let max_hops = scenario.vehicles.len().saturating_sub(1);
    let mut report = OracleReport {
        scenarios: 1,
        ..Default::default()
    };

    for (a, b) in connected_pairs(&graph) {
        let paths = enumerate_paths(scenario, &graph, a, b, max_hops);
        for kind in MetricKind::ALL {
            let best = best_route(&paths, kind).expect("connected pair has a path");
            let found = router
                .route(a, b, kind)
                .expect("pair comes from the graph")
                .expect("connected pair is routable");
            let optimum = best.stats.expect("distinct endpoints").cost(kind);
            let cost = found.stats.expect("distinct endpoints").cost(kind);
            let diff = cost - optimum;

            let t = report.tally_mut(kind);
            t.pairs += 1;
            if diff.abs() <= MATCH_TOLERANCE {
                t.matched += 1;
                t.worst_matched_diff = t.worst_matched_diff.max(diff.abs());
            }
            if diff < -MATCH_TOLERANCE {
                t.below_optimum += 1;
            }
            if found.vehicles() == best.vehicles() {
                t.same_sequence += 1;
            }
            if paths
                .find(&found.vehicles())
                .is_some_and(|r| r.stats == found.stats)
            {
                t.consistent += 1;
            }
            t.worst_rel_gap = t.worst_rel_gap.max(diff / optimum);
        }
    }
    Ok(report)
}
