//! Route costs.
//!
//! Two orderings are supported. [`MetricKind::Distance`] is plain A* on path
//! length with the straight line to the goal as heuristic.
//! [`MetricKind::BandwidthRatio`] ranks a partial path by
//!
//! ```text
//! p = (sum of hop distances + straight line to goal) / sum of hop bandwidths
//! ```
//!
//! where both sums run over the edges walked so far and each hop contributes
//! the bandwidth of its receiving radio. Smaller is better for both.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::model::Position;
use crate::route::RouteHop;
use crate::topology::euclid;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MetricKind {
    Distance,
    BandwidthRatio,
}

impl MetricKind {
    pub const ALL: [MetricKind; 2] = [MetricKind::Distance, MetricKind::BandwidthRatio];

    /// Short name used on the command line and in CSV output.
    pub fn as_str(self) -> &'static str {
        match self {
            MetricKind::Distance => "distance",
            MetricKind::BandwidthRatio => "bandwidth",
        }
    }
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MetricKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "distance" => Ok(MetricKind::Distance),
            "bandwidth" => Ok(MetricKind::BandwidthRatio),
            other => Err(format!("unknown metric '{other}' (expected distance|bandwidth)")),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MetricsError {
    #[error("receiving bandwidth must be positive, got {0}")]
    NonPositiveBandwidth(f64),
    #[error("link distance must be non-negative, got {0}")]
    NegativeDistance(f64),
    #[error("route has no hops")]
    EmptyRoute,
    #[error("inconsistent accumulator: dist {dist}, bw {bw}, hops {hops}")]
    Inconsistent { dist: f64, bw: f64, hops: usize },
}

/// Running sums along a partial path.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PathAccumulator {
    dist_sum: f64,
    bw_sum: f64,
    hop_count: usize,
}

impl PathAccumulator {
    /// The empty path at the source.
    pub const fn start() -> Self {
        Self {
            dist_sum: 0.0,
            bw_sum: 0.0,
            hop_count: 0,
        }
    }

    pub fn from_parts(dist_sum: f64, bw_sum: f64, hop_count: usize) -> Result<Self, MetricsError> {
        let consistent = dist_sum >= 0.0
            && bw_sum >= 0.0
            && (hop_count > 0 || (dist_sum == 0.0 && bw_sum == 0.0))
            && (hop_count == 0 || bw_sum > 0.0);
        if consistent {
            Ok(Self {
                dist_sum,
                bw_sum,
                hop_count,
            })
        } else {
            Err(MetricsError::Inconsistent {
                dist: dist_sum,
                bw: bw_sum,
                hops: hop_count,
            })
        }
    }

    pub fn dist_sum(&self) -> f64 {
        self.dist_sum
    }

    pub fn bw_sum(&self) -> f64 {
        self.bw_sum
    }

    pub fn hop_count(&self) -> usize {
        self.hop_count
    }

    /// Appends one hop.
    pub fn extend(&self, link_distance: f64, receiving_bw: f64) -> Result<Self, MetricsError> {
        if !(receiving_bw > 0.0) {
            return Err(MetricsError::NonPositiveBandwidth(receiving_bw));
        }
        if !(link_distance >= 0.0) {
            return Err(MetricsError::NegativeDistance(link_distance));
        }
        Ok(Self {
            dist_sum: self.dist_sum + link_distance,
            bw_sum: self.bw_sum + receiving_bw,
            hop_count: self.hop_count + 1,
        })
    }
}

/// Ordering key of a search node sitting at `current` with path sums `acc`.
pub fn eval_f(kind: MetricKind, acc: &PathAccumulator, current: Position, goal: Position) -> f64 {
    let estimate = euclid(current, goal);
    match kind {
        MetricKind::Distance => acc.dist_sum + estimate,
        // the source is popped first whatever its key is
        MetricKind::BandwidthRatio if acc.hop_count == 0 => 0.0,
        MetricKind::BandwidthRatio => {
            debug_assert!(acc.bw_sum > 0.0);
            (acc.dist_sum + estimate) / acc.bw_sum
        }
    }
}

/// Summary of a complete route.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RouteStats {
    pub total_distance: f64,
    pub avg_bandwidth: f64,
    /// Ratio metric of the finished route (no remaining estimate).
    pub p_value: f64,
    pub hops: usize,
}

impl RouteStats {
    pub fn cost(&self, kind: MetricKind) -> f64 {
        match kind {
            MetricKind::Distance => self.total_distance,
            MetricKind::BandwidthRatio => self.p_value,
        }
    }
}

/// Folds hops in order, so the sums match the accumulator the search built.
pub fn route_stats(hops: &[RouteHop]) -> Result<RouteStats, MetricsError> {
    if hops.is_empty() {
        return Err(MetricsError::EmptyRoute);
    }
    let acc = hops.iter().try_fold(PathAccumulator::start(), |acc, hop| {
        acc.extend(hop.distance, hop.bandwidth)
    })?;
    Ok(RouteStats {
        total_distance: acc.dist_sum,
        avg_bandwidth: acc.bw_sum / acc.hop_count as f64,
        p_value: acc.dist_sum / acc.bw_sum,
        hops: acc.hop_count,
    })
}
