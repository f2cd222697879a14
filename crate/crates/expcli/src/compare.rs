use std::fmt::Write as _;
use std::io::Write;

use freqroute::{LinkGraph, MetricKind, Route, Router, Scenario, SearchError, VehicleId};

/// Both metrics on one query.
#[derive(Debug, Clone, PartialEq)]
pub struct CompareReport {
    pub source: VehicleId,
    pub dest: VehicleId,
    pub distance: Option<Route>,
    pub bandwidth: Option<Route>,
}

impl CompareReport {
    pub fn route(&self, kind: MetricKind) -> Option<&Route> {
        match kind {
            MetricKind::Distance => self.distance.as_ref(),
            MetricKind::BandwidthRatio => self.bandwidth.as_ref(),
        }
    }

    fn both_stats(&self) -> Option<(freqroute::RouteStats, freqroute::RouteStats)> {
        Some((self.distance.as_ref()?.stats?, self.bandwidth.as_ref()?.stats?))
    }

    /// Average bandwidth of the ratio route minus that of the shortest route.
    pub fn delta_avg_bandwidth(&self) -> Option<f64> {
        self.both_stats()
            .map(|(d, b)| b.avg_bandwidth - d.avg_bandwidth)
    }

    pub fn delta_distance(&self) -> Option<f64> {
        self.both_stats()
            .map(|(d, b)| b.total_distance - d.total_distance)
    }

    /// Whether the ratio route is no worse than the shortest route under the
    /// ratio metric. `None` when either side has no stats.
    pub fn ratio_not_worse(&self) -> Option<bool> {
        self.both_stats().map(|(d, b)| b.p_value <= d.p_value)
    }

    pub fn found(&self) -> bool {
        self.distance.is_some() || self.bandwidth.is_some()
    }

    pub fn render(&self, scenario: &Scenario) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<10} {:<24} {:>4} {:>12} {:>10} {:>10}",
            "metric", "route", "hops", "total_m", "avg_bw", "p"
        );
        for kind in MetricKind::ALL {
            match self.route(kind) {
                Some(r) => {
                    let (avg, p) = r
                        .stats
                        .map_or(("-".into(), "-".into()), |s| {
                            (format!("{:.4}", s.avg_bandwidth), format!("{:.4}", s.p_value))
                        });
                    let _ = writeln!(
                        out,
                        "{:<10} {:<24} {:>4} {:>12.4} {:>10} {:>10}",
                        kind.as_str(),
                        r.arrow_path(scenario),
                        r.hop_count(),
                        r.total_distance(),
                        avg,
                        p
                    );
                }
                None => {
                    let _ = writeln!(out, "{:<10} NO ROUTE", kind.as_str());
                }
            }
        }
        if let (Some(dbw), Some(dd)) = (self.delta_avg_bandwidth(), self.delta_distance()) {
            let _ = writeln!(out, "delta avg_bw {dbw:+.4}  delta distance {dd:+.4}");
        }
        match (self.ratio_not_worse(), &self.distance, &self.bandwidth) {
            (Some(true), _, _) => {
                let _ = writeln!(out, "p(bandwidth) <= p(distance): holds");
            }
            (Some(false), _, _) => {
                let _ = writeln!(out, "p(bandwidth) <= p(distance): VIOLATED");
            }
            (None, Some(_), None) => {
                let _ = writeln!(out, "only the distance metric found a route");
            }
            (None, None, Some(_)) => {
                let _ = writeln!(out, "only the bandwidth metric found a route");
            }
            _ => {}
        }
        out
    }

    pub fn write_csv<W: Write>(&self, scenario: &Scenario, w: W) -> csv::Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record([
            "metric",
            "found",
            "route",
            "hops",
            "total_distance",
            "avg_bandwidth",
            "p_value",
        ])?;
        for kind in MetricKind::ALL {
            let record = match self.route(kind) {
                Some(r) => {
                    let (avg, p) = r.stats.map_or((String::new(), String::new()), |s| {
                        (format!("{:.4}", s.avg_bandwidth), format!("{:.4}", s.p_value))
                    });
                    vec![
                        kind.as_str().to_string(),
                        "true".into(),
                        r.arrow_path(scenario),
                        r.hop_count().to_string(),
                        format!("{:.4}", r.total_distance()),
                        avg,
                        p,
                    ]
                }
                None => vec![
                    kind.as_str().to_string(),
                    "false".into(),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                ],
            };
            out.write_record(&record)?;
        }
        out.flush()?;
        Ok(())
    }
}

pub fn compare(
    scenario: &Scenario,
    graph: &LinkGraph,
    source: VehicleId,
    dest: VehicleId,
) -> Result<CompareReport, SearchError> {
    let router = Router::new(scenario, graph);
    Ok(CompareReport {
        source,
        dest,
        distance: router.route(source, dest, MetricKind::Distance)?,
        bandwidth: router.route(source, dest, MetricKind::BandwidthRatio)?,
    })
}
