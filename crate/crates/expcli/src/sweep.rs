//! Multi-round comparison of the two metrics on seeded scenarios.

use std::io::Write;

use freqroute::model::{generate_scenario, GenSpec};
use freqroute::{build_link_graph, MetricKind, RouteStats, Scenario, VehicleId};

use crate::compare::compare;
use crate::{first_connected_pair, resolve, HarnessError};

pub const CSV_HEADER: [&str; 8] = [
    "round",
    "seed",
    "metric",
    "found",
    "hops",
    "total_distance",
    "avg_bandwidth",
    "p_value",
];

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub rounds: usize,
    pub base_seed: u64,
    /// Generator settings; the seed is replaced per round.
    pub gen: GenSpec,
    /// Fixed scenario used for every round instead of generating one.
    pub scenario: Option<Scenario>,
    pub src: Option<String>,
    pub dst: Option<String>,
}

impl SweepConfig {
    pub fn seed(&self, round: usize) -> u64 {
        self.base_seed.wrapping_add(round as u64)
    }

    pub fn scenario_for(&self, round: usize) -> Result<Scenario, HarnessError> {
        match &self.scenario {
            Some(s) => Ok(s.clone()),
            None => Ok(generate_scenario(&GenSpec {
                seed: self.seed(round),
                ..self.gen.clone()
            })?),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub round: usize,
    pub seed: u64,
    pub metric: MetricKind,
    pub found: bool,
    /// Empty when nothing was found.
    pub stats: Option<RouteStats>,
    pub hops: usize,
}

/// Rows plus the query each round answered.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    pub queries: Vec<Option<(VehicleId, VehicleId)>>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSummary {
    pub rounds: usize,
    pub found_rounds: usize,
    pub mean_avg_bw_distance: Option<f64>,
    pub mean_avg_bw_bandwidth: Option<f64>,
    /// Rounds where the ratio route's average bandwidth is at least the
    /// shortest route's.
    pub rounds_bandwidth_not_lower: usize,
}

pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepResult, HarnessError> {
    let mut rows = Vec::with_capacity(cfg.rounds * 2);
    let mut queries = Vec::with_capacity(cfg.rounds);
    for round in 0..cfg.rounds {
        let seed = cfg.seed(round);
        let scenario = cfg.scenario_for(round)?;
        let graph = build_link_graph(&scenario);
        let query = match (&cfg.src, &cfg.dst) {
            (Some(a), Some(b)) => Some((resolve(&scenario, a)?, resolve(&scenario, b)?)),
            _ => first_connected_pair(&graph),
        };
        queries.push(query);
        let report = match query {
            Some((a, b)) => Some(compare(&scenario, &graph, a, b)?),
            None => None,
        };
        for metric in MetricKind::ALL {
            let route = report.as_ref().and_then(|r| r.route(metric));
            rows.push(SweepRow {
                round,
                seed,
                metric,
                found: route.is_some(),
                stats: route.and_then(|r| r.stats),
                hops: route.map_or(0, |r| r.hop_count()),
            });
        }
    }
    Ok(SweepResult { rows, queries })
}

fn mean(values: impl Iterator<Item = f64>) -> Option<f64> {
    let (sum, n) = values.fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    (n > 0).then(|| sum / n as f64)
}

impl SweepResult {
    /// (distance row, bandwidth row) per round.
    pub fn round_pairs(&self) -> impl Iterator<Item = (&SweepRow, &SweepRow)> {
        self.rows.chunks_exact(2).map(|c| (&c[0], &c[1]))
    }

    pub fn summary(&self) -> SweepSummary {
        let avg = |kind: MetricKind| {
            mean(
                self.rows
                    .iter()
                    .filter(|r| r.metric == kind)
                    .filter_map(|r| r.stats.map(|s| s.avg_bandwidth)),
            )
        };
        let compared: Vec<_> = self
            .round_pairs()
            .filter_map(|(d, b)| Some((d.stats?, b.stats?)))
            .collect();
        SweepSummary {
            rounds: self.queries.len(),
            found_rounds: self.round_pairs().filter(|(d, _)| d.found).count(),
            mean_avg_bw_distance: avg(MetricKind::Distance),
            mean_avg_bw_bandwidth: avg(MetricKind::BandwidthRatio),
            rounds_bandwidth_not_lower: compared
                .iter()
                .filter(|(d, b)| b.avg_bandwidth >= d.avg_bandwidth)
                .count(),
        }
    }

    pub fn write_csv<W: Write>(&self, w: W) -> csv::Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(CSV_HEADER)?;
        for row in &self.rows {
            let num = |f: fn(&RouteStats) -> f64| {
                row.stats.as_ref().map_or(String::new(), |s| format!("{:.4}", f(s)))
            };
            out.write_record([
                row.round.to_string(),
                row.seed.to_string(),
                row.metric.as_str().to_string(),
                row.found.to_string(),
                if row.found { row.hops.to_string() } else { String::new() },
                num(|s| s.total_distance),
                num(|s| s.avg_bandwidth),
                num(|s| s.p_value),
            ])?;
        }
        out.flush()?;
        Ok(())
    }
}

impl std::fmt::Display for SweepSummary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let show = |v: Option<f64>| v.map_or("-".to_string(), |v| format!("{v:.4}"));
        writeln!(
            f,
            "rounds {} (with a connected pair: {})",
            self.rounds, self.found_rounds
        )?;
        writeln!(
            f,
            "mean avg_bw  distance {}  bandwidth {}",
            show(self.mean_avg_bw_distance),
            show(self.mean_avg_bw_bandwidth)
        )?;
        write!(
            f,
            "rounds with avg_bw(bandwidth) >= avg_bw(distance): {}/{}",
            self.rounds_bandwidth_not_lower, self.found_rounds
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use freqroute::fixtures;

    fn config(rounds: usize, seed: u64) -> SweepConfig {
        SweepConfig {
            rounds,
            base_seed: seed,
            gen: GenSpec::default(),
            scenario: None,
            src: None,
            dst: None,
        }
    }

    #[test]
    fn two_rows_per_round() {
        let result = run_sweep(&config(5, 100)).unwrap();
        assert_eq!(result.rows.len(), 10);
        for (i, (d, b)) in result.round_pairs().enumerate() {
            assert_eq!((d.round, b.round), (i, i));
            assert_eq!(d.seed, 100 + i as u64);
            assert_eq!((d.metric, b.metric), (MetricKind::Distance, MetricKind::BandwidthRatio));
            assert_eq!(d.found, b.found);
        }
    }

    #[test]
    fn csv_layout() {
        let result = run_sweep(&config(3, 7)).unwrap();
        let mut buf = Vec::new();
        result.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next(),
            Some("round,seed,metric,found,hops,total_distance,avg_bandwidth,p_value")
        );
        assert_eq!(lines.count(), 6);
        assert!(!text.contains('\r'));
        for line in text.lines().skip(1) {
            let fields: Vec<_> = line.split(',').collect();
            assert_eq!(fields.len(), 8);
            if fields[3] == "true" {
                for f in &fields[5..] {
                    let decimals = f.split('.').nth(1).unwrap();
                    assert_eq!(decimals.len(), 4, "{line}");
                }
            } else {
                assert!(fields[4..].iter().all(|f| f.is_empty()), "{line}");
            }
        }
    }

    #[test]
    fn fixed_scenario_matches_compare() {
        let cfg = SweepConfig {
            scenario: Some(fixtures::diamond()),
            src: Some("S".into()),
            dst: Some("T".into()),
            ..config(1, 0)
        };
        let result = run_sweep(&cfg).unwrap();
        let (d, b) = result.round_pairs().next().unwrap();
        assert_eq!(d.stats.unwrap().total_distance, 300.0);
        assert_eq!(b.stats.unwrap().avg_bandwidth, 10.0);
    }

    #[test]
    fn rounds_without_pairs_are_not_found() {
        let cfg = SweepConfig {
            scenario: Some(fixtures::figure_one().without_vehicle(VehicleId(3))),
            ..config(2, 0)
        };
        let result = run_sweep(&cfg).unwrap();
        assert!(result.rows.iter().all(|r| !r.found && r.stats.is_none()));
        let summary = result.summary();
        assert_eq!(summary.found_rounds, 0);
        assert_eq!(summary.mean_avg_bw_distance, None);
    }

    #[test]
    fn unknown_endpoint_is_an_error() {
        let cfg = SweepConfig {
            scenario: Some(fixtures::diamond()),
            src: Some("S".into()),
            dst: Some("Q".into()),
            ..config(1, 0)
        };
        assert!(matches!(run_sweep(&cfg), Err(HarnessError::UnknownVehicle(_))));
    }
}
