//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any fails.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use expcli::first_connected_pair;
use expcli::validate::{validate_against_oracle, OracleReport, MATCH_TOLERANCE};
use freqroute::model::{generate_scenario, load_scenario, save_scenario, GenSpec};
use freqroute::oracle::{best_route, enumerate_paths, ORACLE_MAX_VEHICLES};
use freqroute::{
    astar, build_link_graph, fixtures, Area, Frequency, MetricKind, Scenario, VehicleId,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

struct Outcome {
    id: &'static str,
    title: &'static str,
    elapsed: Duration,
    budget: Duration,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Outcome {
    fn passed(&self) -> bool {
        self.failures.is_empty() && self.elapsed < self.budget
    }
}

struct Check {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Check {
    fn new() -> Self {
        Self {
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn expect(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn note(&mut self, what: impl Into<String>) {
        self.notes.push(what.into());
    }
}

fn criterion(
    id: &'static str,
    title: &'static str,
    budget: Duration,
    body: impl FnOnce(&mut Check),
) -> Outcome {
    let mut check = Check::new();
    let start = Instant::now();
    body(&mut check);
    Outcome {
        id,
        title,
        elapsed: start.elapsed(),
        budget,
        failures: check.failures,
        notes: check.notes,
    }
}

fn expcli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_expcli"))
        .args(args)
        .output()
        .expect("run expcli");
    let mut text = String::from_utf8_lossy(&out.stdout).into_owned();
    text.push_str(&String::from_utf8_lossy(&out.stderr));
    (out.status.code().unwrap_or(-1), text)
}

fn write(dir: &Path, name: &str, s: &Scenario) -> String {
    let path = dir.join(name);
    std::fs::write(&path, save_scenario(s)).unwrap();
    path.display().to_string()
}

fn figure_one(c: &mut Check) {
    let dir = tempfile::tempdir().unwrap();
    let full = write(dir.path(), "fig1.json", &fixtures::figure_one());
    for metric in ["distance", "bandwidth"] {
        let (code, out) = expcli(&[
            "route", "--scenario", &full, "--src", "A", "--dst", "B", "--metric", metric,
        ]);
        c.expect(code == 0, format!("{metric}: exit {code}"));
        c.expect(
            out.lines().next() == Some("A→C→B"),
            format!("{metric}: expected A→C→B, got {:?}", out.lines().next()),
        );
        c.expect(
            out.contains("A.r2 -> C.r6") && out.contains("C.r5 -> B.r3"),
            format!("{metric}: hop radios wrong:\n{out}"),
        );
    }
    let cut = write(
        dir.path(),
        "fig1_no_c.json",
        &fixtures::figure_one().without_vehicle(VehicleId(3)),
    );
    let (code, out) = expcli(&["route", "--scenario", &cut, "--src", "A", "--dst", "B"]);
    c.expect(code == 1, format!("without C: exit {code}"));
    c.expect(out.contains("NO ROUTE"), format!("without C: {out}"));
}

/// 200 single-channel scenarios of 8 to 10 vehicles in a 500 m square.
fn oracle_batch() -> Vec<Scenario> {
    (0..200u64)
        .map(|i| {
            generate_scenario(&GenSpec {
                seed: 1 + i,
                vehicle_count: 8 + (i as usize) % 3,
                area: Area {
                    width: 500.0,
                    height: 500.0,
                },
                comm_range: 200.0,
                radios_per_vehicle: 1,
                frequency_pool: vec![Frequency(1)],
                bandwidth_range: (2.0, 10.0),
            })
            .unwrap()
        })
        .collect()
}

fn run_batch(batch: &[Scenario]) -> OracleReport {
    let mut total = OracleReport::default();
    for s in batch {
        total.merge(&validate_against_oracle(s).expect("batch within oracle bound"));
    }
    total
}

fn distance_exactness(c: &mut Check, report: &OracleReport) {
    let t = report.distance;
    c.note(format!(
        "{} scenarios, {} pairs, match {:.2}%",
        report.scenarios,
        t.pairs,
        100.0 * t.match_rate()
    ));
    c.expect(report.scenarios == 200, "expected 200 scenarios");
    c.expect(t.pairs > 0, "no connected pairs");
    c.expect(t.matched == t.pairs, format!("{} of {} matched", t.matched, t.pairs));
    c.expect(
        t.worst_matched_diff <= 1e-9,
        format!("cost disagreement {}", t.worst_matched_diff),
    );
}

fn ratio_measured(c: &mut Check, report: &OracleReport) {
    let t = report.bandwidth;
    c.note(format!(
        "match {:.2}% ({}/{}), worst relative p gap {:.6}",
        100.0 * t.match_rate(),
        t.matched,
        t.pairs,
        t.worst_rel_gap
    ));
    c.expect(t.pairs == report.distance.pairs, "pair counts differ between metrics");
    c.expect(
        t.worst_matched_diff <= MATCH_TOLERANCE,
        format!("matched p differs by {}", t.worst_matched_diff),
    );
    c.expect(
        t.consistent == t.pairs,
        format!("{} search routes not reproduced by the oracle", t.pairs - t.consistent),
    );
    c.expect(t.below_optimum == 0, "search beat the oracle optimum");
    c.expect(t.worst_rel_gap.is_finite() && t.worst_rel_gap >= 0.0, "bad gap");
}

fn figure_five(c: &mut Check) {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("sweep.csv");
    let csv_arg = csv_path.display().to_string();
    let (code, out) = expcli(&["sweep", "--rounds", "30", "--seed", "100", "--csv", &csv_arg]);
    c.expect(code == 0, format!("sweep exit {code}: {out}"));

    let mut reader = csv::Reader::from_path(&csv_path).unwrap();
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    c.expect(rows.len() == 60, format!("{} rows", rows.len()));

    let avg = |r: &csv::StringRecord| r[6].parse::<f64>().ok();
    let mean = |metric: &str| {
        let v: Vec<f64> = rows.iter().filter(|r| &r[2] == metric).filter_map(avg).collect();
        v.iter().sum::<f64>() / v.len() as f64
    };
    let (md, mb) = (mean("distance"), mean("bandwidth"));
    c.note(format!("mean avg_bw distance {md:.4}, bandwidth {mb:.4}"));
    c.expect(mb >= md, "mean bandwidth-metric avg_bw below distance metric");

    let mut verifiable = 0;
    let mut not_lower = 0;
    for pair in rows.chunks_exact(2) {
        let (d, b) = (&pair[0], &pair[1]);
        let (Some(ad), Some(ab)) = (avg(d), avg(b)) else {
            continue;
        };
        let seed: u64 = d[1].parse().unwrap();
        let s = generate_scenario(&GenSpec {
            seed,
            ..GenSpec::default()
        })
        .unwrap();
        let g = build_link_graph(&s);
        let (src, dst) = first_connected_pair(&g).expect("found round has a pair");
        let component = g.component(src).len();
        if component > ORACLE_MAX_VEHICLES {
            continue;
        }
        verifiable += 1;
        let paths = enumerate_paths(&s, &g, src, dst, component - 1);
        for kind in MetricKind::ALL {
            let best = best_route(&paths, kind).unwrap();
            let found = astar(&s, &g, src, dst, kind).unwrap().unwrap();
            if found.vehicles() != best.vehicles() {
                c.note(format!("round {}: {kind} search differs from oracle", &d[0]));
            }
        }
        if ab >= ad {
            not_lower += 1;
        }
        c.expect(
            ab >= ad,
            format!("round {}: avg_bw bandwidth {ab} < distance {ad}", &d[0]),
        );
    }
    c.note(format!(
        "{not_lower}/{verifiable} oracle-verifiable rounds with avg_bw(bandwidth) >= avg_bw(distance)"
    ));
}

fn frequency_matching(c: &mut Check) {
    let mut differing = 0;
    for seed in 0..20u64 {
        let s = generate_scenario(&GenSpec {
            seed,
            radios_per_vehicle: 2,
            frequency_pool: vec![Frequency(1), Frequency(2), Frequency(3)],
            ..GenSpec::default()
        })
        .unwrap();
        let flat = s.with_single_frequency(Frequency(1));
        let g = build_link_graph(&s);
        let gf = build_link_graph(&flat);
        let Some((src, dst)) = first_connected_pair(&g) else {
            continue;
        };
        let mut differs = false;
        for kind in MetricKind::ALL {
            let constrained = astar(&s, &g, src, dst, kind).unwrap();
            let collapsed = astar(&flat, &gf, src, dst, kind).unwrap();
            match (&constrained, &collapsed) {
                (Some(r), Some(rf)) => {
                    if let Err(e) = r.check(&s, &g) {
                        c.expect(false, format!("seed {seed} {kind}: {e}"));
                    }
                    if let Err(e) = rf.check(&flat, &gf) {
                        c.expect(false, format!("seed {seed} {kind} collapsed: {e}"));
                    }
                    if kind == MetricKind::Distance && r.vehicles() != rf.vehicles() {
                        differs = true;
                    }
                }
                _ => c.expect(false, format!("seed {seed} {kind}: route missing")),
            }
        }
        differing += usize::from(differs);
    }
    c.note(format!("{differing}/20 seeds change route under frequency matching"));
    c.expect(differing >= 1, "frequency matching never changed a route");
}

fn gen_spec() -> impl Strategy<Value = GenSpec> {
    (any::<u64>(), 2usize..=10, 400.0f64..800.0, 100.0f64..200.0, 1usize..=3, 1u32..=3).prop_map(
        |(seed, n, side, range, radios, channels)| GenSpec {
            seed,
            vehicle_count: n,
            area: Area {
                width: side,
                height: side,
            },
            comm_range: range,
            radios_per_vehicle: radios,
            frequency_pool: (1..=channels).map(Frequency).collect(),
            bandwidth_range: (2.0, 10.0),
        },
    )
}

fn runner() -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            cases: 64,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}

fn property(c: &mut Check, name: &str, result: Result<(), impl std::fmt::Display>) {
    c.expect(result.is_ok(), format!("{name}: {}", result.err().map(|e| e.to_string()).unwrap_or_default()));
}

fn properties(c: &mut Check) {
    property(
        c,
        "round trip",
        runner().run(&gen_spec(), |g| {
            let s = generate_scenario(&g).unwrap();
            let text = save_scenario(&s);
            prop_assert_eq!(&load_scenario(&text).unwrap(), &s);
            Ok(())
        }),
    );
    property(
        c,
        "generator determinism",
        runner().run(&gen_spec(), |g| {
            let a = save_scenario(&generate_scenario(&g).unwrap());
            let b = save_scenario(&generate_scenario(&g).unwrap());
            prop_assert_eq!(a, b);
            Ok(())
        }),
    );
    property(
        c,
        "link symmetry",
        runner().run(&gen_spec(), |g| {
            let s = generate_scenario(&g).unwrap();
            let graph = build_link_graph(&s);
            for l in graph.links() {
                let back = graph.link(l.to, l.from);
                prop_assert!(back.is_some_and(|b| b.distance == l.distance));
            }
            Ok(())
        }),
    );
    property(
        c,
        "threshold monotonicity",
        runner().run(&(gen_spec(), 1.0f64..3.0), |(g, grow)| {
            let s = generate_scenario(&g).unwrap();
            let mut wide = s.clone();
            wide.comm_range *= grow;
            let (small, large) = (build_link_graph(&s), build_link_graph(&wide));
            for l in small.links() {
                prop_assert!(large.link(l.from, l.to).is_some());
            }
            Ok(())
        }),
    );
    property(
        c,
        "ratio argmin scale invariance",
        runner().run(&(gen_spec(), 0.1f64..10.0), |(g, scale)| {
            let s = generate_scenario(&g).unwrap();
            let scaled = s.with_scaled_bandwidths(scale);
            let (gs, gsc) = (build_link_graph(&s), build_link_graph(&scaled));
            let hops = s.vehicles.len() - 1;
            for (a, b) in expcli::connected_pairs(&gs) {
                let ps = enumerate_paths(&s, &gs, a, b, hops);
                let psc = enumerate_paths(&scaled, &gsc, a, b, hops);
                let p = best_route(&ps, MetricKind::BandwidthRatio).unwrap();
                let q = best_route(&psc, MetricKind::BandwidthRatio).unwrap();
                let p_cost = p.stats.unwrap().p_value;
                let q_cost = ps.find(&q.vehicles()).unwrap().stats.unwrap().p_value;
                prop_assert!((p_cost - q_cost).abs() <= 1e-9 * p_cost);
            }
            Ok(())
        }),
    );

    let k4 = fixtures::complete_four();
    let g = build_link_graph(&k4);
    let n = enumerate_paths(&k4, &g, VehicleId(1), VehicleId(4), 3).len();
    c.expect(n == 5, format!("K4 path count {n}"));
}

fn main() {
    let batch = oracle_batch();
    let mut batch_report = None;
    let mut report = |c: &mut Check| -> OracleReport {
        *batch_report.get_or_insert_with(|| {
            let r = run_batch(&batch);
            c.note("oracle batch computed here");
            r
        })
    };

    let outcomes = vec![
        criterion("AC1", "Figure 1 relay through C", Duration::from_secs(1), figure_one),
        criterion(
            "AC2",
            "distance search equals brute-force optimum",
            Duration::from_secs(30),
            |c| {
                let r = report(c);
                distance_exactness(c, &r)
            },
        ),
        criterion(
            "AC3",
            "ratio search measured against oracle",
            Duration::from_secs(60),
            |c| {
                let r = report(c);
                ratio_measured(c, &r)
            },
        ),
        criterion(
            "AC4",
            "sweep: ratio metric keeps average bandwidth up",
            Duration::from_secs(10),
            figure_five,
        ),
        criterion(
            "AC5",
            "frequency matching changes routes",
            Duration::from_secs(10),
            frequency_matching,
        ),
        criterion("AC6", "property suites", Duration::from_secs(10), properties),
    ];

    let mut all = true;
    for o in &outcomes {
        let verdict = if o.passed() { "PASS" } else { "FAIL" };
        all &= o.passed();
        println!(
            "{} {verdict}  {}  [{:.2} s / {} s]  {}",
            o.id,
            o.title,
            o.elapsed.as_secs_f64(),
            o.budget.as_secs(),
            o.notes.join("; ")
        );
        for f in &o.failures {
            println!("    - {f}");
        }
        if o.elapsed >= o.budget {
            println!("    - over time budget");
        }
    }
    if !all {
        std::process::exit(1);
    }
}
