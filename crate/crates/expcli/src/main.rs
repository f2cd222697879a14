use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use expcli::compare::compare;
use expcli::sweep::{run_sweep, SweepConfig};
use expcli::validate::{validate_against_oracle, OracleReport};
use expcli::{resolve, HarnessError};
use freqroute::model::{generate_scenario, load_scenario_file, save_scenario, GenSpec};
use freqroute::{astar, build_link_graph, Area, Frequency, MetricKind, Route, Scenario};

const NO_ROUTE: u8 = 1;
const BAD_INPUT: u8 = 2;

/// Route planning experiments for multi-radio vehicle networks.
#[derive(Debug, Parser)]
#[command(name = "expcli", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a random scenario file.
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        gen: GenArgs,
        #[arg(long)]
        out: PathBuf,
        /// Overwrite an existing output file.
        #[arg(long)]
        force: bool,
    },
    /// Find one route.
    Route {
        #[command(flatten)]
        query: Query,
        #[arg(long, default_value = "distance")]
        metric: MetricKind,
    },
    /// Run both metrics on one query and compare.
    Compare {
        #[command(flatten)]
        query: Query,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        force: bool,
    },
    /// Compare both metrics over many seeded rounds.
    Sweep {
        #[arg(long, default_value_t = 30, value_parser = clap::value_parser!(u64).range(1..))]
        rounds: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        gen: GenArgs,
        /// Reuse this scenario in every round instead of generating one.
        #[arg(long)]
        scenario: Option<PathBuf>,
        #[arg(long, requires = "dst")]
        src: Option<String>,
        #[arg(long, requires = "src")]
        dst: Option<String>,
        /// Write rows here instead of stdout.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        force: bool,
    },
    /// Check the search against exhaustive enumeration.
    Validate {
        #[arg(long, conflicts_with = "batch")]
        scenario: Option<PathBuf>,
        /// Number of generated scenarios to check (seeds seed..seed+batch).
        #[arg(long, required_unless_present = "scenario")]
        batch: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        gen: GenArgs,
        /// Cycle vehicle counts from --vehicles up to this value across the batch.
        #[arg(long)]
        vehicles_max: Option<usize>,
    },
}

#[derive(Debug, Args)]
struct Query {
    #[arg(long)]
    scenario: PathBuf,
    #[arg(long)]
    src: String,
    #[arg(long)]
    dst: String,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long, default_value_t = 30, value_parser = clap::value_parser!(u64).range(1..))]
    vehicles: u64,
    #[arg(long, num_args = 2, value_names = ["W", "H"], default_values_t = [1000.0, 1000.0])]
    area: Vec<f64>,
    #[arg(long, default_value_t = 200.0)]
    range: f64,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    radios: u64,
    /// Comma-separated channel pool.
    #[arg(long, value_delimiter = ',', default_value = "1")]
    freqs: Vec<u32>,
    #[arg(long, num_args = 2, value_names = ["MIN", "MAX"], default_values_t = [2.0, 10.0])]
    bw: Vec<f64>,
}

impl GenArgs {
    fn spec(&self, seed: u64) -> Result<GenSpec, HarnessError> {
        let spec = GenSpec {
            seed,
            vehicle_count: self.vehicles as usize,
            area: Area {
                width: self.area[0],
                height: self.area[1],
            },
            comm_range: self.range,
            radios_per_vehicle: self.radios as usize,
            frequency_pool: self.freqs.iter().copied().map(Frequency).collect(),
            bandwidth_range: (self.bw[0], self.bw[1]),
        };
        spec.check()?;
        Ok(spec)
    }
}

fn create(path: &Path, force: bool) -> Result<File, HarnessError> {
    if path.exists() && !force {
        return Err(HarnessError::Io(io::Error::new(
            io::ErrorKind::AlreadyExists,
            format!("{} exists (use --force to overwrite)", path.display()),
        )));
    }
    Ok(File::create(path)?)
}

fn print_route(scenario: &Scenario, route: &Route) {
    println!("{}", route.arrow_path(scenario));
    for (from, hop) in route.vehicles().iter().zip(&route.hops) {
        println!(
            "  {}.{} -> {}.{}  {:.4} m  {:.4} kbit/s",
            scenario.label(*from),
            hop.radio_pair.tx,
            scenario.label(hop.vehicle),
            hop.radio_pair.rx,
            hop.distance,
            hop.bandwidth
        );
    }
    match route.stats {
        Some(s) => println!(
            "hops {}  total {:.4} m  avg bw {:.4} kbit/s  p {:.4}",
            s.hops, s.total_distance, s.avg_bandwidth, s.p_value
        ),
        None => println!("hops 0  total 0.0000 m"),
    }
}

fn run(cli: Cli) -> Result<u8, HarnessError> {
    match cli.command {
        Command::Gen {
            seed,
            gen,
            out,
            force,
        } => {
            let scenario = generate_scenario(&gen.spec(seed)?)?;
            create(&out, force)?.write_all(save_scenario(&scenario).as_bytes())?;
            println!("{}: {} vehicles", out.display(), scenario.vehicles.len());
            Ok(0)
        }
        Command::Route { query, metric } => {
            let scenario = load_scenario_file(&query.scenario)?;
            let (a, b) = (resolve(&scenario, &query.src)?, resolve(&scenario, &query.dst)?);
            let graph = build_link_graph(&scenario);
            match astar(&scenario, &graph, a, b, metric)? {
                Some(route) => {
                    print_route(&scenario, &route);
                    Ok(0)
                }
                None => {
                    println!("NO ROUTE");
                    Ok(NO_ROUTE)
                }
            }
        }
        Command::Compare { query, csv, force } => {
            let scenario = load_scenario_file(&query.scenario)?;
            let (a, b) = (resolve(&scenario, &query.src)?, resolve(&scenario, &query.dst)?);
            let graph = build_link_graph(&scenario);
            let report = compare(&scenario, &graph, a, b)?;
            print!("{}", report.render(&scenario));
            if let Some(path) = csv {
                report.write_csv(&scenario, create(&path, force)?)?;
            }
            if report.found() {
                Ok(0)
            } else {
                println!("NO ROUTE");
                Ok(NO_ROUTE)
            }
        }
        Command::Sweep {
            rounds,
            seed,
            gen,
            scenario,
            src,
            dst,
            csv,
            force,
        } => {
            let cfg = SweepConfig {
                rounds: rounds as usize,
                base_seed: seed,
                gen: gen.spec(seed)?,
                scenario: scenario.map(load_scenario_file).transpose()?,
                src,
                dst,
            };
            let result = run_sweep(&cfg)?;
            match csv {
                Some(path) => {
                    result.write_csv(BufWriter::new(create(&path, force)?))?;
                    println!("{}", result.summary());
                }
                None => {
                    result.write_csv(io::stdout().lock())?;
                    eprintln!("{}", result.summary());
                }
            }
            Ok(0)
        }
        Command::Validate {
            scenario,
            batch,
            seed,
            gen,
            vehicles_max,
        } => {
            let report = match (scenario, batch) {
                (Some(path), _) => validate_against_oracle(&load_scenario_file(path)?)?,
                (None, Some(batch)) => {
                    let low = gen.vehicles as usize;
                    let span = vehicles_max.map_or(1, |hi| hi.saturating_sub(low) + 1);
                    let mut total = OracleReport::default();
                    for i in 0..batch {
                        let mut spec = gen.spec(seed.wrapping_add(i))?;
                        spec.vehicle_count = low + (i as usize) % span;
                        let s = generate_scenario(&spec)?;
                        total.merge(&validate_against_oracle(&s)?);
                    }
                    total
                }
                (None, None) => unreachable!("clap requires one of --scenario/--batch"),
            };
            print!("{report}");
            if report.distance_exact() {
                Ok(0)
            } else {
                println!("distance search disagrees with the oracle");
                Ok(NO_ROUTE)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(BAD_INPUT)
        }
    }
}
