//! Route planning for networks of vehicles that each carry several radios.
//!
//! A [`Scenario`] places vehicles on the plane; [`build_link_graph`] connects
//! every pair that is within range and shares a radio channel; [`astar`]
//! searches that graph under a [`MetricKind`]; the [`oracle`] enumerates all
//! simple paths on small instances to check the search.

pub mod astar;
pub mod fixtures;
pub mod metrics;
pub mod model;
pub mod oracle;
pub mod route;
pub mod topology;

pub use astar::{astar, Router, SearchError, SearchNode, SearchOutcome};
pub use metrics::{eval_f, route_stats, MetricKind, PathAccumulator, RouteStats};
pub use model::{
    generate_scenario, load_scenario, save_scenario, validate_scenario, Area, Frequency, GenSpec,
    Position, Radio, RadioId, Scenario, Vehicle, VehicleId,
};
pub use oracle::{best_route, enumerate_paths, PathSet, ORACLE_MAX_VEHICLES};
pub use route::{Route, RouteHop};
pub use topology::{build_link_graph, euclid, shared_frequency_pairs, Link, LinkGraph, RadioPair};
