//! Experiment harness: metric comparisons, seeded multi-round sweeps and
//! oracle validation on top of `freqroute`.

pub mod compare;
pub mod sweep;
pub mod validate;

use freqroute::model::{GenError, ScenarioError};
use freqroute::oracle::OracleBoundError;
use freqroute::{LinkGraph, Scenario, SearchError, VehicleId};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error("invalid generator settings: {0}")]
    Gen(#[from] GenError),
    #[error("no vehicle '{0}' in scenario")]
    UnknownVehicle(String),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    OracleBound(#[from] OracleBoundError),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Csv(#[from] csv::Error),
}

pub fn resolve(scenario: &Scenario, token: &str) -> Result<VehicleId, HarnessError> {
    scenario
        .resolve(token)
        .ok_or_else(|| HarnessError::UnknownVehicle(token.to_string()))
}

/// Lowest `(a, b)` with `a < b` and `b` reachable from `a`.
pub fn first_connected_pair(graph: &LinkGraph) -> Option<(VehicleId, VehicleId)> {
    graph.vehicle_ids().iter().find_map(|&a| {
        graph
            .component(a)
            .into_iter()
            .find(|&b| b > a)
            .map(|b| (a, b))
    })
}

/// Ordered pairs of distinct vehicles that can reach each other.
pub fn connected_pairs(graph: &LinkGraph) -> Vec<(VehicleId, VehicleId)> {
    graph
        .vehicle_ids()
        .iter()
        .flat_map(|&a| {
            graph
                .component(a)
                .into_iter()
                .filter(move |&b| b != a)
                .map(move |b| (a, b))
        })
        .collect()
}
