//! Exhaustive simple-path enumeration, used as ground truth on small
//! instances.

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::metrics::MetricKind;
use crate::model::{Scenario, Vehicle, VehicleId};
use crate::route::{Route, RouteHop};
use crate::topology::LinkGraph;

/// Largest scenario the harness hands to the oracle.
pub const ORACLE_MAX_VEHICLES: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{vehicles} vehicles exceed the oracle bound of {ORACLE_MAX_VEHICLES}")]
pub struct OracleBoundError {
    pub vehicles: usize,
}

pub fn check_oracle_bound(scenario: &Scenario) -> Result<(), OracleBoundError> {
    let vehicles = scenario.vehicles.len();
    if vehicles > ORACLE_MAX_VEHICLES {
        Err(OracleBoundError { vehicles })
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PathSet {
    pub source: VehicleId,
    pub dest: VehicleId,
    pub max_hops: usize,
    /// Lexicographic by vehicle-id sequence.
    pub routes: Vec<Route>,
}

impl PathSet {
    pub fn len(&self) -> usize {
        self.routes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.routes.is_empty()
    }

    /// The enumerated route with exactly this vehicle sequence.
    pub fn find(&self, vehicles: &[VehicleId]) -> Option<&Route> {
        self.routes.iter().find(|r| r.vehicles() == vehicles)
    }
}

struct Enumerator<'a> {
    graph: &'a LinkGraph,
    vehicles: HashMap<VehicleId, &'a Vehicle>,
    dest: VehicleId,
    max_hops: usize,
    on_path: HashSet<VehicleId>,
    hops: Vec<RouteHop>,
    found: Vec<Vec<RouteHop>>,
}

impl Enumerator<'_> {
    fn descend(&mut self, at: VehicleId) {
        if at == self.dest {
            self.found.push(self.hops.clone());
            return;
        }
        if self.hops.len() == self.max_hops {
            return;
        }
        // neighbor lists are ascending, so paths come out in lexicographic order
        for link in self.graph.neighbors(at) {
            if self.on_path.contains(&link.to) {
                continue;
            }
            let (radio_pair, bandwidth) = link.preferred_pair(self.vehicles[&link.to]);
            self.hops.push(RouteHop {
                vehicle: link.to,
                radio_pair,
                distance: link.distance,
                bandwidth,
            });
            self.on_path.insert(link.to);
            self.descend(link.to);
            self.on_path.remove(&link.to);
            self.hops.pop();
        }
    }
}

/// Every simple path from `source` to `dest` with at most `max_hops` edges.
///
/// When `source == dest` the set holds only the zero-hop route.
pub fn enumerate_paths(
    scenario: &Scenario,
    graph: &LinkGraph,
    source: VehicleId,
    dest: VehicleId,
    max_hops: usize,
) -> PathSet {
    let mut routes = Vec::new();
    if graph.contains(source) && graph.contains(dest) {
        let mut e = Enumerator {
            graph,
            vehicles: scenario.vehicles.iter().map(|v| (v.id, v)).collect(),
            dest,
            max_hops,
            on_path: HashSet::from([source]),
            hops: Vec::new(),
            found: Vec::new(),
        };
        e.descend(source);
        routes = e
            .found
            .into_iter()
            .map(|hops| Route::new(source, dest, hops))
            .collect();
    }
    PathSet {
        source,
        dest,
        max_hops,
        routes,
    }
}

/// Cheapest route under `kind`; ties go to the lexicographically smallest
/// vehicle sequence.
pub fn best_route(paths: &PathSet, kind: MetricKind) -> Option<&Route> {
    let cost = |r: &Route| r.stats.map_or(0.0, |s| s.cost(kind));
    paths.routes.iter().fold(None, |best: Option<&Route>, r| match best {
        Some(b) if cost(b) <= cost(r) => Some(b),
        _ => Some(r),
    })
}
