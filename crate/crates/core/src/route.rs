use std::collections::HashSet;

use thiserror::Error;

use crate::metrics::{route_stats, RouteStats};
use crate::model::{Scenario, VehicleId};
use crate::topology::{LinkGraph, RadioPair};

/// One forwarding step: arrive at `vehicle` over `radio_pair`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RouteHop {
    pub vehicle: VehicleId,
    pub radio_pair: RadioPair,
    pub distance: f64,
    /// Bandwidth of the receiving radio, kbit/s.
    pub bandwidth: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Route {
    pub source: VehicleId,
    pub destination: VehicleId,
    pub hops: Vec<RouteHop>,
    /// `None` only for the zero-hop route from a vehicle to itself.
    pub stats: Option<RouteStats>,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RouteDefect {
    #[error("route ends at {found}, expected {expected}")]
    WrongEnd { expected: VehicleId, found: VehicleId },
    #[error("{0} -> {1} is not a link")]
    NotAdjacent(VehicleId, VehicleId),
    #[error("hop {0} -> {1} uses radios on different channels")]
    FrequencyMismatch(VehicleId, VehicleId),
    #[error("hop {0} -> {1} uses a radio pair the link does not offer")]
    UnknownRadioPair(VehicleId, VehicleId),
    #[error("vehicle {0} visited twice")]
    Revisit(VehicleId),
    #[error("stats do not match hops")]
    Stats,
}

impl Route {
    pub fn new(source: VehicleId, destination: VehicleId, hops: Vec<RouteHop>) -> Self {
        let stats = route_stats(&hops).ok();
        Self {
            source,
            destination,
            hops,
            stats,
        }
    }

    /// Route from a vehicle to itself.
    pub fn trivial(at: VehicleId) -> Self {
        Self::new(at, at, Vec::new())
    }

    /// Source followed by every hop's vehicle.
    pub fn vehicles(&self) -> Vec<VehicleId> {
        std::iter::once(self.source)
            .chain(self.hops.iter().map(|h| h.vehicle))
            .collect()
    }

    pub fn hop_count(&self) -> usize {
        self.hops.len()
    }

    pub fn total_distance(&self) -> f64 {
        self.stats.map_or(0.0, |s| s.total_distance)
    }

    /// Arrow notation using vehicle labels, e.g. `A→C→B`.
    pub fn arrow_path(&self, scenario: &Scenario) -> String {
        self.vehicles()
            .into_iter()
            .map(|id| scenario.label(id))
            .collect::<Vec<_>>()
            .join("→")
    }

    /// Checks that every hop is a link of `graph`, uses a same-channel radio
    /// pair, and that no vehicle repeats.
    pub fn check(&self, scenario: &Scenario, graph: &LinkGraph) -> Result<(), RouteDefect> {
        let path = self.vehicles();
        let last = *path.last().expect("path has a source");
        if last != self.destination {
            return Err(RouteDefect::WrongEnd {
                expected: self.destination,
                found: last,
            });
        }
        let mut seen = HashSet::new();
        for &v in &path {
            if !seen.insert(v) {
                return Err(RouteDefect::Revisit(v));
            }
        }
        for (from, hop) in path.iter().zip(&self.hops) {
            let to = hop.vehicle;
            let link = graph
                .link(*from, to)
                .ok_or(RouteDefect::NotAdjacent(*from, to))?;
            if !link.radio_pairs.contains(&hop.radio_pair) {
                return Err(RouteDefect::UnknownRadioPair(*from, to));
            }
            let tx = scenario
                .vehicle(*from)
                .and_then(|v| v.radio(hop.radio_pair.tx));
            let rx = scenario.vehicle(to).and_then(|v| v.radio(hop.radio_pair.rx));
            match (tx, rx) {
                (Some(tx), Some(rx)) if tx.freq == rx.freq => {}
                _ => return Err(RouteDefect::FrequencyMismatch(*from, to)),
            }
        }
        if self.stats != route_stats(&self.hops).ok() {
            return Err(RouteDefect::Stats);
        }
        Ok(())
    }
}
