//! Best-first search over the link graph with OPEN and CLOSED tables.
//!
//! The loop:
//!
//! 1. put the source into OPEN;
//! 2. if OPEN is empty the search fails;
//! 3. pop the OPEN entry with the smallest f (ties: lower vehicle id) and
//!    move it to CLOSED;
//! 4. stop if it is the destination;
//! 5. otherwise expand it. Children already in CLOSED are ignored. Children
//!    already in OPEN replace the stored entry only when their f is smaller,
//!    taking over the back pointer. New children are inserted.
//!
//! Frequency matching is already folded into the link graph, so a neighbor
//! that shares no channel with the current vehicle is simply not a
//! neighbor. It stays reachable through other vehicles.
//!
//! With [`MetricKind::Distance`] the straight-line heuristic is consistent,
//! so the first time the destination is popped its path is a shortest one.
//! With [`MetricKind::BandwidthRatio`] the key is not additive along a path
//! and closed vehicles are never reopened, so the result is the best route
//! this procedure finds, not necessarily the global optimum.

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, HashMap};

use thiserror::Error;

use crate::metrics::{eval_f, MetricKind, PathAccumulator};
use crate::model::{Position, Scenario, Vehicle, VehicleId};
use crate::route::{Route, RouteHop};
use crate::topology::LinkGraph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("unknown vehicle {0}")]
    UnknownVehicle(VehicleId),
}

/// An entry of the OPEN or CLOSED table.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchNode {
    pub vehicle: VehicleId,
    pub acc: PathAccumulator,
    pub f_value: f64,
    /// Back pointer; `None` only for the source.
    pub parent: Option<VehicleId>,
    /// How this node was reached from `parent`.
    pub incoming: Option<RouteHop>,
}

/// Result of one search, including the order in which vehicles were closed.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    pub route: Option<Route>,
    pub closed_order: Vec<VehicleId>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct OpenKey(f64, VehicleId);

impl Eq for OpenKey {}

impl Ord for OpenKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0).then(self.1.cmp(&other.1))
    }
}

impl PartialOrd for OpenKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Searches routes over one scenario and its link graph. Cheap to build and
/// holds only shared references, so many routers can run side by side.
pub struct Router<'a> {
    graph: &'a LinkGraph,
    vehicles: HashMap<VehicleId, &'a Vehicle>,
}

impl<'a> Router<'a> {
    pub fn new(scenario: &'a Scenario, graph: &'a LinkGraph) -> Self {
        let vehicles = scenario.vehicles.iter().map(|v| (v.id, v)).collect();
        Self { graph, vehicles }
    }

    fn vehicle(&self, id: VehicleId) -> Result<&'a Vehicle, SearchError> {
        match self.vehicles.get(&id) {
            Some(v) if self.graph.contains(id) => Ok(v),
            _ => Err(SearchError::UnknownVehicle(id)),
        }
    }

    /// Children of `node`, one per neighbor of its vehicle.
    pub fn expand(&self, node: &SearchNode, goal: Position, kind: MetricKind) -> Vec<SearchNode> {
        self.graph
            .neighbors(node.vehicle)
            .iter()
            .map(|link| {
                let receiver = self.vehicles[&link.to];
                let (radio_pair, bandwidth) = link.preferred_pair(receiver);
                let acc = node
                    .acc
                    .extend(link.distance, bandwidth)
                    .expect("validated scenario has positive bandwidths");
                SearchNode {
                    vehicle: link.to,
                    acc,
                    f_value: eval_f(kind, &acc, receiver.position(), goal),
                    parent: Some(node.vehicle),
                    incoming: Some(RouteHop {
                        vehicle: link.to,
                        radio_pair,
                        distance: link.distance,
                        bandwidth,
                    }),
                }
            })
            .collect()
    }

    pub fn search(
        &self,
        source: VehicleId,
        dest: VehicleId,
        kind: MetricKind,
    ) -> Result<SearchOutcome, SearchError> {
        let start = self.vehicle(source)?.position();
        let goal = self.vehicle(dest)?.position();

        let mut open: HashMap<VehicleId, SearchNode> = HashMap::new();
        let mut heap = BinaryHeap::new();
        let mut closed: HashMap<VehicleId, SearchNode> = HashMap::new();
        let mut closed_order = Vec::new();

        let root = SearchNode {
            vehicle: source,
            acc: PathAccumulator::start(),
            f_value: eval_f(kind, &PathAccumulator::start(), start, goal),
            parent: None,
            incoming: None,
        };
        heap.push(Reverse(OpenKey(root.f_value, source)));
        open.insert(source, root);

        while let Some(Reverse(OpenKey(f, id))) = heap.pop() {
            // superseded heap entries are skipped
            match open.get(&id) {
                Some(node) if node.f_value == f => {}
                _ => continue,
            }
            let node = open.remove(&id).expect("checked above");
            closed_order.push(id);

            if id == dest {
                closed.insert(id, node);
                let route = self.reconstruct(&closed, source, dest);
                return Ok(SearchOutcome {
                    route: Some(route),
                    closed_order,
                });
            }

            for child in self.expand(&node, goal, kind) {
                if closed.contains_key(&child.vehicle) {
                    continue;
                }
                let better = open
                    .get(&child.vehicle)
                    .is_none_or(|existing| child.f_value < existing.f_value);
                if better {
                    heap.push(Reverse(OpenKey(child.f_value, child.vehicle)));
                    open.insert(child.vehicle, child);
                }
            }
            closed.insert(id, node);
        }

        Ok(SearchOutcome {
            route: None,
            closed_order,
        })
    }

    /// Runs the search and returns the route, or `None` when the destination
    /// is unreachable.
    pub fn route(
        &self,
        source: VehicleId,
        dest: VehicleId,
        kind: MetricKind,
    ) -> Result<Option<Route>, SearchError> {
        self.search(source, dest, kind).map(|o| o.route)
    }

    fn reconstruct(
        &self,
        closed: &HashMap<VehicleId, SearchNode>,
        source: VehicleId,
        dest: VehicleId,
    ) -> Route {
        let mut hops = Vec::new();
        let mut cursor = &closed[&dest];
        while let (Some(parent), Some(hop)) = (cursor.parent, cursor.incoming) {
            hops.push(hop);
            cursor = &closed[&parent];
        }
        hops.reverse();
        Route::new(source, dest, hops)
    }
}

/// One-shot search.
pub fn astar(
    scenario: &Scenario,
    graph: &LinkGraph,
    source: VehicleId,
    dest: VehicleId,
    kind: MetricKind,
) -> Result<Option<Route>, SearchError> {
    Router::new(scenario, graph).route(source, dest, kind)
}
