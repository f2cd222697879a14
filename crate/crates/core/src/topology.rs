//! Frequency-constrained link graph.
//!
//! Two vehicles are neighbors when they are within `comm_range` of each other
//! (inclusive) and at least one radio on each side shares a channel. Hand-off
//! between radios of one vehicle is free, so the graph works at vehicle
//! granularity and each link remembers which radio pairs realize it.

use std::collections::{HashMap, VecDeque};

use crate::model::{Position, RadioId, Scenario, Vehicle, VehicleId};

pub fn euclid(p: Position, q: Position) -> f64 {
    (p.x - q.x).hypot(p.y - q.y)
}

/// A transmitting radio on one vehicle and the receiving radio on the next.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RadioPair {
    pub tx: RadioId,
    pub rx: RadioId,
}

impl RadioPair {
    pub fn reversed(self) -> Self {
        Self {
            tx: self.rx,
            rx: self.tx,
        }
    }
}

/// All cross-vehicle radio pairs on a common channel, in `a`-radio order and
/// then `b`-radio order.
pub fn shared_frequency_pairs(a: &Vehicle, b: &Vehicle) -> Vec<RadioPair> {
    a.radios
        .iter()
        .flat_map(|ra| {
            b.radios
                .iter()
                .filter(move |rb| rb.freq == ra.freq)
                .map(move |rb| RadioPair { tx: ra.id, rx: rb.id })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Link {
    pub from: VehicleId,
    pub to: VehicleId,
    pub distance: f64,
    pub radio_pairs: Vec<RadioPair>,
}

impl Link {
    /// The radio pair used when forwarding over this link: highest receiving
    /// bandwidth, then lowest receiving radio id, then lowest transmitting id.
    ///
    /// `receiver` must be the vehicle at `self.to`.
    pub fn preferred_pair(&self, receiver: &Vehicle) -> (RadioPair, f64) {
        debug_assert_eq!(receiver.id, self.to);
        self.radio_pairs
            .iter()
            .map(|&pair| {
                let bw = receiver
                    .radio(pair.rx)
                    .expect("link radio belongs to receiver")
                    .bw;
                (pair, bw)
            })
            .min_by(|(pa, bwa), (pb, bwb)| {
                bwb.total_cmp(bwa)
                    .then(pa.rx.cmp(&pb.rx))
                    .then(pa.tx.cmp(&pb.tx))
            })
            .expect("links carry at least one radio pair")
    }
}

/// Adjacency of vehicles, neighbor lists sorted by ascending vehicle id.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkGraph {
    ids: Vec<VehicleId>,
    index: HashMap<VehicleId, usize>,
    adjacency: Vec<Vec<Link>>,
}

impl LinkGraph {
    pub fn vehicle_ids(&self) -> &[VehicleId] {
        &self.ids
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    /// Number of undirected links.
    pub fn link_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn contains(&self, id: VehicleId) -> bool {
        self.index.contains_key(&id)
    }

    /// Outgoing links of `id`; empty for unknown vehicles.
    pub fn neighbors(&self, id: VehicleId) -> &[Link] {
        self.index
            .get(&id)
            .map(|&i| self.adjacency[i].as_slice())
            .unwrap_or(&[])
    }

    pub fn link(&self, from: VehicleId, to: VehicleId) -> Option<&Link> {
        let links = self.neighbors(from);
        links
            .binary_search_by_key(&to, |l| l.to)
            .ok()
            .map(|i| &links[i])
    }

    pub fn links(&self) -> impl Iterator<Item = &Link> {
        self.adjacency.iter().flatten()
    }

    /// Vehicles reachable from `id` (including itself), ascending.
    pub fn component(&self, id: VehicleId) -> Vec<VehicleId> {
        let Some(&start) = self.index.get(&id) else {
            return Vec::new();
        };
        let mut seen = vec![false; self.ids.len()];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(i) = queue.pop_front() {
            for link in &self.adjacency[i] {
                let j = self.index[&link.to];
                if !seen[j] {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        self.ids
            .iter()
            .zip(seen)
            .filter_map(|(&id, s)| s.then_some(id))
            .collect()
    }

    pub fn reachable(&self, from: VehicleId, to: VehicleId) -> bool {
        self.component(from).binary_search(&to).is_ok()
    }
}

/// Builds the link graph of a valid scenario.
pub fn build_link_graph(s: &Scenario) -> LinkGraph {
    let mut vehicles: Vec<&Vehicle> = s.vehicles.iter().collect();
    vehicles.sort_by_key(|v| v.id);
    let ids: Vec<VehicleId> = vehicles.iter().map(|v| v.id).collect();
    let index: HashMap<_, _> = ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();
    debug_assert_eq!(index.len(), ids.len(), "duplicate vehicle ids");

    let mut adjacency: Vec<Vec<Link>> = vec![Vec::new(); ids.len()];
    for (i, a) in vehicles.iter().enumerate() {
        for (j, b) in vehicles.iter().enumerate().skip(i + 1) {
            let distance = euclid(a.position(), b.position());
            if distance > s.comm_range {
                continue;
            }
            let pairs = shared_frequency_pairs(a, b);
            if pairs.is_empty() {
                continue;
            }
            let mut mirrored: Vec<RadioPair> = pairs.iter().map(|p| p.reversed()).collect();
            mirrored.sort();
            adjacency[j].push(Link {
                from: b.id,
                to: a.id,
                distance,
                radio_pairs: mirrored,
            });
            adjacency[i].push(Link {
                from: a.id,
                to: b.id,
                distance,
                radio_pairs: pairs,
            });
        }
    }
    for links in &mut adjacency {
        links.sort_by_key(|l| l.to);
    }

    LinkGraph {
        ids,
        index,
        adjacency,
    }
}
