//! Vehicles, radios and the scenario they live in.
//!
//! A [`Scenario`] is immutable once built. Mobility between searches is
//! expressed by building (or loading) a new scenario.

mod document;
mod generate;

pub use document::{load_scenario, load_scenario_file, save_scenario, ScenarioError};
pub use generate::{generate_scenario, GenError, GenSpec};

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Identifier of a vehicle, unique within a scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VehicleId(pub u32);

impl fmt::Display for VehicleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Identifier of a radio, unique within its vehicle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RadioId(pub u32);

impl fmt::Display for RadioId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r{}", self.0)
    }
}

/// Operating channel. Only ever compared for equality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Frequency(pub u32);

impl fmt::Display for Frequency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f{}", self.0)
    }
}

/// A point on the plane, in meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Position {
    pub x: f64,
    pub y: f64,
}

impl Position {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Radio {
    pub id: RadioId,
    pub freq: Frequency,
    /// Bandwidth rating in kbit/s.
    pub bw: f64,
}

impl Radio {
    pub fn new(id: u32, freq: u32, bw: f64) -> Self {
        Self {
            id: RadioId(id),
            freq: Frequency(freq),
            bw,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Vehicle {
    pub id: VehicleId,
    /// Optional display label, e.g. "A". Falls back to the numeric id.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub x: f64,
    pub y: f64,
    pub radios: Vec<Radio>,
}

impl Vehicle {
    pub fn new(id: u32, x: f64, y: f64, radios: Vec<Radio>) -> Self {
        Self {
            id: VehicleId(id),
            name: None,
            x,
            y,
            radios,
        }
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn position(&self) -> Position {
        Position::new(self.x, self.y)
    }

    pub fn radio(&self, id: RadioId) -> Option<&Radio> {
        self.radios.iter().find(|r| r.id == id)
    }

    pub fn label(&self) -> String {
        match &self.name {
            Some(name) => name.clone(),
            None => self.id.to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Area {
    pub width: f64,
    pub height: f64,
}

impl Area {
    pub fn contains(&self, p: Position) -> bool {
        (0.0..=self.width).contains(&p.x) && (0.0..=self.height).contains(&p.y)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub area: Area,
    /// Maximum link distance in meters (inclusive).
    pub comm_range: f64,
    pub vehicles: Vec<Vehicle>,
}

impl Scenario {
    pub fn new(area: Area, comm_range: f64, vehicles: Vec<Vehicle>) -> Self {
        Self {
            area,
            comm_range,
            vehicles,
        }
    }

    pub fn vehicle(&self, id: VehicleId) -> Option<&Vehicle> {
        self.vehicles.iter().find(|v| v.id == id)
    }

    /// Resolves a user-supplied token, matching a vehicle name first and
    /// then a numeric id.
    pub fn resolve(&self, token: &str) -> Option<VehicleId> {
        if let Some(v) = self
            .vehicles
            .iter()
            .find(|v| v.name.as_deref() == Some(token))
        {
            return Some(v.id);
        }
        let id = VehicleId(token.parse().ok()?);
        self.vehicle(id).map(|v| v.id)
    }

    pub fn label(&self, id: VehicleId) -> String {
        self.vehicle(id)
            .map(Vehicle::label)
            .unwrap_or_else(|| id.to_string())
    }

    /// Vehicle ids in ascending order.
    pub fn vehicle_ids(&self) -> Vec<VehicleId> {
        let mut ids: Vec<_> = self.vehicles.iter().map(|v| v.id).collect();
        ids.sort_unstable();
        ids
    }

    pub fn without_vehicle(&self, id: VehicleId) -> Scenario {
        let mut s = self.clone();
        s.vehicles.retain(|v| v.id != id);
        s
    }

    /// Copy of the scenario with every radio moved to `freq`.
    pub fn with_single_frequency(&self, freq: Frequency) -> Scenario {
        let mut s = self.clone();
        for radio in s.vehicles.iter_mut().flat_map(|v| v.radios.iter_mut()) {
            radio.freq = freq;
        }
        s
    }

    /// Copy of the scenario with every bandwidth multiplied by `factor`.
    pub fn with_scaled_bandwidths(&self, factor: f64) -> Scenario {
        let mut s = self.clone();
        for radio in s.vehicles.iter_mut().flat_map(|v| v.radios.iter_mut()) {
            radio.bw *= factor;
        }
        s
    }

    pub fn validate(&self) -> ValidationReport {
        validate_scenario(self)
    }
}

/// A single broken scenario invariant.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    NonPositiveArea { width: f64, height: f64 },
    NonPositiveRange(f64),
    DuplicateVehicleId(VehicleId),
    EmptyRadioList(VehicleId),
    DuplicateRadioId { vehicle: VehicleId, radio: RadioId },
    NonPositiveBandwidth { vehicle: VehicleId, radio: RadioId, bw: f64 },
    OutOfBounds { vehicle: VehicleId, x: f64, y: f64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonPositiveArea { width, height } => {
                write!(f, "area dimensions > 0 violated ({width} x {height})")
            }
            Violation::NonPositiveRange(r) => write!(f, "comm_range > 0 violated ({r})"),
            Violation::DuplicateVehicleId(id) => write!(f, "duplicate vehicle_id {id}"),
            Violation::EmptyRadioList(id) => write!(f, "vehicle {id}: empty radio list"),
            Violation::DuplicateRadioId { vehicle, radio } => {
                write!(f, "vehicle {vehicle}: duplicate radio_id {}", radio.0)
            }
            Violation::NonPositiveBandwidth { vehicle, radio, bw } => write!(
                f,
                "vehicle {vehicle} radio {}: bandwidth > 0 violated ({bw})",
                radio.0
            ),
            Violation::OutOfBounds { vehicle, x, y } => {
                write!(f, "vehicle {vehicle}: position ({x}, {y}) outside area")
            }
        }
    }
}

/// Every invariant violation found in a scenario. Empty means valid.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

pub fn validate_scenario(s: &Scenario) -> ValidationReport {
    let mut violations = Vec::new();

    // written as negations so NaN is reported too
    if !(s.area.width > 0.0 && s.area.height > 0.0) {
        violations.push(Violation::NonPositiveArea {
            width: s.area.width,
            height: s.area.height,
        });
    }
    if !(s.comm_range > 0.0) {
        violations.push(Violation::NonPositiveRange(s.comm_range));
    }

    let mut seen = HashSet::new();
    for v in &s.vehicles {
        if !seen.insert(v.id) {
            violations.push(Violation::DuplicateVehicleId(v.id));
        }
        if v.radios.is_empty() {
            violations.push(Violation::EmptyRadioList(v.id));
        }
        let mut radio_ids = HashSet::new();
        for r in &v.radios {
            if !radio_ids.insert(r.id) {
                violations.push(Violation::DuplicateRadioId {
                    vehicle: v.id,
                    radio: r.id,
                });
            }
            if !(r.bw > 0.0 && r.bw.is_finite()) {
                violations.push(Violation::NonPositiveBandwidth {
                    vehicle: v.id,
                    radio: r.id,
                    bw: r.bw,
                });
            }
        }
        if !s.area.contains(v.position()) {
            violations.push(Violation::OutOfBounds {
                vehicle: v.id,
                x: v.x,
                y: v.y,
            });
        }
    }

    ValidationReport { violations }
}
