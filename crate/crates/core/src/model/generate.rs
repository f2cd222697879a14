use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::{Area, Frequency, Radio, Scenario, Vehicle};

/// Parameters of a random scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct GenSpec {
    pub seed: u64,
    pub vehicle_count: usize,
    pub area: Area,
    pub comm_range: f64,
    pub radios_per_vehicle: usize,
    pub frequency_pool: Vec<Frequency>,
    /// Inclusive (min, max) bandwidth in kbit/s.
    pub bandwidth_range: (f64, f64),
}

impl Default for GenSpec {
    /// 30 single-radio vehicles on one channel in a 1000 m square with a
    /// 200 m link threshold and bandwidths in [2, 10] kbit/s.
    fn default() -> Self {
        Self {
            seed: 0,
            vehicle_count: 30,
            area: Area {
                width: 1000.0,
                height: 1000.0,
            },
            comm_range: 200.0,
            radios_per_vehicle: 1,
            frequency_pool: vec![Frequency(1)],
            bandwidth_range: (2.0, 10.0),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenError {
    #[error("frequency pool is empty")]
    EmptyFrequencyPool,
    #[error("vehicle count must be positive")]
    NoVehicles,
    #[error("radios per vehicle must be positive")]
    NoRadios,
    #[error("invalid bandwidth range [{0}, {1}]: need 0 < min <= max")]
    BandwidthRange(f64, f64),
    #[error("area dimensions must be positive, got {0} x {1}")]
    Area(f64, f64),
    #[error("communication range must be positive, got {0}")]
    Range(f64),
}

impl GenSpec {
    pub fn check(&self) -> Result<(), GenError> {
        let (lo, hi) = self.bandwidth_range;
        if self.frequency_pool.is_empty() {
            Err(GenError::EmptyFrequencyPool)
        } else if self.vehicle_count == 0 {
            Err(GenError::NoVehicles)
        } else if self.radios_per_vehicle == 0 {
            Err(GenError::NoRadios)
        } else if !(lo > 0.0 && lo <= hi && hi.is_finite()) {
            Err(GenError::BandwidthRange(lo, hi))
        } else if !(self.area.width > 0.0 && self.area.height > 0.0) {
            Err(GenError::Area(self.area.width, self.area.height))
        } else if !(self.comm_range > 0.0) {
            Err(GenError::Range(self.comm_range))
        } else {
            Ok(())
        }
    }
}

fn round_one_decimal(v: f64) -> f64 {
    let r = (v * 10.0).round() / 10.0;
    // tiny ranges can round to zero; the unrounded draw is still positive
    if r > 0.0 {
        r
    } else {
        v
    }
}

/// Draws a scenario from `spec`. Vehicles get ids `1..=n` and radios ids
/// `1..=k` within each vehicle. Same spec, same scenario.
pub fn generate_scenario(spec: &GenSpec) -> Result<Scenario, GenError> {
    spec.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let (bw_lo, bw_hi) = spec.bandwidth_range;

    let vehicles = (1..=spec.vehicle_count as u32)
        .map(|id| {
            let x = rng.gen_range(0.0..=spec.area.width);
            let y = rng.gen_range(0.0..=spec.area.height);
            let radios = (1..=spec.radios_per_vehicle as u32)
                .map(|rid| {
                    let freq = *spec
                        .frequency_pool
                        .choose(&mut rng)
                        .expect("pool checked non-empty");
                    let bw = round_one_decimal(rng.gen_range(bw_lo..=bw_hi));
                    Radio {
                        id: super::RadioId(rid),
                        freq,
                        bw,
                    }
                })
                .collect();
            Vehicle::new(id, x, y, radios)
        })
        .collect();

    Ok(Scenario::new(spec.area, spec.comm_range, vehicles))
}
