//! Synthetic daily occupancy panels with a known low-rank structure.
//!
//! `archetypes` latent seasonal curves are drawn first. Each curve is a
//! positive baseline plus one to three Gaussian bumps, modulated by a
//! weekly sinusoid. Every hotel then scales a convex mix of one or two
//! archetypes by its capacity and applies multiplicative Gaussian noise.
//! Hotel `n` always uses archetype `n mod K`, so every archetype appears.
//!
//! Randomness comes from `Xoshiro256PlusPlus` seeded with `seed`, and the
//! draw order is fixed: archetype parameters, hotel parameters, then noise
//! hotel by hotel. Noise is drawn even when `noise_sd == 0`.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_distr::StandardNormal;
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::error::{Error, Result};
use crate::series::{aggregate_target, Family, Series, TimeGrid};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub n_series: usize,
    pub days: usize,
    pub archetypes: usize,
    /// Relative noise level; 0 gives an exactly rank-`archetypes` panel.
    pub noise_sd: f64,
    pub seed: u64,
}

impl GenSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n_series == 0 {
            return Err(Error::InvalidConfig("n_series must be positive".into()));
        }
        if self.archetypes == 0 || self.archetypes > self.n_series {
            return Err(Error::InvalidConfig(format!(
                "archetypes must lie in 1..={}, got {}",
                self.n_series, self.archetypes
            )));
        }
        if self.days < 14 {
            return Err(Error::InvalidConfig(format!(
                "days must be at least 14, got {}",
                self.days
            )));
        }
        if !(self.noise_sd.is_finite() && self.noise_sd >= 0.0) {
            return Err(Error::InvalidConfig(format!(
                "noise_sd must be a nonnegative number, got {}",
                self.noise_sd
            )));
        }
        Ok(())
    }
}

struct Archetype {
    baseline: f64,
    bumps: Vec<(f64, f64, f64)>, // (center, width, amplitude)
    weekly_amp: f64,
    weekly_phase: f64,
}

impl Archetype {
    fn draw(rng: &mut impl Rng, days: f64) -> Self {
        let baseline = rng.random_range(0.05..0.2);
        let n_bumps = rng.random_range(1..=3);
        let bumps = (0..n_bumps)
            .map(|_| {
                (
                    rng.random_range(0.0..days),
                    rng.random_range(days / 20.0..days / 5.0),
                    rng.random_range(0.3..1.0),
                )
            })
            .collect();
        Self {
            baseline,
            bumps,
            weekly_amp: rng.random_range(0.0..0.3),
            weekly_phase: rng.random_range(0.0..2.0 * PI),
        }
    }

    fn at(&self, t: f64) -> f64 {
        let season: f64 = self
            .bumps
            .iter()
            .map(|&(c, w, a)| a * (-0.5 * ((t - c) / w).powi(2)).exp())
            .sum();
        (self.baseline + season) * (1.0 + self.weekly_amp * (2.0 * PI * t / 7.0 + self.weekly_phase).sin())
    }
}

/// Returns the hotel family on a daily grid starting at 0 and its
/// aggregate.
pub fn generate(spec: &GenSpec) -> Result<(Family, Series)> {
    spec.validate()?;
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(spec.seed);
    let grid = TimeGrid::new(0.0, 1.0, spec.days)?;

    let archetypes: Vec<Archetype> = (0..spec.archetypes)
        .map(|_| Archetype::draw(&mut rng, spec.days as f64))
        .collect();
    let curves: Vec<Vec<f64>> = archetypes
        .iter()
        .map(|a| grid.coordinates().map(|t| a.at(t)).collect())
        .collect();

    let k = spec.archetypes;
    let hotels: Vec<(f64, Vec<(usize, f64)>)> = (0..spec.n_series)
        .map(|n| {
            let capacity = rng.random_range(20.0..200.0);
            let primary = n % k;
            let mix = if k >= 2 && rng.random_bool(0.5) {
                let other = (primary + rng.random_range(1..k)) % k;
                let w = rng.random_range(0.2..0.8);
                vec![(primary, w), (other, 1.0 - w)]
            } else {
                vec![(primary, 1.0)]
            };
            (capacity, mix)
        })
        .collect();

    let width = spec.n_series.to_string().len().max(3);
    let members = hotels
        .iter()
        .enumerate()
        .map(|(n, (capacity, mix))| {
            let values = (0..spec.days)
                .map(|i| {
                    let eps: f64 = rng.sample(StandardNormal);
                    let shape: f64 = mix.iter().map(|&(a, w)| w * curves[a][i]).sum();
                    (capacity * shape * (1.0 + spec.noise_sd * eps)).max(0.0)
                })
                .collect();
            Series::new(format!("hotel_{:0width$}", n + 1), values)
        })
        .collect::<Result<Vec<_>>>()?;

    let family = Family::new(grid, members)?;
    let target = aggregate_target(&family)?;
    Ok((family, target))
}
