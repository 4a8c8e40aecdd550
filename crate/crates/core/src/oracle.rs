//! Cross-check of the closed-form absorption route against RK4 integration
//! of the Bloch equations.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::MemoryConfig;
use crate::dynamics::{absorption_probability, bloch_ode_oracle, DecayProfile};
use crate::envelope::ComplexEnvelope;
use crate::error::Result;
use crate::grid::TimeGrid;
use crate::scenario::{write_window_input, ScenarioConfig};
use crate::write_optimizer::{optimal_write_profile, WriteOptions};

pub const ORACLE_TOLERANCE: f64 = 1e-6;
pub const RANDOM_PAIRS: usize = 20;
/// The coarse diagnostic divides `points_per_unit` by this factor.
pub const COARSE_FACTOR: f64 = 16.0;

#[derive(Debug, Clone, Serialize)]
pub struct PairReport {
    pub label: String,
    pub samples: usize,
    pub max_abs_dp: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CoarseReport {
    pub points_per_unit: f64,
    pub max_abs_dp: f64,
    /// Ratio to the fine-grid deviation of the same pair.
    pub growth: f64,
    pub warning: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub seed: u64,
    pub tolerance: f64,
    pub max_abs_dp: f64,
    pub pass: bool,
    pub pairs: Vec<PairReport>,
    pub coarse: CoarseReport,
}

/// `max_t |P_quadrature - P_RK4|`.
pub fn max_deviation(profile: &DecayProfile<f64>, drive: &ComplexEnvelope<f64>) -> Result<f64> {
    let a = absorption_probability(profile, drive)?;
    let b = bloch_ode_oracle(profile, drive)?;
    Ok(a.probability()
        .iter()
        .zip(b.probability())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max))
}

/// Smooth random rate `1 + 0.95 tanh(Σ sinusoids)` and a normalized sum of
/// three complex Gaussians on `[0, 20]`.
pub fn random_pair(
    rng: &mut ChaCha8Rng,
    memory: &MemoryConfig<f64>,
) -> Result<(DecayProfile<f64>, ComplexEnvelope<f64>)> {
    let grid = TimeGrid::new(0.0, 20.0, 4001)?;
    let modes: Vec<(f64, f64, f64)> = (0..4)
        .map(|_| (rng.gen_range(0.2..0.8), rng.gen_range(0.1..1.0), rng.gen_range(0.0..std::f64::consts::TAU)))
        .collect();
    let rate_z = grid
        .times()
        .map(|t| {
            let s: f64 = modes.iter().map(|&(a, w, p)| a * (w * t + p).sin()).sum();
            memory.gamma0 * (1.0 + 0.95 * s.tanh())
        })
        .collect();
    let profile = DecayProfile::from_rate_z(grid, rate_z, memory)?;
    let bumps: Vec<(f64, f64, Complex64)> = (0..3)
        .map(|_| {
            let weight = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            (rng.gen_range(4.0..16.0), rng.gen_range(0.5..1.5), weight)
        })
        .collect();
    let drive = ComplexEnvelope::from_fn(grid, |t| {
        bumps
            .iter()
            .map(|&(c, w, z)| z * (-(t - c).powi(2) / (2.0 * w * w)).exp())
            .sum()
    })?
    .normalized()?;
    Ok((profile, drive))
}

fn scenario_write_pair(cfg: &ScenarioConfig, dt: f64) -> Result<(DecayProfile<f64>, ComplexEnvelope<f64>)> {
    let memory = cfg.memory_config()?;
    let xi = write_window_input(cfg, dt)?;
    let w = optimal_write_profile(
        &xi,
        &memory,
        &WriteOptions {
            phase_compensation: cfg.phase_compensation,
        },
    )?;
    Ok((w.profile, w.drive))
}

/// Oracle agreement on the scenario's write phase and `RANDOM_PAIRS` seeded
/// random pairs, plus a coarse-grid diagnostic that is reported but not judged.
pub fn oracle_check(cfg: &ScenarioConfig) -> Result<OracleReport> {
    cfg.validate()?;
    let memory = cfg.memory_config()?;
    let mut pairs = Vec::with_capacity(RANDOM_PAIRS + 1);

    let (profile, drive) = scenario_write_pair(cfg, cfg.dt())?;
    let fine = max_deviation(&profile, &drive)?;
    pairs.push(PairReport {
        label: "scenario write".into(),
        samples: profile.grid().len(),
        max_abs_dp: fine,
        pass: fine <= ORACLE_TOLERANCE,
    });

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for k in 0..RANDOM_PAIRS {
        let (profile, drive) = random_pair(&mut rng, &memory)?;
        let dp = max_deviation(&profile, &drive)?;
        pairs.push(PairReport {
            label: format!("random {k}"),
            samples: profile.grid().len(),
            max_abs_dp: dp,
            pass: dp <= ORACLE_TOLERANCE,
        });
    }

    let coarse_ppu = cfg.grid.points_per_unit / COARSE_FACTOR;
    let (profile, drive) = scenario_write_pair(cfg, cfg.dt() * COARSE_FACTOR)?;
    let coarse_dp = max_deviation(&profile, &drive)?;
    let coarse = CoarseReport {
        points_per_unit: coarse_ppu,
        max_abs_dp: coarse_dp,
        growth: if fine > 0.0 { coarse_dp / fine } else { f64::INFINITY },
        warning: format!(
            "coarse grid ({coarse_ppu} points per unit) is below the resolution rule; deviation reported, check skipped"
        ),
    };

    let max_abs_dp = pairs.iter().map(|p| p.max_abs_dp).fold(0.0, f64::max);
    Ok(OracleReport {
        seed: cfg.seed,
        tolerance: ORACLE_TOLERANCE,
        max_abs_dp,
        pass: pairs.iter().all(|p| p.pass),
        pairs,
        coarse,
    })
}
