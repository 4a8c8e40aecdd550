//! Mirror trajectories `l(t)` and their mapping to decay profiles.
//!
//! Displacements are stored as `l/λ`. On the branch used here the atom sits
//! at a node for `l = 0` and at an antinode for `l = λ/4`, with
//! `γᶻ = γ_p (1 - cos(4π l/λ))` in between.

use serde::{Deserialize, Serialize};

use crate::config::MemoryConfig;
use crate::dynamics::{decay_from_mirror, DecayProfile};
use crate::error::{Error, Result};
use crate::grid::TimeGrid;
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq)]
pub struct MirrorTrajectory<T> {
    grid: TimeGrid<T>,
    l_over_lambda: Vec<T>,
    velocity: Vec<T>,
    v_max: T,
}

impl<T: Real> MirrorTrajectory<T> {
    pub fn new(grid: TimeGrid<T>, l_over_lambda: Vec<T>) -> Result<Self> {
        grid.ensure_len(l_over_lambda.len())?;
        if let Some(index) = l_over_lambda.iter().position(|l| !l.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        let velocity = finite_difference(&l_over_lambda, grid.dt());
        let v_max = velocity.iter().fold(T::zero(), |m, v| m.max(v.abs()));
        Ok(MirrorTrajectory {
            grid,
            l_over_lambda,
            velocity,
            v_max,
        })
    }

    pub fn grid(&self) -> &TimeGrid<T> {
        &self.grid
    }

    pub fn l_over_lambda(&self) -> &[T] {
        &self.l_over_lambda
    }

    /// `dl/dt` in units of `λ γ₀`.
    pub fn velocity(&self) -> &[T] {
        &self.velocity
    }

    pub fn v_max(&self) -> T {
        self.v_max
    }
}

// Forward differences, backward on the last sample.
fn finite_difference<T: Real>(x: &[T], dt: T) -> Vec<T> {
    let n = x.len();
    (0..n)
        .map(|k| {
            if k + 1 < n {
                (x[k + 1] - x[k]) / dt
            } else {
                (x[k] - x[k - 1]) / dt
            }
        })
        .collect()
}

/// Inverts `γᶻ = γ₀ (1 - cos(4π l/λ))` on the branch `l/λ ∈ [0, 1/4]`.
pub fn trajectory_from_decay<T: Real>(
    profile: &DecayProfile<T>,
    cfg: &MemoryConfig<T>,
) -> Result<MirrorTrajectory<T>> {
    cfg.require_lossless("mirror inversion with gamma' > 0")?;
    let tol = T::lit(1e-9);
    let max = cfg.max_rate();
    let four_pi = T::lit(4.0) * T::PI();
    let l = profile
        .rate_z()
        .iter()
        .enumerate()
        .map(|(index, &gz)| {
            if gz < -tol || gz > max + tol {
                return Err(Error::RateOutOfRange {
                    index,
                    value: gz.to_f64_lossy(),
                    min: 0.0,
                    max: max.to_f64_lossy(),
                });
            }
            let c = (T::one() - gz / cfg.gamma_p).max(-T::one()).min(T::one());
            Ok(c.acos() / four_pi)
        })
        .collect::<Result<Vec<T>>>()?;
    MirrorTrajectory::new(*profile.grid(), l)
}

pub fn decay_from_trajectory<T: Real>(
    traj: &MirrorTrajectory<T>,
    cfg: &MemoryConfig<T>,
) -> Result<DecayProfile<T>> {
    decay_from_mirror(traj, cfg)
}

/// Kinematic summary of a mirror program.
#[derive(Debug, Clone, Serialize)]
pub struct FeasibilityReport {
    /// Peak `|dl/dt|` in units of `λ γ₀`.
    pub v_max_lambda_gamma0: f64,
    /// Peak speed in m/s, when an SI scale was given.
    pub v_max_m_per_s: Option<f64>,
    pub lambda_m: Option<f64>,
    pub gamma0_per_s: Option<f64>,
    /// Range of `l/λ` visited.
    pub l_min_over_lambda: f64,
    pub l_max_over_lambda: f64,
    /// More than `λ/4` of travel per `1/γ₀`.
    pub mechanically_demanding: bool,
}

/// Physical scale used to convert dimensionless speeds to SI.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SiScale {
    pub lambda_m: f64,
    pub gamma0_per_s: f64,
}

pub fn feasibility_report<T: Real>(
    traj: &MirrorTrajectory<T>,
    _cfg: &MemoryConfig<T>,
    si: Option<SiScale>,
) -> FeasibilityReport {
    let v = traj.v_max().to_f64_lossy();
    let (lo, hi) = traj
        .l_over_lambda()
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), l| {
            let l = l.to_f64_lossy();
            (lo.min(l), hi.max(l))
        });
    FeasibilityReport {
        v_max_lambda_gamma0: v,
        v_max_m_per_s: si.map(|s| v * s.lambda_m * s.gamma0_per_s),
        lambda_m: si.map(|s| s.lambda_m),
        gamma0_per_s: si.map(|s| s.gamma0_per_s),
        l_min_over_lambda: lo,
        l_max_over_lambda: hi,
        mechanically_demanding: v > 0.25,
    }
}
