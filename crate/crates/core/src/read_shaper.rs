//! Read profiles that re-emit a stored excitation into a target shape.
//!
//! During read the amplitude only decays, `P(t) = P0 exp(-Γᶻ_r(t))`, and the
//! emitted field is
//!
//! ```text
//! ξ_out(t) = i sqrt(2 P0 / γ_p) γ_r(t) exp(-Γ_r(t))
//! ```
//!
//! in the rotating frame, so `|ξ_out|² = P0 γᶻ_r exp(-Γᶻ_r)`. The profile
//!
//! ```text
//! γᶻ_r(t) = min( x |ξ_tgt(t)|² / [1 - x ∫_{t_r⁰}^{t} |ξ_tgt|² dt'], cap )
//! ```
//!
//! emits `x P0 |ξ_tgt|²` exactly while it stays below the cap.

use num_complex::Complex;

use crate::config::MemoryConfig;
use crate::dynamics::DecayProfile;
use crate::envelope::ComplexEnvelope;
use crate::error::{Error, Result};
use crate::pulses::fidelity;
use crate::quadrature::{cumsimpson, cumtrapz};
use crate::scalar::Real;
use crate::search::best_candidate;
use crate::write_optimizer::WriteResult;

/// Tolerance on `P0` matching the write efficiency in [`total_efficiency`].
const P0_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReadOptions<T> {
    /// Report the output with the level-shift chirp removed and the target
    /// phase restored; the raw field is always kept in [`ReadResult`].
    pub phase_compensation: bool,
    /// Observation delay `D/c`; only enters the constant carrier phase.
    pub observation_delay: Option<T>,
}

impl<T> Default for ReadOptions<T> {
    fn default() -> Self {
        ReadOptions {
            phase_compensation: true,
            observation_delay: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ReadResult<T> {
    pub profile: DecayProfile<T>,
    /// `∫|ξ_out|² dt / P0` (running Simpson rule).
    pub eta_r: T,
    /// Reported output, see [`ReadOptions::phase_compensation`].
    pub xi_out: ComplexEnvelope<T>,
    pub xi_out_raw: ComplexEnvelope<T>,
    pub fidelity_vs_target: T,
    pub capped: bool,
    pub p0: T,
    pub iterations: usize,
    pub target_efficiency: T,
    /// Constant carrier phase `ω_a (D/c - τ/2)` mod 2π dropped from `ξ_out`.
    pub carrier_phase: T,
}

impl<T: Real> ReadResult<T> {
    /// Population `P0 exp(-Γᶻ_r(t))` over the read window.
    pub fn population(&self) -> Vec<T> {
        read_population(&self.profile, self.p0)
    }
}

/// `P0 exp(-Γᶻ_r(t))`.
pub fn read_population<T: Real>(profile: &DecayProfile<T>, p0: T) -> Vec<T> {
    profile.integrated_rate_z().iter().map(|&g| p0 * (-g).exp()).collect()
}

/// `remaining[k] = ∫_{t_k}^{t_r} |ξ_tgt|²`, so `1 - x J = (1 - x) + x remaining`
/// for a normalized target without cancellation in the tail.
fn candidate_rates<T: Real>(intensity: &[T], remaining: &[T], x: T, cap: T) -> (Vec<T>, bool) {
    let mut clipped = false;
    let rates = intensity
        .iter()
        .zip(remaining)
        .map(|(&i, &e)| {
            let denom = (T::one() - x) + x * e;
            let r = if denom > T::zero() { x * i / denom } else { T::infinity() };
            if r > cap {
                clipped = true;
                cap
            } else {
                r
            }
        })
        .collect();
    (rates, clipped)
}

/// Rotating-frame output field of a stored population `p0` under `profile`.
pub fn output_envelope<T: Real>(
    profile: &DecayProfile<T>,
    p0: T,
    cfg: &MemoryConfig<T>,
) -> Result<ComplexEnvelope<T>> {
    let scale = (T::lit(2.0) * p0.max(T::zero()) / cfg.gamma_p).sqrt();
    let i = Complex::new(T::zero(), T::one());
    let samples = profile
        .rate()
        .iter()
        .zip(profile.integrated_rate())
        .map(|(&g, &big)| i * g * (-big).exp() * scale)
        .collect();
    ComplexEnvelope::new(*profile.grid(), samples)
}

/// `1 - exp(-Γᶻ_r(t_r))`.
pub fn read_efficiency<T: Real>(profile: &DecayProfile<T>) -> T {
    -(-profile.total_decay()).exp_m1()
}

/// `η_w η_r`; `r` must have been built from `P0 = w.eta_w`.
pub fn total_efficiency<T: Real>(w: &WriteResult<T>, r: &ReadResult<T>) -> Result<T> {
    if (w.eta_w - r.p0).abs() > T::lit(P0_TOLERANCE) {
        return Err(Error::InconsistentP0 {
            p0: r.p0.to_f64_lossy(),
            eta_w: w.eta_w.to_f64_lossy(),
        });
    }
    Ok(w.eta_w * r.eta_r)
}

/// `|raw|` with the phase of `target`; where the target vanishes the last
/// defined phase is held.
fn restore_phase<T: Real>(raw: &ComplexEnvelope<T>, target: &ComplexEnvelope<T>) -> Result<ComplexEnvelope<T>> {
    let floor = target.intensity().iter().cloned().fold(T::zero(), T::max) * T::lit(1e-24);
    let first = target
        .samples()
        .iter()
        .find(|z| z.norm_sqr() > floor)
        .map(|z| z.arg())
        .unwrap_or_else(T::zero);
    let mut phase = first;
    let samples = raw
        .samples()
        .iter()
        .zip(target.samples())
        .map(|(r, z)| {
            if z.norm_sqr() > floor {
                phase = z.arg();
            }
            Complex::from_polar(r.norm(), phase)
        })
        .collect();
    ComplexEnvelope::new(*raw.grid(), samples)
}

fn carrier_phase<T: Real>(cfg: &MemoryConfig<T>, delay: Option<T>) -> T {
    let half_tau = cfg.tau * T::lit(0.5);
    let delay = delay.unwrap_or(half_tau);
    let phase = cfg.omega_a * (delay - half_tau);
    let tau = T::TAU();
    let wrapped = phase % tau;
    if wrapped < T::zero() {
        wrapped + tau
    } else {
        wrapped
    }
}

/// Read profile that re-emits `p0` into the shape of `target`.
pub fn read_profile_for_target<T: Real>(
    target: &ComplexEnvelope<T>,
    p0: T,
    cfg: &MemoryConfig<T>,
    opts: &ReadOptions<T>,
) -> Result<ReadResult<T>> {
    cfg.require_lossless("read shaping with gamma' > 0")?;
    if !(p0 > T::zero() && p0 <= T::one() + T::lit(1e-12)) {
        return Err(Error::InvalidConfig {
            field: "p0",
            reason: format!("stored population must lie in (0, 1], got {p0}"),
        });
    }
    let target = target.normalized()?;
    let grid = *target.grid();
    let intensity = target.intensity();
    let reversed: Vec<T> = intensity.iter().rev().cloned().collect();
    let mut remaining = cumtrapz(&reversed, &grid)?;
    remaining.reverse();
    let cap = cfg.cap;

    let clipped = |x: T| candidate_rates(&intensity, &remaining, x, cap).1;
    let achieved = |x: T| -> Result<T> {
        let (rates, _) = candidate_rates(&intensity, &remaining, x, cap);
        let profile = DecayProfile::from_rate_z(grid, rates, cfg)?;
        Ok(read_efficiency(&profile))
    };
    let outcome = best_candidate(clipped, achieved)?;

    let (rates, capped) = candidate_rates(&intensity, &remaining, outcome.candidate, cap);
    let profile = DecayProfile::from_rate_z(grid, rates, cfg)?;
    let xi_out_raw = output_envelope(&profile, p0, cfg)?;
    let xi_out = if opts.phase_compensation {
        restore_phase(&xi_out_raw, &target)?
    } else {
        xi_out_raw.clone()
    };
    let emitted = cumsimpson(&xi_out_raw.intensity(), &grid)?;
    let eta_r = emitted[emitted.len() - 1] / p0;
    let fidelity_vs_target = fidelity(&xi_out, &target)?;
    Ok(ReadResult {
        profile,
        eta_r,
        xi_out,
        xi_out_raw,
        fidelity_vs_target,
        capped,
        p0,
        iterations: outcome.evaluations,
        target_efficiency: outcome.candidate,
        carrier_phase: carrier_phase(cfg, opts.observation_delay),
    })
}
