//! Optimal write (absorption) profiles.
//!
//! For a normalized input `ξ_in` and candidate efficiency `x`, the
//! Lagrange-optimal rate is
//!
//! ```text
//! γᶻ_w(t) = min( x |ξ_in(t)|² / [(1 - x) + x ∫_{t_w}^{t} |ξ_in|² dt'], cap )
//! ```
//!
//! which absorbs exactly `x = 1 - exp(-Γᶻ_w(t_w⁰))` when it never reaches
//! the cap.

use num_complex::Complex;

use crate::config::MemoryConfig;
use crate::dynamics::{absorption_probability, compensated_drive, propagate_amplitude, DecayProfile, ExcitationTrace};
use crate::envelope::ComplexEnvelope;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::search::best_candidate;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WriteOptions {
    /// Replace the input phase by `-Im Γ_w(t)` before absorption.
    pub phase_compensation: bool,
}

impl Default for WriteOptions {
    fn default() -> Self {
        WriteOptions {
            phase_compensation: true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct WriteResult<T> {
    pub profile: DecayProfile<T>,
    /// Achieved `P(t_w⁰)`.
    pub eta_w: T,
    pub trace: ExcitationTrace<T>,
    /// The rate ceiling was reached somewhere.
    pub capped: bool,
    pub iterations: usize,
    /// Candidate efficiency `x` that produced `profile`.
    pub target_efficiency: T,
    /// Envelope that actually drove the atom.
    pub drive: ComplexEnvelope<T>,
}

/// Clipped Lagrange profile for candidate `x`; second value reports clipping.
fn candidate_rates<T: Real>(intensity: &[T], energy: &[T], x: T, cap: T) -> (Vec<T>, bool) {
    let mut clipped = false;
    let rates = intensity
        .iter()
        .zip(energy)
        .map(|(&i, &e)| {
            let r = x * i / ((T::one() - x) + x * e);
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

fn drive_for<T: Real>(
    profile: &DecayProfile<T>,
    xi_in: &ComplexEnvelope<T>,
    opts: &WriteOptions,
) -> Result<ComplexEnvelope<T>> {
    if opts.phase_compensation {
        compensated_drive(profile, xi_in)
    } else {
        Ok(xi_in.clone())
    }
}

/// Best write profile for `xi_in` under the rate ceiling `cfg.cap`.
pub fn optimal_write_profile<T: Real>(
    xi_in: &ComplexEnvelope<T>,
    cfg: &MemoryConfig<T>,
    opts: &WriteOptions,
) -> Result<WriteResult<T>> {
    cfg.require_lossless("write optimization with gamma' > 0")?;
    if !xi_in.is_normalized() {
        return Err(Error::NotNormalized {
            norm: xi_in.squared_norm().to_f64_lossy(),
        });
    }
    let grid = *xi_in.grid();
    let intensity = xi_in.intensity();
    let energy = xi_in.cumulative_energy();
    let cap = cfg.cap;

    let clipped = |x: T| {
        intensity
            .iter()
            .zip(&energy)
            .any(|(&i, &e)| x * i / ((T::one() - x) + x * e) > cap)
    };
    let achieved = |x: T| -> Result<T> {
        let (rates, _) = candidate_rates(&intensity, &energy, x, cap);
        let profile = DecayProfile::from_rate_z(grid, rates, cfg)?;
        let drive = drive_for(&profile, xi_in, opts)?;
        let amp = propagate_amplitude(profile.rate(), profile.coupling(), drive.samples(), grid.dt(), |_, _| {});
        Ok(amp.norm_sqr())
    };
    let outcome = best_candidate(clipped, achieved)?;

    let (rates, capped) = candidate_rates(&intensity, &energy, outcome.candidate, cap);
    let profile = DecayProfile::from_rate_z(grid, rates, cfg)?;
    let drive = drive_for(&profile, xi_in, opts)?;
    let trace = absorption_probability(&profile, &drive)?;
    Ok(WriteResult {
        eta_w: trace.final_probability(),
        profile,
        trace,
        capped,
        iterations: outcome.evaluations,
        target_efficiency: outcome.candidate,
        drive,
    })
}

/// `1 - exp(-Γᶻ(t_w⁰))`; the achieved efficiency only for a matched,
/// unclipped profile, an upper bound otherwise.
pub fn write_efficiency<T: Real>(profile: &DecayProfile<T>) -> T {
    -(-profile.total_decay()).exp_m1()
}

/// Input envelope that `profile` absorbs optimally:
/// `|ξ_in(t)| ∝ g(t) exp(-(Γᶻ(t_w⁰) - Γᶻ(t))/2)` with phase `-Im Γ(t)`,
/// normalized to unit squared norm.
pub fn optimal_input_for_profile<T: Real>(profile: &DecayProfile<T>, eta_w: T) -> Result<ComplexEnvelope<T>> {
    let max = write_efficiency(profile);
    if !(eta_w > T::zero() && eta_w <= max + T::lit(1e-12)) {
        return Err(Error::InadmissibleEfficiency {
            eta: eta_w.to_f64_lossy(),
            max: max.to_f64_lossy(),
        });
    }
    let total = profile.total_decay();
    let scale = eta_w.sqrt().recip();
    let half = T::lit(0.5);
    let samples = profile
        .coupling()
        .iter()
        .zip(profile.integrated_rate_z())
        .zip(profile.integrated_rate())
        .map(|((&g, &big_z), big)| {
            Complex::from_polar(scale * g * (-(total - big_z) * half).exp(), -big.im)
        })
        .collect();
    ComplexEnvelope::new(*profile.grid(), samples)?.normalized()
}
