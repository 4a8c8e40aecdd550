//! Time-dependent decay rates and the excited-state population they produce.
//!
//! Two independent routes compute the population during absorption:
//!
//! * [`absorption_probability`] evaluates the closed form
//!   `a(t) = ∫ e^{-(Γ(t) - Γ(t'))} g(t') ξ(t') dt'`, `P = |a|²`, stepwise with
//!   Simpson's rule, the exponentials factored per step so no factor exceeds 1.
//! * [`bloch_ode_oracle`] integrates the three-component Bloch system for
//!   `(⟨σz⟩, ⟨σ+⟩, ⟨σ-⟩)` with classical RK4.

use num_complex::Complex;

use crate::config::MemoryConfig;
use crate::envelope::ComplexEnvelope;
use crate::error::{Error, Result};
use crate::grid::TimeGrid;
use crate::mirror::MirrorTrajectory;
use crate::quadrature::{cumsimpson_with, midpoint};
use crate::scalar::Real;

/// Threshold below which a decay rate counts as "atom at a node".
pub const HOLD_THRESHOLD: f64 = 1e-12;

/// Sampled complex rate `γ(t)`, real rate `γᶻ = 2 Re γ`, their running
/// integrals, and the pulse coupling `g(t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DecayProfile<T> {
    grid: TimeGrid<T>,
    rate: Vec<Complex<T>>,
    rate_z: Vec<T>,
    integrated_rate: Vec<Complex<T>>,
    integrated_rate_z: Vec<T>,
    coupling: Vec<T>,
    gamma_prime: T,
}

impl<T: Real> DecayProfile<T> {
    /// Profile from complex rates; `g = sqrt(γᶻ - γ')`.
    pub fn from_complex_rates(grid: TimeGrid<T>, rate: Vec<Complex<T>>, gamma_prime: T) -> Result<Self> {
        grid.ensure_len(rate.len())?;
        if let Some(index) = rate.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFinite { index });
        }
        let two = T::lit(2.0);
        let rate_z: Vec<T> = rate.iter().map(|z| two * z.re).collect();
        let tol = T::lit(1e-9);
        if let Some(index) = rate_z.iter().position(|&gz| gz < gamma_prime - tol) {
            return Err(Error::RateOutOfRange {
                index,
                value: rate_z[index].to_f64_lossy(),
                min: gamma_prime.to_f64_lossy(),
                max: f64::INFINITY,
            });
        }
        let coupling: Vec<T> = rate_z.iter().map(|&gz| (gz - gamma_prime).max(T::zero()).sqrt()).collect();
        let integrated_rate = cumsimpson_with(&rate, grid.dt(), |k| profile_midpoint(&rate, &coupling, k).0);
        let integrated_rate_z = integrated_rate.iter().map(|z| two * z.re).collect();
        Ok(DecayProfile {
            grid,
            rate,
            rate_z,
            integrated_rate,
            integrated_rate_z,
            coupling,
            gamma_prime,
        })
    }

    /// Profile from real rates `γᶻ`, attaching the level shift of the mirror
    /// branch `l/λ ∈ [0, 1/4]`: `Im γ = ½ sqrt(u (2γ_p - u))`, `u = γᶻ - γ'`.
    pub fn from_rate_z(grid: TimeGrid<T>, rate_z: Vec<T>, cfg: &MemoryConfig<T>) -> Result<Self> {
        grid.ensure_len(rate_z.len())?;
        let tol = T::lit(1e-9);
        let max = cfg.max_rate();
        let half = T::lit(0.5);
        let rate = rate_z
            .iter()
            .enumerate()
            .map(|(index, &gz)| {
                if !(gz >= cfg.gamma_prime - tol && gz <= max + tol) {
                    return Err(Error::RateOutOfRange {
                        index,
                        value: gz.to_f64_lossy(),
                        min: cfg.gamma_prime.to_f64_lossy(),
                        max: max.to_f64_lossy(),
                    });
                }
                let u = (gz - cfg.gamma_prime).max(T::zero()).min(T::lit(2.0) * cfg.gamma_p);
                let shift = half * (u * (T::lit(2.0) * cfg.gamma_p - u)).max(T::zero()).sqrt();
                Ok(Complex::new(half * gz, shift))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_complex_rates(grid, rate, cfg.gamma_prime)
    }

    /// Atom held at a node over the whole grid.
    pub fn closed(grid: TimeGrid<T>, cfg: &MemoryConfig<T>) -> Result<Self> {
        Self::from_rate_z(grid, vec![cfg.gamma_prime; grid.len()], cfg)
    }

    pub fn grid(&self) -> &TimeGrid<T> {
        &self.grid
    }

    /// Complex `γ(t)`.
    pub fn rate(&self) -> &[Complex<T>] {
        &self.rate
    }

    /// Real `γᶻ(t)`.
    pub fn rate_z(&self) -> &[T] {
        &self.rate_z
    }

    /// `Γ(t) = ∫ γ dt'` from the grid start.
    pub fn integrated_rate(&self) -> &[Complex<T>] {
        &self.integrated_rate
    }

    /// `Γᶻ(t) = ∫ γᶻ dt'` from the grid start.
    pub fn integrated_rate_z(&self) -> &[T] {
        &self.integrated_rate_z
    }

    /// `g(t)`.
    pub fn coupling(&self) -> &[T] {
        &self.coupling
    }

    pub fn gamma_prime(&self) -> T {
        self.gamma_prime
    }

    /// `Γᶻ` at the last sample.
    pub fn total_decay(&self) -> T {
        *self.integrated_rate_z.last().expect("grid has at least two samples")
    }

    pub fn max_rate_z(&self) -> T {
        self.rate_z.iter().copied().fold(T::neg_infinity(), T::max)
    }
}

/// Excited-state population `P(t)` and the complex amplitude with `|a|² = P`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExcitationTrace<T> {
    grid: TimeGrid<T>,
    probability: Vec<T>,
    amplitude: Vec<Complex<T>>,
}

impl<T: Real> ExcitationTrace<T> {
    pub fn grid(&self) -> &TimeGrid<T> {
        &self.grid
    }

    pub fn probability(&self) -> &[T] {
        &self.probability
    }

    pub fn amplitude(&self) -> &[Complex<T>] {
        &self.amplitude
    }

    /// Population at the last sample.
    pub fn final_probability(&self) -> T {
        *self.probability.last().expect("non-empty trace")
    }
}

/// `γ(t) = γ'/2 + (γ_p/2)(1 - e^{iθ})`, `θ = ω_a(τ - 2l/c)`.
///
/// `ω_a τ` is a multiple of `2π` for every [`MemoryConfig`], so
/// `θ ≡ -4π l/λ` and `l = 0` is a node.
pub fn decay_from_mirror<T: Real>(traj: &MirrorTrajectory<T>, cfg: &MemoryConfig<T>) -> Result<DecayProfile<T>> {
    let half = T::lit(0.5);
    let four_pi = T::lit(4.0) * T::PI();
    let rate = traj
        .l_over_lambda()
        .iter()
        .map(|&l| {
            let theta = -four_pi * l;
            let e = Complex::new(theta.cos(), theta.sin());
            Complex::new(half * cfg.gamma_prime, T::zero())
                + (Complex::new(T::one(), T::zero()) - e) * (half * cfg.gamma_p)
        })
        .collect();
    DecayProfile::from_complex_rates(*traj.grid(), rate, cfg.gamma_prime)
}

/// Drive with its phase replaced by `-Im Γ(t)`, which makes every term of the
/// absorption integral real and positive.
pub fn compensated_drive<T: Real>(profile: &DecayProfile<T>, xi: &ComplexEnvelope<T>) -> Result<ComplexEnvelope<T>> {
    profile.grid().ensure_matches(xi.grid())?;
    let samples = xi
        .samples()
        .iter()
        .zip(profile.integrated_rate())
        .map(|(z, big)| Complex::from_polar(z.norm(), -big.im))
        .collect();
    ComplexEnvelope::new(*xi.grid(), samples)
}

/// Interpolated `(γ, g)` halfway through step `k`, clipped so that neither
/// `γᶻ` nor `g` overshoots below zero next to a switch-off.
fn profile_midpoint<T: Real>(rate: &[Complex<T>], coupling: &[T], k: usize) -> (Complex<T>, T) {
    let r: Complex<T> = midpoint::<T, _>(rate, k);
    let g: T = midpoint::<T, _>(coupling, k);
    (Complex::new(r.re.max(T::zero()), r.im), g.max(T::zero()))
}

/// Running amplitude `a_k`; `visit(k, a_k)` sees every sample.
///
/// Each step applies Simpson's rule to the drive term and to the exponent,
/// with mid-step values from cubic interpolation.
pub(crate) fn propagate_amplitude<T: Real>(
    rate: &[Complex<T>],
    coupling: &[T],
    drive: &[Complex<T>],
    dt: T,
    mut visit: impl FnMut(usize, Complex<T>),
) -> Complex<T> {
    let sixth = dt / T::lit(6.0);
    let half_twelfth = dt / T::lit(24.0);
    let four = T::lit(4.0);
    let mut amp = Complex::new(T::zero(), T::zero());
    visit(0, amp);
    for k in 1..rate.len() {
        let (rate_mid, coupling_mid) = profile_midpoint(rate, coupling, k - 1);
        let drive_mid: Complex<T> = midpoint::<T, _>(drive, k - 1);
        // Re of both exponents is ∫γᶻ/2 ≥ 0, so neither factor exceeds 1.
        let step = (rate[k - 1] + rate_mid * four + rate[k]) * sixth;
        let late_half = (rate_mid * T::lit(8.0) + rate[k] * T::lit(5.0) - rate[k - 1]) * half_twelfth;
        let decay = (-step).exp();
        let decay_half = (-late_half).exp();
        let source = drive[k - 1] * decay * coupling[k - 1]
            + drive_mid * decay_half * (coupling_mid * four)
            + drive[k] * coupling[k];
        amp = amp * decay + source * sixth;
        visit(k, amp);
    }
    amp
}

/// Population from the closed-form absorption integral.
pub fn absorption_probability<T: Real>(
    profile: &DecayProfile<T>,
    xi_in: &ComplexEnvelope<T>,
) -> Result<ExcitationTrace<T>> {
    profile.grid().ensure_matches(xi_in.grid())?;
    let n = profile.grid().len();
    let mut amplitude = Vec::with_capacity(n);
    propagate_amplitude(
        profile.rate(),
        profile.coupling(),
        xi_in.samples(),
        profile.grid().dt(),
        |_, a| amplitude.push(a),
    );
    let probability = amplitude.iter().map(|a| a.norm_sqr()).collect();
    Ok(ExcitationTrace {
        grid: *profile.grid(),
        probability,
        amplitude,
    })
}

#[derive(Clone, Copy)]
struct BlochState<T> {
    sz: T,
    sp: Complex<T>,
    sm: Complex<T>,
}

#[derive(Clone, Copy)]
struct Coefficients<T> {
    rate: Complex<T>,
    coupling: T,
    drive: Complex<T>,
}

impl<T: Real> BlochState<T> {
    fn axpy(self, h: T, d: BlochState<T>) -> Self {
        BlochState {
            sz: self.sz + d.sz * h,
            sp: self.sp + d.sp * h,
            sm: self.sm + d.sm * h,
        }
    }

    /// `ṡ = M s + b` with the single-photon drive folded into `M` and `b`.
    fn derivative(self, c: Coefficients<T>) -> Self {
        let two = T::lit(2.0);
        let gz = two * c.rate.re;
        let mixing = (c.drive * self.sp + c.drive.conj() * self.sm).re;
        BlochState {
            sz: -gz * self.sz - two * c.coupling * mixing - gz,
            sp: -c.rate.conj() * self.sp - c.drive.conj() * c.coupling,
            sm: -c.rate * self.sm - c.drive * c.coupling,
        }
    }
}

/// Population from RK4 integration of the Bloch system, starting in the
/// ground state `s = (-1, 0, 0)`.
///
/// Coefficients between samples come from cubic midpoint interpolation, so
/// the integrator is fourth order on smooth profiles.
pub fn bloch_ode_oracle<T: Real>(
    profile: &DecayProfile<T>,
    xi_in: &ComplexEnvelope<T>,
) -> Result<ExcitationTrace<T>> {
    profile.grid().ensure_matches(xi_in.grid())?;
    let grid = *profile.grid();
    let (rate, coupling, drive) = (profile.rate(), profile.coupling(), xi_in.samples());
    let at = |k: usize| Coefficients {
        rate: rate[k],
        coupling: coupling[k],
        drive: drive[k],
    };
    let dt = grid.dt();
    let half = T::lit(0.5);
    let sixth = T::lit(1.0 / 6.0);
    let limit = T::one() + T::lit(1e-6);

    let mut s = BlochState {
        sz: -T::one(),
        sp: Complex::new(T::zero(), T::zero()),
        sm: Complex::new(T::zero(), T::zero()),
    };
    let mut probability = Vec::with_capacity(grid.len());
    let mut amplitude = Vec::with_capacity(grid.len());
    probability.push(T::zero());
    amplitude.push(Complex::new(T::zero(), T::zero()));

    for k in 0..grid.len() - 1 {
        let (rate_mid, coupling_mid) = profile_midpoint(rate, coupling, k);
        let mid = Coefficients {
            rate: rate_mid,
            coupling: coupling_mid,
            drive: midpoint::<T, _>(drive, k),
        };
        let k1 = s.derivative(at(k));
        let k2 = s.axpy(dt * half, k1).derivative(mid);
        let k3 = s.axpy(dt * half, k2).derivative(mid);
        let k4 = s.axpy(dt, k3).derivative(at(k + 1));
        s = BlochState {
            sz: s.sz + (k1.sz + (k2.sz + k3.sz) * T::lit(2.0) + k4.sz) * dt * sixth,
            sp: s.sp + (k1.sp + (k2.sp + k3.sp) * T::lit(2.0) + k4.sp) * (dt * sixth),
            sm: s.sm + (k1.sm + (k2.sm + k3.sm) * T::lit(2.0) + k4.sm) * (dt * sixth),
        };
        if !(s.sz.abs() <= limit) {
            return Err(Error::OdeUnstable {
                index: k + 1,
                value: s.sz.abs().to_f64_lossy(),
            });
        }
        probability.push((T::one() + s.sz) * half);
        amplitude.push(-s.sm);
    }
    Ok(ExcitationTrace {
        grid,
        probability,
        amplitude,
    })
}

/// True when `γᶻ < 1e-12` on every sample in `[t_a, t_b]`.
pub fn hold<T: Real>(profile: &DecayProfile<T>, t_a: T, t_b: T) -> bool {
    let grid = profile.grid();
    let eps = T::lit(1e-9);
    let first = ((t_a - grid.t_start()) / grid.dt() - eps).ceil().max(T::zero());
    let last = ((t_b - grid.t_start()) / grid.dt() + eps).floor();
    if last < first {
        return true;
    }
    let first = first.to_usize().unwrap_or(0);
    let last = last.to_usize().unwrap_or(usize::MAX).min(grid.len() - 1);
    let thresh = T::lit(HOLD_THRESHOLD);
    profile.rate_z()[first..=last].iter().all(|&gz| gz < thresh)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use num_complex::Complex64;
    use proptest::prelude::*;

    use super::*;
    use crate::pulses::make_gaussian;

    fn cfg() -> MemoryConfig<f64> {
        MemoryConfig::default()
    }

    fn constant_mirror(l: f64) -> DecayProfile<f64> {
        let g = TimeGrid::<f64>::new(0.0, 1.0, 11).unwrap();
        decay_from_mirror(&MirrorTrajectory::new(g, vec![l; 11]).unwrap(), &cfg()).unwrap()
    }

    #[test]
    fn node_decouples() {
        let p = constant_mirror(0.0);
        assert!(p.rate().iter().all(|z| z.norm() == 0.0));
        assert!(p.coupling().iter().all(|&g| g == 0.0));
    }

    #[test]
    fn antinode_doubles_decay() {
        let p = constant_mirror(0.25);
        assert!(p.rate_z().iter().all(|&gz| gz == 2.0));
    }

    #[test]
    fn eighth_wave_level_shift() {
        // θ = -π/2: γ = (1 - e^{-iπ/2})/2 = (1 + i)/2
        let p = constant_mirror(0.125);
        for z in p.rate() {
            assert!((z.re - 0.5).abs() < 1e-15);
            assert!((z.im - 0.5).abs() < 1e-15);
        }
        assert!(p.rate_z().iter().all(|&gz| (gz - 1.0).abs() < 1e-15));
    }

    #[test]
    fn rate_z_profile_uses_mirror_branch() {
        let g = TimeGrid::<f64>::new(0.0, 1.0, 3).unwrap();
        let p = DecayProfile::from_rate_z(g, vec![1.0, 2.0, 0.0], &cfg()).unwrap();
        assert!((p.rate()[0] - Complex64::new(0.5, 0.5)).norm() < 1e-15);
        assert!((p.rate()[1] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert_eq!(p.rate()[2], Complex64::new(0.0, 0.0));
        assert!(DecayProfile::from_rate_z(g, vec![0.0, 2.5, 0.0], &cfg()).is_err());
        assert!(DecayProfile::from_rate_z(g, vec![0.0, -0.1, 0.0], &cfg()).is_err());
    }

    #[test]
    fn coupling_squares_to_rate() {
        let g = TimeGrid::<f64>::new(0.0, 1.0, 50).unwrap();
        let p = DecayProfile::from_rate_z(g, g.times().map(|t| 2.0 * t * t).collect(), &cfg()).unwrap();
        for (c, gz) in p.coupling().iter().zip(p.rate_z()) {
            assert!((c * c - gz).abs() < 1e-12);
        }
        assert!(p.integrated_rate_z().windows(2).all(|w| w[1] >= w[0]));
    }

    #[test]
    fn no_drive_no_excitation() {
        let g = TimeGrid::<f64>::new(0.0, 5.0, 201).unwrap();
        let p = DecayProfile::from_rate_z(g, vec![1.3; 201], &cfg()).unwrap();
        let xi = ComplexEnvelope::zeros(g);
        assert!(absorption_probability(&p, &xi).unwrap().probability().iter().all(|&v| v == 0.0));
        assert!(bloch_ode_oracle(&p, &xi).unwrap().probability().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn time_reversed_exponential_is_fully_absorbed() {
        // γᶻ = 2, ξ = sqrt(2) e^{t - t0} on [t0 - 10, t0]: a(t0) = 1 - e^{-20} exactly.
        let t0 = 10.0;
        let g = TimeGrid::<f64>::new(0.0, t0, 40001).unwrap();
        let p = DecayProfile::from_complex_rates(g, vec![Complex64::new(1.0, 0.0); g.len()], 0.0).unwrap();
        let xi = ComplexEnvelope::from_fn(g, |t| Complex64::new(2f64.sqrt() * (t - t0).exp(), 0.0)).unwrap();
        let expected = 1.0 - (-20f64).exp();
        let quad = absorption_probability(&p, &xi).unwrap().final_probability();
        let ode = bloch_ode_oracle(&p, &xi).unwrap().final_probability();
        assert!((quad - expected).abs() < 1e-6, "{quad}");
        assert!((ode - expected).abs() < 1e-6, "{ode}");
    }

    #[test]
    fn closed_memory_holds_population() {
        let g = TimeGrid::<f64>::new(-5.0, 25.0, 3001).unwrap();
        let k_off = 1200;
        let rate_z: Vec<f64> = (0..g.len()).map(|k| if k < k_off { 1.0 } else { 0.0 }).collect();
        let p = DecayProfile::from_rate_z(g, rate_z, &cfg()).unwrap();
        let xi = make_gaussian(5.0, 1.0, g).unwrap();
        for trace in [absorption_probability(&p, &xi).unwrap(), bloch_ode_oracle(&p, &xi).unwrap()] {
            let stored = trace.probability()[k_off];
            assert!(stored > 0.1);
            for &v in &trace.probability()[k_off..] {
                assert!((v - stored).abs() < 1e-9);
            }
        }
        assert!(hold(&p, 7.0, 25.0));
        assert!(!hold(&p, 6.0, 25.0));
    }

    #[test]
    fn free_decay_is_monotone() {
        // Start excited by driving, then cut the drive; population can only fall.
        let g = TimeGrid::<f64>::new(0.0, 10.0, 1001).unwrap();
        let p = DecayProfile::from_rate_z(g, g.times().map(|t| 1.0 + 0.5 * (t).sin()).collect(), &cfg()).unwrap();
        let xi = ComplexEnvelope::from_fn(g, |t| Complex64::new(if t < 3.0 { 0.5 } else { 0.0 }, 0.0)).unwrap();
        let trace = absorption_probability(&p, &xi).unwrap();
        let k3 = g.nearest_index(3.0) + 1;
        assert!(trace.probability()[k3..].windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn oracle_matches_quadrature_for_smooth_pair() {
        let g = TimeGrid::<f64>::new(0.0, 20.0, 4001).unwrap();
        let p = DecayProfile::from_rate_z(g, g.times().map(|t| 1.0 + 0.8 * (0.7 * t).sin()).collect(), &cfg()).unwrap();
        let xi = make_gaussian(10.0, 0.6, g)
            .unwrap()
            .scaled(Complex64::from_polar(1.0, 0.3));
        let a = absorption_probability(&p, &xi).unwrap();
        let b = bloch_ode_oracle(&p, &xi).unwrap();
        let worst = a
            .probability()
            .iter()
            .zip(b.probability())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
        assert!(worst < 1e-6, "{worst}");
        for (x, y) in a.amplitude().iter().zip(b.amplitude()) {
            assert!((x - y).norm() < 1e-6);
        }
    }

    #[test]
    fn compensation_aligns_phases() {
        let g = TimeGrid::<f64>::new(-5.0, 25.0, 3001).unwrap();
        let p = DecayProfile::from_rate_z(g, vec![0.7; g.len()], &cfg()).unwrap();
        let xi = make_gaussian(10.0, 0.5, g).unwrap();
        let raw = absorption_probability(&p, &xi).unwrap().final_probability();
        let comp = absorption_probability(&p, &compensated_drive(&p, &xi).unwrap()).unwrap().final_probability();
        assert!(comp > raw);
    }

    #[test]
    fn grid_mismatch_rejected() {
        let g = TimeGrid::<f64>::new(0.0, 1.0, 11).unwrap();
        let p = DecayProfile::closed(g, &cfg()).unwrap();
        let xi = ComplexEnvelope::zeros(TimeGrid::<f64>::new(0.0, 1.0, 12).unwrap());
        assert!(matches!(absorption_probability(&p, &xi), Err(Error::GridMismatch)));
        assert!(matches!(bloch_ode_oracle(&p, &xi), Err(Error::GridMismatch)));
    }

    #[test]
    fn unstable_step_detected() {
        // dt * γ far outside the RK4 stability region.
        let g = TimeGrid::<f64>::new(0.0, 10.0, 3).unwrap();
        let p = DecayProfile::from_complex_rates(g, vec![Complex64::new(1.0, 0.0); 3], 0.0).unwrap();
        let xi = ComplexEnvelope::from_fn(g, |_| Complex64::new(1.0, 0.0)).unwrap();
        assert!(matches!(bloch_ode_oracle(&p, &xi), Err(Error::OdeUnstable { .. })));
    }

    #[test]
    fn large_accumulated_decay_does_not_overflow() {
        let g = TimeGrid::<f64>::new(0.0, 1000.0, 20001).unwrap();
        let p = DecayProfile::from_rate_z(g, vec![2.0; g.len()], &cfg()).unwrap();
        assert!(p.total_decay() > 1900.0);
        let xi = make_gaussian(990.0, 1.0, g).unwrap();
        let trace = absorption_probability(&p, &xi).unwrap();
        assert!(trace.probability().iter().all(|v| v.is_finite() && *v <= 1.0));
    }

    proptest! {
        #[test]
        fn global_phase_leaves_population_unchanged(phase in -PI..PI, level in 0.1f64..2.0) {
            let g = TimeGrid::<f64>::new(0.0, 12.0, 601).unwrap();
            let p = DecayProfile::from_rate_z(g, vec![level; g.len()], &cfg()).unwrap();
            let xi = make_gaussian(6.0, 1.0, g).unwrap();
            let a = absorption_probability(&p, &xi).unwrap();
            let b = absorption_probability(&p, &xi.scaled(Complex64::from_polar(1.0, phase))).unwrap();
            for (x, y) in a.probability().iter().zip(b.probability()) {
                prop_assert!((x - y).abs() < 1e-13);
            }
        }
    }
}
