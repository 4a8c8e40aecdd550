//! Single-photon pulse shapes, translation and overlap fidelity.

use num_complex::Complex;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::envelope::ComplexEnvelope;
use crate::error::{Error, Result};
use crate::quadrature::trapz_uniform;
use crate::scalar::Real;
use crate::grid::TimeGrid;

/// Gaussian time-bin qubit: two Gaussian bins of bandwidth `sigma` centred at
/// `t1` and `t2` with real amplitudes `alpha`, `beta` and relative phase `phi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeBinSpec<T> {
    pub alpha: T,
    pub beta: T,
    pub phi: T,
    pub t1: T,
    pub t2: T,
    pub sigma: T,
}

impl<T: Real> TimeBinSpec<T> {
    pub fn new(alpha: T, beta: T, phi: T, t1: T, t2: T, sigma: T) -> Result<Self> {
        let spec = TimeBinSpec {
            alpha,
            beta,
            phi,
            t1,
            t2,
            sigma,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Equal-weight bins `alpha = beta = 1/sqrt(2)`.
    pub fn balanced(phi: T, t1: T, t2: T, sigma: T) -> Result<Self> {
        let a = T::FRAC_1_SQRT_2();
        Self::new(a, a, phi, t1, t2, sigma)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |field, reason: String| Err(Error::InvalidConfig { field, reason });
        let weight = self.alpha * self.alpha + self.beta * self.beta;
        if !((weight - T::one()).abs() < T::lit(1e-9)) {
            return bad("alpha", format!("alpha^2 + beta^2 must equal 1, got {weight}"));
        }
        if !(self.sigma.is_finite() && self.sigma > T::zero()) {
            return bad("sigma", format!("must be positive, got {}", self.sigma));
        }
        if !(self.t2 > self.t1) {
            return bad("t2", format!("must exceed t1 = {}", self.t1));
        }
        if !self.phi.is_finite() {
            return bad("phi", "must be finite".into());
        }
        Ok(())
    }

    /// Smallest window `[t1 - 6/sigma, t2 + 6/sigma]` the pulse may be sampled on.
    pub fn required_window(&self) -> (T, T) {
        let pad = T::lit(6.0) / self.sigma;
        (self.t1 - pad, self.t2 + pad)
    }
}

/// Intensity FWHM associated with bandwidth `sigma`, `2 sqrt(2 ln 2) sigma`.
pub fn fwhm<T: Real>(sigma: T) -> T {
    T::lit(2.0) * (T::lit(2.0) * T::LN_2()).sqrt() * sigma
}

fn check_window<T: Real>(grid: &TimeGrid<T>, required: (T, T)) -> Result<()> {
    let slack = grid.dt() * T::lit(1e-6);
    if grid.t_start() > required.0 + slack || grid.t_end() < required.1 - slack {
        return Err(Error::WindowTooNarrow {
            start: grid.t_start().to_f64_lossy(),
            end: grid.t_end().to_f64_lossy(),
            required_start: required.0.to_f64_lossy(),
            required_end: required.1.to_f64_lossy(),
        });
    }
    Ok(())
}

fn gaussian_bin<T: Real>(t: T, centre: T, sigma: T) -> T {
    let x = (t - centre) * sigma;
    (-x * x * T::lit(0.5)).exp()
}

/// Samples the time-bin pulse and normalizes it numerically on `grid`.
pub fn make_time_bin<T: Real>(spec: &TimeBinSpec<T>, grid: TimeGrid<T>) -> Result<ComplexEnvelope<T>> {
    spec.validate()?;
    check_window(&grid, spec.required_window())?;
    let second = Complex::from_polar(spec.beta, spec.phi);
    ComplexEnvelope::from_fn(grid, |t| {
        Complex::new(spec.alpha * gaussian_bin(t, spec.t1, spec.sigma), T::zero())
            + second * gaussian_bin(t, spec.t2, spec.sigma)
    })?
    .normalized()
}

/// Single normalized Gaussian `∝ exp(-(t - centre)² sigma² / 2)`.
pub fn make_gaussian<T: Real>(centre: T, sigma: T, grid: TimeGrid<T>) -> Result<ComplexEnvelope<T>> {
    if !(sigma > T::zero()) {
        return Err(Error::InvalidConfig {
            field: "sigma",
            reason: format!("must be positive, got {sigma}"),
        });
    }
    let pad = T::lit(6.0) / sigma;
    check_window(&grid, (centre - pad, centre + pad))?;
    ComplexEnvelope::from_fn(grid, |t| Complex::new(gaussian_bin(t, centre, sigma), T::zero()))?
        .normalized()
}

/// Flat-top pulse of height `1/sqrt(duration)` on `[t_on, t_on + duration]`.
pub fn make_rectangular<T: Real>(t_on: T, duration: T, grid: TimeGrid<T>) -> Result<ComplexEnvelope<T>> {
    if !(duration > T::zero()) {
        return Err(Error::InvalidConfig {
            field: "duration",
            reason: format!("must be positive, got {duration}"),
        });
    }
    check_window(&grid, (t_on, t_on + duration))?;
    let height = duration.sqrt().recip();
    let eps = grid.dt() * T::lit(1e-9);
    ComplexEnvelope::from_fn(grid, |t| {
        if t >= t_on - eps && t <= t_on + duration + eps {
            Complex::new(height, T::zero())
        } else {
            Complex::new(T::zero(), T::zero())
        }
    })
}

/// Squared normalized overlap `|∫ a* b dt|² / (∫|a|² ∫|b|²)`.
pub fn fidelity<T: Real>(a: &ComplexEnvelope<T>, b: &ComplexEnvelope<T>) -> Result<T> {
    a.grid().ensure_matches(b.grid())?;
    let na = a.squared_norm();
    let nb = b.squared_norm();
    if !(na > T::zero() && nb > T::zero()) {
        return Err(Error::ZeroNorm);
    }
    let products: Vec<Complex<T>> = a
        .samples()
        .iter()
        .zip(b.samples())
        .map(|(x, y)| x.conj() * y)
        .collect();
    let overlap = trapz_uniform(&products, a.grid().dt());
    Ok((overlap.norm_sqr() / (na * nb)).min(T::one()))
}

/// Translates `env` later in time by `delay`, keeping its grid.
///
/// Whole-step delays move samples exactly; fractional delays use a
/// zero-padded band-limited (Fourier) shift.
pub fn shift<T: Real>(env: &ComplexEnvelope<T>, delay: T) -> Result<ComplexEnvelope<T>> {
    let grid = *env.grid();
    let steps = delay / grid.dt();
    let whole = steps.round();
    let total = env.squared_norm();
    let (samples, lost) = if (steps - whole).abs() < T::lit(1e-9) {
        shift_whole(env.samples(), whole.to_i64().unwrap_or(i64::MAX))
    } else {
        shift_fractional(env.samples(), steps)
    };
    let lost = lost * grid.dt();
    if total > T::zero() && lost > T::lit(1e-9) * total {
        return Err(Error::SupportClipped {
            lost: (lost / total).to_f64_lossy(),
        });
    }
    ComplexEnvelope::new(grid, samples)
}

fn shift_whole<T: Real>(src: &[Complex<T>], k: i64) -> (Vec<Complex<T>>, T) {
    let n = src.len() as i64;
    let zero = Complex::new(T::zero(), T::zero());
    let mut out = vec![zero; src.len()];
    let mut lost = T::zero();
    for (j, &z) in src.iter().enumerate() {
        let dest = j as i64 + k;
        if (0..n).contains(&dest) {
            out[dest as usize] = z;
        } else {
            lost = lost + z.norm_sqr();
        }
    }
    (out, lost)
}

fn shift_fractional<T: Real>(src: &[Complex<T>], steps: T) -> (Vec<Complex<T>>, T) {
    let n = src.len();
    let m = 2 * n;
    let mut buf = vec![Complex::new(T::zero(), T::zero()); m];
    buf[..n].copy_from_slice(src);
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(m).process(&mut buf);
    let mf = T::from_usize(m).unwrap();
    for (k, z) in buf.iter_mut().enumerate() {
        let freq = if k <= m / 2 {
            T::from_usize(k).unwrap()
        } else {
            -T::from_usize(m - k).unwrap()
        } / mf;
        *z = *z * Complex::from_polar(T::one(), -T::TAU() * freq * steps);
    }
    planner.plan_fft_inverse(m).process(&mut buf);
    let scale = mf.recip();
    let lost = buf[n..].iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()) * scale * scale;
    let out = buf[..n].iter().map(|&z| z * scale).collect();
    (out, lost)
}
