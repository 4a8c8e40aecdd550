//! Sampled complex temporal envelopes.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::grid::TimeGrid;
use crate::quadrature::{cumtrapz, trapz_uniform};
use crate::scalar::Real;

/// Tolerance on `|∫|ξ|² dt - 1|` for an envelope to count as normalized.
pub const NORMALIZATION_TOL: f64 = 1e-9;

/// Complex amplitude `ξ(t)` sampled on a [`TimeGrid`], in units of `gamma0^{1/2}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexEnvelope<T> {
    grid: TimeGrid<T>,
    samples: Vec<Complex<T>>,
}

impl<T: Real> ComplexEnvelope<T> {
    pub fn new(grid: TimeGrid<T>, samples: Vec<Complex<T>>) -> Result<Self> {
        grid.ensure_len(samples.len())?;
        if let Some(index) = samples.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFinite { index });
        }
        Ok(ComplexEnvelope { grid, samples })
    }

    pub fn zeros(grid: TimeGrid<T>) -> Self {
        ComplexEnvelope {
            samples: vec![Complex::new(T::zero(), T::zero()); grid.len()],
            grid,
        }
    }

    pub fn from_fn(grid: TimeGrid<T>, f: impl Fn(T) -> Complex<T>) -> Result<Self> {
        let samples = grid.times().map(f).collect();
        Self::new(grid, samples)
    }

    pub fn grid(&self) -> &TimeGrid<T> {
        &self.grid
    }

    pub fn samples(&self) -> &[Complex<T>] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<Complex<T>> {
        self.samples
    }

    /// `|ξ(t)|²` per sample.
    pub fn intensity(&self) -> Vec<T> {
        self.samples.iter().map(|z| z.norm_sqr()).collect()
    }

    /// `|ξ(t)|` per sample.
    pub fn magnitude(&self) -> Vec<T> {
        self.samples.iter().map(|z| z.norm()).collect()
    }

    /// Running `∫|ξ|² dt` from the first sample.
    pub fn cumulative_energy(&self) -> Vec<T> {
        cumtrapz(&self.intensity(), &self.grid).expect("length checked on construction")
    }

    pub fn squared_norm(&self) -> T {
        squared_norm(self)
    }

    pub fn is_normalized(&self) -> bool {
        (self.squared_norm() - T::one()).abs() < T::lit(NORMALIZATION_TOL).max(T::epsilon() * T::lit(1e3))
    }

    pub fn scaled(&self, c: Complex<T>) -> Self {
        ComplexEnvelope {
            grid: self.grid,
            samples: self.samples.iter().map(|&z| z * c).collect(),
        }
    }

    /// Copy rescaled to unit squared norm.
    pub fn normalized(&self) -> Result<Self> {
        let norm = self.squared_norm();
        if !(norm > T::zero()) {
            return Err(Error::ZeroNorm);
        }
        Ok(self.scaled(Complex::new(norm.sqrt().recip(), T::zero())))
    }

    /// Restriction to samples `start..end`.
    pub fn slice(&self, start: usize, end: usize) -> Result<Self> {
        let grid = self.grid.slice(start, end)?;
        Ok(ComplexEnvelope {
            grid,
            samples: self.samples[start..end].to_vec(),
        })
    }

    /// Sample range `start..end` where `|ξ|²` exceeds `rel` times its peak.
    pub fn support(&self, rel: T) -> Option<(usize, usize)> {
        let intensity = self.intensity();
        let peak = intensity.iter().copied().fold(T::zero(), T::max);
        if !(peak > T::zero()) {
            return None;
        }
        let thresh = peak * rel;
        let first = intensity.iter().position(|&v| v > thresh)?;
        let last = intensity.iter().rposition(|&v| v > thresh)?;
        Some((first, last + 1))
    }
}

/// `∫|ξ(t)|² dt` by the trapezoid rule.
pub fn squared_norm<T: Real>(env: &ComplexEnvelope<T>) -> T {
    trapz_uniform(&env.intensity(), env.grid.dt())
}
