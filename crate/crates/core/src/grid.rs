//! Uniform time grids.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Uniformly spaced sample times `t_start + k * dt`, `k = 0..n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid<T> {
    t_start: T,
    dt: T,
    n: usize,
}

impl<T: Real> TimeGrid<T> {
    /// Grid with `n` samples covering `[t_start, t_end]` inclusive.
    pub fn new(t_start: T, t_end: T, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidGrid(format!("need at least 2 samples, got {n}")));
        }
        if !(t_start.is_finite() && t_end.is_finite()) || t_end <= t_start {
            return Err(Error::InvalidGrid(format!(
                "t_end ({t_end}) must exceed t_start ({t_start})"
            )));
        }
        let dt = (t_end - t_start) / T::from_usize(n - 1).unwrap();
        Ok(TimeGrid { t_start, dt, n })
    }

    /// Grid with a prescribed step.
    pub fn with_step(t_start: T, dt: T, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidGrid(format!("need at least 2 samples, got {n}")));
        }
        if !(dt.is_finite() && dt > T::zero() && t_start.is_finite()) {
            return Err(Error::InvalidGrid(format!("step must be positive, got {dt}")));
        }
        Ok(TimeGrid { t_start, dt, n })
    }

    pub fn t_start(&self) -> T {
        self.t_start
    }

    pub fn t_end(&self) -> T {
        self.time(self.n - 1)
    }

    pub fn dt(&self) -> T {
        self.dt
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn time(&self, k: usize) -> T {
        self.t_start + self.dt * T::from_usize(k).unwrap()
    }

    pub fn times(&self) -> impl Iterator<Item = T> + '_ {
        (0..self.n).map(move |k| self.time(k))
    }

    /// Index of the sample nearest to `t`, clamped to the grid.
    pub fn nearest_index(&self, t: T) -> usize {
        let x = ((t - self.t_start) / self.dt).round();
        if x <= T::zero() {
            0
        } else {
            x.to_usize().unwrap_or(usize::MAX).min(self.n - 1)
        }
    }

    /// Sub-grid over samples `start..end` (exclusive end).
    pub fn slice(&self, start: usize, end: usize) -> Result<Self> {
        if end > self.n || end < start + 2 {
            return Err(Error::InvalidGrid(format!(
                "slice {start}..{end} invalid for grid of {} samples",
                self.n
            )));
        }
        Ok(TimeGrid {
            t_start: self.time(start),
            dt: self.dt,
            n: end - start,
        })
    }

    /// Same sample count and spacing, start times equal to a fraction of a step.
    pub fn matches(&self, other: &Self) -> bool {
        let tol = T::lit(1e-9) * self.dt;
        self.n == other.n
            && (self.dt - other.dt).abs() <= tol
            && (self.t_start - other.t_start).abs() <= tol
    }

    pub(crate) fn ensure_matches(&self, other: &Self) -> Result<()> {
        if self.matches(other) {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }

    pub(crate) fn ensure_len(&self, len: usize) -> Result<()> {
        if len == self.n {
            Ok(())
        } else {
            Err(Error::LengthMismatch {
                expected: self.n,
                found: len,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spacing_and_endpoints() {
        let g = TimeGrid::<f64>::new(0.0, 1.0, 101).unwrap();
        assert!((g.dt() - 0.01).abs() < 1e-15);
        assert!((g.t_end() - 1.0).abs() < 1e-12);
        assert_eq!(g.nearest_index(0.504), 50);
        assert_eq!(g.nearest_index(-3.0), 0);
        assert_eq!(g.nearest_index(7.0), 100);
    }

    #[test]
    fn rejects_degenerate() {
        assert!(TimeGrid::<f64>::new(0.0, 1.0, 1).is_err());
        assert!(TimeGrid::<f64>::new(1.0, 1.0, 10).is_err());
        assert!(TimeGrid::<f64>::with_step(0.0, -0.1, 10).is_err());
    }

    #[test]
    fn slices_keep_spacing() {
        let g = TimeGrid::<f64>::with_step(-2.0, 0.25, 17).unwrap();
        let s = g.slice(4, 9).unwrap();
        assert_eq!(s.len(), 5);
        assert_eq!(s.t_start(), -1.0);
        assert_eq!(s.dt(), 0.25);
        assert!(g.slice(10, 11).is_err());
    }
}
