//! Candidate-efficiency search shared by the write and read optimizers.
//!
//! Both optimal profiles are one-parameter families `γᶻ(t; x)` in a
//! candidate efficiency `x`, clipped at the rate ceiling. Without clipping
//! the achieved efficiency equals `x`, so the best profile is the largest
//! admissible `x`. Once clipping engages the achieved efficiency falls below
//! `x` but keeps changing with it, so the search brackets the clipping onset
//! by bisection and then maximizes the achieved efficiency above it.

use crate::error::{Error, Result};
use crate::scalar::Real;

const MAX_ITERATIONS: usize = 200;

/// Largest candidate efficiency: `1 - 1e-9` (or a few ulps below 1 in `f32`).
pub fn max_candidate<T: Real>() -> T {
    T::one() - T::lit(1e-9).max(T::epsilon() * T::lit(16.0))
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct SearchOutcome<T> {
    pub candidate: T,
    #[allow(dead_code)]
    pub achieved: T,
    pub evaluations: usize,
}

/// `clipped(x)` must be monotone in `x`; `achieved(x)` evaluates a candidate.
pub(crate) fn best_candidate<T: Real>(
    clipped: impl Fn(T) -> bool,
    mut achieved: impl FnMut(T) -> Result<T>,
) -> Result<SearchOutcome<T>> {
    let top = max_candidate::<T>();
    if !clipped(top) {
        return Ok(SearchOutcome {
            candidate: top,
            achieved: achieved(top)?,
            evaluations: 1,
        });
    }

    // Clipping onset.
    let (mut lo, mut hi) = (T::zero(), top);
    let mut steps = 0;
    while hi - lo > T::lit(1e-13) && steps < MAX_ITERATIONS {
        let mid = (lo + hi) * T::lit(0.5);
        if clipped(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
        steps += 1;
    }

    // Golden-section on s = -ln(1 - x), which resolves x -> 1.
    let to_x = |s: T| -(-s).exp_m1();
    let (mut a, mut b) = (-(-lo).ln_1p(), -(-top).ln_1p());
    let mut evaluations = 0;
    let mut eval = |s: T, evaluations: &mut usize| -> Result<T> {
        *evaluations += 1;
        achieved(to_x(s))
    };
    let mut best = (to_x(a), eval(a, &mut evaluations)?);
    let fb = eval(b, &mut evaluations)?;
    if fb >= best.1 {
        best = (to_x(b), fb);
    }
    let ratio = T::lit(0.618_033_988_749_894_8);
    let mut c = b - (b - a) * ratio;
    let mut d = a + (b - a) * ratio;
    let mut fc = eval(c, &mut evaluations)?;
    let mut fd = eval(d, &mut evaluations)?;
    let tol = T::lit(1e-7);
    while b - a > tol * (T::one() + a.abs()) {
        if evaluations >= MAX_ITERATIONS {
            return Err(Error::NoFixedPoint {
                lo: to_x(a).to_f64_lossy(),
                hi: to_x(b).to_f64_lossy(),
                iterations: evaluations,
            });
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - (b - a) * ratio;
            fc = eval(c, &mut evaluations)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + (b - a) * ratio;
            fd = eval(d, &mut evaluations)?;
        }
        for (s, f) in [(c, fc), (d, fd)] {
            if f > best.1 {
                best = (to_x(s), f);
            }
        }
    }
    Ok(SearchOutcome {
        candidate: best.0,
        achieved: best.1,
        evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unclipped_family_takes_top_candidate() {
        let out = best_candidate(|_| false, |x: f64| Ok(x)).unwrap();
        assert_eq!(out.candidate, max_candidate::<f64>());
        assert_eq!(out.evaluations, 1);
    }

    #[test]
    fn finds_interior_maximum_above_onset() {
        // clipped beyond 0.5; achieved peaks at x = 0.9
        let out = best_candidate(|x: f64| x > 0.5, |x| Ok(0.8 - (x - 0.9).powi(2))).unwrap();
        assert!((out.candidate - 0.9).abs() < 1e-5, "{}", out.candidate);
        assert!((out.achieved - 0.8).abs() < 1e-9);
    }

    #[test]
    fn monotone_achieved_runs_to_the_top() {
        let out = best_candidate(|x: f64| x > 0.3, |x| Ok(0.5 * x)).unwrap();
        assert!(out.candidate > 1.0 - 1e-6);
    }

    #[test]
    fn evaluation_errors_propagate() {
        let out = best_candidate(|x: f64| x > 0.3, |_| Err(Error::ZeroNorm));
        assert!(out.is_err());
    }
}
