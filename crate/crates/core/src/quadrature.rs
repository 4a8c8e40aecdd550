//! Composite trapezoid and Simpson quadrature and midpoint interpolation on
//! uniform grids.
//!
//! Works for any value type that forms a vector space over the grid scalar,
//! which covers both real rate series and complex envelopes.

use std::ops::{Add, Mul, Sub};

use num_traits::Zero;

use crate::error::Result;
use crate::grid::TimeGrid;
use crate::scalar::Real;

/// Running trapezoid integral of `values` over `grid`; entry 0 is exactly zero.
pub fn cumtrapz<T, V>(values: &[V], grid: &TimeGrid<T>) -> Result<Vec<V>>
where
    T: Real,
    V: Copy + Zero + Add<Output = V> + Mul<T, Output = V>,
{
    grid.ensure_len(values.len())?;
    let half = grid.dt() * T::lit(0.5);
    let mut out = Vec::with_capacity(values.len());
    let mut acc = V::zero();
    out.push(acc);
    for w in values.windows(2) {
        acc = acc + (w[0] + w[1]) * half;
        out.push(acc);
    }
    Ok(out)
}

/// Running integral with Simpson's rule on every step, the mid-step value
/// taken from [`midpoint`]; entry 0 is exactly zero.
pub fn cumsimpson<T, V>(values: &[V], grid: &TimeGrid<T>) -> Result<Vec<V>>
where
    T: Real,
    V: Copy + Zero + Add<Output = V> + Sub<Output = V> + Mul<T, Output = V>,
{
    grid.ensure_len(values.len())?;
    Ok(cumsimpson_with(values, grid.dt(), |k| midpoint::<T, V>(values, k)))
}

/// [`cumsimpson`] with caller-supplied mid-step values.
pub(crate) fn cumsimpson_with<T, V>(values: &[V], dt: T, mid: impl Fn(usize) -> V) -> Vec<V>
where
    T: Real,
    V: Copy + Zero + Add<Output = V> + Mul<T, Output = V>,
{
    let sixth = dt / T::lit(6.0);
    let mut out = Vec::with_capacity(values.len());
    let mut acc = V::zero();
    out.push(acc);
    for k in 1..values.len() {
        acc = acc + (values[k - 1] + mid(k - 1) * T::lit(4.0) + values[k]) * sixth;
        out.push(acc);
    }
    out
}

/// Trapezoid integral over the whole grid.
pub fn trapz<T, V>(values: &[V], grid: &TimeGrid<T>) -> Result<V>
where
    T: Real,
    V: Copy + Zero + Add<Output = V> + Mul<T, Output = V>,
{
    grid.ensure_len(values.len())?;
    Ok(trapz_uniform(values, grid.dt()))
}

pub(crate) fn trapz_uniform<T, V>(values: &[V], dt: T) -> V
where
    T: Real,
    V: Copy + Zero + Add<Output = V> + Mul<T, Output = V>,
{
    match values {
        [] | [_] => V::zero(),
        [first, inner @ .., last] => {
            let interior = inner.iter().fold(V::zero(), |acc, &v| acc + v);
            (interior + (*first + *last) * T::lit(0.5)) * dt
        }
    }
}

/// Value half-way between samples `k` and `k + 1`.
///
/// Four-point cubic Lagrange interpolation in the interior and three-point
/// quadratic on the first and last interval, so smooth series are reproduced
/// to fourth (third at the edges) order in the step.
pub fn midpoint<T, V>(values: &[V], k: usize) -> V
where
    T: Real,
    V: Copy + Add<Output = V> + Sub<Output = V> + Mul<T, Output = V>,
{
    let n = values.len();
    debug_assert!(k + 1 < n);
    if n < 3 {
        return (values[k] + values[k + 1]) * T::lit(0.5);
    }
    if k == 0 {
        let (a, b, c) = (values[0], values[1], values[2]);
        return (a * T::lit(3.0) + b * T::lit(6.0) - c) * T::lit(0.125);
    }
    if k + 2 >= n {
        let (a, b, c) = (values[k - 1], values[k], values[k + 1]);
        return (b * T::lit(6.0) + c * T::lit(3.0) - a) * T::lit(0.125);
    }
    let (a, b, c, d) = (values[k - 1], values[k], values[k + 1], values[k + 2]);
    ((b + c) * T::lit(9.0) - a - d) * T::lit(1.0 / 16.0)
}
