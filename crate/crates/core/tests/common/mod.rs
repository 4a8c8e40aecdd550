//! Test-only helpers shared by the integration targets.

#![allow(dead_code)]

use halfcav::quadrature::{cumsimpson, trapz};
use halfcav::{ComplexEnvelope, TimeGrid};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Rate levels `0, 0.125, …, 2`.
pub fn rate_levels() -> Vec<f64> {
    (0..17).map(|k| 0.125 * k as f64).collect()
}

/// `P(t_end)` for a flat pulse of height `1/sqrt(duration)` absorbed by a
/// piecewise-constant rate, phase compensated, from the exact solution of
/// `b' = -(γ/2) b + sqrt(γ) |ξ|` on each segment.
pub fn piecewise_absorption(levels: &[f64], duration: f64) -> f64 {
    let h = duration / levels.len() as f64;
    let xi = duration.sqrt().recip();
    let mut b = 0.0f64;
    for &g in levels {
        if g == 0.0 {
            continue;
        }
        let decay = (-0.5 * g * h).exp();
        b = b * decay + g.sqrt() * xi * (1.0 - decay) / (0.5 * g);
    }
    b * b
}

pub struct SearchResult {
    pub levels: Vec<f64>,
    pub probability: f64,
}

/// Seeded coordinate ascent over the discrete levels from random starts,
/// then continuous pattern search on the best candidate.
pub fn brute_force_rectangular(segments: usize, duration: f64, restarts: usize, seed: u64) -> SearchResult {
    let levels = rate_levels();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = SearchResult {
        levels: vec![0.0; segments],
        probability: 0.0,
    };
    for _ in 0..restarts {
        let mut x: Vec<f64> = (0..segments).map(|_| levels[rng.gen_range(0..levels.len())]).collect();
        let mut p = piecewise_absorption(&x, duration);
        loop {
            let mut improved = false;
            for s in 0..segments {
                for &l in &levels {
                    let keep = x[s];
                    x[s] = l;
                    let q = piecewise_absorption(&x, duration);
                    if q > p + 1e-15 {
                        p = q;
                        improved = true;
                    } else {
                        x[s] = keep;
                    }
                }
            }
            if !improved {
                break;
            }
        }
        if p > best.probability {
            best = SearchResult {
                levels: x,
                probability: p,
            };
        }
    }

    // Local refinement off the level lattice.
    let mut step = 0.0625;
    while step > 1e-7 {
        let mut improved = false;
        for s in 0..segments {
            for dir in [-1.0, 1.0] {
                let mut y = best.levels.clone();
                y[s] = (y[s] + dir * step).clamp(0.0, 2.0);
                let q = piecewise_absorption(&y, duration);
                if q > best.probability {
                    best = SearchResult {
                        levels: y,
                        probability: q,
                    };
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    best
}

/// `min_φ ‖a - e^{iφ} b‖` on a shared grid.
pub fn l2_distance_up_to_phase(a: &ComplexEnvelope, b: &ComplexEnvelope) -> f64 {
    let products: Vec<num_complex::Complex64> =
        a.samples().iter().zip(b.samples()).map(|(x, y)| x.conj() * y).collect();
    let overlap = trapz(&products, a.grid()).unwrap();
    (a.squared_norm() + b.squared_norm() - 2.0 * overlap.norm()).max(0.0).sqrt()
}

pub fn running_integral(values: &[f64], grid: &TimeGrid) -> Vec<f64> {
    cumsimpson(values, grid).unwrap()
}
