//! Trapezoidal product rule for smooth 1-periodic integrands on [0,1]².

use super::QuadResult;
use crate::error::{Error, Result};
use crate::summation::{par_sum_rows, Kahan};
use num_complex::Complex64;

const MAX_POINTS: usize = 2048;

/// The N×N trapezoidal sum (1/N²) Σ f(i/N, j/N).
pub fn trapezoid_2d<F>(f: &F, points: usize) -> Complex64
where
    F: Fn(f64, f64) -> Complex64 + Sync,
{
    let h = 1.0 / points as f64;
    let total = par_sum_rows(points, |i| {
        let x = i as f64 * h;
        let mut row = Kahan::new();
        for j in 0..points {
            row.add(f(x, j as f64 * h));
        }
        row.value()
    });
    total * (h * h)
}

/// Integrate a smooth doubly periodic function over the unit square,
/// doubling the grid until two successive sums agree to `tol`.
pub fn quad_periodic_2d<F>(f: F, tol: f64) -> Result<QuadResult>
where
    F: Fn(f64, f64) -> Complex64 + Sync,
{
    let mut points = 4;
    let mut prev = trapezoid_2d(&f, points);
    let mut diff = f64::INFINITY;
    while points < MAX_POINTS {
        points *= 2;
        let cur = trapezoid_2d(&f, points);
        diff = (cur - prev).norm();
        prev = cur;
        if diff <= tol.max(tol * cur.norm()) {
            return Ok(QuadResult { value: cur, error: diff });
        }
    }
    Err(Error::Convergence { what: "periodic trapezoid", estimate: diff, budget: MAX_POINTS })
}
