//! Double-exponential (tanh-sinh) quadrature for integrands with algebraic
//! or logarithmic endpoint singularities, including complex powers.

use super::QuadResult;
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;

const MAX_LEVEL: usize = 12;
const T_MAX: f64 = 6.5;

/// Abscissa offset from the nearer endpoint (in units of the half-width) and
/// the weight at parameter `t >= 0`.
fn node(t: f64) -> Option<(f64, f64)> {
    let u = FRAC_PI_2 * t.sinh();
    if u > 300.0 {
        return None;
    }
    let d = 2.0 / (1.0 + (2.0 * u).exp());
    let w = FRAC_PI_2 * t.cosh() / u.cosh().powi(2);
    if d < 1e-300 {
        return None;
    }
    Some((d, w))
}

/// Integrate `f` over `[a, b]`, evaluating only at interior points.
pub fn tanh_sinh<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadResult> {
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::Domain(format!("integration interval [{a}, {b}] is empty or not finite")));
    }
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let sample = |t: f64| -> Result<Complex64> {
        if t == 0.0 {
            return Ok(f(mid) * FRAC_PI_2);
        }
        let Some((d, w)) = node(t) else {
            return Ok(Complex64::new(0.0, 0.0));
        };
        let (xl, xr) = (a + half * d, b - half * d);
        let mut acc = Complex64::new(0.0, 0.0);
        for x in [xl, xr] {
            if x <= a || x >= b {
                continue;
            }
            let v = f(x);
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(Error::Domain(format!("integrand not finite at x = {x:e}")));
            }
            acc += v * w;
        }
        Ok(acc)
    };

    let mut h = 1.0;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut k = 0;
    while (k as f64) * h <= T_MAX {
        sum += sample(k as f64 * h)?;
        k += 1;
    }
    let mut prev = sum * h * half;
    let mut diff = f64::INFINITY;
    for _level in 1..=MAX_LEVEL {
        h *= 0.5;
        let mut k = 1;
        while (k as f64) * h <= T_MAX {
            sum += sample(k as f64 * h)?;
            k += 2;
        }
        let cur = sum * h * half;
        diff = (cur - prev).norm();
        prev = cur;
        if diff <= tol.max(tol * cur.norm()) {
            return Ok(QuadResult { value: cur, error: diff });
        }
    }
    Err(Error::Convergence { what: "tanh-sinh", estimate: diff, budget: MAX_LEVEL })
}
