//! Euler–Maclaurin summation with an explicit remainder integral.

use crate::error::{Error, Result};
use crate::quadrature::kronrod::{gk21, quad_finite_tols};
use crate::special::{bernoulli_number, bernoulli_polynomial};
use num_complex::Complex64;

/// The four pieces of the Euler–Maclaurin formula for Σ u(i).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerMaclaurinTerms {
    /// ∫_0^n u.
    pub integral: f64,
    /// ½(u(0) + u(n)), or ½(u(0) - u(n)) when the upper endpoint is excluded.
    pub endpoint: f64,
    /// Σ_{j≤M} B_{2j}/(2j)! (u^{(2j-1)}(n) - u^{(2j-1)}(0)).
    pub bernoulli: f64,
    /// (2M+1)!^{-1} ∫_0^n B_{2M+1}(x - [x]) u^{(2M+1)}(x) dx.
    pub remainder: f64,
}

impl EulerMaclaurinTerms {
    pub fn total(&self) -> f64 {
        self.integral + self.endpoint + self.bernoulli + self.remainder
    }
}

fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64) -> Result<f64> {
    // absolute target relative to ∫|f| so near-cancelling integrands still converge
    let scale = gk21(&|x| Complex64::new(f(x).abs(), 0.0), a, b).value.re;
    let abs_tol = (1e-15 * scale).max(f64::MIN_POSITIVE);
    Ok(quad_finite_tols(|x| Complex64::new(f(x), 0.0), a, b, abs_tol, 1e-15, 2000)?.value.re)
}

/// Right-hand side of Euler–Maclaurin for `u` on `[0, n]`. `deriv(k, x)` must
/// return u^{(k)}(x) for `1 ≤ k ≤ 2M+1`.
pub fn em_terms(
    m: usize,
    n: usize,
    upper_inclusive: bool,
    u: &dyn Fn(f64) -> f64,
    deriv: &dyn Fn(usize, f64) -> f64,
) -> Result<EulerMaclaurinTerms> {
    if m < 1 || n < 2 {
        return Err(Error::Domain(format!("need M ≥ 1 and n ≥ 2, got M = {m}, n = {n}")));
    }
    let nf = n as f64;
    // fail early if the Bernoulli table is too short; the integrand below
    // cannot propagate errors
    bernoulli_polynomial(2 * m + 1, 0.0)?;
    // unit panels keep the integrands smooth across the kinks of x - [x]
    let mut integral = 0.0;
    let mut remainder = 0.0;
    for i in 0..n {
        let a = i as f64;
        integral += integrate(u, a, a + 1.0)?;
        remainder += integrate(
            |x| bernoulli_polynomial(2 * m + 1, x - a).unwrap_or(f64::NAN) * deriv(2 * m + 1, x),
            a,
            a + 1.0,
        )?;
    }
    let fact: f64 = (1..=2 * m + 1).map(|k| k as f64).product();
    remainder /= fact;
    let endpoint = if upper_inclusive { 0.5 * (u(0.0) + u(nf)) } else { 0.5 * (u(0.0) - u(nf)) };
    let mut bernoulli = 0.0;
    let mut fact2 = 1.0;
    for j in 1..=m {
        fact2 *= ((2 * j - 1) * 2 * j) as f64;
        bernoulli += bernoulli_number(2 * j)? / fact2 * (deriv(2 * j - 1, nf) - deriv(2 * j - 1, 0.0));
    }
    Ok(EulerMaclaurinTerms { integral, endpoint, bernoulli, remainder })
}

/// `(Σ_{i=0}^n u(i), Euler–Maclaurin right-hand side)`.
pub fn em_verify(m: usize, n: usize, u: &dyn Fn(f64) -> f64, deriv: &dyn Fn(usize, f64) -> f64) -> Result<(f64, f64)> {
    let rhs = em_terms(m, n, true, u, deriv)?.total();
    let lhs = (0..=n).map(|i| u(i as f64)).sum();
    Ok((lhs, rhs))
}

/// As [`em_verify`] but summing `i = 0..n-1`.
pub fn em_verify_upper_exclusive(
    m: usize,
    n: usize,
    u: &dyn Fn(f64) -> f64,
    deriv: &dyn Fn(usize, f64) -> f64,
) -> Result<(f64, f64)> {
    let rhs = em_terms(m, n, false, u, deriv)?.total();
    let lhs = (0..n).map(|i| u(i as f64)).sum();
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn lorentz(x: f64) -> f64 {
        1.0 / (1.0 + x * x)
    }

    // d^k/dx^k 1/(1+x²) = (-1)^k k! Im((x - i)^{-k-1})
    fn lorentz_deriv(k: usize, x: f64) -> f64 {
        let fact: f64 = (1..=k).map(|i| i as f64).product();
        let w = Complex64::new(x, -1.0).powi(-(k as i32) - 1);
        let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
        sign * fact * w.im
    }

    #[test]
    fn derivative_oracle() {
        let h = 1e-5;
        for x in [0.0, 0.7, 3.0] {
            let fd = (lorentz(x + h) - lorentz(x - h)) / (2.0 * h);
            assert!((fd - lorentz_deriv(1, x)).abs() < 1e-9);
            let fd3 = (lorentz_deriv(2, x + h) - lorentz_deriv(2, x - h)) / (2.0 * h);
            assert!((fd3 - lorentz_deriv(3, x)).abs() < 1e-7);
        }
    }

    #[test]
    fn lorentzian_two_sided() {
        let (lhs, rhs) = em_verify(3, 10, &lorentz, &lorentz_deriv).unwrap();
        assert!((lhs - rhs).abs() < 1e-12, "{lhs} {rhs}");
        let t = em_terms(3, 10, true, &lorentz, &lorentz_deriv).unwrap();
        assert!((t.integral - 10f64.atan()).abs() < 1e-14);
        assert!(t.remainder.abs() > 1e-8, "remainder is not negligible here");
    }

    #[test]
    fn polynomial_is_exact() {
        let u = |x: f64| x * x;
        let d = |k: usize, x: f64| match k {
            1 => 2.0 * x,
            2 => 2.0,
            _ => 0.0,
        };
        let (lhs, rhs) = em_verify(1, 10, &u, &d).unwrap();
        assert_eq!(lhs, 385.0);
        assert!((lhs - rhs).abs() <= 4.0 * f64::EPSILON * lhs);
    }

    #[test]
    fn upper_exclusive_variant() {
        let (lhs, rhs) = em_verify_upper_exclusive(3, 10, &lorentz, &lorentz_deriv).unwrap();
        let (full, _) = em_verify(3, 10, &lorentz, &lorentz_deriv).unwrap();
        assert!((full - lorentz(10.0) - lhs).abs() < 1e-15);
        assert!((lhs - rhs).abs() < 1e-12);
    }

    #[test]
    fn periodic_even_symbol_has_no_boundary_terms() {
        // x ↦ f(x, y, n, z)^{-2} has period n and is even, so both the
        // endpoint difference and the odd-derivative terms vanish
        let (n, y, z) = (8usize, 1.3, 0.6);
        let nf = n as f64;
        let sq = |w: Complex64| (nf / PI * (PI * w / nf).sin()).powi(2);
        let uc = |w: Complex64| (sq(w) + sq(Complex64::new(y, 0.0)) + z * z).powi(-2);
        let u = |x: f64| uc(Complex64::new(x, 0.0)).re;
        // Cauchy integral on a circle of radius 1/2, trapezoid rule
        let d = |k: usize, x: f64| {
            let (r, pts) = (0.5, 64);
            let fact: f64 = (1..=k).map(|i| i as f64).product();
            let acc: f64 = (0..pts)
                .map(|p| {
                    let e = Complex64::from_polar(1.0, 2.0 * PI * p as f64 / pts as f64);
                    (uc(x + r * e) * e.powi(-(k as i32))).re
                })
                .sum();
            fact * acc / (pts as f64 * r.powi(k as i32))
        };
        let h = 1e-5;
        assert!((d(1, 0.3) - (u(0.3 + h) - u(0.3 - h)) / (2.0 * h)).abs() < 1e-9);
        let (lhs, rhs) = em_verify_upper_exclusive(1, n, &u, &d).unwrap();
        assert!((lhs - rhs).abs() < 1e-12);
        let t = em_terms(1, n, false, &u, &d).unwrap();
        assert_eq!(t.endpoint, 0.5 * (u(0.0) - u(nf)));
        assert!(t.endpoint.abs() < 1e-14);
        assert!(t.bernoulli.abs() < 1e-10);
    }

    #[test]
    fn rejects_small_orders() {
        assert!(em_verify(0, 10, &lorentz, &lorentz_deriv).is_err());
        assert!(em_verify(2, 1, &lorentz, &lorentz_deriv).is_err());
    }
}
