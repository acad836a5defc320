//! The coefficient of n^{2-2s}.
//!
//! With G(x,y) the symbol of the stencil on the unit torus (eigenvalues are
//! n²G(k/n)), the z-integral in
//!
//! ```text
//! a(s) = ∫_0^∞ z^{3-2s} ∫∫ (G + z²)^{-2} dx dy dz
//! ```
//!
//! is a beta integral, so `a(s) = V₂(s)^{-1} ∫∫ G^{-s} dx dy`. The remaining
//! torus integral is done in polar coordinates about the singular point,
//! using the 8-fold symmetry of G and `G = r² h(r,θ)` with `h(0,θ) = 1`.

use crate::epstein::v_factor_inverse;
use crate::error::{Error, Result};
use crate::lattice::StencilVariant;
use crate::quadrature::{quad_finite, tanh_sinh};
use num_complex::Complex64;
use std::collections::HashMap;
use std::f64::consts::{FRAC_PI_4, PI};
use std::sync::{OnceLock, RwLock};

fn sinc(u: f64) -> f64 {
    if u.abs() < 1e-4 {
        1.0 - u * u / 6.0
    } else {
        u.sin() / u
    }
}

/// 1 - sinc²(u) without cancellation for small u.
fn one_minus_sinc2(u: f64) -> f64 {
    if u.abs() < 0.5 {
        // Σ_{k≥2} (-1)^k 2^{2k-1} u^{2k-2} / (2k)!
        let u2 = u * u;
        let mut term = u2 / 3.0;
        let mut acc = term;
        for k in 3..14 {
            let kf = k as f64;
            term *= -4.0 * u2 / ((2.0 * kf) * (2.0 * kf - 1.0));
            acc += term;
        }
        acc
    } else {
        1.0 - sinc(u).powi(2)
    }
}

/// ln(G(x,y)/r²) at polar point (r, θ), accurate as r → 0.
fn ln_h(variant: StencilVariant, r: f64, cos: f64, sin: f64) -> f64 {
    let (x, y) = (r * cos, r * sin);
    let dx = one_minus_sinc2(PI * x);
    let dy = one_minus_sinc2(PI * y);
    let mut d = dx * cos * cos + dy * sin * sin;
    if variant == StencilVariant::NinePoint {
        d += 2.0 * PI * PI / 3.0 * (r * cos * sin).powi(2) * (1.0 - dx) * (1.0 - dy);
    }
    (-d).ln_1p()
}

/// ∫∫_{torus} G^{-s}, the analytic continuation to `Re s < 2`, `s ≠ 1`.
fn torus_integral(s: Complex64, variant: StencilVariant, tol: f64) -> Result<Complex64> {
    let e = 2.0 - 2.0 * s;
    let angular = |theta: f64| -> Complex64 {
        let (sin, cos) = theta.sin_cos();
        let big_r = 0.5 / cos;
        // ∫_0^R r^{1-2s}(h^{-s} - 1) dr + R^{2-2s}/(2-2s)
        let radial = tanh_sinh(
            |r: f64| {
                if r < 1e-30 {
                    // h = 1 - c r² + O(r⁴); avoids overflow of r^{1-2s}
                    let mut c = PI * PI / 3.0 * (cos.powi(4) + sin.powi(4));
                    if variant == StencilVariant::NinePoint {
                        c += 2.0 * PI * PI / 3.0 * (cos * sin).powi(2);
                    }
                    return s * c * ((3.0 - 2.0 * s) * r.ln()).exp();
                }
                (-s * ln_h(variant, r, cos, sin)).exp_m1_c() * ((1.0 - 2.0 * s) * r.ln()).exp()
            },
            0.0,
            big_r,
            tol * 1e-2,
        );
        match radial {
            Ok(q) => q.value + (e * big_r.ln()).exp() / e,
            Err(_) => Complex64::new(f64::NAN, f64::NAN),
        }
    };
    let q = quad_finite(angular, 0.0, FRAC_PI_4, tol)?;
    if !(q.value.re.is_finite() && q.value.im.is_finite()) {
        return Err(Error::Convergence {
            what: "radial leading-coefficient quadrature",
            estimate: f64::NAN,
            budget: 0,
        });
    }
    Ok(8.0 * q.value)
}

/// `exp(w) - 1` without cancellation for small `w`.
trait ExpM1 {
    fn exp_m1_c(self) -> Complex64;
}

impl ExpM1 for Complex64 {
    fn exp_m1_c(self) -> Complex64 {
        let (a, b) = (self.re, self.im);
        let half = (0.5 * b).sin();
        Complex64::new(a.exp_m1() * b.cos() - 2.0 * half * half, a.exp() * b.sin())
    }
}

type CacheKey = (u64, u64, StencilVariant, u64);

fn cache() -> &'static RwLock<HashMap<CacheKey, Complex64>> {
    static CACHE: OnceLock<RwLock<HashMap<CacheKey, Complex64>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `V₂(s) a(s) = ∫∫ G^{-s}`, the coefficient of n^{2-2s} in ζ(Δ_n, s).
/// Memoized per `(s, variant, tol)`.
pub fn leading_term_coefficient(s: Complex64, variant: StencilVariant, tol: f64) -> Result<Complex64> {
    if !(s.re > 0.0 && s.re < 2.0) || s == Complex64::new(1.0, 0.0) {
        return Err(Error::Domain(format!("leading term needs 0 < Re s < 2 and s ≠ 1, got {s}")));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance {tol} must be positive")));
    }
    let key = (s.re.to_bits(), s.im.to_bits(), variant, tol.to_bits());
    if let Some(v) = cache().read().expect("cache lock").get(&key) {
        return Ok(*v);
    }
    let v = torus_integral(s, variant, tol)?;
    // a racing writer computed the same deterministic value
    cache().write().expect("cache lock").insert(key, v);
    Ok(v)
}

/// a(s) (five-point) or ã(s) (nine-point) for `0 < Re s < 1`.
pub fn leading_coeff(s: Complex64, variant: StencilVariant, tol: f64) -> Result<Complex64> {
    if !(s.re > 0.0 && s.re < 1.0) {
        return Err(Error::Domain(format!("leading coefficient is defined on the strip 0 < Re s < 1, got {s}")));
    }
    Ok(leading_term_coefficient(s, variant, tol)? * v_factor_inverse(2, s)?)
}
