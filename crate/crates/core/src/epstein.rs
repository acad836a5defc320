//! The continuum torus: ζ(Δ,s) = Σ_{k≠0} |k|^{-2s}, its completion, the
//! front factors V_α, the function Ω, critical-line zeros, and resolvent
//! lattice traces Σ_k (|k|²+z²)^{-α}.
//!
//! ζ(Δ,s) is evaluated through Glasser's factorization `4 ζ_R(s) β(s)`.

use crate::error::{Error, Result};
use crate::quadrature::{regularized_integral, AsymptoticDescriptor, DescriptorTerm, IntegrandSpec, Location};
use crate::special::{bessel_k, complex_gamma, complex_log_gamma, dirichlet_beta, riemann_zeta};
use crate::summation::{pairwise_sum_real, par_sum_rows};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// ζ(Δ,s) on the square torus, `4 ζ_R(s) β(s)`.
pub fn epstein_zeta_2d(s: Complex64) -> Result<Complex64> {
    if s == c(1.0, 0.0) {
        return Err(Error::Pole { at: s });
    }
    let z = riemann_zeta(s)?;
    let b = dirichlet_beta(s);
    let v = 4.0 * z * b;
    Ok(if s.im == 0.0 { c(v.re, 0.0) } else { v })
}

/// Partial sum over the square `0 < max(|k1|,|k2|) <= cutoff` and a bound on
/// the omitted tail, `8 K^{2-2σ} / (2σ-2)`: shell `m` holds `8m` points of
/// modulus at least `m`.
pub fn epstein_direct_sum(s: Complex64, cutoff: usize) -> Result<(Complex64, f64)> {
    if s.re <= 1.0 {
        return Err(Error::Domain(format!("direct lattice sum diverges for Re s = {} <= 1", s.re)));
    }
    if cutoff < 1 {
        return Err(Error::Domain("cutoff must be at least 1".into()));
    }
    let k = cutoff as i64;
    let width = 2 * cutoff + 1;
    let value = par_sum_rows(width, |row| {
        let k1 = row as i64 - k;
        let mut acc = crate::summation::Kahan::new();
        for k2 in -k..=k {
            if k1 == 0 && k2 == 0 {
                continue;
            }
            let r2 = (k1 * k1 + k2 * k2) as f64;
            acc.add((-s * r2.ln()).exp());
        }
        acc.value()
    });
    let sigma = s.re;
    let tail = 8.0 * (cutoff as f64).powf(2.0 - 2.0 * sigma) / (2.0 * sigma - 2.0);
    Ok((value, tail))
}

/// 1/Γ(z), zero at the poles of Γ.
pub(crate) fn recip_gamma(z: Complex64) -> Complex64 {
    match complex_gamma(z) {
        Ok(g) => 1.0 / g,
        Err(_) => c(0.0, 0.0),
    }
}

/// V_α(s) = 2 sin(πs)/π · Γ(1-s)Γ(α)/Γ(α-s).
///
/// Reflection turns this into `2 Γ(α) / (Γ(s) Γ(α-s))`, an entire function
/// of `s`, so no value of `s` is singular.
pub fn v_factor(alpha: u32, s: Complex64) -> Result<Complex64> {
    if alpha == 0 {
        return Err(Error::Range { what: "alpha", value: 0, range: ">= 1".into() });
    }
    let gamma_alpha: f64 = (1..alpha).map(f64::from).product();
    Ok(2.0 * gamma_alpha * recip_gamma(s) * recip_gamma(alpha as f64 - s))
}

/// V_α(s)^{-1} = Γ(s)Γ(α-s) / (2Γ(α)); poles where V_α vanishes.
pub fn v_factor_inverse(alpha: u32, s: Complex64) -> Result<Complex64> {
    if alpha == 0 {
        return Err(Error::Range { what: "alpha", value: 0, range: ">= 1".into() });
    }
    let gamma_alpha: f64 = (1..alpha).map(f64::from).product();
    Ok(complex_gamma(s)? * complex_gamma(alpha as f64 - s)? / (2.0 * gamma_alpha))
}

/// ξ₂(s) = π^{-s} Γ(s) ζ(Δ,s). Satisfies ξ₂(s) = ξ₂(1-s).
pub fn complete_xi(s: Complex64) -> Result<Complex64> {
    if s == c(0.0, 0.0) || s == c(1.0, 0.0) {
        return Err(Error::Pole { at: s });
    }
    let front = (-s * PI.ln() + complex_log_gamma(s)?).exp();
    Ok(front * epstein_zeta_2d(s)?)
}

/// Ω(s) = (1/3) s π^{2-s} Γ(s) ζ(Δ,s-1).
pub fn omega(s: Complex64) -> Result<Complex64> {
    if s == c(2.0, 0.0) {
        return Err(Error::Pole { at: s });
    }
    let front = ((2.0 - s) * PI.ln() + complex_log_gamma(s)?).exp();
    Ok(s / 3.0 * front * epstein_zeta_2d(s - 1.0)?)
}

/// Ω(s) through the completed function, `(1/3) s (s-1) π ξ₂(s-1)`.
pub fn omega_via_xi(s: Complex64) -> Result<Complex64> {
    if s == c(2.0, 0.0) || s == c(1.0, 0.0) {
        return Err(Error::Pole { at: s });
    }
    Ok(s * (s - 1.0) * PI / 3.0 * complete_xi(s - 1.0)?)
}

/// Which factor of `4 ζ_R(s) β(s)` vanishes at a zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroSource {
    RiemannFactor,
    BetaFactor,
}

/// A zero `1/2 + it` of ζ(Δ,·).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroRecord {
    pub t: f64,
    pub source: ZeroSource,
    /// |ζ(Δ, 1/2 + it)| at the located `t`.
    pub residual: f64,
}

fn riemann_theta(t: f64) -> Result<f64> {
    Ok(complex_log_gamma(c(0.25, 0.5 * t))?.im - 0.5 * t * PI.ln())
}

fn beta_theta(t: f64) -> Result<f64> {
    Ok(complex_log_gamma(c(0.75, 0.5 * t))?.im + 0.5 * t * (4.0 / PI).ln())
}

/// Hardy's function for ζ_R: real on the critical line, `|Z| = |ζ_R(1/2+it)|`.
pub fn hardy_z_riemann(t: f64) -> Result<f64> {
    let v = c(0.0, riemann_theta(t)?).exp() * riemann_zeta(c(0.5, t))?;
    Ok(v.re)
}

/// The analogue for β, from the symmetric completion (4/π)^{(s+1)/2} Γ((s+1)/2) β(s).
pub fn hardy_z_beta(t: f64) -> Result<f64> {
    let v = c(0.0, beta_theta(t)?).exp() * dirichlet_beta(c(0.5, t));
    Ok(v.re)
}

fn bisect(f: &dyn Fn(f64) -> Result<f64>, mut a: f64, mut b: f64, mut fa: f64) -> Result<f64> {
    while b - a > 1e-13 * b.max(1.0) {
        let m = 0.5 * (a + b);
        let fm = f(m)?;
        if fm == 0.0 {
            return Ok(m);
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

/// Zeros of ζ(Δ,·) on the critical line with `t_min <= t <= t_max`, found
/// from sign changes of the two Hardy functions on a grid of spacing `step`.
///
/// Fails with `StepTooCoarse` when a grid cell is wide enough to hold two
/// zeros of one factor, judged by the phase advancing by more than π.
pub fn find_critical_zeros(t_min: f64, t_max: f64, step: f64) -> Result<Vec<ZeroRecord>> {
    if !(t_min > 0.0 && t_max > t_min && step > 0.0) {
        return Err(Error::Domain(format!("need 0 < t_min < t_max and step > 0, got [{t_min}, {t_max}] step {step}")));
    }
    let cells = ((t_max - t_min) / step).ceil() as usize;
    let grid: Vec<f64> = (0..=cells).map(|i| (t_min + i as f64 * step).min(t_max)).collect();
    // (factor, Hardy Z function, its phase)
    type Factor = (ZeroSource, fn(f64) -> Result<f64>, fn(f64) -> Result<f64>);
    let factors: [Factor; 2] = [
        (ZeroSource::BetaFactor, hardy_z_beta, beta_theta),
        (ZeroSource::RiemannFactor, hardy_z_riemann, riemann_theta),
    ];
    let mut out = Vec::new();
    for (source, z, theta) in factors {
        let values: Vec<(f64, f64)> = grid.par_iter().map(|&t| Ok((z(t)?, theta(t)?))).collect::<Result<Vec<_>>>()?;
        let found: Vec<Option<ZeroRecord>> = (0..cells)
            .into_par_iter()
            .map(|i| -> Result<Option<ZeroRecord>> {
                let (za, tha) = values[i];
                let (zb, thb) = values[i + 1];
                if (thb - tha).abs() > PI {
                    return Err(Error::StepTooCoarse { t: grid[i] });
                }
                if za == 0.0 || (za < 0.0) != (zb < 0.0) {
                    let t = if za == 0.0 { grid[i] } else { bisect(&z, grid[i], grid[i + 1], za)? };
                    let residual = epstein_zeta_2d(c(0.5, t))?.norm();
                    return Ok(Some(ZeroRecord { t, source, residual }));
                }
                Ok(None)
            })
            .collect::<Result<Vec<_>>>()?;
        out.extend(found.into_iter().flatten());
    }
    out.sort_by(|a, b| a.t.total_cmp(&b.t));
    Ok(out)
}

fn gamma_real(x: f64) -> f64 {
    complex_gamma(c(x, 0.0)).map(|g| g.re).unwrap_or(f64::NAN)
}

/// Leading Poisson coefficient: Σ_k (k²+a)^{-p} ≈ c0(p) a^{1/2-p} for large a.
fn poisson_c0(p: f64) -> f64 {
    PI.sqrt() * gamma_real(p - 0.5) / gamma_real(p)
}

/// Σ_{m>=1} terms of the Poisson dual sum; exponentially small in √a.
fn poisson_dual(p: f64, a: f64) -> f64 {
    let ra = a.sqrt();
    let nu = p - 0.5;
    let pref = 4.0 * PI.powf(p) / gamma_real(p);
    let mut terms = Vec::new();
    for m in 1..200 {
        let x = 2.0 * PI * m as f64 * ra;
        if x > 700.0 {
            break;
        }
        let k = bessel_k(nu, x).expect("positive argument");
        let t = pref * (m as f64 / ra).powf(nu) * k;
        terms.push(t);
        if t < 1e-18 * terms[0].abs() {
            break;
        }
    }
    pairwise_sum_real(&terms)
}

/// Σ_{k≠0} (k²+a)^{-p} for real `p > 1/2`, `a >= 0`.
pub(crate) fn poisson_1d_nonzero(p: f64, a: f64) -> f64 {
    if a < 0.25 {
        // 2 Σ_j binom(-p, j) a^j ζ_R(2p+2j)
        let mut terms = Vec::new();
        let mut coef = 1.0;
        let mut pw = 1.0;
        for j in 0..400 {
            if j > 0 {
                coef *= -(p + (j - 1) as f64) / j as f64;
                pw *= a;
            }
            let z = riemann_zeta(c(2.0 * p + 2.0 * j as f64, 0.0)).expect("argument > 1").re;
            let t = 2.0 * coef * pw * z;
            terms.push(t);
            if t.abs() < 1e-18 * terms[0].abs() {
                break;
            }
        }
        return pairwise_sum_real(&terms);
    }
    poisson_1d(p, a) - a.powf(-p)
}

/// Σ_{k∈ℤ} (k²+a)^{-p} for real `p > 1/2`, `a > 0`.
pub(crate) fn poisson_1d(p: f64, a: f64) -> f64 {
    if a < 0.25 {
        return a.powf(-p) + poisson_1d_nonzero(p, a);
    }
    poisson_c0(p) * a.powf(0.5 - p) + poisson_dual(p, a)
}

/// Σ_{k∈ℤ} (k²+a)^{-p} minus its power-law part c0(p) a^{1/2-p}.
pub(crate) fn poisson_remainder(p: f64, a: f64) -> f64 {
    if a < 0.25 {
        return poisson_1d(p, a) - poisson_c0(p) * a.powf(0.5 - p);
    }
    poisson_dual(p, a)
}

/// Rows |k1| <= this carry the exponentially small part of lattice traces.
pub(crate) const DUAL_ROWS: i64 = 8;

/// Σ_{k∈ℤ²} (|k|²+z²)^{-α} for real `α > 1`, `z > 0`, including `k = 0`.
///
/// Poisson summation in k2 splits each row into `c0 (k1²+z²)^{1/2-α}`, summed
/// over all rows by a second Poisson step, and an exponentially small part
/// that only the first few rows feel.
pub fn lattice_trace(alpha: f64, z: f64) -> Result<f64> {
    if !(alpha > 1.0) || !(z > 0.0) {
        return Err(Error::Domain(format!("lattice trace needs α > 1 and z > 0, got α = {alpha}, z = {z}")));
    }
    let a = z * z;
    let smooth = poisson_c0(alpha) * poisson_1d(alpha - 0.5, a);
    let rows: Vec<f64> = (-DUAL_ROWS..=DUAL_ROWS).map(|k1| poisson_remainder(alpha, (k1 * k1) as f64 + a)).collect();
    Ok(smooth + pairwise_sum_real(&rows))
}

/// Σ_{k≠0} (|k|²+z²)^{-α} for real `α > 1`, `z >= 0`.
///
/// Below `z = 1/2` the binomial series Σ_j binom(-α,j) z^{2j} ζ(Δ,α+j)
/// avoids subtracting the dominant `z^{-2α}` from the full trace.
pub fn lattice_trace_nonzero(alpha: f64, z: f64) -> Result<f64> {
    if !(alpha > 1.0) || !(z >= 0.0) {
        return Err(Error::Domain(format!("lattice trace needs α > 1 and z >= 0, got α = {alpha}, z = {z}")));
    }
    if z >= 0.5 {
        return Ok(lattice_trace(alpha, z)? - z.powf(-2.0 * alpha));
    }
    let a = z * z;
    let mut terms = Vec::new();
    let mut coef = 1.0;
    let mut pw = 1.0;
    for j in 0..200 {
        if j > 0 {
            coef *= -(alpha + (j - 1) as f64) / j as f64;
            pw *= a;
        }
        let t = coef * pw * epstein_zeta_2d(c(alpha + j as f64, 0.0))?.re;
        terms.push(t);
        if t.abs() < 1e-18 * terms[0].abs() {
            break;
        }
    }
    Ok(pairwise_sum_real(&terms))
}

/// ⨍_0^∞ z^{2α-2w-1} Σ_{k∈ℤ²} (|k|²+z²)^{-α} dz, which equals
/// V_α(w)^{-1} ζ(Δ,w). The `k = 0` term is a pure power and integrates to
/// zero, so only the remaining lattice enters; at infinity that part behaves
/// like `π/(α-1) z^{2-2α} - z^{-2α}` up to exponentially small terms.
pub fn resolvent_moment(alpha: u32, w: Complex64, tol: f64) -> Result<Complex64> {
    if alpha < 2 {
        return Err(Error::Range { what: "alpha", value: alpha as i64, range: ">= 2".into() });
    }
    let al = alpha as f64;
    let e = 2.0 * al - 2.0 * w - 1.0;
    if e.re <= -1.0 {
        return Err(Error::Domain(format!("moment needs Re w < α, got w = {w}")));
    }
    let spec = IntegrandSpec::new(move |z: f64| {
        let t = lattice_trace_nonzero(al, z).unwrap_or(f64::NAN);
        (e * z.ln()).exp() * t
    })
    .with_infinity(AsymptoticDescriptor::new(
        Location::AtInfinity,
        vec![
            DescriptorTerm::new(e + 2.0 - 2.0 * al, 0, c(PI / (al - 1.0), 0.0)),
            DescriptorTerm::new(e - 2.0 * al, 0, c(-1.0, 0.0)),
        ],
    )?)?;
    Ok(regularized_integral(&spec, tol)?.value)
}
