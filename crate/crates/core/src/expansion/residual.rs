//! Residuals of the expansion against directly summed discrete zetas.

use super::coefficients::{coeff_b0, coeff_b1_variant, expansion_model};
use super::leading::{leading_coeff, leading_term_coefficient};
use crate::epstein::v_factor;
use crate::error::{Error, Result};
use crate::lattice::{spectral_zeta_1d, spectral_zeta_with_error, StencilVariant, TorusGrid};
use crate::special::{complex_gamma, complex_log_gamma, riemann_zeta};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Residual of the expansion model at one `n` with its noise floor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualPoint {
    pub n: usize,
    pub residual: Complex64,
    /// Estimated rounding and quadrature error in `residual`.
    pub noise: f64,
}

/// ζ(Δ_n,s) minus the expansion through `orders` (0: leading term and
/// constant, 1: also the n^{-2} term).
pub fn expansion_residual(
    s: Complex64,
    variant: StencilVariant,
    n: usize,
    orders: u32,
    tol: f64,
) -> Result<ResidualPoint> {
    let (z, zerr) = spectral_zeta_with_error(TorusGrid::new(n)?, variant, s)?;
    let model = expansion_model(s, variant, n, orders, tol)?;
    let scale = ((2.0 - 2.0 * s) * (n as f64).ln()).exp();
    let coeff = leading_term_coefficient(s, variant, tol)?;
    // a-posteriori: the quadrature at `tol` against a looser run
    let coeff_err =
        (coeff - leading_term_coefficient(s, variant, 10.0 * tol)?).norm() + 8.0 * f64::EPSILON * coeff.norm();
    let noise = zerr + coeff_err * scale.norm() + 4.0 * f64::EPSILON * (z.norm() + model.norm());
    Ok(ResidualPoint { n, residual: z - model, noise })
}

fn check_geometric(n_list: &[usize]) -> Result<()> {
    if n_list.len() < 3 {
        return Err(Error::Shape { expected: 3, got: n_list.len() });
    }
    let r0 = n_list[1] as f64 / n_list[0] as f64;
    let geometric = r0 > 1.0 && n_list.windows(2).all(|w| ((w[1] as f64 / w[0] as f64) - r0).abs() < 1e-12 * r0);
    if !geometric {
        return Err(Error::Domain(format!("n values must form an increasing geometric sequence, got {n_list:?}")));
    }
    Ok(())
}

/// Least-squares slope of `log y` against `log x`.
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let m = points.len() as f64;
    let (sx, sy) = points.iter().fold((0.0, 0.0), |(a, b), &(x, y)| (a + x.ln(), b + y.ln()));
    let (mx, my) = (sx / m, sy / m);
    let (mut num, mut den) = (0.0, 0.0);
    for &(x, y) in points {
        let dx = x.ln() - mx;
        num += dx * (y.ln() - my);
        den += dx * dx;
    }
    num / den
}

/// Everything known about the expansion at one `s`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionResult {
    pub s: Complex64,
    pub variant: StencilVariant,
    /// a(s) or ã(s).
    pub leading: Complex64,
    pub b0: Complex64,
    pub b1: Complex64,
    /// V₂(s).
    pub v_front: Complex64,
    pub orders: u32,
    /// `(n, |residual|)` with `n` increasing.
    pub residuals: Vec<(usize, f64)>,
    /// Log-log slope of the residuals.
    pub slope: f64,
}

/// Residual study over a geometric list of `n`. Fails with `SignalLost`
/// when a residual falls below ten times its noise floor instead of fitting
/// rounding error.
pub fn expansion_study(
    s: Complex64,
    variant: StencilVariant,
    n_list: &[usize],
    orders: u32,
    tol: f64,
) -> Result<ExpansionResult> {
    check_geometric(n_list)?;
    let mut residuals = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let p = expansion_residual(s, variant, n, orders, tol)?;
        let r = p.residual.norm();
        if r < 10.0 * p.noise {
            return Err(Error::SignalLost { n, residual: r, floor: p.noise });
        }
        residuals.push((n, r));
    }
    let slope = log_log_slope(&residuals.iter().map(|&(n, r)| (n as f64, r)).collect::<Vec<_>>());
    let in_strip = s.re > 0.0 && s.re < 1.0;
    Ok(ExpansionResult {
        s,
        variant,
        leading: if in_strip { leading_coeff(s, variant, tol)? } else { Complex64::new(f64::NAN, f64::NAN) },
        b0: coeff_b0(s)?,
        b1: coeff_b1_variant(s, variant, tol)?,
        v_front: v_factor(2, s)?,
        orders,
        residuals,
        slope,
    })
}

/// Log-log slope of the expansion residual.
pub fn residual_order(s: Complex64, variant: StencilVariant, n_list: &[usize], orders: u32, tol: f64) -> Result<f64> {
    Ok(expansion_study(s, variant, n_list, orders, tol)?.slope)
}

/// H_n(s) = π^{-s} Γ(s) (ζ(Δ̃_n,s) - V₂(s) ã(s) n^{2-2s}) for the nine-point stencil.
pub fn h_function(s: Complex64, n: usize, tol: f64) -> Result<Complex64> {
    let variant = StencilVariant::NinePoint;
    let (z, _) = spectral_zeta_with_error(TorusGrid::new(n)?, variant, s)?;
    let lead = leading_term_coefficient(s, variant, tol)? * ((2.0 - 2.0 * s) * (n as f64).ln()).exp();
    let front = (-s * PI.ln() + complex_log_gamma(s)?).exp();
    Ok(front * (z - lead))
}

/// Coefficient of n^{1-2s} for the 1-D Laplacian: π^{2s-1/2} Γ(1/2-s)/Γ(1-s).
pub fn leading_1d(s: Complex64) -> Result<Complex64> {
    Ok(((2.0 * s - 0.5) * PI.ln()).exp() * complex_gamma(0.5 - s)? / complex_gamma(1.0 - s)?)
}

/// ζ(𝓛_n,s) minus `leading_1d·n^{1-2s} + 2ζ_R(2s) + (2s/3)π² ζ_R(2s-2) n^{-2}`.
pub fn residual_1d(s: Complex64, n: usize) -> Result<Complex64> {
    let nf = n as f64;
    let z = spectral_zeta_1d(n, s)?;
    let lead = leading_1d(s)? * ((1.0 - 2.0 * s) * nf.ln()).exp();
    let b0 = 2.0 * riemann_zeta(2.0 * s)?;
    let b1 = 2.0 * s / 3.0 * PI * PI * riemann_zeta(2.0 * s - 2.0)?;
    Ok(z - lead - b0 - b1 / (nf * nf))
}
