//! Constant and n^{-2} coefficients.
//!
//! With the normalization used here, the discrete zeta function behaves like
//!
//! ```text
//! ζ(Δ_n,s) = V₂(s) [ a(s) n^{2-2s} + b₀(s) + b₁(s) n^{-2} ] + O(n^{-4})
//! ```
//!
//! where b₀ = V₂^{-1} ζ(Δ,s) for both stencils, the nine-point b̃₁ is a pure
//! zeta value and the five-point b₁ differs from it by an angular lattice
//! sum weighted by k1²k2².

use super::leading::leading_term_coefficient;
use crate::epstein::{epstein_zeta_2d, poisson_1d_nonzero, poisson_remainder, v_factor, v_factor_inverse};
use crate::error::{Error, Result};
use crate::lattice::StencilVariant;
use crate::quadrature::{
    regularized_integral, AsymptoticDescriptor, DescriptorTerm, IntegrandSpec, Location, QuadResult,
};
use crate::summation::pairwise_sum_real;
use num_complex::Complex64;
use std::f64::consts::PI;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// b₀(s) = b̃₀(s) = V₂(s)^{-1} ζ(Δ,s).
pub fn coeff_b0(s: Complex64) -> Result<Complex64> {
    Ok(v_factor_inverse(2, s)? * epstein_zeta_2d(s)?)
}

/// b̃₁(s) = (sπ²/3) V₂(s)^{-1} ζ(Δ,s-1).
pub fn coeff_b1_tilde(s: Complex64) -> Result<Complex64> {
    if s == c(2.0, 0.0) {
        return Err(Error::Pole { at: s });
    }
    Ok(s * PI * PI / 3.0 * v_factor_inverse(2, s)? * epstein_zeta_2d(s - 1.0)?)
}

/// Σ_{k∈ℤ²} k1²k2² (|k|²+z²)^{-4}.
///
/// Poisson summation in k2 gives `(π/16) A^{-5/2}` per row `A = k1²+z²`
/// plus a remainder of order `e^{-2π√A}`. The power-law part is summed over
/// all rows in closed form; the remainder over `1 <= k1 <= rows`, which
/// leaves an error below `e^{-2π·rows}` relative to the total.
pub fn angular_integrand(z: f64, rows: usize) -> f64 {
    let a = z * z;
    let smooth = PI / 16.0 * (poisson_1d_nonzero(1.5, a) - a * poisson_1d_nonzero(2.5, a));
    let dual: Vec<f64> = (1..=rows)
        .map(|k1| {
            let k1 = k1 as f64;
            let big_a = k1 * k1 + a;
            2.0 * k1 * k1 * (poisson_remainder(3.0, big_a) - big_a * poisson_remainder(4.0, big_a))
        })
        .collect();
    smooth + pairwise_sum_real(&dual)
}

/// ⨍_0^∞ z^{5-2s} Σ_{k∈ℤ²} k1²k2² (|k|²+z²)^{-4} dz.
///
/// `cutoff` is the number of lattice rows that carry the exponentially small
/// part of the k2-sum (see [`angular_integrand`]); the returned error adds the
/// bound `e^{-2π·cutoff}` on what is dropped. Large z contributes the pure
/// power `(π/24) z^{3-2s}`, which regularizes to zero.
pub fn angular_lattice_sum(s: Complex64, cutoff: usize, tol: f64) -> Result<QuadResult> {
    if !(s.re < 3.0) {
        return Err(Error::Domain(format!("angular lattice sum needs Re s < 3, got {s}")));
    }
    if cutoff == 0 {
        return Err(Error::Domain("cutoff must be at least 1".into()));
    }
    let e = 5.0 - 2.0 * s;
    let spec = IntegrandSpec::new(move |z: f64| (e * z.ln()).exp() * angular_integrand(z, cutoff)).with_infinity(
        AsymptoticDescriptor::new(Location::AtInfinity, vec![DescriptorTerm::new(e - 2.0, 0, c(PI / 24.0, 0.0))])?,
    )?;
    let mut q = regularized_integral(&spec, tol)?;
    q.error += (-2.0 * PI * cutoff as f64).exp() * q.value.norm();
    Ok(q)
}

/// Default row cutoff for [`angular_lattice_sum`]; e^{-2π·8} ≈ 1.5e-22.
pub const ANGULAR_ROWS: usize = 8;

/// b₁(s) = b̃₁(s) - 4π²/(2-s) · ⨍ z^{5-2s} Σ k1²k2² (|k|²+z²)^{-4} dz.
pub fn coeff_b1(s: Complex64, tol: f64) -> Result<Complex64> {
    let ang = angular_lattice_sum(s, ANGULAR_ROWS, tol)?.value;
    Ok(coeff_b1_tilde(s)? - 4.0 * PI * PI / (2.0 - s) * ang)
}

/// The n^{-2} coefficient for either stencil.
pub fn coeff_b1_variant(s: Complex64, variant: StencilVariant, tol: f64) -> Result<Complex64> {
    match variant {
        StencilVariant::FivePoint => coeff_b1(s, tol),
        StencilVariant::NinePoint => coeff_b1_tilde(s),
    }
}

/// Both sides of the partial-fraction splits behind b₁ and b̃₁, in order
/// `[(k1⁴+k2⁴)/Q⁴, (k1²+k2²)²/Q⁴]` with Q = k1²+k2²+z². Each entry is
/// `(direct, decomposed)`.
pub fn b1_partial_fractions(k1: f64, k2: f64, z: f64) -> [(f64, f64); 2] {
    let (a, b, z2) = (k1 * k1, k2 * k2, z * z);
    let q = a + b + z2;
    let tilde = 1.0 / (q * q) - 2.0 * z2 / (q * q * q) + z2 * z2 / q.powi(4);
    [((a * a + b * b) / q.powi(4), tilde - 2.0 * a * b / q.powi(4)), ((a + b).powi(2) / q.powi(4), tilde)]
}

/// Three-term model `V₂(a n^{2-2s} + b₀ + b₁ n^{-2})` of ζ(Δ_n,s); `orders`
/// selects whether the n^{-2} term is included (0 or 1).
pub fn expansion_model(s: Complex64, variant: StencilVariant, n: usize, orders: u32, tol: f64) -> Result<Complex64> {
    if orders > 1 {
        return Err(Error::Range { what: "orders", value: orders as i64, range: "0..=1".into() });
    }
    let nf = n as f64;
    let lead = leading_term_coefficient(s, variant, tol)? * ((2.0 - 2.0 * s) * nf.ln()).exp();
    let mut v = lead + epstein_zeta_2d(s)?;
    if orders == 1 {
        v += v_factor(2, s)? * coeff_b1_variant(s, variant, tol)? / (nf * nf);
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn partial_fractions_are_identities() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let k1 = rng.gen_range(-20i32..=20) as f64;
            let k2 = rng.gen_range(-20i32..=20) as f64;
            let z = rng.gen_range(0.05..30.0);
            // the split side cancels terms of size Q^{-2}; roundoff is relative to that
            let q = k1 * k1 + k2 * k2 + z * z;
            for (direct, split) in b1_partial_fractions(k1, k2, z) {
                assert!((direct - split).abs() <= 1e-13 / (q * q), "{k1} {k2} {z}");
            }
        }
    }

    #[test]
    fn partial_fractions_exact_in_rationals() {
        use num_bigint::BigInt;
        use num_rational::BigRational;
        let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        for (k1, k2, z) in [(1, 2, r(3, 7)), (-5, 3, r(11, 2)), (0, 4, r(1, 9)), (7, -7, r(40, 3))] {
            let (a, b) = (r(k1 * k1, 1), r(k2 * k2, 1));
            let z2 = &z * &z;
            let q = &a + &b + &z2;
            let q2 = &q * &q;
            let q3 = &q2 * &q;
            let q4 = &q2 * &q2;
            let two = r(2, 1);
            let tilde = r(1, 1) / &q2 - &two * &z2 / &q3 + &z2 * &z2 / &q4;
            assert_eq!((&a * &a + &b * &b) / &q4, &tilde - &two * &a * &b / &q4);
            assert_eq!((&a + &b) * (&a + &b) / &q4, tilde);
        }
    }

    #[test]
    fn b0_and_b1_tilde_definitions() {
        let s = c(0.3, 2.0);
        let lhs = v_factor(2, s).unwrap() * coeff_b0(s).unwrap();
        assert!(rel(lhs, epstein_zeta_2d(s).unwrap()) < 1e-13);
        let b = coeff_b0(c(0.5, 0.0)).unwrap();
        assert!(rel(b, PI / 4.0 * epstein_zeta_2d(c(0.5, 0.0)).unwrap()) < 1e-13);
        let s = c(0.6, 3.0);
        let lhs = v_factor(2, s).unwrap() * coeff_b1_tilde(s).unwrap();
        let rhs = s * PI * PI / 3.0 * epstein_zeta_2d(s - 1.0).unwrap();
        assert!(rel(lhs, rhs) < 1e-13);
        assert!(coeff_b1_tilde(c(0.4, 0.0)).unwrap().im == 0.0);
        let s = c(0.2, 4.0);
        assert!((coeff_b0(s.conj()).unwrap() - coeff_b0(s).unwrap().conj()).norm() < 1e-14);
    }

    fn direct_angular(z: f64, r: i64) -> f64 {
        let mut acc = 0.0;
        for k1 in 1..=r {
            for k2 in 1..=r {
                let (a, b) = ((k1 * k1) as f64, (k2 * k2) as f64);
                acc += 4.0 * a * b / (a + b + z * z).powi(4);
            }
        }
        acc
    }

    #[test]
    fn angular_integrand_against_direct_sum() {
        for z in [0.0, 0.3, 0.49, 0.5, 1.0, 2.7] {
            let got = angular_integrand(z, ANGULAR_ROWS);
            // the square truncation misses C/R²; Richardson removes it
            let want = (4.0 * direct_angular(z, 3000) - direct_angular(z, 1500)) / 3.0;
            assert!((got - want).abs() < 1e-9 * want, "z={z}: {got} vs {want}");
        }
        let z = 9.0;
        assert!((angular_integrand(z, ANGULAR_ROWS) - PI / (24.0 * z * z)).abs() < 1e-14 / (z * z));
    }

    #[test]
    fn angular_golden_values() {
        let cases = [
            (c(0.5, 0.0), c(-0.016_165_920_029_694_334, 0.0)),
            (c(0.3, 2.0), c(-0.002_785_291_365_877_767_4, -0.001_569_763_454_787_457_3)),
            (c(0.6, 3.0), c(-0.000_505_624_392_454_035_7, -0.000_439_124_340_516_138_06)),
            (c(1.6, 0.0), c(-0.100_399_265_021_835_65, 0.0)),
        ];
        for (s, want) in cases {
            let got = angular_lattice_sum(s, ANGULAR_ROWS, 1e-12).unwrap();
            assert!(rel(got.value, want) < 1e-9, "{s}: {} vs {want}", got.value);
        }
    }

    #[test]
    fn angular_sum_matches_lattice_series_where_convergent() {
        // for Re s > 1 the z-integral can be done termwise:
        // Γ(3-s)Γ(1+s)/12 · Σ' k1²k2² |k|^{-2s-2}
        let s = c(2.5, 0.0);
        let square = |r: i64| {
            let mut acc = 0.0;
            for k1 in 1..=r {
                for k2 in 1..=r {
                    let (a, b) = ((k1 * k1) as f64, (k2 * k2) as f64);
                    acc += 4.0 * a * b * (a + b).powf(-s.re - 1.0);
                }
            }
            acc
        };
        // the truncated sum misses C·R^{4-2s}; eliminate it by Richardson
        let (s1, s2) = (square(1000), square(2000));
        let series = 2.0 * s2 - s1;
        let g =
            crate::special::complex_gamma(3.0 - s).unwrap() * crate::special::complex_gamma(1.0 + s).unwrap() / 12.0;
        let got = angular_lattice_sum(s, ANGULAR_ROWS, 1e-12).unwrap().value;
        assert!(rel(got, g * series) < 1e-6, "{got} vs {}", g * series);
    }

    #[test]
    fn b1_definition() {
        let s = c(0.3, 2.0);
        let diff = coeff_b1(s, 1e-12).unwrap() - coeff_b1_tilde(s).unwrap();
        let ang = angular_lattice_sum(s, ANGULAR_ROWS, 1e-12).unwrap().value;
        assert!(rel(diff, -4.0 * PI * PI / (2.0 - s) * ang) < 1e-12);
        let a = coeff_b1(s.conj(), 1e-12).unwrap();
        assert!((a - coeff_b1(s, 1e-12).unwrap().conj()).norm() < 1e-12 * a.norm());
    }
}
