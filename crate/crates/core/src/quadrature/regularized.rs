//! Hadamard-regularized integrals and limits.
//!
//! A function on `(0, ∞)` whose behaviour at an endpoint is a finite sum of
//! terms `c x^α log^k x` plus an integrable remainder has a regularized
//! integral: subtract the terms, integrate the remainder, and add back the
//! constant term of each subtracted term's primitive. On the two half-lines
//! this constant is
//!
//! ```text
//! ⨍_1^∞ x^α log^k x dx = (-1)^{k+1} k! / (α+1)^{k+1}
//! ⨍_0^1 x^α log^k x dx = (-1)^k     k! / (α+1)^{k+1}
//! ```
//!
//! and zero for `α = -1`. In particular every pure power integrates to 0
//! over `(0, ∞)`.

use super::kronrod::{quad_finite_tols, DEFAULT_BUDGET};
use super::QuadResult;
use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// Which endpoint an asymptotic descriptor describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    AtZero,
    AtInfinity,
}

/// One term `coefficient · x^exponent · log^log_power(x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DescriptorTerm {
    pub exponent: Complex64,
    pub log_power: u32,
    pub coefficient: Complex64,
}

impl DescriptorTerm {
    pub fn new(exponent: Complex64, log_power: u32, coefficient: Complex64) -> Self {
        DescriptorTerm { exponent, log_power, coefficient }
    }

    /// Real power term `c x^a`.
    pub fn power(exponent: f64, coefficient: f64) -> Self {
        Self::new(Complex64::new(exponent, 0.0), 0, Complex64::new(coefficient, 0.0))
    }

    /// The term without its coefficient.
    pub fn basis(&self, x: f64) -> Complex64 {
        let lx = x.ln();
        let p = if self.exponent.im == 0.0 {
            Complex64::new(x.powf(self.exponent.re), 0.0)
        } else {
            (self.exponent * lx).exp()
        };
        p * lx.powi(self.log_power as i32)
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        self.coefficient * self.basis(x)
    }

    fn is_inverse_power(&self) -> bool {
        (self.exponent + 1.0).norm() < 1e-12
    }

    /// Regularized integral of the term over `(0,1]` or `[1,∞)`.
    fn regularized_piece(&self, location: Location) -> Complex64 {
        if self.is_inverse_power() {
            return Complex64::new(0.0, 0.0);
        }
        let k = self.log_power as i32;
        let fact: f64 = (1..=self.log_power).map(f64::from).product();
        let base = fact / (self.exponent + 1.0).powi(k + 1);
        let sign = match location {
            Location::AtZero => {
                if k % 2 == 0 {
                    1.0
                } else {
                    -1.0
                }
            }
            Location::AtInfinity => {
                if k % 2 == 0 {
                    -1.0
                } else {
                    1.0
                }
            }
        };
        self.coefficient * base * sign
    }
}

/// Finite asymptotic expansion at one endpoint.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticDescriptor {
    location: Location,
    terms: Vec<DescriptorTerm>,
}

impl AsymptoticDescriptor {
    /// Validates ordering (decreasing real part at infinity, increasing at
    /// zero) and rejects purely oscillatory `x^{-1+ib}` terms, whose
    /// primitive has no constant term.
    pub fn new(location: Location, terms: Vec<DescriptorTerm>) -> Result<Self> {
        for t in &terms {
            if !(t.exponent.re.is_finite() && t.exponent.im.is_finite()) {
                return Err(Error::Descriptor("non-finite exponent".into()));
            }
            if (t.exponent.re + 1.0).abs() < 1e-12 && t.exponent.im != 0.0 {
                return Err(Error::Descriptor(format!(
                    "exponent {} has real part -1 and a nonzero imaginary part; its primitive oscillates without a limit",
                    t.exponent
                )));
            }
        }
        for w in terms.windows(2) {
            let ok = match location {
                Location::AtInfinity => w[0].exponent.re >= w[1].exponent.re,
                Location::AtZero => w[0].exponent.re <= w[1].exponent.re,
            };
            if !ok {
                return Err(Error::Descriptor(format!(
                    "exponents must be ordered by {} real part at {:?}",
                    if location == Location::AtInfinity { "decreasing" } else { "increasing" },
                    location
                )));
            }
        }
        Ok(AsymptoticDescriptor { location, terms })
    }

    pub fn empty(location: Location) -> Self {
        AsymptoticDescriptor { location, terms: Vec::new() }
    }

    /// Descriptor made of real power terms `(exponent, coefficient)`.
    pub fn powers(location: Location, terms: &[(f64, f64)]) -> Result<Self> {
        Self::new(location, terms.iter().map(|&(a, c)| DescriptorTerm::power(a, c)).collect())
    }

    pub fn location(&self) -> Location {
        self.location
    }

    pub fn terms(&self) -> &[DescriptorTerm] {
        &self.terms
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        self.terms.iter().map(|t| t.eval(x)).sum()
    }

    fn magnitude(&self, x: f64) -> f64 {
        self.terms.iter().map(|t| t.eval(x).norm()).sum()
    }

    /// Descriptor of `x ↦ f(λx)` given the descriptor of `f`.
    pub fn scaled(&self, lambda: f64) -> Self {
        let ll = lambda.ln();
        let mut terms = Vec::new();
        for t in &self.terms {
            let lam_pow = (t.exponent * ll).exp();
            // log^k(λx) = Σ_j C(k,j) log^{k-j}λ log^j x
            let k = t.log_power;
            let mut binom = 1.0;
            for j in 0..=k {
                let c = t.coefficient * lam_pow * binom * ll.powi((k - j) as i32);
                terms.push(DescriptorTerm::new(t.exponent, j, c));
                binom = binom * (k - j) as f64 / (j + 1) as f64;
            }
        }
        AsymptoticDescriptor { location: self.location, terms }
    }

    /// Coefficients of `x^{-1} log^k x`, as `(k, coefficient)` pairs.
    pub fn inverse_power_coefficients(&self) -> Vec<(u32, Complex64)> {
        self.terms.iter().filter(|t| t.is_inverse_power()).map(|t| (t.log_power, t.coefficient)).collect()
    }
}

type Evaluator<'a> = Box<dyn Fn(f64) -> Complex64 + Sync + 'a>;

/// An integrand on `(0, ∞)` with optional endpoint expansions.
pub struct IntegrandSpec<'a> {
    evaluator: Evaluator<'a>,
    pub at_zero: Option<AsymptoticDescriptor>,
    pub at_infinity: Option<AsymptoticDescriptor>,
}

impl<'a> IntegrandSpec<'a> {
    pub fn new(f: impl Fn(f64) -> Complex64 + Sync + 'a) -> Self {
        IntegrandSpec { evaluator: Box::new(f), at_zero: None, at_infinity: None }
    }

    pub fn real(f: impl Fn(f64) -> f64 + Sync + 'a) -> Self {
        Self::new(move |x| Complex64::new(f(x), 0.0))
    }

    pub fn with_zero(mut self, d: AsymptoticDescriptor) -> Result<Self> {
        if d.location != Location::AtZero {
            return Err(Error::Descriptor("descriptor for x → 0 must have location AtZero".into()));
        }
        self.at_zero = Some(d);
        Ok(self)
    }

    pub fn with_infinity(mut self, d: AsymptoticDescriptor) -> Result<Self> {
        if d.location != Location::AtInfinity {
            return Err(Error::Descriptor("descriptor for x → ∞ must have location AtInfinity".into()));
        }
        self.at_infinity = Some(d);
        Ok(self)
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        (self.evaluator)(x)
    }
}

/// Ratio between consecutive panels of the endpoint ladder.
const LADDER: f64 = 4.0;
const MAX_RUNGS: usize = 200;
/// Consecutive non-shrinking panels, spanning a factor 16⁴ in `t`, after which
/// the remainder is declared non-integrable.
const GROWING_RUNGS: usize = 8;

/// ∫_0^1 g(t) dt for a remainder that is integrable at 0.
///
/// The interval is split into panels `[4^{-j-1}, 4^{-j}]`, each integrated
/// adaptively. For `g ~ t^q` successive panels shrink by `4^{-(q+1)}`, so the
/// panel ratio both checks integrability and supplies a geometric tail.
/// Subleading powers and logarithms are removed by extrapolating the partial
/// sums, which gives one prediction of the whole integral per rung. The
/// ladder stops once consecutive predictions agree, or
/// falls back to the most consistent one when the panels sink into rounding
/// noise.
fn remainder_integral(
    g: &(dyn Fn(f64) -> Complex64 + Sync),
    scale: &(dyn Fn(f64) -> f64 + Sync),
    tol: f64,
    side: &str,
) -> Result<QuadResult> {
    let mut total = Complex64::new(0.0, 0.0);
    let mut error = 0.0;
    let mut prev: Option<Complex64> = None;
    // partial sums of the current geometric run
    let mut sums: Vec<Complex64> = Vec::new();
    let mut prev_candidate: Option<Complex64> = None;
    // (drift, value, error) of the most self-consistent prediction so far
    let mut best: Option<(f64, Complex64, f64)> = None;
    let mut growing = 0;
    let mut hi = 1.0;
    for _ in 0..MAX_RUNGS {
        let lo = hi / LADDER;
        let mid = (lo * hi).sqrt();
        let scale_max = scale(lo).max(scale(mid)).max(scale(hi));
        let noise = 16.0 * f64::EPSILON * (hi - lo) * scale_max + f64::MIN_POSITIVE;
        let panel = quad_finite_tols(g, lo, hi, noise, tol, DEFAULT_BUDGET)?;
        if noise > 1e-2 * panel.value.norm() {
            // the subtraction f - descriptor has eaten the remainder's digits
            if let Some((drift, value, err)) = best {
                return Ok(QuadResult { value, error: err + drift + noise });
            }
            let value = prev_candidate.unwrap_or(total);
            return Ok(QuadResult { value, error: error + noise + (value - total).norm() });
        }
        total += panel.value;
        error += panel.error;
        if let Some(p) = prev {
            let r = panel.value / p;
            growing = if r.norm() >= 1.0 - 1e-3 { growing + 1 } else { 0 };
            if growing >= GROWING_RUNGS {
                return Err(Error::Descriptor(format!(
                    "remainder at {side} is not integrable (panel ratio {:.4}); the descriptor is missing terms",
                    r.norm()
                )));
            }
            if r.norm() < 1.0 {
                sums.push(total);
                let candidate = accelerate(&sums, total + panel.value * r / (1.0 - r));
                if let Some(pc) = prev_candidate {
                    let drift = (candidate - pc).norm();
                    if best.is_none_or(|b| drift < b.0) {
                        best = Some((drift, candidate, error));
                    }
                    if drift <= tol * 1e-2 * total.norm().max(1.0) {
                        return Ok(QuadResult { value: candidate, error: error + drift });
                    }
                }
                prev_candidate = Some(candidate);
            } else {
                sums.clear();
                prev_candidate = None;
                best = None;
            }
        }
        prev = Some(panel.value);
        hi = lo;
    }
    Err(Error::Convergence { what: "endpoint ladder", estimate: error, budget: MAX_RUNGS })
}

/// Wynn's epsilon algorithm over the last few partial sums of the ladder.
///
/// Panel sequences built from powers and logarithms of `t` satisfy short
/// linear recurrences, for which the Shanks transform computed here is exact.
/// Falls back to `fallback` when the table hits a zero difference.
fn accelerate(sums: &[Complex64], fallback: Complex64) -> Complex64 {
    const WINDOW: usize = 9;
    let seq = &sums[sums.len().saturating_sub(WINDOW)..];
    if seq.len() < 3 {
        return fallback;
    }
    let zero = Complex64::new(0.0, 0.0);
    let mut prev: Vec<Complex64> = vec![zero; seq.len() + 1];
    let mut cur: Vec<Complex64> = seq.to_vec();
    let mut best = fallback;
    for k in 1..seq.len() {
        let mut next = Vec::with_capacity(cur.len() - 1);
        for i in 0..cur.len() - 1 {
            let d = cur[i + 1] - cur[i];
            if d.norm() == 0.0 || !d.is_finite() {
                return best;
            }
            next.push(prev[i + 1] + 1.0 / d);
        }
        prev = cur;
        cur = next;
        if k % 2 == 0 {
            match cur.last() {
                Some(v) if v.is_finite() => best = *v,
                _ => return best,
            }
        }
    }
    best
}

/// Hadamard-regularized integral ⨍_0^∞ f(x) dx.
pub fn regularized_integral(f: &IntegrandSpec<'_>, tol: f64) -> Result<QuadResult> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance {tol} must be positive")));
    }
    let empty0 = AsymptoticDescriptor::empty(Location::AtZero);
    let empty_inf = AsymptoticDescriptor::empty(Location::AtInfinity);
    let d0 = f.at_zero.as_ref().unwrap_or(&empty0);
    let dinf = f.at_infinity.as_ref().unwrap_or(&empty_inf);

    // (0, 1]
    let g0 = |t: f64| f.eval(t) - d0.eval(t);
    let s0 = |t: f64| f.eval(t).norm() + d0.magnitude(t);
    let lower = remainder_integral(&g0, &s0, tol, "zero")?;
    let lower_terms: Complex64 = d0.terms.iter().map(|t| t.regularized_piece(Location::AtZero)).sum();

    // [1, ∞) through x = 1/t
    let ginf = |t: f64| {
        let x = 1.0 / t;
        (f.eval(x) - dinf.eval(x)) / (t * t)
    };
    let sinf = |t: f64| {
        let x = 1.0 / t;
        (f.eval(x).norm() + dinf.magnitude(x)) / (t * t)
    };
    let upper = remainder_integral(&ginf, &sinf, tol, "infinity")?;
    let upper_terms: Complex64 = dinf.terms.iter().map(|t| t.regularized_piece(Location::AtInfinity)).sum();

    Ok(QuadResult { value: lower.value + lower_terms + upper.value + upper_terms, error: lower.error + upper.error })
}

/// Condition number above which [`regularized_limit`] refuses to fit.
pub const MAX_CONDITION: f64 = 1e12;

/// Constant term of an expansion known only through samples: least-squares
/// fit of `c_0 + Σ c_j x^{α_j} log^{k_j} x` using the exponents and log
/// powers of `descriptor` (its coefficients are ignored).
pub fn regularized_limit(samples: &[(f64, Complex64)], descriptor: &AsymptoticDescriptor) -> Result<Complex64> {
    // merge near-duplicate exponents and drop plain constants
    let mut basis: Vec<DescriptorTerm> = Vec::new();
    for t in descriptor.terms() {
        if t.exponent.norm() < 1e-10 && t.log_power == 0 {
            continue;
        }
        if basis.iter().any(|b| b.log_power == t.log_power && (b.exponent - t.exponent).norm() < 1e-10) {
            continue;
        }
        basis.push(*t);
    }
    let p = basis.len() + 1;
    if samples.len() < p {
        return Err(Error::Shape { expected: p, got: samples.len() });
    }
    let m = samples.len();
    // complex system A c = u, stacked as [Re A, -Im A; Im A, Re A]
    let mut a = DMatrix::<f64>::zeros(2 * m, 2 * p);
    let mut rhs = DVector::<f64>::zeros(2 * m);
    for (i, &(x, u)) in samples.iter().enumerate() {
        let mut row = vec![Complex64::new(1.0, 0.0)];
        row.extend(basis.iter().map(|b| b.basis(x)));
        for (j, v) in row.iter().enumerate() {
            a[(i, j)] = v.re;
            a[(i, p + j)] = -v.im;
            a[(m + i, j)] = v.im;
            a[(m + i, p + j)] = v.re;
        }
        rhs[i] = u.re;
        rhs[m + i] = u.im;
    }
    let mut scales = vec![1.0; 2 * p];
    for (j, scale) in scales.iter_mut().enumerate() {
        let nrm = a.column(j).norm();
        if nrm > 0.0 {
            *scale = nrm;
            a.column_mut(j).scale_mut(1.0 / nrm);
        }
    }
    let svd = a.svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    let condition = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    if condition > MAX_CONDITION {
        return Err(Error::IllConditioned { condition });
    }
    let sol = svd.solve(&rhs, 0.0).map_err(|e| Error::Domain(e.to_string()))?;
    Ok(Complex64::new(sol[0] / scales[0], sol[p] / scales[p]))
}

/// Both sides of the scaling rule for regularized integrals:
///
/// ```text
/// ⨍ f(λx) dx = λ^{-1} ( ⨍ f + Σ_k a_k log^{k+1}λ/(k+1) - Σ_k b_k log^{k+1}λ/(k+1) )
/// ```
///
/// where `a_k`, `b_k` are the coefficients of `x^{-1} log^k x` at infinity
/// and at zero. Returns `(lhs, rhs)`.
pub fn change_of_variables_check(f: &IntegrandSpec<'_>, lambda: f64, tol: f64) -> Result<(Complex64, Complex64)> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::Domain(format!("scale factor {lambda} must be positive")));
    }
    let scaled = IntegrandSpec {
        evaluator: Box::new(|x| f.eval(lambda * x)),
        at_zero: f.at_zero.as_ref().map(|d| d.scaled(lambda)),
        at_infinity: f.at_infinity.as_ref().map(|d| d.scaled(lambda)),
    };
    let lhs = regularized_integral(&scaled, tol)?.value;
    let base = regularized_integral(f, tol)?.value;
    let ll = lambda.ln();
    let correction = |d: &Option<AsymptoticDescriptor>| -> Complex64 {
        d.as_ref()
            .map(|d| {
                d.inverse_power_coefficients().iter().map(|&(k, c)| c * ll.powi(k as i32 + 1) / (k as f64 + 1.0)).sum()
            })
            .unwrap_or_default()
    };
    let rhs = (base + correction(&f.at_infinity) - correction(&f.at_zero)) / lambda;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn pure_power(a: f64) -> IntegrandSpec<'static> {
        IntegrandSpec::real(move |x| x.powf(a))
            .with_zero(AsymptoticDescriptor::powers(Location::AtZero, &[(a, 1.0)]).unwrap())
            .unwrap()
            .with_infinity(AsymptoticDescriptor::powers(Location::AtInfinity, &[(a, 1.0)]).unwrap())
            .unwrap()
    }

    #[test]
    fn pure_powers_vanish() {
        for a in [-1.5, -0.5, 0.7, 2.0, -1.0] {
            let r = regularized_integral(&pure_power(a), 1e-12).unwrap();
            assert_eq!(r.value, c(0.0, 0.0), "a = {a}");
        }
    }

    #[test]
    fn inverse_square() {
        // divergent at 0 only
        let f = IntegrandSpec::real(|x| x.powi(-2))
            .with_zero(AsymptoticDescriptor::powers(Location::AtZero, &[(-2.0, 1.0)]).unwrap())
            .unwrap();
        let r = regularized_integral(&f, 1e-12).unwrap();
        assert!(r.value.norm() < 1e-12, "{}", r.value);
    }

    #[test]
    fn convergent_integral_needs_no_descriptor() {
        let f = IntegrandSpec::real(|x| (-x).exp());
        let r = regularized_integral(&f, 1e-13).unwrap();
        assert!((r.value - c(1.0, 0.0)).norm() < 1e-12);
        let g = IntegrandSpec::real(|x| 1.0 / (1.0 + x * x));
        let r = regularized_integral(&g, 1e-13).unwrap();
        assert!((r.value.re - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn log_terms() {
        // f = log(x)/(1+x)^2 + x^{-1/2}: ∫_0^∞ log x/(1+x)^2 = 0
        let f = IntegrandSpec::real(|x| x.ln() / (1.0 + x).powi(2) + x.powf(-0.5))
            .with_infinity(
                AsymptoticDescriptor::new(
                    Location::AtInfinity,
                    vec![DescriptorTerm::power(-0.5, 1.0), DescriptorTerm::new(c(-2.0, 0.0), 1, c(1.0, 0.0))],
                )
                .unwrap(),
            )
            .unwrap();
        let r = regularized_integral(&f, 1e-12).unwrap();
        assert!(r.value.norm() < 1e-9, "{}", r.value);
    }

    #[test]
    fn missing_descriptor_is_detected() {
        let f = IntegrandSpec::real(|x| 1.0 / (1.0 + x));
        assert!(matches!(regularized_integral(&f, 1e-10), Err(Error::Descriptor(_))));
        let g = IntegrandSpec::real(|x| x.powf(-1.5) + 1.0 / (1.0 + x * x));
        assert!(matches!(regularized_integral(&g, 1e-10), Err(Error::Descriptor(_))));
    }

    #[test]
    fn oscillatory_borderline_is_rejected() {
        let t = DescriptorTerm::new(c(-1.0, 2.0), 0, c(1.0, 0.0));
        assert!(matches!(AsymptoticDescriptor::new(Location::AtInfinity, vec![t]), Err(Error::Descriptor(_))));
    }

    #[test]
    fn unsorted_descriptor_is_rejected() {
        let r = AsymptoticDescriptor::powers(Location::AtInfinity, &[(-2.0, 1.0), (1.0, 1.0)]);
        assert!(matches!(r, Err(Error::Descriptor(_))));
        let r = AsymptoticDescriptor::powers(Location::AtZero, &[(1.0, 1.0), (-2.0, 1.0)]);
        assert!(matches!(r, Err(Error::Descriptor(_))));
    }

    #[test]
    fn regularized_limit_examples() {
        let d1 = AsymptoticDescriptor::powers(Location::AtInfinity, &[(1.0, 0.0)]).unwrap();
        let samples: Vec<_> = (1..8).map(|i| (i as f64 * 3.0, c(3.0 + 5.0 * i as f64 * 3.0, 0.0))).collect();
        assert!((regularized_limit(&samples, &d1).unwrap() - c(3.0, 0.0)).norm() < 1e-12);

        let d2 = AsymptoticDescriptor::new(
            Location::AtInfinity,
            vec![DescriptorTerm::new(c(2.0, 0.0), 1, c(0.0, 0.0)), DescriptorTerm::power(1.0, 0.0)],
        )
        .unwrap();
        let samples: Vec<_> = [2.0, 3.0, 5.0, 8.0, 13.0, 21.0]
            .iter()
            .map(|&x: &f64| (x, c(7.0 + x * x * x.ln() + 2.0 * x, 0.0)))
            .collect();
        assert!((regularized_limit(&samples, &d2).unwrap() - c(7.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn regularized_limit_complex_exponent() {
        let s = c(0.3, 2.0);
        let e = 2.0 - 2.0 * s;
        let (c0, c1) = (c(1.25, -0.5), c(-0.3, 0.7));
        let samples: Vec<_> =
            [32.0, 64.0, 128.0, 256.0].iter().map(|&x: &f64| (x, c0 + c1 * (e * x.ln()).exp())).collect();
        let d = AsymptoticDescriptor::new(Location::AtInfinity, vec![DescriptorTerm::new(e, 0, c(0.0, 0.0))]).unwrap();
        assert!((regularized_limit(&samples, &d).unwrap() - c0).norm() < 1e-8);
    }

    #[test]
    fn regularized_limit_rejects_degenerate_fits() {
        let d = AsymptoticDescriptor::powers(Location::AtInfinity, &[(1.0, 0.0)]).unwrap();
        let same_x = vec![(2.0, c(1.0, 0.0)), (2.0, c(1.0, 0.0)), (2.0, c(1.0, 0.0))];
        assert!(matches!(regularized_limit(&same_x, &d), Err(Error::IllConditioned { .. })));
        assert!(matches!(regularized_limit(&same_x[..1], &d), Err(Error::Shape { .. })));
    }

    #[test]
    fn change_of_variables_examples() {
        // no x^{-1} terms: plain scaling
        let f = IntegrandSpec::real(|x| (-x).exp());
        let (lhs, rhs) = change_of_variables_check(&f, 2.0, 1e-13).unwrap();
        assert!((lhs - rhs).norm() < 1e-12);
        assert!((rhs - c(0.5, 0.0)).norm() < 1e-12);

        // 1/(1+x): x^{-1} at infinity with coefficient 1, ⨍ f = 0
        let g = IntegrandSpec::real(|x| 1.0 / (1.0 + x))
            .with_infinity(AsymptoticDescriptor::powers(Location::AtInfinity, &[(-1.0, 1.0), (-2.0, -1.0)]).unwrap())
            .unwrap();
        let e = std::f64::consts::E;
        let (lhs, rhs) = change_of_variables_check(&g, e, 1e-13).unwrap();
        let base = regularized_integral(&g, 1e-13).unwrap().value;
        assert!(base.norm() < 1e-10);
        assert!((lhs - rhs).norm() < 1e-10);
        assert!((rhs - base / e - c(1.0 / e, 0.0)).norm() < 1e-10);

        let (lhs, rhs) = change_of_variables_check(&g, 1.0, 1e-13).unwrap();
        assert!((lhs - base).norm() < 1e-12 && (rhs - base).norm() < 1e-12);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn linearity(a in -2.0f64..2.0, b in -2.0f64..2.0, p in 0.2f64..0.8) {
            let f = |x: f64| x.powf(-p) / (1.0 + x);
            let g = |x: f64| (-x).exp() * (1.0 + x).ln();
            let fspec = IntegrandSpec::real(f);
            let gspec = IntegrandSpec::real(g);
            let combo = IntegrandSpec::real(move |x| a * f(x) + b * g(x));
            let i_f = regularized_integral(&fspec, 1e-12).unwrap().value;
            let i_g = regularized_integral(&gspec, 1e-12).unwrap().value;
            let i_c = regularized_integral(&combo, 1e-12).unwrap().value;
            prop_assert!((i_c - (a * i_f + b * i_g)).norm() < 1e-10);
        }
    }
}
