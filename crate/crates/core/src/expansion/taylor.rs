//! Exact Taylor coefficients of the discrete resolvent symbol.
//!
//! With D = x²+y²+z² the stencil symbol is f = D - X, where X collects the
//! O(n^{-2}) corrections of the sine expansion (plus the cross term for the
//! nine-point stencil). Then
//!
//! f^{-α} = Σ_j C(α+j-1, j) X^j D^{-α-j} = Σ_m n^{-2m} Σ_j F_{m,j}(x,y) D^{-α-j}.
//!
//! Every monomial of order n^{-2m} carries exactly π^{2m}, so F_{m,j} is stored
//! as a rational polynomial with that power of π implied.

use crate::error::{Error, Result};
use crate::lattice::StencilVariant;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::f64::consts::PI;

/// Largest order m supported by [`taylor_coefficients`].
pub const MAX_ORDER: u32 = 4;

/// Exponent of the resolvent power the coefficients belong to.
pub const ALPHA: u32 = 2;

/// F_{m,j} (five-point) or F̃_{m,j} (nine-point) for α = 2.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorCoefficient {
    pub m: u32,
    pub j: u32,
    pub variant: StencilVariant,
    /// `(deg_x, deg_y) -> c`; the polynomial is π^{2m} Σ c x^{deg_x} y^{deg_y}.
    pub polynomial: BTreeMap<(u32, u32), BigRational>,
}

impl TaylorCoefficient {
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let p: f64 = self
            .polynomial
            .iter()
            .map(|(&(a, b), c)| c.to_f64().unwrap_or(f64::NAN) * x.powi(a as i32) * y.powi(b as i32))
            .sum();
        p * PI.powi(2 * self.m as i32)
    }

    pub fn is_zero(&self) -> bool {
        self.polynomial.is_empty()
    }

    /// Invariant under x ↔ y.
    pub fn is_symmetric(&self) -> bool {
        self.polynomial.iter().all(|(&(a, b), c)| self.polynomial.get(&(b, a)) == Some(c))
    }

    /// All monomials have total degree `2m + 2j`.
    pub fn is_homogeneous(&self) -> bool {
        let d = 2 * (self.m + self.j);
        self.polynomial.keys().all(|&(a, b)| a + b == d)
    }
}

// (order m, deg_x, deg_y) -> coefficient
type Series = BTreeMap<(u32, u32, u32), BigRational>;

fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

fn ratio(num: BigInt, den: BigInt) -> BigRational {
    BigRational::new(num, den)
}

fn add_to(series: &mut Series, key: (u32, u32, u32), c: BigRational) {
    if c.is_zero() {
        return;
    }
    let slot = series.entry(key).or_insert_with(BigRational::zero);
    *slot += c;
    if slot.is_zero() {
        series.remove(&key);
    }
}

fn multiply(a: &Series, b: &Series, max_order: u32) -> Series {
    let mut out = Series::new();
    for (&(ma, xa, ya), ca) in a {
        for (&(mb, xb, yb), cb) in b {
            if ma + mb <= max_order {
                add_to(&mut out, (ma + mb, xa + xb, ya + yb), ca * cb);
            }
        }
    }
    out
}

/// (n/π)² sin²(πu/n) = Σ_{k≥1} s_k (π/n)^{2k-2} u^{2k}, s_k = (-1)^{k-1} 2^{2k-1}/(2k)!.
fn sine_coefficient(k: u32) -> BigRational {
    let sign = if k % 2 == 1 { 1 } else { -1 };
    ratio(BigInt::from(sign) * (BigInt::one() << (2 * k - 1) as usize), factorial(2 * k))
}

/// X = D - f truncated at order `max_order`.
fn correction_series(variant: StencilVariant, max_order: u32) -> Series {
    let mut x = Series::new();
    for k in 2..=max_order + 1 {
        // the u^{2k} term sits at order k-1 with the opposite sign
        let c = -sine_coefficient(k);
        add_to(&mut x, (k - 1, 2 * k, 0), c.clone());
        add_to(&mut x, (k - 1, 0, 2 * k), c);
    }
    if variant == StencilVariant::NinePoint && max_order >= 1 {
        // + (2/3)(π/n)² S(x) S(y)
        let sx: Series = (1..=max_order).map(|k| ((k - 1, 2 * k, 0), sine_coefficient(k))).collect();
        let sy: Series = (1..=max_order).map(|k| ((k - 1, 0, 2 * k), sine_coefficient(k))).collect();
        let two_thirds = ratio(BigInt::from(2), BigInt::from(3));
        for ((m, a, b), c) in multiply(&sx, &sy, max_order - 1) {
            add_to(&mut x, (m + 1, a, b), &two_thirds * c);
        }
    }
    x
}

fn binomial(n: u32, k: u32) -> BigInt {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// F_{m,j} for j = 0..=m.
pub fn taylor_coefficients(m: u32, variant: StencilVariant) -> Result<Vec<TaylorCoefficient>> {
    if m > MAX_ORDER {
        return Err(Error::Range { what: "Taylor order m", value: m as i64, range: format!("0..={MAX_ORDER}") });
    }
    let x = correction_series(variant, m);
    let mut power = Series::new();
    power.insert((0, 0, 0), BigRational::one());
    let mut out = Vec::with_capacity(m as usize + 1);
    for j in 0..=m {
        if j > 0 {
            power = multiply(&power, &x, m);
        }
        let b = BigRational::from_integer(binomial(ALPHA + j - 1, j));
        let polynomial =
            power.iter().filter(|(&(order, _, _), _)| order == m).map(|(&(_, a, c), v)| ((a, c), &b * v)).collect();
        out.push(TaylorCoefficient { m, j, variant, polynomial });
    }
    Ok(out)
}

/// |f(x,y,n,z)^{-2} - Σ_{m<N} n^{-2m} Σ_j F_{m,j}/(x²+y²+z²)^{2+j}| for each n.
pub fn series_truncation_check(
    variant: StencilVariant,
    big_n: u32,
    sample: (f64, f64, f64),
    n_list: &[usize],
) -> Result<Vec<(usize, f64)>> {
    if big_n == 0 || big_n > MAX_ORDER + 1 {
        return Err(Error::Range {
            what: "truncation order N",
            value: big_n as i64,
            range: format!("1..={}", MAX_ORDER + 1),
        });
    }
    let (x, y, z) = sample;
    let d = x * x + y * y + z * z;
    if !(d > 0.0) {
        return Err(Error::Domain("sample point must satisfy x² + y² + z² > 0".into()));
    }
    let coeffs: Vec<Vec<TaylorCoefficient>> =
        (0..big_n).map(|m| taylor_coefficients(m, variant)).collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let nf = n as f64;
        let sq = |u: f64| (nf / PI * (PI * u / nf).sin()).powi(2);
        let mut f = sq(x) + sq(y) + z * z;
        if variant == StencilVariant::NinePoint {
            f -= 2.0 * PI * PI / (3.0 * nf * nf) * sq(x) * sq(y);
        }
        let exact = f.powi(-(ALPHA as i32));
        let mut approx = 0.0;
        for (m, row) in coeffs.iter().enumerate() {
            let inner: f64 = row.iter().map(|c| c.eval(x, y) * d.powi(-((ALPHA + c.j) as i32))).sum();
            approx += nf.powi(-2 * m as i32) * inner;
        }
        out.push((n, (exact - approx).abs()));
    }
    Ok(out)
}
