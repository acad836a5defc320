//! Bernoulli numbers (B_1 = -1/2) and Bernoulli polynomials.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::sync::OnceLock;

pub const DEFAULT_MAX_INDEX: usize = 64;

/// Table of B_0..B_max, computed exactly and stored both as rationals and
/// as doubles. Immutable once built.
#[derive(Debug, Clone)]
pub struct BernoulliTable {
    exact: Vec<BigRational>,
    numbers: Vec<f64>,
}

fn binomial_row(k: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for j in 0..k {
        let next = &row[j] * BigInt::from(k - j) / BigInt::from(j + 1);
        row.push(next);
    }
    row
}

impl BernoulliTable {
    /// Build via the recurrence Σ_{j<=k} C(k+1, j) B_j = 0.
    pub fn new(max_index: usize) -> Self {
        let mut exact: Vec<BigRational> = Vec::with_capacity(max_index + 1);
        exact.push(BigRational::one());
        for k in 1..=max_index {
            if k > 1 && k % 2 == 1 {
                exact.push(BigRational::zero());
                continue;
            }
            let row = binomial_row(k + 1);
            let mut acc = BigRational::zero();
            for (j, b) in exact.iter().enumerate() {
                acc += b * BigRational::from_integer(row[j].clone());
            }
            exact.push(-acc / BigRational::from_integer(row[k].clone()));
        }
        let numbers = exact.iter().map(|r| r.to_f64().unwrap_or(f64::NAN)).collect();
        BernoulliTable { exact, numbers }
    }

    pub fn max_index(&self) -> usize {
        self.numbers.len() - 1
    }

    fn check(&self, k: usize) -> Result<()> {
        if k > self.max_index() {
            return Err(Error::Range {
                what: "Bernoulli index",
                value: k as i64,
                range: format!("0..={}", self.max_index()),
            });
        }
        Ok(())
    }

    pub fn number(&self, k: usize) -> Result<f64> {
        self.check(k)?;
        Ok(self.numbers[k])
    }

    pub fn exact(&self, k: usize) -> Result<&BigRational> {
        self.check(k)?;
        Ok(&self.exact[k])
    }

    /// B_k(x) = Σ_j C(k, j) B_j x^{k-j}, evaluated by Horner's rule in x.
    pub fn polynomial(&self, k: usize, x: f64) -> Result<f64> {
        self.check(k)?;
        let mut binom = 1.0f64;
        let mut coeffs = Vec::with_capacity(k + 1);
        for j in 0..=k {
            coeffs.push(binom * self.numbers[j]);
            binom = binom * (k - j) as f64 / (j + 1) as f64;
        }
        // coeffs[j] multiplies x^{k-j}
        Ok(coeffs.iter().fold(0.0, |acc, c| acc * x + c))
    }
}

/// Shared table up to [`DEFAULT_MAX_INDEX`].
pub fn default_table() -> &'static BernoulliTable {
    static TABLE: OnceLock<BernoulliTable> = OnceLock::new();
    TABLE.get_or_init(|| BernoulliTable::new(DEFAULT_MAX_INDEX))
}

pub fn bernoulli_number(k: usize) -> Result<f64> {
    default_table().number(k)
}

pub fn bernoulli_polynomial(k: usize, x: f64) -> Result<f64> {
    default_table().polynomial(k, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn first_numbers() {
        assert_eq!(bernoulli_number(0).unwrap(), 1.0);
        assert_eq!(bernoulli_number(1).unwrap(), -0.5);
        assert_eq!(bernoulli_number(2).unwrap(), 1.0 / 6.0);
        assert_eq!(bernoulli_number(3).unwrap(), 0.0);
        assert_eq!(bernoulli_number(4).unwrap(), -1.0 / 30.0);
        let b12 = default_table().exact(12).unwrap();
        assert_eq!(*b12, BigRational::new((-691).into(), 2730.into()));
    }

    #[test]
    fn odd_entries_vanish() {
        for k in (3..=DEFAULT_MAX_INDEX).step_by(2) {
            assert_eq!(bernoulli_number(k).unwrap(), 0.0);
        }
    }

    #[test]
    fn out_of_range() {
        assert!(matches!(bernoulli_number(65), Err(Error::Range { .. })));
        assert!(matches!(bernoulli_polynomial(65, 0.1), Err(Error::Range { .. })));
    }

    #[test]
    fn polynomial_values() {
        assert!(bernoulli_polynomial(1, 0.5).unwrap().abs() < 1e-16);
        assert!((bernoulli_polynomial(2, 0.0).unwrap() - 1.0 / 6.0).abs() < 1e-16);
        // B_3(x) = x^3 - 3x^2/2 + x/2
        let x = 0.25;
        let want = x * x * x - 1.5 * x * x + 0.5 * x;
        assert!((bernoulli_polynomial(3, x).unwrap() - want).abs() < 1e-16);
        assert!((bernoulli_polynomial(3, 1.0 - x).unwrap() + want).abs() < 1e-16);
    }

    #[test]
    fn endpoint_values_agree() {
        for k in 2..=20 {
            let d = bernoulli_polynomial(k, 1.0).unwrap() - bernoulli_polynomial(k, 0.0).unwrap();
            assert!(d.abs() < 1e-9 * (1.0 + bernoulli_number(k).unwrap().abs()), "k = {k}");
        }
    }

    proptest! {
        #[test]
        fn reflection_symmetry(k in 0usize..12, x in 0.0f64..1.0) {
            let a = bernoulli_polynomial(k, 1.0 - x).unwrap();
            let b = bernoulli_polynomial(k, x).unwrap();
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            prop_assert!((a - sign * b).abs() < 1e-11);
        }
    }
}
