//! Deterministic summation: compensated sums on fixed-size leaves combined
//! by a balanced pairwise tree. The tree depends only on the input length,
//! so results are bit-identical for any thread count.

use num_complex::Complex64;
use rayon::prelude::*;

const LEAF: usize = 64;

/// Compensated (Kahan) accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct Kahan {
    sum: Complex64,
    comp: Complex64,
}

impl Kahan {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: Complex64) {
        let y = x - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> Complex64 {
        self.sum
    }
}

/// Balanced pairwise sum with Kahan leaves.
pub fn pairwise_sum(values: &[Complex64]) -> Complex64 {
    if values.len() <= LEAF {
        let mut k = Kahan::new();
        for &v in values {
            k.add(v);
        }
        return k.value();
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// Real-valued variant of [`pairwise_sum`].
pub fn pairwise_sum_real(values: &[f64]) -> f64 {
    if values.len() <= LEAF {
        let (mut s, mut c) = (0.0f64, 0.0f64);
        for &v in values {
            let y = v - c;
            let t = s + y;
            c = (t - s) - y;
            s = t;
        }
        return s;
    }
    let mid = values.len() / 2;
    pairwise_sum_real(&values[..mid]) + pairwise_sum_real(&values[mid..])
}

/// Sum `row(i)` for `i in 0..rows`, computing rows in parallel and reducing
/// them in a fixed order.
pub fn par_sum_rows<F>(rows: usize, row: F) -> Complex64
where
    F: Fn(usize) -> Complex64 + Sync,
{
    let partial: Vec<Complex64> = (0..rows).into_par_iter().map(&row).collect();
    pairwise_sum(&partial)
}

/// Real-valued variant of [`par_sum_rows`].
pub fn par_sum_rows_real<F>(rows: usize, row: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    let partial: Vec<f64> = (0..rows).into_par_iter().map(&row).collect();
    pairwise_sum_real(&partial)
}
