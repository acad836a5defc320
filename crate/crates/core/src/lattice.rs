//! Star Laplacians on the discrete torus (ℤ/nℤ)², their exact spectra and
//! finite spectral sums.
//!
//! Zero-mode convention: [`spectral_zeta`] skips the eigenvalue at
//! `(k1, k2) = (0, 0)`, while [`resolvent_trace`] includes it, since the
//! shifted operator `Δ + z²` is invertible for `z > 0`.

use crate::error::{Error, Result};
use crate::summation::{par_sum_rows, par_sum_rows_real};
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

/// Which periodic stencil to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StencilVariant {
    /// Weights 4, -1 (×4).
    FivePoint,
    /// Weights 10/3, -2/3 (×4 edges), -1/6 (×4 corners).
    NinePoint,
}

impl StencilVariant {
    pub const ALL: [StencilVariant; 2] = [StencilVariant::FivePoint, StencilVariant::NinePoint];

    pub fn name(self) -> &'static str {
        match self {
            StencilVariant::FivePoint => "five",
            StencilVariant::NinePoint => "nine",
        }
    }

    /// Stencil weights `(center, edge, corner)` before the n²/(4π²) scale.
    pub fn weights(self) -> (f64, f64, f64) {
        match self {
            StencilVariant::FivePoint => (4.0, -1.0, 0.0),
            StencilVariant::NinePoint => (10.0 / 3.0, -2.0 / 3.0, -1.0 / 6.0),
        }
    }

    /// Eigenvalue from the squared sines `s1 = sin²(πk1/n)`, `s2 = sin²(πk2/n)`.
    #[inline]
    pub fn symbol(self, n: usize, s1: f64, s2: f64) -> f64 {
        let scale = (n * n) as f64 / (PI * PI);
        match self {
            StencilVariant::FivePoint => scale * (s1 + s2),
            StencilVariant::NinePoint => scale * (s1 + s2 - (2.0 / 3.0) * (s1 * s2)),
        }
    }
}

impl fmt::Display for StencilVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StencilVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "five" | "5" | "five-point" => Ok(StencilVariant::FivePoint),
            "nine" | "9" | "nine-point" => Ok(StencilVariant::NinePoint),
            other => Err(Error::Domain(format!("unknown stencil variant '{other}'"))),
        }
    }
}

/// The discrete torus with `n` points per axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TorusGrid {
    n: usize,
}

impl TorusGrid {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("grid size must be positive".into()));
        }
        Ok(TorusGrid { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `sin²(πk/n)` for `k = 0..=n/2`.
    fn half_sines(&self) -> Vec<f64> {
        let n = self.n as f64;
        (0..=self.n / 2).map(|k| (PI * k as f64 / n).sin().powi(2)).collect()
    }

    /// How many indices in `0..n` fold onto `k` under `k ↔ n-k`.
    fn multiplicity(&self, k: usize) -> f64 {
        if k == 0 || 2 * k == self.n {
            1.0
        } else {
            2.0
        }
    }
}

/// A complex-valued function on the torus, stored row-major in `(j1, j2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    n: usize,
    values: Vec<Complex64>,
}

impl GridFunction {
    pub fn from_values(n: usize, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != n * n {
            return Err(Error::Shape { expected: n * n, got: values.len() });
        }
        Ok(GridFunction { n, values })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let values = (0..n * n).map(|i| f(i / n, i % n)).collect();
        GridFunction { n, values }
    }

    /// The Fourier mode `exp(2πi(k1 j1 + k2 j2)/n)`.
    pub fn fourier_mode(n: usize, k1: usize, k2: usize) -> Self {
        Self::from_fn(n, |j1, j2| {
            // reduce the phase index exactly before scaling
            let p = ((k1 * j1 + k2 * j2) % n) as f64 / n as f64;
            Complex64::from_polar(1.0, 2.0 * PI * p)
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Periodic access.
    pub fn at(&self, j1: isize, j2: isize) -> Complex64 {
        let n = self.n as isize;
        let a = j1.rem_euclid(n) as usize;
        let b = j2.rem_euclid(n) as usize;
        self.values[a * self.n + b]
    }
}

fn check_index(n: usize, k: usize) -> Result<()> {
    if k >= n {
        return Err(Error::Range { what: "wave index", value: k as i64, range: format!("0..{n}") });
    }
    Ok(())
}

/// Exact eigenvalue of the stencil at wave numbers `(k1, k2)`.
pub fn eigenvalue(grid: TorusGrid, variant: StencilVariant, k1: usize, k2: usize) -> Result<f64> {
    check_index(grid.n, k1)?;
    check_index(grid.n, k2)?;
    let n = grid.n as f64;
    let s1 = (PI * k1 as f64 / n).sin().powi(2);
    let s2 = (PI * k2 as f64 / n).sin().powi(2);
    Ok(variant.symbol(grid.n, s1, s2))
}

/// Apply the periodic stencil, scaled by n²/(4π²).
pub fn apply_stencil(grid: TorusGrid, variant: StencilVariant, u: &GridFunction) -> Result<GridFunction> {
    if u.n != grid.n {
        return Err(Error::Shape { expected: grid.n * grid.n, got: u.values.len() });
    }
    let (c, e, d) = variant.weights();
    let scale = (grid.n * grid.n) as f64 / (4.0 * PI * PI);
    Ok(GridFunction::from_fn(grid.n, |j1, j2| {
        let (a, b) = (j1 as isize, j2 as isize);
        let edges = u.at(a + 1, b) + u.at(a - 1, b) + u.at(a, b + 1) + u.at(a, b - 1);
        let mut v = c * u.at(a, b) + e * edges;
        if d != 0.0 {
            let corners = u.at(a + 1, b + 1) + u.at(a + 1, b - 1) + u.at(a - 1, b + 1) + u.at(a - 1, b - 1);
            v += d * corners;
        }
        scale * v
    }))
}

/// Dense n²×n² matrix of the stencil operator, for cross-checks on small grids.
pub fn assemble_operator(grid: TorusGrid, variant: StencilVariant) -> DMatrix<f64> {
    let n = grid.n;
    let (c, e, d) = variant.weights();
    let scale = (n * n) as f64 / (4.0 * PI * PI);
    let mut m = DMatrix::zeros(n * n, n * n);
    let idx = |a: isize, b: isize| {
        let ni = n as isize;
        (a.rem_euclid(ni) as usize) * n + b.rem_euclid(ni) as usize
    };
    for a in 0..n as isize {
        for b in 0..n as isize {
            let row = idx(a, b);
            m[(row, row)] += scale * c;
            for (da, db) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
                m[(row, idx(a + da, b + db))] += scale * e;
            }
            if d != 0.0 {
                for (da, db) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                    m[(row, idx(a + da, b + db))] += scale * d;
                }
            }
        }
    }
    m
}

/// Σ_{(k1,k2) ≠ (0,0)} λ(k1,k2)^{-s} together with a rounding-error estimate.
pub fn spectral_zeta_with_error(grid: TorusGrid, variant: StencilVariant, s: Complex64) -> Result<(Complex64, f64)> {
    if grid.n == 1 {
        return Err(Error::Degenerate("the 1-point torus has no nonzero eigenvalue".into()));
    }
    let n = grid.n;
    let sines = grid.half_sines();
    let term = |k1: usize, k2: usize| -> Complex64 {
        let lambda = variant.symbol(n, sines[k1], sines[k2]);
        (-s * lambda.ln()).exp()
    };
    let value = par_sum_rows(sines.len(), |k1| {
        let m1 = grid.multiplicity(k1);
        let mut row = crate::summation::Kahan::new();
        for k2 in 0..sines.len() {
            if k1 == 0 && k2 == 0 {
                continue;
            }
            row.add(m1 * grid.multiplicity(k2) * term(k1, k2));
        }
        row.value()
    });
    // magnitude bound: terms scale like |λ^{-s}| = λ^{-Re s}
    let abs_sum = par_sum_rows_real(sines.len(), |k1| {
        let m1 = grid.multiplicity(k1);
        (0..sines.len())
            .filter(|&k2| k1 != 0 || k2 != 0)
            .map(|k2| m1 * grid.multiplicity(k2) * variant.symbol(n, sines[k1], sines[k2]).powf(-s.re))
            .sum::<f64>()
    });
    let err = abs_sum * f64::EPSILON * (4.0 + s.norm() * (n as f64).ln().max(1.0));
    Ok((value, err))
}

/// Spectral zeta function Σ_{(k1,k2) ≠ (0,0)} λ(k1,k2)^{-s}.
///
/// The reduction order is fixed, so the result is bit-identical for any
/// number of worker threads.
pub fn spectral_zeta(grid: TorusGrid, variant: StencilVariant, s: Complex64) -> Result<Complex64> {
    spectral_zeta_with_error(grid, variant, s).map(|(v, _)| v)
}

/// Σ_{all (k1,k2)} (λ(k1,k2) + z²)^{-α}, zero mode included.
///
/// `z = 0` is only accepted with `exclude_zero_mode`, in which case the
/// `(0,0)` term is dropped.
pub fn resolvent_trace(
    grid: TorusGrid,
    variant: StencilVariant,
    alpha: u32,
    z: f64,
    exclude_zero_mode: bool,
) -> Result<f64> {
    if alpha == 0 {
        return Err(Error::Domain("resolvent power must be at least 1".into()));
    }
    if !(z >= 0.0) || !z.is_finite() {
        return Err(Error::Domain(format!("shift z = {z} must be a finite non-negative number")));
    }
    if z == 0.0 && !exclude_zero_mode {
        return Err(Error::Domain("z = 0 requires the zero mode to be excluded".into()));
    }
    let n = grid.n;
    let z2 = z * z;
    let a = alpha as i32;
    if n == 1 {
        return Ok(if exclude_zero_mode { 0.0 } else { z2.powi(-a) });
    }
    let sines = grid.half_sines();
    Ok(par_sum_rows_real(sines.len(), |k1| {
        let m1 = grid.multiplicity(k1);
        let mut acc = 0.0;
        for k2 in 0..sines.len() {
            if exclude_zero_mode && k1 == 0 && k2 == 0 {
                continue;
            }
            acc += m1 * grid.multiplicity(k2) * (variant.symbol(n, sines[k1], sines[k2]) + z2).powi(-a);
        }
        acc
    }))
}

/// Σ_{k=1}^{n-1} ((n²/π²) sin²(πk/n))^{-s} for the circle Laplacian.
pub fn spectral_zeta_1d(n: usize, s: Complex64) -> Result<Complex64> {
    if n < 2 {
        return Err(Error::Degenerate("the 1-point circle has no nonzero eigenvalue".into()));
    }
    let scale = (n * n) as f64 / (PI * PI);
    let nf = n as f64;
    let terms: Vec<Complex64> = (1..=n / 2)
        .map(|k| {
            let lambda = scale * (PI * k as f64 / nf).sin().powi(2);
            let mult = if 2 * k == n { 1.0 } else { 2.0 };
            mult * (-s * lambda.ln()).exp()
        })
        .collect();
    Ok(crate::summation::pairwise_sum(&terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::SymmetricEigen;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eigenvalue_examples() {
        let g4 = TorusGrid::new(4).unwrap();
        for v in StencilVariant::ALL {
            assert_eq!(eigenvalue(g4, v, 0, 0).unwrap(), 0.0);
        }
        let g2 = TorusGrid::new(2).unwrap();
        let five = eigenvalue(g2, StencilVariant::FivePoint, 1, 1).unwrap();
        assert!((five - 8.0 / (PI * PI)).abs() < 1e-15);
        let nine = eigenvalue(g2, StencilVariant::NinePoint, 1, 1).unwrap();
        assert!((nine - 16.0 / (3.0 * PI * PI)).abs() < 1e-15);
        assert!(matches!(eigenvalue(g2, StencilVariant::FivePoint, 2, 0), Err(Error::Range { .. })));
    }

    #[test]
    fn spectrum_is_nonnegative_and_symmetric() {
        for n in 1..=64 {
            let g = TorusGrid::new(n).unwrap();
            for v in StencilVariant::ALL {
                for k1 in 0..n {
                    for k2 in 0..n {
                        let l = eigenvalue(g, v, k1, k2).unwrap();
                        assert!(l >= 0.0);
                        let mirror = eigenvalue(g, v, (n - k1) % n, k2).unwrap();
                        let swap = eigenvalue(g, v, k2, k1).unwrap();
                        assert!((l - mirror).abs() <= 1e-12 * (1.0 + l));
                        assert_eq!(l, swap);
                    }
                }
            }
        }
    }

    #[test]
    fn constants_are_in_the_kernel() {
        let g = TorusGrid::new(7).unwrap();
        for v in StencilVariant::ALL {
            let (c0, e, d) = v.weights();
            assert!((c0 + 4.0 * e + 4.0 * d).abs() < 1e-15);
            let u = GridFunction::from_fn(7, |_, _| c(3.5, -1.0));
            let w = apply_stencil(g, v, &u).unwrap();
            assert!(w.values().iter().all(|x| x.norm() < 1e-13));
        }
    }

    #[test]
    fn delta_response_five_point() {
        let g = TorusGrid::new(3).unwrap();
        let u = GridFunction::from_fn(3, |a, b| if a == 0 && b == 0 { c(1.0, 0.0) } else { c(0.0, 0.0) });
        let w = apply_stencil(g, StencilVariant::FivePoint, &u).unwrap();
        let scale = 9.0 / (4.0 * PI * PI);
        assert!((w.at(0, 0).re - 4.0 * scale).abs() < 1e-15);
        for (a, b) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
            assert!((w.at(a, b).re + scale).abs() < 1e-15);
        }
    }

    #[test]
    fn shape_mismatch() {
        let g = TorusGrid::new(4).unwrap();
        let u = GridFunction::from_fn(3, |_, _| c(0.0, 0.0));
        assert!(matches!(apply_stencil(g, StencilVariant::FivePoint, &u), Err(Error::Shape { .. })));
        assert!(matches!(GridFunction::from_values(3, vec![c(0.0, 0.0); 8]), Err(Error::Shape { .. })));
    }

    #[test]
    fn fourier_modes_diagonalize() {
        for n in [2, 3, 5, 8] {
            let g = TorusGrid::new(n).unwrap();
            for v in StencilVariant::ALL {
                for k1 in 0..n {
                    for k2 in 0..n {
                        let u = GridFunction::fourier_mode(n, k1, k2);
                        let w = apply_stencil(g, v, &u).unwrap();
                        let l = eigenvalue(g, v, k1, k2).unwrap();
                        for (x, y) in w.values().iter().zip(u.values()) {
                            assert!((x - l * y).norm() < 1e-12);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn spectral_zeta_small_cases() {
        let g2 = TorusGrid::new(2).unwrap();
        let z = spectral_zeta(g2, StencilVariant::FivePoint, c(1.0, 0.0)).unwrap();
        assert!((z - c(5.0 * PI * PI / 8.0, 0.0)).norm() < 1e-14);
        let g1 = TorusGrid::new(1).unwrap();
        assert!(matches!(spectral_zeta(g1, StencilVariant::NinePoint, c(1.0, 0.0)), Err(Error::Degenerate(_))));
    }

    #[test]
    fn spectral_zeta_matches_assembled_operator() {
        for n in 2..=8 {
            let g = TorusGrid::new(n).unwrap();
            for v in StencilVariant::ALL {
                let m = assemble_operator(g, v);
                assert!((&m - m.transpose()).amax() < 1e-14);
                let mut ev: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
                ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
                assert!(ev[0].abs() < 1e-12);
                for s in [c(1.3, 0.0), c(0.3, 2.0), c(-0.5, 1.0)] {
                    let from_matrix: Complex64 = ev[1..].iter().map(|&l| (-s * l.ln()).exp()).sum();
                    let from_formula = spectral_zeta(g, v, s).unwrap();
                    assert!((from_matrix - from_formula).norm() < 1e-10 * from_formula.norm().max(1.0));
                }
            }
        }
    }

    #[test]
    fn spectral_zeta_is_deterministic_across_thread_counts() {
        let g = TorusGrid::new(97).unwrap();
        let s = c(0.3, 2.0);
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| spectral_zeta(g, StencilVariant::NinePoint, s).unwrap())
        };
        let a = run(1);
        let b = run(5);
        let again = run(1);
        assert_eq!((a.re.to_bits(), a.im.to_bits()), (b.re.to_bits(), b.im.to_bits()));
        assert_eq!((a.re.to_bits(), a.im.to_bits()), (again.re.to_bits(), again.im.to_bits()));
    }

    #[test]
    fn resolvent_trace_examples() {
        let g2 = TorusGrid::new(2).unwrap();
        let t = resolvent_trace(g2, StencilVariant::FivePoint, 2, 1.0, false).unwrap();
        let want = 1.0 + 2.0 * (4.0 / (PI * PI) + 1.0).powi(-2) + (8.0 / (PI * PI) + 1.0).powi(-2);
        assert!((t - want).abs() < 1e-14);
        let g1 = TorusGrid::new(1).unwrap();
        assert!(
            (resolvent_trace(g1, StencilVariant::NinePoint, 3, 1.5, false).unwrap() - 1.5f64.powi(-6)).abs() < 1e-15
        );
        assert!(matches!(resolvent_trace(g2, StencilVariant::FivePoint, 2, 0.0, false), Err(Error::Domain(_))));
        assert!(resolvent_trace(g2, StencilVariant::FivePoint, 2, 0.0, true).is_ok());
    }

    #[test]
    fn circle_zeta_examples() {
        let z = spectral_zeta_1d(2, c(1.0, 0.0)).unwrap();
        assert!((z - c(PI * PI / 4.0, 0.0)).norm() < 1e-14);
        let z = spectral_zeta_1d(3, c(0.0, 0.0)).unwrap();
        assert!((z - c(2.0, 0.0)).norm() < 1e-15);
        assert!(matches!(spectral_zeta_1d(1, c(1.0, 0.0)), Err(Error::Degenerate(_))));
    }

    proptest! {
        #[test]
        fn row_sums_vanish(n in 2usize..20, j1 in 0usize..20, j2 in 0usize..20, nine in any::<bool>()) {
            let v = if nine { StencilVariant::NinePoint } else { StencilVariant::FivePoint };
            let m = assemble_operator(TorusGrid::new(n).unwrap(), v);
            let row = (j1 % n) * n + (j2 % n);
            let s: f64 = m.row(row).iter().sum();
            prop_assert!(s.abs() < 1e-14 * (n * n) as f64);
        }

        #[test]
        fn spectral_zeta_conjugate_symmetry(n in 2usize..40, re in -1.0f64..2.0, im in 0.0f64..10.0) {
            let g = TorusGrid::new(n).unwrap();
            let s = c(re, im);
            let a = spectral_zeta(g, StencilVariant::FivePoint, s).unwrap();
            let b = spectral_zeta(g, StencilVariant::FivePoint, s.conj()).unwrap();
            prop_assert!((a.conj() - b).norm() <= 1e-13 * a.norm().max(1.0));
        }
    }
}
