//! Numerical experiments around the Ω-ratio and the H_n-ratio.
//!
//! Ω(1-s)/Ω(s) has three algebraically equal forms; the lab evaluates all
//! of them, scans the modulus along horizontal lines in the strip and
//! follows |H_n(1-s)/H_n(s)| as the torus is refined.

use crate::epstein::{complete_xi, epstein_zeta_2d, find_critical_zeros, omega};
use crate::error::{Error, Result};
use crate::expansion::{h_function, log_log_slope};
use num_complex::Complex64;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::f64::consts::PI;

/// Quantity names a [`ScanRecord`] may carry.
pub const QUANTITIES: [&str; 25] = [
    "omega_ratio",
    "q",
    "eta",
    "rho",
    "hn_ratio",
    "xi_defect",
    "zero",
    "hn",
    "zeta",
    "zeta1d",
    "epstein",
    "epstein_direct",
    "xi",
    "omega",
    "a",
    "b0",
    "b1",
    "b1tilde",
    "angular",
    "expansion_residual",
    "expansion_slope",
    "em_lhs",
    "em_rhs",
    "leading_L",
    "v_factor",
];

/// One row of a scan.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanRecord {
    pub s: Complex64,
    /// One of [`QUANTITIES`].
    pub quantity: &'static str,
    pub value: Complex64,
    pub n: Option<usize>,
    /// Error estimate where one is available.
    pub err_est: Option<f64>,
    pub meta: BTreeMap<String, String>,
}

impl ScanRecord {
    pub fn new(s: Complex64, quantity: &'static str, value: Complex64) -> Self {
        debug_assert!(QUANTITIES.contains(&quantity));
        ScanRecord { s, quantity, value, n: None, err_est: None, meta: BTreeMap::new() }
    }

    pub fn with_n(mut self, n: usize) -> Self {
        self.n = Some(n);
        self
    }

    pub fn with_meta(mut self, key: &str, value: impl ToString) -> Self {
        self.meta.insert(key.to_string(), value.to_string());
        self
    }
}

fn nonzero(v: Complex64, factor: &'static str, at: Complex64) -> Result<Complex64> {
    if v == Complex64::new(0.0, 0.0) || !v.re.is_finite() || !v.im.is_finite() {
        return Err(Error::ZeroDenominator { factor, at });
    }
    Ok(v)
}

/// Ω(1-s)/Ω(s) evaluated three ways.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OmegaRatioRoutes {
    /// `s(s-1)/π² · ζ(Δ,s+1)/ζ(Δ,s-1)`
    pub shifted_up: Complex64,
    /// `π²/(s(s-1)) · ζ(Δ,-s)/ζ(Δ,2-s)`
    pub shifted_down: Complex64,
    /// `Ω(1-s)/Ω(s)` from the definition.
    pub direct: Complex64,
}

impl OmegaRatioRoutes {
    /// Largest pairwise relative disagreement.
    pub fn spread(&self) -> f64 {
        let r = [self.shifted_up, self.shifted_down, self.direct];
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in i + 1..3 {
                worst = worst.max((r[i] - r[j]).norm() / r[i].norm().max(r[j].norm()));
            }
        }
        worst
    }
}

fn check_not_pole(s: Complex64) -> Result<()> {
    if s == Complex64::new(0.0, 0.0) || s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole { at: s });
    }
    Ok(())
}

pub fn omega_ratio_routes(s: Complex64) -> Result<OmegaRatioRoutes> {
    check_not_pole(s)?;
    let k = s * (s - 1.0) / (PI * PI);
    let shifted_up = k * epstein_zeta_2d(s + 1.0)? / nonzero(epstein_zeta_2d(s - 1.0)?, "ζ(Δ,s-1)", s)?;
    let shifted_down = epstein_zeta_2d(-s)? / (k * nonzero(epstein_zeta_2d(2.0 - s)?, "ζ(Δ,2-s)", s)?);
    let direct = omega(1.0 - s)? / nonzero(omega(s)?, "Ω(s)", s)?;
    Ok(OmegaRatioRoutes { shifted_up, shifted_down, direct })
}

/// Ω(1-s)/Ω(s) via the upward-shifted form.
pub fn omega_ratio(s: Complex64) -> Result<Complex64> {
    check_not_pole(s)?;
    let k = s * (s - 1.0) / (PI * PI);
    Ok(k * epstein_zeta_2d(s + 1.0)? / nonzero(epstein_zeta_2d(s - 1.0)?, "ζ(Δ,s-1)", s)?)
}

/// q(s) = |π²/(s(s-1))|.
pub fn q_factor(s: Complex64) -> Result<f64> {
    check_not_pole(s)?;
    Ok(PI * PI / (s * (s - 1.0)).norm())
}

/// Numerator of ∂_a q(a+ib)²; the denominator is positive, so this fixes the sign.
pub fn q_squared_derivative_numerator(a: f64, b: f64) -> f64 {
    -PI.powi(4) * (4.0 * a.powi(3) - 6.0 * a * a + 2.0 * a + 4.0 * b * b * a - 2.0 * b * b)
}

/// η(s) = |ζ(Δ,s+1)/ζ(Δ,s-1)|.
pub fn eta_factor(s: Complex64) -> Result<f64> {
    Ok((epstein_zeta_2d(s + 1.0)? / nonzero(epstein_zeta_2d(s - 1.0)?, "ζ(Δ,s-1)", s)?).norm())
}

/// ρ(s) = |ζ(Δ,2-s)/ζ(Δ,-s)|.
pub fn rho_factor(s: Complex64) -> Result<f64> {
    Ok((epstein_zeta_2d(2.0 - s)? / nonzero(epstein_zeta_2d(-s)?, "ζ(Δ,-s)", s)?).norm())
}

/// |ξ₂(s) - ξ₂(1-s)| / (1 + |ξ₂(s)|).
pub fn xi_defect(s: Complex64) -> Result<f64> {
    let a = complete_xi(s)?;
    Ok((a - complete_xi(1.0 - s)?).norm() / (1.0 + a.norm()))
}

/// Slack below which consecutive values count as tied.
pub const MONOTONE_SLACK: f64 = 1e-12;

/// Below this height a scan is outside the proven regime and only exploratory.
pub const EXPLORATORY_BELOW: f64 = 65.0;

#[derive(Debug, Clone, PartialEq)]
pub struct MonotonicityScan {
    pub b: f64,
    /// `omega_ratio` records, in grid order, with the modulus in `value.re`.
    pub records: Vec<ScanRecord>,
    /// Each value exceeds the previous by more than [`MONOTONE_SLACK`].
    pub strictly_increasing: bool,
    /// `a` where |ratio| crosses 1, linearly interpolated between grid points.
    pub crossing: Option<f64>,
    pub exploratory: bool,
}

/// |Ω(1-s)/Ω(s)| along `s = a + ib` for `a` in `a_grid`.
pub fn monotonicity_scan(b: f64, a_grid: &[f64]) -> Result<MonotonicityScan> {
    let exploratory = b <= EXPLORATORY_BELOW;
    let records = a_grid
        .par_iter()
        .map(|&a| {
            let s = Complex64::new(a, b);
            let m = omega_ratio(s)?.norm();
            Ok(ScanRecord::new(s, "omega_ratio", Complex64::new(m, 0.0)).with_meta("exploratory", exploratory))
        })
        .collect::<Result<Vec<_>>>()?;
    let mods: Vec<f64> = records.iter().map(|r| r.value.re).collect();
    let strictly_increasing = mods.windows(2).all(|w| w[1] - w[0] > MONOTONE_SLACK);
    let crossing = (0..mods.len().saturating_sub(1)).find_map(|i| {
        let (d0, d1) = (mods[i] - 1.0, mods[i + 1] - 1.0);
        if d0 <= 0.0 && d1 > 0.0 {
            let (a0, a1) = (a_grid[i], a_grid[i + 1]);
            Some(a0 + (a1 - a0) * (-d0) / (d1 - d0))
        } else {
            None
        }
    });
    Ok(MonotonicityScan { b, records, strictly_increasing, crossing, exploratory })
}

/// Distance under which an `s` counts as sitting on a critical zero.
pub const NEAR_ZERO: f64 = 0.05;

fn nearest_critical_zero(s: Complex64) -> Result<Option<f64>> {
    if (s.re - 0.5).abs() >= NEAR_ZERO || s.im.abs() < 1.0 {
        return Ok(None);
    }
    let t = s.im.abs();
    let zeros = find_critical_zeros(t - NEAR_ZERO, t + NEAR_ZERO, 0.01)?;
    Ok(zeros
        .iter()
        .map(|z| z.t)
        .filter(|zt| Complex64::new(s.re - 0.5, t - zt).norm() < NEAR_ZERO)
        .min_by(|x, y| (x - t).abs().total_cmp(&(y - t).abs()))
        .map(|zt| zt.copysign(s.im)))
}

/// |H_n(1-s)/H_n(s)| for each `n`, with `|ratio - 1|·n²` in the metadata.
///
/// Records within [`NEAR_ZERO`] of a critical zero are tagged with the zero
/// and carry |Ω(1-s)/Ω(s)|, the limit the ratio approaches there.
pub fn hn_ratio_study(s: Complex64, n_list: &[usize], tol: f64) -> Result<Vec<ScanRecord>> {
    if !(s.re > 0.0 && s.re < 1.0) {
        return Err(Error::Domain(format!("H_n ratio needs 0 < Re s < 1, got {s}")));
    }
    let near = nearest_critical_zero(s)?;
    let fallback = match near {
        Some(_) => Some(omega_ratio(s)?.norm()),
        None => None,
    };
    let mut out = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let den = h_function(s, n, tol)?;
        if den == Complex64::new(0.0, 0.0) {
            return Err(Error::ZeroDenominator { factor: "H_n(s)", at: s });
        }
        let ratio = (h_function(1.0 - s, n, tol)? / den).norm();
        let nf = n as f64;
        let mut rec = ScanRecord::new(s, "hn_ratio", Complex64::new(ratio, 0.0))
            .with_n(n)
            .with_meta("scaled_defect", format!("{:.17e}", (ratio - 1.0).abs() * nf * nf))
            .with_meta("tol", tol);
        if let (Some(t0), Some(f)) = (near, fallback) {
            rec = rec.with_meta("near_zero", t0).with_meta("omega_ratio", format!("{f:.17e}"));
        }
        out.push(rec);
    }
    Ok(out)
}

/// Log-log slope of `| |ratio| - 1 |` against `n` for an [`hn_ratio_study`].
pub fn hn_ratio_slope(records: &[ScanRecord]) -> Result<f64> {
    let pts: Vec<(f64, f64)> = records.iter().map(|r| (r.n.unwrap_or(0) as f64, (r.value.re - 1.0).abs())).collect();
    if pts.len() < 2 || pts.iter().any(|&(n, d)| !(n > 0.0 && d > 0.0)) {
        return Err(Error::Shape { expected: 2, got: pts.len() });
    }
    Ok(log_log_slope(&pts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn unit_modulus_on_the_critical_line() {
        for b in [5.0, 10.0, 66.0, 70.0, 100.0] {
            let r = omega_ratio(c(0.5, b)).unwrap();
            assert!((r.norm() - 1.0).abs() < 1e-10, "b={b}: {}", r.norm());
        }
    }

    #[test]
    fn routes_agree() {
        for s in [c(0.3, 66.0), c(0.2, 3.0), c(0.8, 15.0), c(0.5, 0.7)] {
            let r = omega_ratio_routes(s).unwrap();
            assert!(r.spread() < 1e-10, "{s}: {r:?}");
        }
        let s = c(0.3, 66.0);
        assert!((omega_ratio(s.conj()).unwrap() - omega_ratio(s).unwrap().conj()).norm() < 1e-12);
    }

    #[test]
    fn factor_moduli_compose() {
        let s = c(0.3, 66.0);
        let r = omega_ratio(s).unwrap().norm();
        assert!((r - eta_factor(s).unwrap() / q_factor(s).unwrap()).abs() < 1e-12 * r);
        assert!((r - q_factor(s).unwrap() / rho_factor(s).unwrap()).abs() < 1e-12 * r);
    }

    #[test]
    fn q_factor_values() {
        // |(0.5+i)(-0.5+i)| = |-1.25| = 1.25
        assert!((q_factor(c(0.5, 1.0)).unwrap() - PI * PI / 1.25).abs() < 1e-14);
        let grid: Vec<f64> = (1..100).map(|i| i as f64 / 100.0).collect();
        let best =
            grid.iter().copied().max_by(|&x, &y| q_factor(c(x, 1.0)).unwrap().total_cmp(&q_factor(c(y, 1.0)).unwrap()));
        assert_eq!(best, Some(0.5));
        assert!(matches!(q_factor(c(1.0, 0.0)), Err(Error::Pole { .. })));
    }

    #[test]
    fn q_derivative_sign_on_both_halves() {
        // numerator = -2π⁴ (2a-1)(a² - a + b²); the second factor is positive
        // on (0,1) only once b² > 1/4
        for b in [0.51, 1.0, 70.0] {
            for a in [0.01, 0.1, 0.25, 0.45] {
                assert!(q_squared_derivative_numerator(a, b) > 0.0, "a={a} b={b}");
            }
            for a in [0.55, 0.75, 0.9, 0.99] {
                assert!(q_squared_derivative_numerator(a, b) < 0.0, "a={a} b={b}");
            }
        }
        // b = 0.3: a² - a + b² changes sign at a = 0.1, so q² is not
        // increasing on all of (0, 1/2)
        assert!(q_squared_derivative_numerator(0.25, 0.3) < 0.0);
        assert!(q_factor(c(0.05, 0.3)).unwrap() > q_factor(c(0.2, 0.3)).unwrap());
    }

    #[test]
    fn eta_and_rho_monotone_at_b70() {
        let right: Vec<f64> =
            (0..21).map(|i| 0.5 + 0.025 * i as f64).map(|a| eta_factor(c(a, 70.0)).unwrap()).collect();
        assert!(right.windows(2).all(|w| w[1] > w[0]));
        let left: Vec<f64> = (0..21).map(|i| 0.5 * i as f64 / 20.0).map(|a| rho_factor(c(a, 70.0)).unwrap()).collect();
        assert!(left.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn monotone_scan_at_70() {
        let grid: Vec<f64> = (0..101).map(|i| 0.01 + 0.98 * i as f64 / 100.0).collect();
        let scan = monotonicity_scan(70.0, &grid).unwrap();
        assert!(scan.strictly_increasing);
        assert!(!scan.exploratory);
        let cross = scan.crossing.unwrap();
        assert!((cross - 0.5).abs() < 0.0098 + 1e-12, "{cross}");
        for r in &scan.records {
            if r.s.re < 0.5 - 1e-9 {
                assert!(r.value.re < 1.0);
            } else if r.s.re > 0.5 + 1e-9 {
                assert!(r.value.re > 1.0);
            }
        }
    }

    #[test]
    fn low_scan_is_exploratory() {
        let scan = monotonicity_scan(0.1, &[0.2, 0.4, 0.6]).unwrap();
        assert!(scan.exploratory);
        assert!(scan.records.iter().all(|r| r.meta["exploratory"] == "true"));
    }

    #[test]
    fn trivial_zero_denominator() {
        // ζ(Δ,-2) = 0, the denominator of the upward route at s = -1
        assert!(matches!(omega_ratio(c(-1.0, 0.0)), Err(Error::ZeroDenominator { .. })));
    }

    #[test]
    fn hn_ratio_tends_to_one() {
        let s = c(0.3, 2.0);
        let recs = hn_ratio_study(s, &[32, 64, 128], 1e-12).unwrap();
        let defects: Vec<f64> = recs.iter().map(|r| (r.value.re - 1.0).abs()).collect();
        assert!(defects.windows(2).all(|w| w[1] < w[0]), "{defects:?}");
        let slope = hn_ratio_slope(&recs).unwrap();
        assert!((-2.6..=-1.4).contains(&slope), "{slope}");
        assert!(recs.iter().all(|r| !r.meta.contains_key("near_zero")));
        let mirrored = hn_ratio_study(s.conj(), &[32], 1e-12).unwrap();
        assert!((mirrored[0].value.re - recs[0].value.re).abs() < 1e-12);
    }

    #[test]
    fn hn_ratio_near_a_zero_is_tagged() {
        let zeros = find_critical_zeros(5.0, 7.0, 0.1).unwrap();
        let t0 = zeros[0].t;
        let recs = hn_ratio_study(c(0.5, t0), &[16], 1e-12).unwrap();
        assert!(recs[0].meta.contains_key("near_zero"));
        let f: f64 = recs[0].meta["omega_ratio"].parse().unwrap();
        assert!((f - 1.0).abs() < 1e-9);
    }

    proptest! {
        #[test]
        fn rho_is_eta_reflected(a in 0.02f64..0.98, b in 0.5f64..80.0) {
            let s = c(a, b);
            let rho = rho_factor(s).unwrap();
            let eta = eta_factor(1.0 - s).unwrap();
            prop_assert!((rho - eta).abs() <= 1e-12 * rho);
            prop_assert!((eta_factor(s.conj()).unwrap() - eta_factor(s).unwrap()).abs() <= 1e-12 * eta_factor(s).unwrap());
        }

        #[test]
        fn q_derivative_matches_finite_difference(a in 0.02f64..0.98, b in 0.3f64..5.0) {
            let h = 1e-6;
            let q2 = |x: f64| q_factor(c(x, b)).unwrap().powi(2);
            let fd = (q2(a + h) - q2(a - h)) / (2.0 * h);
            let num = q_squared_derivative_numerator(a, b);
            prop_assume!(num.abs() > 1e-6 * PI.powi(4));
            prop_assert_eq!(fd > 0.0, num > 0.0);
        }
    }
}
