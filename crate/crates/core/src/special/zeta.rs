//! Riemann zeta and Dirichlet beta.
//!
//! Both are evaluated on `Re s >= -1` from Borwein's accelerated
//! alternating series; further left the functional equations take over.

use super::bernoulli::bernoulli_number;
use super::gamma::{complex_log_gamma, ln_sin};
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::{LN_2, PI};

/// Left edge of the region served by the direct series.
pub const SERIES_EDGE: f64 = -1.0;

/// Number of Borwein terms for a target of about 1e-15 at height `t`.
/// The truncation error behaves like `5.83^{-n} e^{π|t|/2}`.
fn borwein_terms(t: f64) -> usize {
    (30.0 + 1.2 * t.abs()).ceil() as usize
}

/// Weights w_k = (d_n - d_k)/d_n from Borwein's algorithm 2, so that
/// Σ (-1)^k a_k ≈ Σ_{k<n} (-1)^k w_k a_k.
fn borwein_weights(n: usize) -> Vec<f64> {
    // term_i = n (n+i-1)! 4^i / ((n-i)! (2i)!), d_k = Σ_{i<=k} term_i
    let mut terms = Vec::with_capacity(n + 1);
    let mut t = 1.0f64;
    terms.push(t);
    for i in 1..=n {
        let (fi, fnn) = (i as f64, n as f64);
        t *= 4.0 * (fnn + fi - 1.0) * (fnn - fi + 1.0) / ((2.0 * fi) * (2.0 * fi - 1.0));
        terms.push(t);
    }
    // tail[k] = Σ_{i>k} term_i, accumulated from the top to avoid cancellation
    let mut tail = vec![0.0; n + 1];
    for k in (0..n).rev() {
        tail[k] = tail[k + 1] + terms[k + 1];
    }
    let dn = tail[0] + terms[0];
    tail.iter().take(n).map(|x| x / dn).collect()
}

fn alternating(s: Complex64, base: impl Fn(usize) -> f64) -> Complex64 {
    let n = borwein_terms(s.im);
    let w = borwein_weights(n);
    let mut acc = Complex64::new(0.0, 0.0);
    let mut comp = Complex64::new(0.0, 0.0);
    for (k, wk) in w.iter().enumerate() {
        let term = (-s * base(k).ln()).exp() * if k % 2 == 0 { *wk } else { -*wk };
        // Kahan summation
        let y = term - comp;
        let t = acc + y;
        comp = (t - acc) - y;
        acc = t;
    }
    acc
}

/// Dirichlet eta η(s) = Σ_{k>=1} (-1)^{k-1} k^{-s}.
fn eta(s: Complex64) -> Complex64 {
    alternating(s, |k| (k + 1) as f64)
}

/// Euler–Maclaurin evaluation of ζ(s); used where 1 - 2^{1-s} is small.
fn zeta_euler_maclaurin(s: Complex64) -> Complex64 {
    let big_n = (20.0 + s.im.abs()).ceil() as usize;
    let nf = big_n as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 1..big_n {
        acc += (-s * (k as f64).ln()).exp();
    }
    let n_pow = (-s * nf.ln()).exp();
    acc += n_pow * nf / (s - 1.0) + 0.5 * n_pow;
    // Σ_j B_{2j}/(2j)! s(s+1)...(s+2j-2) N^{-s-2j+1}
    let mut rising = s;
    let mut fact = 2.0;
    let mut pw = n_pow / nf;
    for j in 1..=20 {
        let b = bernoulli_number(2 * j).expect("table covers index 40");
        let term = b / fact * rising * pw;
        acc += term;
        if term.norm() < 1e-17 * acc.norm() {
            break;
        }
        let k = 2 * j as i32;
        rising *= (s + (k - 1) as f64) * (s + k as f64);
        fact *= ((k + 1) * (k + 2)) as f64;
        pw /= nf * nf;
    }
    acc
}

/// Riemann zeta ζ(s), analytically continued.
pub fn riemann_zeta(s: Complex64) -> Result<Complex64> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole { at: s });
    }
    if s.re < SERIES_EDGE {
        // ζ(s) = 2^s π^{s-1} sin(πs/2) Γ(1-s) ζ(1-s)
        let ln = s * LN_2 + (s - 1.0) * PI.ln() + ln_sin(0.5 * PI * s) + complex_log_gamma(1.0 - s)?;
        let z = riemann_zeta(1.0 - s)?;
        if s.im == 0.0 && s.re == s.re.round() && (s.re as i64) % 2 == 0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        return Ok(ln.exp() * z);
    }
    let denom = 1.0 - (Complex64::new(LN_2, 0.0) * (1.0 - s)).exp();
    if denom.norm() < 0.1 {
        return Ok(zeta_euler_maclaurin(s));
    }
    let v = eta(s) / denom;
    Ok(if s.im == 0.0 { Complex64::new(v.re, 0.0) } else { v })
}

/// Dirichlet beta β(s) = Σ_{k>=0} (-1)^k (2k+1)^{-s}. Entire.
pub fn dirichlet_beta(s: Complex64) -> Complex64 {
    if s.re < SERIES_EDGE {
        // β(s) = (π/2)^{s-1} cos(πs/2) Γ(1-s) β(1-s)
        if s.im == 0.0 && s.re == s.re.round() && (s.re as i64) % 2 != 0 {
            return Complex64::new(0.0, 0.0);
        }
        let lg = complex_log_gamma(1.0 - s).expect("1 - s has positive real part");
        let ln = (s - 1.0) * (0.5 * PI).ln() + ln_sin(0.5 * PI * s + 0.5 * PI) + lg;
        return ln.exp() * dirichlet_beta(1.0 - s);
    }
    let v = alternating(s, |k| (2 * k + 1) as f64);
    if s.im == 0.0 {
        Complex64::new(v.re, 0.0)
    } else {
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn zeta_special_values() {
        let z2 = riemann_zeta(c(2.0, 0.0)).unwrap();
        assert!(rel(z2, c(PI * PI / 6.0, 0.0)) < 1e-14);
        assert!((riemann_zeta(c(0.0, 0.0)).unwrap() - c(-0.5, 0.0)).norm() < 1e-14);
        assert!(rel(riemann_zeta(c(-1.0, 0.0)).unwrap(), c(-1.0 / 12.0, 0.0)) < 1e-13);
        assert!(riemann_zeta(c(-2.0, 0.0)).unwrap().norm() < 1e-15);
        assert!(matches!(riemann_zeta(c(1.0, 0.0)), Err(Error::Pole { .. })));
    }

    #[test]
    fn zeta_against_high_precision_values() {
        let cases = [
            (c(0.3, 66.0), c(1.465_817_269_988_582, -0.318_880_879_834_547_6)),
            (c(-0.99, 70.0), c(-25.862_011_509_850_62, 22.918_190_786_553_914)),
            (c(-2.5, 3.0), c(0.068_763_679_033_646_48, 0.133_980_283_937_834_43)),
            (c(0.5, 14.0), c(0.022_241_142_609_993_59, -0.103_258_123_266_450_06)),
            (c(1.99, 70.0), c(0.937_819_867_560_768_9, 0.162_801_140_219_052_7)),
        ];
        for (s, want) in cases {
            let got = riemann_zeta(s).unwrap();
            assert!(rel(got, want) < 1e-12, "ζ({s}) = {got}, want {want}");
        }
    }

    #[test]
    fn zeta_near_eta_denominator_zero() {
        // 1 - 2^{1-s} vanishes at s = 1 + 2πik/ln 2
        let s = c(1.0, 2.0 * PI / LN_2);
        let em = zeta_euler_maclaurin(c(1.02, 9.0));
        let series = eta(c(1.02, 9.0)) / (1.0 - (Complex64::new(LN_2, 0.0) * (1.0 - c(1.02, 9.0))).exp());
        assert!(rel(em, series) < 1e-10);
        assert!(riemann_zeta(s).unwrap().norm().is_finite());
    }

    #[test]
    fn beta_special_values() {
        assert!(rel(dirichlet_beta(c(1.0, 0.0)), c(PI / 4.0, 0.0)) < 1e-14);
        assert!(rel(dirichlet_beta(c(2.0, 0.0)), c(0.915_965_594_177_219, 0.0)) < 1e-14);
        assert!((dirichlet_beta(c(0.0, 0.0)) - c(0.5, 0.0)).norm() < 1e-14);
        // the series terms reach size ~n here, so zero is resolved to ~n²·eps
        assert!(dirichlet_beta(c(-1.0, 0.0)).norm() < 1e-13);
        assert!(dirichlet_beta(c(-3.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn beta_against_high_precision_values() {
        let cases = [
            (c(0.3, 66.0), c(5.301_666_738_753_271, 2.536_090_456_865_186_6)),
            (c(-0.99, 70.0), c(-88.124_225_046_620_63, -279.006_716_567_084_15)),
            (c(-2.5, 3.0), c(-0.130_387_523_463_939_24, 10.492_039_743_468_252)),
            (c(1.99, 70.0), c(1.016_257_597_769_366_1, 0.103_465_335_369_749_9)),
        ];
        for (s, want) in cases {
            let got = dirichlet_beta(s);
            assert!(rel(got, want) < 1e-12, "β({s}) = {got}, want {want}");
        }
    }

    #[test]
    fn continuation_overlap() {
        // both branches are valid on -1.5 < Re s < -0.5; compare the reflected
        // evaluation against the direct series there
        for &(re, im) in &[(-0.8, 3.0), (-0.9, 25.0), (-0.6, 60.0)] {
            let s = c(re, im);
            let direct = eta(s) / (1.0 - (Complex64::new(LN_2, 0.0) * (1.0 - s)).exp());
            let ln = s * LN_2 + (s - 1.0) * PI.ln() + ln_sin(0.5 * PI * s) + complex_log_gamma(1.0 - s).unwrap();
            let reflected = ln.exp() * riemann_zeta(1.0 - s).unwrap();
            assert!(rel(direct, reflected) < 1e-10, "{s}");

            let bd = alternating(s, |k| (2 * k + 1) as f64);
            let lnb =
                (s - 1.0) * (0.5 * PI).ln() + ln_sin(0.5 * PI * s + 0.5 * PI) + complex_log_gamma(1.0 - s).unwrap();
            let br = lnb.exp() * dirichlet_beta(1.0 - s);
            assert!(rel(bd, br) < 1e-10, "{s}");
        }
    }

    proptest! {
        #[test]
        fn schwarz_reflection(re in -3.0f64..3.0, im in 0.1f64..90.0) {
            let s = c(re, im);
            let z = riemann_zeta(s).unwrap();
            let zc = riemann_zeta(s.conj()).unwrap();
            prop_assert!((z.conj() - zc).norm() <= 1e-14 * z.norm());
            let b = dirichlet_beta(s);
            let bc = dirichlet_beta(s.conj());
            prop_assert!((b.conj() - bc).norm() <= 1e-14 * b.norm());
        }
    }
}
