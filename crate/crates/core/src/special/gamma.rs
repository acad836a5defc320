//! Gamma, log-Gamma and digamma on the complex plane.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;

// Lanczos coefficients for g = 7, n = 9 (Godfrey's set, as distributed with
// GSL and most reference implementations).
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

// B_{2k} / (2k (2k-1)) for the Stirling series, k = 1..10.
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43_867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
];

// B_{2k} / (2k) for the digamma asymptotic series, k = 1..10.
const DIGAMMA_ASYM: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32_760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
    43_867.0 / 14_364.0,
    -174_611.0 / 6600.0,
];

/// Modulus beyond which the asymptotic series are used without shifting.
const ASYMPTOTIC_RADIUS: f64 = 16.0;

fn is_pole(s: Complex64) -> bool {
    s.im == 0.0 && s.re <= 0.0 && s.re == s.re.round()
}

/// `ln sin(z)` without overflow for large `|Im z|`. The branch is arbitrary
/// modulo `2πi`, which is all exponentiating callers need.
pub(crate) fn ln_sin(z: Complex64) -> Complex64 {
    let i = Complex64::i();
    if z.im.abs() < 20.0 {
        return z.sin().ln();
    }
    if z.im > 0.0 {
        // sin z = e^{-iz} (e^{2iz} - 1) / (2i), with |e^{2iz}| tiny
        -i * z + ((2.0 * i * z).exp() - 1.0).ln() - (2.0 * i).ln()
    } else {
        ln_sin(z.conj()).conj()
    }
}

/// `cot(πz)` that stays finite for large `|Im z|`.
pub(crate) fn cot_pi(z: Complex64) -> Complex64 {
    if z.im < 0.0 {
        return cot_pi(z.conj()).conj();
    }
    let w = (Complex64::new(0.0, 2.0 * PI) * z).exp();
    Complex64::i() * (w + 1.0) / (w - 1.0)
}

fn lanczos_ln(z: Complex64) -> Complex64 {
    // valid for Re z >= 1/2
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS_COEF[0], 0.0);
    for (k, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        x += c / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

/// Γ(s) for complex `s`.
///
/// Lanczos approximation near the real axis, reflection for `Re s < 1/2`.
/// Away from the axis the Lanczos sum loses digits, so `|Im s| > 8` goes
/// through the shifted Stirling series instead.
pub fn complex_gamma(s: Complex64) -> Result<Complex64> {
    if is_pole(s) {
        return Err(Error::Pole { at: s });
    }
    if s.im.abs() > 8.0 {
        return Ok(complex_log_gamma(s)?.exp());
    }
    if s.re < 0.5 {
        // Γ(s) = π / (sin(πs) Γ(1-s))
        let ln = PI.ln() - ln_sin(PI * s) - lanczos_ln(1.0 - s);
        return Ok(ln.exp());
    }
    if s.im == 0.0 && s.re < 30.0 {
        return Ok(Complex64::new(lanczos_ln(s).re.exp(), 0.0));
    }
    Ok(lanczos_ln(s).exp())
}

/// ln Γ(s) on the branch that is continuous in the right half-plane and
/// real on the positive axis. Left of `Re s = 0` the value is only defined
/// modulo `2πi`.
pub fn complex_log_gamma(s: Complex64) -> Result<Complex64> {
    if is_pole(s) {
        return Err(Error::Pole { at: s });
    }
    if s.re < 0.0 {
        return Ok(PI.ln() - ln_sin(PI * s) - complex_log_gamma(1.0 - s)?);
    }
    let mut z = s;
    let mut shift = Complex64::new(0.0, 0.0);
    while z.norm() < ASYMPTOTIC_RADIUS {
        shift += z.ln();
        z += 1.0;
    }
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pw = inv;
    for &c in &STIRLING {
        series += c * pw;
        pw *= inv2;
    }
    Ok((z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln() + series - shift)
}

/// Digamma ψ(s) = Γ'(s)/Γ(s).
pub fn digamma(s: Complex64) -> Result<Complex64> {
    if is_pole(s) {
        return Err(Error::Pole { at: s });
    }
    if s.re < 0.0 {
        // ψ(s) = ψ(1-s) - π cot(πs)
        return Ok(digamma(1.0 - s)? - PI * cot_pi(s));
    }
    let mut z = s;
    let mut shift = Complex64::new(0.0, 0.0);
    while z.norm() < ASYMPTOTIC_RADIUS {
        shift += 1.0 / z;
        z += 1.0;
    }
    let inv2 = 1.0 / (z * z);
    let mut series = Complex64::new(0.0, 0.0);
    let mut pw = inv2;
    for &c in &DIGAMMA_ASYM {
        series += c * pw;
        pw *= inv2;
    }
    Ok(z.ln() - 0.5 / z - series - shift)
}
