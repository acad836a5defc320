//! Euler-Maclaurin with an explicit remainder for u(x) = 1/(1+x²).

use num_complex::Complex64;
use torus_zeta::expansion::em_terms;

fn main() -> torus_zeta::Result<()> {
    let u = |x: f64| 1.0 / (1.0 + x * x);
    // u^{(k)}(x) = (-1)^k k! Im (x - i)^{-k-1}
    let du = |k: usize, x: f64| {
        let fact: f64 = (1..=k).map(|j| j as f64).product();
        let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
        sign * fact * Complex64::new(x, -1.0).powi(-(k as i32) - 1).im
    };
    let n = 10;
    let sum: f64 = (0..=n).map(|i| u(i as f64)).sum();
    for m in 1..=4 {
        let t = em_terms(m, n, true, &u, &du)?;
        println!(
            "M={m}: integral {:.12} endpoints {:.12} bernoulli {:+.3e} remainder {:+.3e} total-sum {:.1e}",
            t.integral,
            t.endpoint,
            t.bernoulli,
            t.remainder,
            t.total() - sum
        );
    }
    Ok(())
}
