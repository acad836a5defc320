//! Exact Taylor coefficients of the lattice symbol and truncation decay.

use torus_zeta::expansion::{log_log_slope, series_truncation_check, taylor_coefficients};
use torus_zeta::lattice::StencilVariant;

fn main() -> torus_zeta::Result<()> {
    for variant in StencilVariant::ALL {
        println!("{}:", variant.name());
        for m in 0..=2 {
            for f in taylor_coefficients(m, variant)? {
                let terms: Vec<String> = f.polynomial.iter().map(|((a, b), c)| format!("{c}·x^{a}y^{b}")).collect();
                println!(
                    "  F[{m},{}] = π^{} ({})",
                    f.j,
                    2 * m,
                    if terms.is_empty() { "0".into() } else { terms.join(" + ") }
                );
            }
        }
        for big_n in 1..=3 {
            let pts = series_truncation_check(variant, big_n, (0.7, 0.4, 0.5), &[8, 16, 32, 64])?;
            let pts: Vec<(f64, f64)> = pts.iter().map(|&(n, e)| (n as f64, e)).collect();
            println!("  N={big_n}: truncation slope {:.3}", log_log_slope(&pts));
        }
    }
    Ok(())
}
