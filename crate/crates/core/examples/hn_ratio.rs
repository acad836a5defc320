//! |H_n(1-s)/H_n(s)| - 1 decaying like n^{-2} off the critical line.

use num_complex::Complex64;
use torus_zeta::lab::{hn_ratio_slope, hn_ratio_study};

fn main() -> torus_zeta::Result<()> {
    let s = Complex64::new(0.3, 2.0);
    let recs = hn_ratio_study(s, &[32, 64, 128, 256, 512], 1e-12)?;
    for r in &recs {
        println!("n={:<4} ratio {:.12}  n²·defect {}", r.n.unwrap_or(0), r.value.re, r.meta["scaled_defect"]);
    }
    println!("slope {:.3}", hn_ratio_slope(&recs)?);
    Ok(())
}
