//! Residual of the three-term expansion inside the critical strip.

use num_complex::Complex64;
use torus_zeta::expansion::expansion_study;
use torus_zeta::lattice::StencilVariant;

fn main() -> torus_zeta::Result<()> {
    let s = Complex64::new(0.3, 2.0);
    for variant in StencilVariant::ALL {
        let r = expansion_study(s, variant, &[32, 64, 128, 256], 1, 1e-12)?;
        println!("{}: leading {:.12}, b1 {:.12}", variant.name(), r.leading, r.b1);
        for (n, res) in &r.residuals {
            println!("  n={n:<4} |residual| {res:.3e}");
        }
        println!("  log-log slope {:.3}", r.slope);
    }
    Ok(())
}
