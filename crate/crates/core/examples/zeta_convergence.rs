//! ζ(Δ_n, 2) converging to the Epstein value 4ζ(2)β(2) at rate n^{-2}.

use num_complex::Complex64;
use torus_zeta::epstein::epstein_zeta_2d;
use torus_zeta::lattice::{spectral_zeta, StencilVariant, TorusGrid};

fn main() -> torus_zeta::Result<()> {
    let s = Complex64::new(2.0, 0.0);
    let limit = epstein_zeta_2d(s)?;
    println!("limit {:.15}", limit.re);
    for variant in StencilVariant::ALL {
        let mut prev: Option<f64> = None;
        for n in [32, 64, 128, 256, 512] {
            let err = (spectral_zeta(TorusGrid::new(n)?, variant, s)? - limit).norm();
            let ratio = prev.map(|p| format!("{:.3}", p / err)).unwrap_or_default();
            println!("{:>10} n={n:<4} error {err:.3e} {ratio}", variant.name());
            prev = Some(err);
        }
    }
    Ok(())
}
