//! Zeros of ζ(Δ, 1/2 + it) and which factor of 4ζ(s)β(s) carries them.

use num_complex::Complex64;
use torus_zeta::epstein::{epstein_zeta_2d, find_critical_zeros};

fn main() -> torus_zeta::Result<()> {
    for z in find_critical_zeros(1.0, 30.0, 0.05)? {
        let check = epstein_zeta_2d(Complex64::new(0.5, z.t))?.norm();
        println!("t = {:>18.12}  {:?}  |ζ(Δ)| = {check:.1e}", z.t, z.source);
    }
    Ok(())
}
