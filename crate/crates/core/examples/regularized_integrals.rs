//! Hadamard-regularized integrals over (0, ∞) and the scaling rule.

use num_complex::Complex64;
use torus_zeta::quadrature::regularized::{
    change_of_variables_check, regularized_integral, AsymptoticDescriptor, DescriptorTerm, IntegrandSpec, Location,
};

fn main() -> torus_zeta::Result<()> {
    // x^{-3/2} e^{-x}: regularized value Γ(-1/2) = -2√π
    let f = IntegrandSpec::real(|x| x.powf(-1.5) * (-x).exp())
        .with_zero(AsymptoticDescriptor::powers(Location::AtZero, &[(-1.5, 1.0)])?)?;
    let r = regularized_integral(&f, 1e-12)?;
    println!(
        "⨍ x^(-3/2) e^(-x) = {:.14} (error estimate {:.1e}), -2√π = {:.14}",
        r.value.re,
        r.error,
        -2.0 * std::f64::consts::PI.sqrt()
    );

    // log x / (1+x): x^{-1} log x at infinity picks up log² λ / 2 under scaling
    let g = IntegrandSpec::real(|x| x.ln() / (1.0 + x)).with_infinity(AsymptoticDescriptor::new(
        Location::AtInfinity,
        vec![DescriptorTerm::new(Complex64::new(-1.0, 0.0), 1, Complex64::new(1.0, 0.0))],
    )?)?;
    for lambda in [0.5, 2.0, 10.0] {
        let (lhs, rhs) = change_of_variables_check(&g, lambda, 1e-12)?;
        println!("λ = {lambda:>4}: lhs {:.14}  rhs {:.14}", lhs.re, rhs.re);
    }
    Ok(())
}
