//! Stencil eigenvalues on a small torus, checked against the dense operator.

use nalgebra::SymmetricEigen;
use torus_zeta::lattice::{assemble_operator, eigenvalue, StencilVariant, TorusGrid};

fn main() -> torus_zeta::Result<()> {
    let n = 6;
    let grid = TorusGrid::new(n)?;
    for variant in StencilVariant::ALL {
        let mut symbols = Vec::new();
        for k1 in 0..n {
            for k2 in 0..n {
                symbols.push(eigenvalue(grid, variant, k1, k2)?);
            }
        }
        symbols.sort_by(f64::total_cmp);
        let mut dense: Vec<f64> =
            SymmetricEigen::new(assemble_operator(grid, variant)).eigenvalues.iter().copied().collect();
        dense.sort_by(f64::total_cmp);
        let gap = symbols.iter().zip(&dense).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        println!(
            "{:>10}: smallest nonzero {:.6}, largest {:.6}, max gap to dense {gap:.2e}",
            variant.name(),
            symbols[1],
            symbols[n * n - 1]
        );
    }
    Ok(())
}
