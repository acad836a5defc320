//! |Ω(1-s)/Ω(s)| along a horizontal line crosses 1 on the critical line.

use torus_zeta::lab::monotonicity_scan;

fn main() -> torus_zeta::Result<()> {
    let grid: Vec<f64> = (1..=21).map(|i| i as f64 / 22.0).collect();
    for b in [10.0, 70.0] {
        let scan = monotonicity_scan(b, &grid)?;
        println!(
            "b = {b}: increasing {}, crossing {:?}, exploratory {}",
            scan.strictly_increasing, scan.crossing, scan.exploratory
        );
        for r in scan.records.iter().step_by(5) {
            println!("  a = {:.3}  ratio {:.6}", r.s.re, r.value.re);
        }
    }
    Ok(())
}
