//! Finds the first Maass cusp form on PSL2(Z) and prints its leading
//! Hecke eigenvalues. Below R = 12 there is no even one.

use modspec::maass::{find_eigenvalues, Parity, SolverConfig};

fn main() -> modspec::Result<()> {
    let cfg = SolverConfig::default();
    for (parity, lo, hi) in [(Parity::Odd, 9.45, 9.6), (Parity::Even, 9.0, 12.0)] {
        for c in find_eigenvalues(1, lo, hi, parity, &cfg)? {
            println!("{parity:?} R={:.10} residual={:.1e}", c.r, c.residual);
            for n in 2..=7 {
                println!("  a({n}) = {:+.8}", c.coeff(n).re);
            }
            println!("  a(2)a(3) - a(6) = {:.1e}", (c.coeff(2) * c.coeff(3) - c.coeff(6)).norm());
        }
    }
    Ok(())
}
