//! Checks the weight-12 example (Delta, its cubic twist and the level-9
//! newforms) and the dimension identity for the genuinely new part.

use modspec::holo::{delta_qexp, gn_dimension_cancellation, verify_twist_example};

fn main() -> modspec::Result<()> {
    let delta = delta_qexp(12)?;
    let tau: Vec<i128> = (1..=12).map(|n| delta.get(n)).collect();
    println!("tau(1..12) = {tau:?}");
    let twist = verify_twist_example()?;
    for c in twist.f_checks.iter().chain(&twist.g_checks).chain(&twist.h_checks) {
        if !c.holds {
            println!("mismatch at n={}: expected {} found {}", c.n, c.expected, c.found);
        }
    }
    println!("twist example holds: {}", twist.holds);
    let dims = gn_dimension_cancellation(40)?;
    for r in dims.rows.iter().filter(|r| r.k % 6 == 0) {
        println!("k={:>2} d9={:>2} d1={} d3={} dG3={:>2} combination={}", r.k, r.d9, r.d1, r.d3, r.d_gamma3, r.combination);
    }
    Ok(())
}
