//! Prints index, cusps, elliptic points and genus of the four groups,
//! then the coset representatives of Gamma0(9) in PSL2(Z).

use modspec::group::{coset_reps, Group};

fn main() -> modspec::Result<()> {
    for g in [Group::Psl2z, Group::Gamma0(3), Group::Gamma0(9), Group::Gamma3] {
        let s = g.signature()?;
        println!(
            "{:<10} mu={:<3} cusps={} v2={} v3={} genus={} widths={:?}",
            g.to_string(), s.index, s.cusps, s.v2, s.v3, s.genus, s.cusp_widths
        );
    }
    let reps = coset_reps(&Group::Gamma0(9), &Group::Psl2z)?;
    for m in &reps {
        println!("{:?}", m.entries_i64().unwrap());
    }
    Ok(())
}
