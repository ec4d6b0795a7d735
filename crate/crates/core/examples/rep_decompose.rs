//! Decomposes the permutation representations of PGL2(F3) = S4 coming
//! from the level-9 subgroups and checks the four correspondences.

use modspec::group::Group;
use modspec::rep::{correspondence_items, decompose_named, kernel_of_w_check, pgl2f2_s3_check, Psi};

fn main() -> modspec::Result<()> {
    for g in [Group::Gamma3, Group::Gamma0(3)] {
        for psi in [Psi::Trivial, Psi::Sign] {
            let d = decompose_named(&g, psi)?;
            println!("{:<10} {psi:?}: {}", g.to_string(), d.summary());
        }
    }
    for item in correspondence_items()? {
        println!("{}: {} (expected {}) {}", item.item, item.decomposition.summary(), item.expected, item.holds);
    }
    println!("kernel of W: {}", kernel_of_w_check()?.holds);
    println!("PGL2(F2): {}", pgl2f2_s3_check()?.holds);
    Ok(())
}
