//! Evaluates the trace formula terms for each group and shows that the
//! combination X(9) + 3X(1) - 3X(3) - X(Gamma^3) vanishes term by term.

use modspec::group::Group;
use modspec::trace::{genuinely_new_residuals, trace_terms, TestFunction};

fn main() -> modspec::Result<()> {
    let t: f64 = std::env::args().nth(1).map(|s| s.parse().expect("T must be a number")).unwrap_or(2.0);
    let f = TestFunction::sinc_fourth(t)?;
    for g in [Group::Psl2z, Group::Gamma0(3), Group::Gamma0(9), Group::Gamma3] {
        let x = trace_terms(&g, &f)?;
        println!(
            "{:<10} I={:+.12} E={:+.12} P={:+.12}",
            g.to_string(),
            x.identity,
            x.elliptic2 + x.elliptic3,
            x.parabolic
        );
    }
    let gn = genuinely_new_residuals(&f)?;
    println!("I_gn={:.2e} E_gn={:.2e} P_gn={:.2e}", gn.identity, gn.elliptic, gn.parabolic);
    Ok(())
}
