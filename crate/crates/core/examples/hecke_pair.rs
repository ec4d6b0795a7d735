//! Builds the pair (F+, F-) from a level-9 expansion supported on
//! n = 1 mod 3 and checks parity, the relation c-(n) = chi3(n) c+(n) and
//! orthogonality.

use modspec::hecke::{build_pair, pair_inner_product, Coefficient, Eisenstein, FourierExpansion};
use modspec::special::DirichletCharacter;

fn main() -> modspec::Result<()> {
    let phi = FourierExpansion::from_fn(0.0, 9, 30, |n| {
        if n.rem_euclid(3) == 1 { Eisenstein::from_i64((n * 7).rem_euclid(11) - 5) } else { Eisenstein::from_i64(0) }
    });
    let (plus, minus) = build_pair(&phi)?;
    println!("F+ {:?}, F- {:?}", plus.parity, minus.parity);
    let chi = DirichletCharacter::chi3();
    let related = plus.iter().all(|(n, c)| minus.get(n) == Eisenstein::from_i64(chi.value(n).re.round() as i64) * c.clone());
    println!("c-(n) = chi3(n) c+(n): {related}");
    println!("<F+, F-> = {:.3e}", pair_inner_product(&plus, &minus).norm());
    for n in [-5, -4, -2, -1, 1, 2, 4, 5] {
        println!("n={n:>3}  c+ = {:+}  c- = {:+}", plus.get(n).to_complex().re, minus.get(n).to_complex().re);
    }
    Ok(())
}
