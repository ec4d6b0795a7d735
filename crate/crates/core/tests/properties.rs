//! Property tests over randomly generated group elements and coefficient data.

use modspec::group::{classify_element, decompose_st, Group, ProjMatrix};
use modspec::hecke::{
    build_pair, hecke_tp, reflect_j, script_tp, t13_action, t13_power, twist_by_coeffs, twist_by_sum, Eisenstein,
    FourierExpansion,
};
use modspec::holo::QuadInt;
use modspec::rep::Mat2;
use modspec::special::{gauss_sum, DirichletCharacter};
use modspec::trace::{g_closed_form, TestFunction};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;

fn word_matrix(word: &[i64]) -> ProjMatrix {
    word.iter().fold(ProjMatrix::identity(), |m, &k| m.mul(&ProjMatrix::s()).mul(&ProjMatrix::t().pow(k)))
}

fn element() -> impl Strategy<Value = ProjMatrix> {
    prop::collection::vec(-4i64..=4, 0..8).prop_map(|w| word_matrix(&w))
}

fn rational_expansion(level: u64, m: usize) -> impl Strategy<Value = FourierExpansion<BigRational>> {
    prop::collection::vec(-20i64..=20, 2 * m).prop_map(move |v| {
        FourierExpansion::from_fn(0.0, level, m, |n| {
            let i = if n > 0 { (n - 1) as usize } else { m + (-n - 1) as usize };
            BigRational::from_integer(BigInt::from(v[i]))
        })
    })
}

fn eisenstein_expansion(m: usize) -> impl Strategy<Value = FourierExpansion<Eisenstein>> {
    prop::collection::vec((-9i64..=9, -9i64..=9), 2 * m).prop_map(move |v| {
        FourierExpansion::from_fn(0.0, 9, m, |n| {
            let i = if n > 0 { (n - 1) as usize } else { m + (-n - 1) as usize };
            let int = |x: i64| BigRational::from_integer(BigInt::from(x));
            Eisenstein::new(int(v[i].0), int(v[i].1))
        })
    })
}

fn chi3_at(n: i64) -> Eisenstein {
    use modspec::hecke::Coefficient;
    Eisenstein::from_i64(DirichletCharacter::chi3().value(n).re.round() as i64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn st_decomposition_round_trips(m in element()) {
        prop_assert_eq!(decompose_st(&m).unwrap().evaluate(), m);
    }

    #[test]
    fn gamma3_definitions_agree(m in element()) {
        let h = decompose_st(&m).unwrap().h_mod3();
        prop_assert_eq!(h == 0, Group::Gamma3.contains(&m).unwrap());
    }

    #[test]
    fn h_mod3_is_a_homomorphism(a in element(), b in element()) {
        let ha = decompose_st(&a).unwrap().h_mod3();
        let hb = decompose_st(&b).unwrap().h_mod3();
        prop_assert_eq!(decompose_st(&a.mul(&b)).unwrap().h_mod3(), (ha + hb) % 3);
    }

    #[test]
    fn element_type_is_conjugation_invariant(m in element(), h in element()) {
        prop_assert_eq!(classify_element(&m).unwrap(), classify_element(&h.conjugate(&m)).unwrap());
    }

    #[test]
    fn reduction_mod3_is_a_homomorphism(a in element(), b in element()) {
        let r = |m: &ProjMatrix| Mat2::reduce(m, 3).unwrap();
        prop_assert_eq!(r(&a.mul(&b)), r(&a).mul(&r(&b)));
    }

    #[test]
    fn hecke_operators_commute(e in rational_expansion(9, 70)) {
        let ab = hecke_tp(&hecke_tp(&e, 2).unwrap(), 5).unwrap();
        let ba = hecke_tp(&hecke_tp(&e, 5).unwrap(), 2).unwrap();
        prop_assert_eq!(ab, ba);
    }

    #[test]
    fn t13_and_j_relations(e in eisenstein_expansion(30)) {
        prop_assert_eq!(&t13_power(&e, 3).unwrap(), &e);
        prop_assert_eq!(&reflect_j(&reflect_j(&e)), &e);
        let conj = reflect_j(&t13_action(&reflect_j(&e)).unwrap());
        prop_assert_eq!(conj, t13_power(&e, -1).unwrap());
    }

    #[test]
    fn script_tp_commutes_with_t13(e in eisenstein_expansion(40)) {
        for p in [2u64, 7] {
            let a = script_tp(&t13_action(&e).unwrap(), p).unwrap();
            let b = t13_action(&script_tp(&e, p).unwrap()).unwrap();
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn paired_coefficients_follow_chi3(e in eisenstein_expansion(30)) {
        let phi = FourierExpansion::from_fn(0.0, 9, 30, |n| if n.rem_euclid(3) == 1 { e.get(n) } else { chi3_at(0) });
        let (plus, minus) = build_pair(&phi).unwrap();
        for (n, c) in plus.iter() {
            prop_assert_eq!(minus.get(n), chi3_at(n) * c.clone());
        }
    }

    #[test]
    fn twist_definitions_agree(v in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 40)) {
        let e = FourierExpansion::from_fn(0.0, 1, 20, |n| {
            let i = if n > 0 { (n - 1) as usize } else { 20 + (-n - 1) as usize };
            Complex64::new(v[i].0, v[i].1)
        });
        for chi in [DirichletCharacter::chi3(), DirichletCharacter::from_generator(5, 1).unwrap()] {
            let a = twist_by_sum(&e, &chi).unwrap();
            let b = twist_by_coeffs(&e, &chi).unwrap();
            for (n, x) in a.iter() {
                prop_assert!((x - b.get(n)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn characters_are_multiplicative(k in 0u64..4, a in -50i64..50, b in -50i64..50) {
        let chi = DirichletCharacter::from_generator(5, k).unwrap();
        prop_assert!((chi.value(a) * chi.value(b) - chi.value(a * b)).norm() < 1e-12);
        prop_assert!((chi.value(a) - chi.value(a + 5)).norm() < 1e-12);
    }

    #[test]
    fn g_vanishes_outside_support(t in 0.5f64..4.0, s in 1.0f64..10.0) {
        prop_assert_eq!(g_closed_form(t, s * 2.0 / t), 0.0);
        prop_assert_eq!(g_closed_form(t, -s * 2.0 / t), 0.0);
        let f = TestFunction::sinc_fourth(t).unwrap();
        prop_assert!(f.h(s) >= 0.0);
    }

    #[test]
    fn quadratic_ring_is_commutative(u in -1000i128..1000, v in -1000i128..1000, x in -1000i128..1000, y in -1000i128..1000) {
        let a = QuadInt { u, v };
        let b = QuadInt { u: x, v: y };
        prop_assert_eq!(a * b, b * a);
        prop_assert_eq!((a * b).conj(), a.conj() * b.conj());
        let n = a * a.conj();
        prop_assert_eq!(n, QuadInt { u: u * u - 2520 * v * v, v: 0 });
    }
}

#[test]
fn gauss_sums_have_modulus_root_q() {
    for q in [3u64, 5, 7, 9] {
        for chi in DirichletCharacter::all(q).unwrap().into_iter().filter(DirichletCharacter::is_primitive) {
            assert!((gauss_sum(&chi).norm_sqr() - q as f64).abs() < 1e-10);
        }
    }
}
