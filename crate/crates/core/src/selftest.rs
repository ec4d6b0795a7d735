//! The invariant suite behind `modspec selftest`.
//!
//! Every check is deterministic for a given seed; the report carries no
//! timings so two runs serialize to the same bytes.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::group::{self, Group, ProjMatrix};
use crate::hecke::{self, Coefficient, FourierExpansion};
use crate::maass::{self, Parity, SolverConfig, SpectralCandidate};
use crate::special::{self, DirichletCharacter, Precision};
use crate::{holo, rep, trace, Result};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub module: &'static str,
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub checks: Vec<Check>,
    pub passed: usize,
    pub failed: usize,
}

impl SelftestReport {
    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }
}

struct Suite {
    checks: Vec<Check>,
}

impl Suite {
    fn push(&mut self, module: &'static str, name: impl Into<String>, holds: bool, detail: impl Into<String>) {
        self.checks.push(Check { module, name: name.into(), holds, detail: detail.into() });
    }

    /// Records an error as a failed check instead of aborting the suite.
    fn run(&mut self, module: &'static str, name: &str, f: impl FnOnce() -> Result<(bool, String)>) {
        match f() {
            Ok((holds, detail)) => self.push(module, name, holds, detail),
            Err(e) => self.push(module, name, false, format!("error: {e}")),
        }
    }
}

fn random_psl2z(rng: &mut ChaCha8Rng) -> ProjMatrix {
    let mut m = ProjMatrix::identity();
    for _ in 0..rng.gen_range(1..30) {
        let g = match rng.gen_range(0..3) {
            0 => ProjMatrix::s(),
            1 => ProjMatrix::t(),
            _ => ProjMatrix::t().inverse(),
        };
        m = m.mul(&g);
    }
    m
}

fn group_checks(s: &mut Suite, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let elems: Vec<ProjMatrix> = (0..1000).map(|_| random_psl2z(&mut rng)).collect();
    s.run("group", "decompose_st round trip", || {
        let bad = elems.iter().filter(|m| group::decompose_st(m).map(|w| w.evaluate() != **m).unwrap_or(true)).count();
        Ok((bad == 0, format!("{bad} of 1000 differ")))
    });
    s.run("group", "two definitions of Gamma^3 agree", || {
        let r = group::gamma3_dual_check(1000, seed)?;
        Ok((r.holds, format!("{} disagreements, {} members", r.disagreements, r.in_gamma3)))
    });
    s.run("group", "h_mod3 is a homomorphism", || {
        let mut bad = 0;
        for w in elems.windows(2) {
            let h = |m: &ProjMatrix| group::decompose_st(m).map(|x| x.h_mod3());
            if (h(&w[0])? + h(&w[1])?) % 3 != h(&w[0].mul(&w[1]))? {
                bad += 1;
            }
        }
        Ok((bad == 0, format!("{bad} failures")))
    });
    s.run("group", "coset counts match the index formula", || {
        let pairs = [
            (Group::Gamma0(9), Group::Psl2z),
            (Group::Gamma0(9), Group::Gamma0(3)),
            (Group::Gamma3, Group::Psl2z),
            (Group::Gamma0(3), Group::Psl2z),
        ];
        let mut detail = Vec::new();
        let mut ok = true;
        for (sub, sup) in pairs {
            let n = group::coset_reps(&sub, &sup)?.len() as u64;
            let expected = sub.index_formula()? / sup.index_formula()?;
            ok &= n == expected;
            detail.push(format!("[{sup}:{sub}]={n}"));
        }
        Ok((ok, detail.join(" ")))
    });
    s.run("group", "signatures", || {
        let mut ok = true;
        let mut detail = Vec::new();
        for (g, want) in [
            (Group::Gamma3, (3, 1, 3, 0)),
            (Group::Gamma0(3), (4, 2, 0, 1)),
            (Group::Gamma0(9), (12, 4, 0, 0)),
            (Group::Psl2z, (1, 1, 1, 1)),
        ] {
            let sig = g.signature()?;
            ok &= (sig.index, sig.cusps, sig.v2, sig.v3) == want;
            detail.push(format!("{g}:({},{},{},{}) g={}", sig.index, sig.cusps, sig.v2, sig.v3, sig.genus));
        }
        Ok((ok, detail.join(" ")))
    });
    s.run("group", "element type is a conjugacy invariant", || {
        let mut bad = 0;
        for w in elems.chunks(2).take(300) {
            if w.len() < 2 {
                continue;
            }
            let conj = w[1].mul(&w[0]).mul(&w[1].inverse());
            if group::classify_element(&w[0])? != group::classify_element(&conj)? {
                bad += 1;
            }
        }
        Ok((bad == 0, format!("{bad} changes")))
    });
}

fn special_checks(s: &mut Suite, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    s.run("special", "K_{i0} is positive", || {
        let ok = [0.1, 1.0, 5.0, 20.0].iter().all(|&x| special::bessel_k_ir(0.0, x).map_or(false, |v| v > 0.0));
        Ok((ok, String::new()))
    });
    s.run("special", "K_{iR} self-convergence", || {
        let mut worst = 0.0f64;
        for &(r, x) in &[(3.5, 0.8), (9.5, 2.0), (12.0, 10.0), (0.5, 0.05)] {
            let p = Precision::default();
            let a = special::bessel_k_ir_with(r, x, p)?;
            let b = special::bessel_k_ir_with(r, x, p.refined(2.0))?;
            worst = worst.max((a - b).abs());
        }
        Ok((worst < 1e-12, format!("max change {worst:.2e}")))
    });
    s.run("special", "functional equation of Λ", || {
        let mut worst = 0.0f64;
        for _ in 0..20 {
            let z = Complex64::new(rng.gen_range(0.05..0.95), rng.gen_range(-20.0..20.0));
            let a = special::completed_zeta(z)?;
            let b = special::completed_zeta(1.0 - z)?;
            worst = worst.max((a - b).norm() / a.norm().max(1e-300));
        }
        Ok((worst < 1e-10, format!("max relative residual {worst:.2e}")))
    });
    s.run("special", "|τ(χ)|² = q for primitive χ", || {
        let mut worst = 0.0f64;
        for q in [3, 5, 7, 9] {
            for chi in DirichletCharacter::all(q)?.into_iter().filter(|c| c.is_primitive()) {
                worst = worst.max((special::gauss_sum(&chi).norm_sqr() - q as f64).abs());
            }
        }
        Ok((worst < 1e-12, format!("max deviation {worst:.2e}")))
    });
}

fn trace_checks(s: &mut Suite) {
    let mut family = Vec::new();
    for t in [1.5, 2.0, 3.0] {
        family.push(trace::TestFunction::sinc_fourth(t).expect("T in range"));
    }
    for sigma in [1.0, 3.0] {
        family.push(trace::TestFunction::gaussian(sigma).expect("σ in range"));
    }
    s.run("trace", "genuinely-new residuals vanish", || {
        let mut worst = 0.0f64;
        for f in &family {
            worst = worst.max(trace::genuinely_new_residuals(f)?.max_abs());
        }
        Ok((worst <= 1e-8, format!("max |X^gn| {worst:.2e}")))
    });
    s.run("trace", "parabolic term by two routes", || {
        let mut worst = 0.0f64;
        for f in &family {
            for g in [Group::Psl2z, Group::Gamma0(3), Group::Gamma0(9), Group::Gamma3] {
                let t = trace::trace_terms(&g, f)?;
                worst = worst.max((t.parabolic - t.parabolic_direct).abs() / t.parabolic.abs());
            }
        }
        Ok((worst <= 1e-8, format!("max relative difference {worst:.2e}")))
    });
    s.run("trace", "Huxley expansion matches the descriptors", || {
        let ok = [3, 9]
            .iter()
            .all(|&n| trace::huxley_expand(n).ok() == trace::scattering_descriptor(&Group::Gamma0(n)).ok());
        Ok((ok, String::new()))
    });
    s.run("trace", "scattering determinant is unitary", || {
        let mut worst = 0.0f64;
        for g in [Group::Psl2z, Group::Gamma0(3), Group::Gamma0(9), Group::Gamma3] {
            let d = trace::scattering_descriptor(&g)?;
            for r in [0.5, 1.0, 5.0] {
                worst = worst.max((d.phi(Complex64::new(0.5, r))?.norm() - 1.0).abs());
            }
        }
        Ok((worst < 1e-9, format!("max ||φ| − 1| {worst:.2e}")))
    });
    s.run("trace", "g_T transforms back to h_T", || {
        let mut worst = 0.0f64;
        for t in [1.5, 2.0, 3.0] {
            let f = trace::TestFunction::sinc_fourth(t)?;
            for k in 0..=40 {
                let r = 0.5 * k as f64;
                worst = worst.max((trace::h_from_g(t, r) - f.h(r)).abs());
            }
        }
        Ok((worst < 1e-8, format!("max error {worst:.2e}")))
    });
}

fn hecke_checks(s: &mut Suite, seed: u64) {
    let q = |n: i64| BigRational::from_integer(n.into());
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x4ecc);
    s.run("hecke", "T_p T_q = T_q T_p", || {
        let e = hecke::random_expansion(9, 240, seed);
        let mut ok = true;
        for (p, r) in [(2, 5), (2, 7), (5, 7), (7, 11)] {
            let a = hecke::hecke_tp(&hecke::hecke_tp(&e, p)?, r)?;
            let b = hecke::hecke_tp(&hecke::hecke_tp(&e, r)?, p)?;
            ok &= a == b;
        }
        Ok((ok, String::new()))
    });
    s.run("hecke", "T_m T_n = Σ T_{mn/d²}", || {
        let e = FourierExpansion::from_fn(0.0, 1, 200, |n| q((n * 7919) % 101 - 50));
        let mut ok = true;
        for (m, n) in [(2u64, 4u64), (3, 9), (4, 6), (2, 3)] {
            let lhs = hecke::hecke_tn(&hecke::hecke_tn(&e, n)?, m)?;
            let g = num_integer::gcd(m, n);
            let parts: Vec<_> = (1..=g).filter(|d| g % d == 0).map(|d| hecke::hecke_tn(&e, m * n / (d * d))).collect::<Result<_>>()?;
            let len = lhs.truncation();
            let rhs = FourierExpansion::from_fn(0.0, 1, len, |k| parts.iter().fold(BigRational::zero(), |acc, p| acc + p.get(k)));
            ok &= lhs == rhs;
        }
        Ok((ok, String::new()))
    });
    s.run("hecke", "shift-sum twist equals coefficient twist", || {
        let mut worst = 0.0f64;
        let chars: Vec<DirichletCharacter> = [3u64, 5, 7]
            .iter()
            .flat_map(|&m| DirichletCharacter::all(m).unwrap_or_default())
            .filter(|c| c.is_primitive() && !c.is_principal())
            .collect();
        for k in 0..100 {
            let vals: Vec<Complex64> = (0..80).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
            let e = FourierExpansion::from_fn(1.0, 1, 40, |n| vals[(n + 40 - (n > 0) as i64) as usize]);
            let chi = &chars[k % chars.len()];
            let a = hecke::twist_by_coeffs(&e, chi)?;
            let b = hecke::twist_by_sum(&e, chi)?;
            for (n, x) in a.iter() {
                worst = worst.max((x - b.get(n)).norm());
            }
        }
        Ok((worst < 1e-12, format!("max difference {worst:.2e}")))
    });
    s.run("hecke", "T^(1/3) and J relations", || {
        let e = hecke::random_expansion(9, 60, seed);
        let t = hecke::t13_action(&e)?;
        let cube = hecke::t13_action(&hecke::t13_action(&t)?)?;
        let jj = hecke::reflect_j(&hecke::reflect_j(&e));
        let jtj = hecke::reflect_j(&hecke::t13_action(&hecke::reflect_j(&e))?);
        Ok((cube == e && jj == e && jtj == hecke::t13_power(&e, -1)?, String::new()))
    });
    s.run("hecke", "script T_p keeps T^(1/3) eigenspaces and commutes", || {
        let e = hecke::random_expansion(9, 300, seed);
        let mut ok = true;
        for class in 0..3 {
            let proj = FourierExpansion::from_fn(0.0, 9, 300, |n| if n.rem_euclid(3) == class { e.get(n) } else { hecke::Eisenstein::zero() });
            for p in [2u64, 5, 7, 11, 13] {
                let img = hecke::script_tp(&proj, p)?;
                ok &= img.iter().all(|(n, a)| n.rem_euclid(3) == class || a.is_zero());
            }
        }
        for (p, r) in [(2u64, 5u64), (2, 7), (5, 11), (7, 13)] {
            let a = hecke::script_tp(&hecke::script_tp(&e, p)?, r)?;
            let b = hecke::script_tp(&hecke::script_tp(&e, r)?, p)?;
            ok &= a == b;
        }
        Ok((ok, String::new()))
    });
    s.run("hecke", "paired forms satisfy c⁻ = χ₃ c⁺", || {
        let chi = DirichletCharacter::chi3();
        let e = hecke::random_expansion(9, 90, seed);
        let phi = FourierExpansion::from_fn(0.0, 9, 90, |n| if n.rem_euclid(3) == 1 { e.get(n) } else { hecke::Eisenstein::zero() });
        let (plus, minus) = hecke::build_pair(&phi)?;
        let ok = plus.iter().all(|(n, c)| {
            let x = hecke::Eisenstein::from_i64(chi.value(n).re.round() as i64);
            minus.get(n) == x * c.clone()
        });
        Ok((ok, String::new()))
    });
    s.run("hecke", "coset identities for p ≤ 13", || {
        let mut bad = Vec::new();
        for p in [2, 5, 7, 11, 13] {
            for c in hecke::tp_coset_checks(p)?.into_iter().chain(hecke::tp_coefficient_checks(p, seed)?) {
                if !c.holds {
                    bad.push(c.name);
                }
            }
        }
        Ok((bad.is_empty(), bad.join("; ")))
    });
}

fn rep_checks(s: &mut Suite) {
    s.run("rep", "character tables are orthogonal", || {
        Ok((rep::CharacterTable::s4().orthogonality_holds() && rep::CharacterTable::s3().orthogonality_holds(), String::new()))
    });
    s.run("rep", "Frobenius reciprocity", || {
        let g = rep::Pgl2::f3()?;
        let mut ok = true;
        for grp in [Group::Gamma0(3), Group::Gamma3] {
            let h = g.subgroup_image(&grp, true)?;
            let ind = g.induce_and_decompose(&h, &|_| 1)?;
            let res = g.restricted_trivial_multiplicities(&h)?;
            ok &= ind.multiplicities.iter().map(|m| m.1).collect::<Vec<_>>() == res;
        }
        Ok((ok, String::new()))
    });
    s.run("rep", "dimension count of the four correspondences", || {
        let g = rep::Pgl2::f3()?;
        let items = rep::correspondence_items()?;
        let dims: Vec<u64> = items.iter().map(|i| i.decomposition.dimension(&g.table)).collect();
        let regular = g.induce_and_decompose(&[rep::Mat2::identity(3)], &|_| 1)?;
        let reg_ok = regular.multiplicities.iter().zip(g.table.dimensions()).all(|(m, d)| m.1 == d as u64);
        let ok = items.iter().all(|i| i.holds) && dims == [4, 3, 3, 2, 4, 3, 3, 2] && reg_ok;
        Ok((ok, format!("dimensions {dims:?}")))
    });
    s.run("rep", "multiplicities are nonnegative integers", || {
        let g = rep::Pgl2::f3()?;
        let mut ok = true;
        for grp in [Group::Psl2z, Group::Gamma0(3), Group::Gamma3] {
            for with_j in [false, true] {
                let h = g.subgroup_image(&grp, with_j)?;
                ok &= g.induce_and_decompose(&h, &|_| 1).is_ok();
                if with_j {
                    ok &= g.induce_and_decompose(&h, &|x| rep::Psi::Sign.eval(x)).is_ok();
                }
            }
        }
        Ok((ok, String::new()))
    });
}

/// Table values the solver is checked against.
const R_LEVEL1: f64 = 9.5336952613536;
const R_LIFT: f64 = 3.5360020929376;

fn candidate_at(level: u64, r: f64, parity: Parity, cfg: &SolverConfig) -> Result<SpectralCandidate> {
    let map = maass::PullbackMap::new(level)?;
    let ev = maass::evaluate(&map, r, parity, cfg)?;
    Ok(SpectralCandidate {
        level,
        r,
        parity,
        residual: ev.residual(cfg.check_terms),
        coeffs: ev.reliable_coeffs(1e-5),
        labels: Vec::new(),
    })
}

fn maass_checks(s: &mut Suite) {
    let cfg = SolverConfig::default();
    s.run("maass", "level 1 eigenvalue is stable under grid halving", || {
        let coarse = maass::find_eigenvalues(1, 9.45, 9.6, Parity::Odd, &cfg)?;
        let fine_cfg = SolverConfig { grid_step: cfg.grid_step / 2.0, ..cfg.clone() };
        let fine = maass::find_eigenvalues(1, 9.45, 9.6, Parity::Odd, &fine_cfg)?;
        let same = coarse.len() == fine.len() && coarse.iter().zip(&fine).all(|(a, b)| (a.r - b.r).abs() < 1e-8);
        let hit = coarse.iter().any(|c| (c.r - R_LEVEL1).abs() < 1e-6);
        Ok((same && hit, format!("{} candidates", coarse.len())))
    });
    s.run("maass", "Hecke multiplicativity at level 1", || {
        let c = candidate_at(1, R_LEVEL1, Parity::Odd, &cfg)?;
        let err = (c.coeff(2) * c.coeff(3) - c.coeff(6)).norm();
        Ok((c.residual <= cfg.residual_tol && err < 1e-4, format!("|a2 a3 − a6| = {err:.2e}")))
    });
    s.run("maass", "Gamma^3 lift: two heights, support and pairing", || {
        let even = candidate_at(9, R_LIFT, Parity::Even, &cfg)?;
        let odd = candidate_at(9, R_LIFT, Parity::Odd, &cfg)?;
        let max3 = [&even, &odd]
            .iter()
            .flat_map(|c| c.coeffs.iter().enumerate().filter(|(k, _)| (k + 1) % 3 == 0).map(|(_, a)| a.norm()))
            .fold(0.0, f64::max);
        let pair = maass::pair_discrepancy(&even, &odd);
        let ok = even.residual <= cfg.residual_tol && odd.residual <= cfg.residual_tol && max3 < 1e-4 && pair < 1e-3;
        Ok((ok, format!("residuals {:.1e}/{:.1e}, max |a(3k)| {max3:.1e}, pairing {pair:.1e}", even.residual, odd.residual)))
    });
}

fn holo_checks(s: &mut Suite) {
    s.run("holo", "Hecke recursion for τ", || {
        let d = holo::delta_qexp(1000)?;
        let mut ok = true;
        for p in [2usize, 3, 5] {
            for n in 1..=100 {
                let rhs = d.get(p * n) + if n % p == 0 { (p as i128).pow(11) * d.get(n / p) } else { 0 };
                ok &= d.get(p) * d.get(n) == rhs;
            }
        }
        Ok((ok, String::new()))
    });
    s.run("holo", "dimension cancellation up to weight 200", || {
        let r = holo::gn_dimension_cancellation(200)?;
        Ok((r.holds, format!("{} weights", r.rows.len())))
    });
    s.run("holo", "printed weight-12 coefficients", || {
        let r = holo::verify_twist_example()?;
        Ok((r.holds, String::new()))
    });
}

/// Runs every invariant check.
pub fn run(seed: u64) -> SelftestReport {
    let mut s = Suite { checks: Vec::new() };
    group_checks(&mut s, seed);
    special_checks(&mut s, seed);
    trace_checks(&mut s);
    hecke_checks(&mut s, seed);
    rep_checks(&mut s);
    maass_checks(&mut s);
    holo_checks(&mut s);
    let passed = s.checks.iter().filter(|c| c.holds).count();
    SelftestReport { seed, failed: s.checks.len() - passed, passed, checks: s.checks }
}
