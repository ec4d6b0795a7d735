//! Acceptance run: prints one PASS/FAIL line per criterion.
//!
//! Criteria 3 and 8 contain claims that do not hold: φ(1/2) is −1 for
//! PSL2(Z) and Γ³, and the χ₃-twists put R ≈ 5.0987 and R ≈ 4.3881 in both
//! parities at level 9. They are still evaluated in full and reported as
//! FAIL. The run exits nonzero if any other criterion fails, or if one of
//! these two starts passing.

use std::time::{Duration, Instant};

use modspec::group::{coset_reps, gamma3_dual_check, Group};
use modspec::hecke::{self, build_pair, hecke_tn, twist_by_coeffs, twist_by_sum, Coefficient, Eisenstein, FourierExpansion};
use modspec::holo::{delta_qexp_naive, gn_dimension_cancellation};
use modspec::maass::{find_eigenvalues, Parity, SolverConfig, SpectralCandidate};
use modspec::rep::{kernel_of_w_check, CharacterTable, Pgl2};
use modspec::special::DirichletCharacter;
use modspec::trace::{self, g_closed_form, genuinely_new_residuals, huxley_expand, hyperbolic_cutoff, TestFunction};
use num_complex::Complex64;
use num_traits::Zero;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn group_data() -> Outcome {
    let expected = [(Group::Gamma3, (3, 1, 3, 0)), (Group::Gamma0(3), (4, 2, 0, 1)), (Group::Gamma0(9), (12, 4, 0, 0))];
    let mut pass = true;
    let mut found = Vec::new();
    for (g, want) in expected {
        let s = g.signature().unwrap();
        let got = (s.index, s.cusps, s.v2, s.v3);
        pass &= got == want;
        found.push(format!("{g} {got:?}"));
    }
    let counts = [
        coset_reps(&Group::Gamma3, &Group::Psl2z).unwrap().len(),
        coset_reps(&Group::Gamma0(9), &Group::Gamma0(3)).unwrap().len(),
        coset_reps(&Group::Gamma0(9), &Group::Psl2z).unwrap().len(),
    ];
    pass &= counts == [3, 3, 12];
    outcome(pass, format!("{}; cosets {counts:?}", found.join(", ")))
}

fn gamma3_definitions() -> Outcome {
    let r = gamma3_dual_check(10_000, 1).unwrap();
    outcome(r.holds && r.disagreements == 0, format!("{} samples, {} in Γ³, {} disagreements", r.samples, r.in_gamma3, r.disagreements))
}

fn scattering() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for n in [3u64, 9] {
        let same = huxley_expand(n).unwrap() == trace::scattering_descriptor(&Group::Gamma0(n)).unwrap();
        pass &= same;
        parts.push(format!("Huxley N={n} {}", if same { "ok" } else { "differs" }));
    }
    for g in [Group::Psl2z, Group::Gamma0(3), Group::Gamma0(9), Group::Gamma3] {
        let v = trace::scattering_descriptor(&g).unwrap().value_at_half().unwrap();
        let ok = (v - Complex64::new(1.0, 0.0)).norm() <= 1e-10;
        pass &= ok;
        parts.push(format!("φ_{g}(1/2) = {:+.12}{}", v.re, if ok { "" } else { " (≠ 1)" }));
    }
    outcome(pass, parts.join(", "))
}

fn cancellation() -> Outcome {
    let fs = [
        TestFunction::sinc_fourth(1.5).unwrap(),
        TestFunction::sinc_fourth(2.0).unwrap(),
        TestFunction::sinc_fourth(3.0).unwrap(),
        TestFunction::gaussian(1.0).unwrap(),
    ];
    let worst = fs.iter().map(|f| genuinely_new_residuals(f).unwrap().max_abs()).fold(0.0, f64::max);
    outcome(worst <= 1e-8, format!("max |X^gn| = {worst:.2e} over T = 1.5, 2, 3 and a Gaussian"))
}

fn support() -> Outcome {
    let mut zero = true;
    for t in [0.75, 1.0, 1.5, 2.0, 3.0] {
        for k in 0..200 {
            let u = 2.0 / t * (1.0 + k as f64 * 0.05);
            zero &= g_closed_form(t, u) == 0.0 && g_closed_form(t, -u) == 0.0;
        }
    }
    let (_, t0) = hyperbolic_cutoff();
    let oracle = 2.0 / (2.0 * (1.5f64 + 1.25f64.sqrt()).ln());
    let ok = (t0 - oracle).abs() <= 1e-6;
    outcome(zero && ok, format!("g_T = 0 beyond 2/T: {zero}; T₀ = {t0:.7} (oracle {oracle:.7})"))
}

fn hecke_algebra() -> Outcome {
    let e = hecke::random_expansion(1, 120, 11);
    let mut mult = true;
    for (m, n) in [(2u64, 2u64), (2, 4), (3, 3), (2, 3), (4, 6), (5, 5)] {
        let lhs = hecke_tn(&hecke_tn(&e, n).unwrap(), m).unwrap();
        let g = num_integer::gcd(m, n);
        let parts: Vec<_> = (1..=g).filter(|d| g % d == 0).map(|d| hecke_tn(&e, m * n / (d * d)).unwrap()).collect();
        mult &= lhs.iter().all(|(k, a)| parts.iter().fold(Eisenstein::zero(), |acc, p| acc + p.get(k)) == *a);
    }

    let chars: Vec<DirichletCharacter> = [3u64, 5, 7]
        .iter()
        .flat_map(|&q| DirichletCharacter::all(q).unwrap())
        .filter(|c| c.is_primitive() && !c.is_principal())
        .collect();
    let mut worst = 0.0f64;
    for seed in 0..100 {
        let x = hecke::random_expansion(1, 40, 1000 + seed);
        let z = FourierExpansion::from_fn(0.0, 1, 40, |n| x.get(n).to_complex());
        let chi = &chars[seed as usize % chars.len()];
        let a = twist_by_sum(&z, chi).unwrap();
        let b = twist_by_coeffs(&z, chi).unwrap();
        worst = a.iter().map(|(n, v)| (v - b.get(n)).norm()).fold(worst, f64::max);
    }

    let x = hecke::random_expansion(9, 90, 5);
    let phi = FourierExpansion::from_fn(0.0, 9, 90, |n| if n.rem_euclid(3) == 1 { x.get(n) } else { Eisenstein::zero() });
    let (plus, minus) = build_pair(&phi).unwrap();
    let chi = DirichletCharacter::chi3();
    let pair = plus.iter().all(|(n, c)| minus.get(n) == Eisenstein::from_i64(chi.value(n).re.round() as i64) * c.clone());

    outcome(mult && worst < 1e-12 && pair, format!("T_mT_n: {mult}; twist max diff {worst:.1e}; c⁻ = χ₃c⁺: {pair}"))
}

fn representation() -> Outcome {
    let g = Pgl2::f3().unwrap();
    let table = CharacterTable::s4();
    let borel = g.subgroup_image(&Group::Gamma0(3), true).unwrap();
    let gamma3 = g.subgroup_image(&Group::Gamma3, true).unwrap();
    let b = g.induce_and_decompose(&borel, &|_| 1).unwrap().summary();
    let w = g.induce_and_decompose(&gamma3, &|_| 1).unwrap().summary();
    let kernel = kernel_of_w_check().unwrap().holds;
    let orth = table.orthogonality_holds();
    let pass = b == "chi0 + rho_std" && w == "chi0 + W" && kernel && orth;
    outcome(pass, format!("Γ₀(3): {b}; Γ³: {w}; kernel of W: {kernel}; orthogonality: {orth}"))
}

fn search(level: u64, r: f64, parity: Parity) -> Vec<SpectralCandidate> {
    find_eigenvalues(level, r - 0.005, r + 0.005, parity, &SolverConfig::default()).unwrap()
}

fn near(cands: &[SpectralCandidate], r: f64) -> Option<&SpectralCandidate> {
    cands.iter().find(|c| (c.r - r).abs() <= 1e-6)
}

fn spectrum() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    let level_one = search(1, 9.5336952613536, Parity::Odd);
    let ok = near(&level_one, 9.5336952613536).is_some();
    pass &= ok;
    parts.push(format!("level 1 odd 9.533695: {ok}"));

    let mut lift_worst = 0.0f64;
    for parity in [Parity::Even, Parity::Odd] {
        let cands = search(9, 3.5360020929376, parity);
        match near(&cands, 3.5360020929376) {
            Some(c) => {
                let w = c.coeffs.iter().enumerate().filter(|(i, _)| (i + 1) % 3 == 0).map(|(_, a)| a.norm()).fold(0.0, f64::max);
                lift_worst = lift_worst.max(w);
                parts.push(format!("3.536002 {parity:?}: found"));
            }
            None => {
                pass = false;
                parts.push(format!("3.536002 {parity:?}: missing"));
            }
        }
    }
    pass &= lift_worst < 1e-4;
    parts.push(format!("Γ³ lift max |a(3k)| {lift_worst:.1e}"));

    for (r, only) in [(5.0987419087295, Parity::Even), (4.3880535632221, Parity::Odd)] {
        for parity in [Parity::Even, Parity::Odd] {
            let cands = search(9, r, parity);
            let found = near(&cands, r).is_some();
            let ok = found == (parity == only);
            pass &= ok;
            parts.push(format!("{r:.6} {parity:?}: {}{}", if found { "found" } else { "absent" }, if ok { "" } else { " (expected only in the other parity)" }));
        }
    }
    outcome(pass, parts.join(", "))
}

fn holomorphic() -> Outcome {
    let printed = [(2usize, 24i128), (4, -1472), (5, -4830), (7, -16744), (8, -84480), (10, -115920)];
    let tau = delta_qexp_naive(10).unwrap();
    let chi = DirichletCharacter::chi3();
    let coeffs = printed.iter().all(|&(n, f)| chi.value(n as i64).re.round() as i128 * tau.get(n) == f);
    let dims = gn_dimension_cancellation(200).unwrap();
    let zero = dims.rows.iter().all(|r| r.combination == 0) && dims.rows.len() == 99;
    outcome(coeffs && zero, format!("χ₃τ matches f: {coeffs}; dimension combination zero for even 4 ≤ k ≤ 200: {zero}"))
}

fn property_suite() -> Outcome {
    let a = modspec::selftest::run(modspec::cli::DEFAULT_SEED);
    let b = modspec::selftest::run(modspec::cli::DEFAULT_SEED);
    let same = serde_json::to_string(&a).unwrap() == serde_json::to_string(&b).unwrap();
    let failing: Vec<_> = a.checks.iter().filter(|c| !c.holds).map(|c| c.name.clone()).collect();
    outcome(a.all_pass() && same, format!("{} passed, {} failed {failing:?}; deterministic: {same}", a.passed, a.failed))
}

/// Criteria known to fail for mathematical reasons.
const EXPECTED_FAIL: [usize; 2] = [3, 8];

fn main() {
    type Criterion = (&'static str, Option<Duration>, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("group data", Some(Duration::from_secs(1)), group_data),
        ("Γ³ dual definitions", Some(Duration::from_secs(5)), gamma3_definitions),
        ("scattering", Some(Duration::from_secs(10)), scattering),
        ("genuinely-new cancellation", Some(Duration::from_secs(120)), cancellation),
        ("test-function support", Some(Duration::from_secs(1)), support),
        ("Hecke and twist algebra", Some(Duration::from_secs(10)), hecke_algebra),
        ("representation", Some(Duration::from_secs(1)), representation),
        ("spectrum", None, spectrum),
        ("holomorphic", Some(Duration::from_secs(5)), holomorphic),
        ("property suite", None, property_suite),
    ];
    let mut failed = 0;
    let mut unexpected = Vec::new();
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut o = run();
        let elapsed = start.elapsed();
        if let Some(b) = budget {
            if elapsed > *b {
                o.pass = false;
                o.detail.push_str(&format!("; over the {b:?} budget"));
            }
        }
        failed += usize::from(!o.pass);
        let expected_fail = EXPECTED_FAIL.contains(&(i + 1));
        if o.pass == expected_fail {
            unexpected.push(i + 1);
        }
        println!(
            "criterion {:>2} {:<28} {} ({:.2?}) {}",
            i + 1,
            name,
            match (o.pass, expected_fail) {
                (true, _) => "PASS",
                (false, true) => "FAIL (expected)",
                (false, false) => "FAIL",
            },
            elapsed,
            o.detail
        );
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if !unexpected.is_empty() {
        println!("unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
