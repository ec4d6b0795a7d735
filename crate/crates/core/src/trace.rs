//! Identity, elliptic and parabolic terms of the Selberg trace formula for
//! PSL₂(Z), Γ₀(3), Γ₀(9) and Γ³, the scattering determinants they need, and
//! the combination `X(9) + 3X₁ − 3X(3) − X(Γ³)` in which all of them cancel.
//!
//! Integrals over `r` run over Gauss–Legendre panels on `[0, R]` with
//! `R = 3000`; the slowly decaying `sinc⁴` family gets explicit tails.

use std::f64::consts::{LN_2, PI};
use std::sync::OnceLock;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::group::{ElementType, Group, ProjMatrix};
use crate::quad::GaussLegendre;
use crate::special::{
    completed_zeta, completed_zeta_log_derivative, completed_zeta_phase_parts, digamma_line, DirichletCharacter,
};
use crate::{Error, Result};

/// Upper end of every `r` integral.
pub const R_MAX: f64 = 3000.0;
const FINE_UNTIL: f64 = 64.0;

/// An even test function `h` with `g(u) = (1/2π)∫h(r)e^{−iur}dr`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum TestFunction {
    /// `h(r) = (sin(r/2T) / (r/2T))⁴`, with `g` supported in `[−2/T, 2/T]`.
    #[serde(rename = "sinc4")]
    SincFourth { t: f64 },
    /// `h(r) = exp(−r²/(2σ²))`.
    Gaussian { sigma: f64 },
}

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

fn sinc_prime(x: f64) -> f64 {
    if x.abs() < 1e-3 {
        -x / 3.0 + x * x * x / 30.0
    } else {
        (x * x.cos() - x.sin()) / (x * x)
    }
}

/// Density of the sum of four independent uniforms on [0, 1].
fn irwin_hall4(x: f64) -> f64 {
    if !(0.0..4.0).contains(&x) {
        return 0.0;
    }
    const BINOM: [f64; 5] = [1.0, 4.0, 6.0, 4.0, 1.0];
    let mut s = 0.0;
    for k in 0..=(x.floor() as usize) {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        s += sign * BINOM[k] * (x - k as f64).powi(3);
    }
    s / 6.0
}

impl TestFunction {
    pub fn sinc_fourth(t: f64) -> Result<Self> {
        if !(0.25..=75.0).contains(&t) {
            return Err(Error::domain(format!("T = {t} outside the supported range [0.25, 75]")));
        }
        Ok(TestFunction::SincFourth { t })
    }

    pub fn gaussian(sigma: f64) -> Result<Self> {
        if !(0.1..=300.0).contains(&sigma) {
            return Err(Error::domain(format!("σ = {sigma} outside the supported range [0.1, 300]")));
        }
        Ok(TestFunction::Gaussian { sigma })
    }

    pub fn h(&self, r: f64) -> f64 {
        match *self {
            TestFunction::SincFourth { t } => sinc(r / (2.0 * t)).powi(4),
            TestFunction::Gaussian { sigma } => (-0.5 * (r / sigma).powi(2)).exp(),
        }
    }

    pub fn h_prime(&self, r: f64) -> f64 {
        match *self {
            TestFunction::SincFourth { t } => {
                let a = 0.5 / t;
                4.0 * sinc(a * r).powi(3) * a * sinc_prime(a * r)
            }
            TestFunction::Gaussian { sigma } => -r / (sigma * sigma) * self.h(r),
        }
    }

    /// Closed-form Fourier transform.
    pub fn g(&self, u: f64) -> f64 {
        match *self {
            TestFunction::SincFourth { t } => g_closed_form(t, u),
            TestFunction::Gaussian { sigma } => sigma / (2.0 * PI).sqrt() * (-0.5 * (sigma * u).powi(2)).exp(),
        }
    }

    /// `g` vanishes outside `[−s, s]`.
    pub fn support(&self) -> Option<f64> {
        match *self {
            TestFunction::SincFourth { t } => Some(2.0 / t),
            TestFunction::Gaussian { .. } => None,
        }
    }

    /// `(∫_R^∞ h, ∫_R^∞ h ln r)` from the non-oscillating part of the tail.
    fn tails(&self) -> (f64, f64) {
        match *self {
            TestFunction::SincFourth { t } => {
                let c = (2.0 * t).powi(4);
                let r3 = R_MAX.powi(3);
                (c / (8.0 * r3), 0.375 * c * (R_MAX.ln() / (3.0 * r3) + 1.0 / (9.0 * r3)))
            }
            TestFunction::Gaussian { .. } => (0.0, 0.0),
        }
    }

    /// Size of what [`Self::tails`] leaves out.
    fn tail_error(&self) -> f64 {
        match *self {
            TestFunction::SincFourth { t } => (2.0 * t).powi(5) * R_MAX.ln() / R_MAX.powi(4),
            TestFunction::Gaussian { .. } => 0.0,
        }
    }
}

/// `g_T(u)`: the fourfold self-convolution of the box of width `1/T`, a
/// piecewise cubic vanishing for `|u| ≥ 2/T`.
pub fn g_closed_form(t: f64, u: f64) -> f64 {
    let a = 0.5 / t;
    irwin_hall4((u + 4.0 * a) / (2.0 * a)) / (2.0 * a)
}

fn nodes(order: usize) -> Vec<(f64, f64)> {
    let gl = GaussLegendre::new(order);
    let mut v = gl.panels(0.0, FINE_UNTIL, 0.5);
    v.extend(gl.panels(FINE_UNTIL, R_MAX, 1.0));
    v
}

/// `∫_R^∞ cos(br)/r³ dr`, for `bR` large.
fn cos_over_cube_tail(b: f64, r: f64) -> f64 {
    let x = b * r;
    let ci = cos_integral_asymptotic(x);
    x.cos() / (2.0 * r * r) - 0.5 * b * (x.sin() / r - b * ci)
}

/// `Ci(x)` by its asymptotic series, accurate for `x ≥ 20`.
fn cos_integral_asymptotic(x: f64) -> f64 {
    let (mut f, mut g) = (0.0, 0.0);
    let mut term = 1.0;
    for k in 0..40 {
        // term = (2k)!/x^{2k} for f, (2k+1)!/x^{2k+1} for g
        let next = term * (2 * k + 1) as f64 / x;
        if k > 0 && next.abs() > term.abs() {
            break;
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        f += sign * term;
        g += sign * next;
        term = next * (2 * k + 2) as f64 / x;
    }
    (f * x.sin() - g * x.cos()) / x
}

/// `I₁ = (1/12)∫ r h(r) tanh(πr) dr` with an `order`-point rule per panel.
pub fn identity_term_with(f: &TestFunction, order: usize) -> f64 {
    let body: f64 = nodes(order).iter().map(|&(r, w)| w * r * f.h(r) * (PI * r).tanh()).sum();
    let tail = match *f {
        TestFunction::SincFourth { t } => {
            let a = 0.5 / t;
            (2.0 * t).powi(4)
                * (3.0 / (16.0 * R_MAX * R_MAX) - 0.5 * cos_over_cube_tail(2.0 * a, R_MAX)
                    + 0.125 * cos_over_cube_tail(4.0 * a, R_MAX))
        }
        TestFunction::Gaussian { .. } => 0.0,
    };
    (body + tail) / 6.0
}

/// `μ · I₁`.
pub fn identity_term(mu: u64, f: &TestFunction) -> f64 {
    mu as f64 * identity_term_with(f, 16)
}

/// `(E₁(2), E₁(3))` for the modular group.
pub fn elliptic_unit_terms(f: &TestFunction) -> (f64, f64) {
    let gl = GaussLegendre::new(16);
    let pts = gl.panels(0.0, 40.0, 0.5);
    let e2: f64 = pts.iter().map(|&(r, w)| w * f.h(r) / (PI * r).cosh()).sum();
    let e3: f64 = pts
        .iter()
        .map(|&(r, w)| {
            let q = (-2.0 * PI * r / 3.0).exp() * (1.0 + (-2.0 * PI * r / 3.0).exp()) / (1.0 + (-2.0 * PI * r).exp());
            w * f.h(r) * q
        })
        .sum();
    (0.25 * e2, 2.0 / (3.0 * 3f64.sqrt()) * e3)
}

/// `(v₂ E₁(2), v₃ E₁(3))`.
pub fn elliptic_terms(v2: u64, v3: u64, f: &TestFunction) -> (f64, f64) {
    let (e2, e3) = elliptic_unit_terms(f);
    (v2 as f64 * e2, v3 as f64 * e3)
}

/// `φ_Γ(s) = A^{1−2s} ((1 − 3^{2s−2})/(1 − 3^{−2s}))^e φ₁(s)^m` with
/// `φ₁(s) = Λ(2 − 2s)/Λ(2s)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ScatteringDescriptor {
    #[serde(rename = "A")]
    pub a: u64,
    pub e: i32,
    pub m: u32,
}

fn ratio3(s: Complex64) -> Complex64 {
    let three = Complex64::new(3.0, 0.0);
    (1.0 - three.powc(2.0 * s - 2.0)) / (1.0 - three.powc(-2.0 * s))
}

/// `d/ds ln((1 − 3^{2s−2})/(1 − 3^{−2s}))`.
pub fn ratio3_log_derivative(s: Complex64) -> Complex64 {
    let l3 = 3f64.ln();
    let three = Complex64::new(3.0, 0.0);
    let p = three.powc(2.0 * s - 2.0);
    let q = three.powc(-2.0 * s);
    -2.0 * l3 * p / (1.0 - p) - 2.0 * l3 * q / (1.0 - q)
}

/// `φ₁(s)` for the modular group.
pub fn phi1(s: Complex64) -> Result<Complex64> {
    Ok(completed_zeta(2.0 - 2.0 * s)? / completed_zeta(2.0 * s)?)
}

impl ScatteringDescriptor {
    pub fn phi(&self, s: Complex64) -> Result<Complex64> {
        let a = Complex64::new(self.a as f64, 0.0).powc(1.0 - 2.0 * s);
        Ok(a * ratio3(s).powi(self.e) * phi1(s)?.powu(self.m))
    }

    /// `φ′_Γ/φ_Γ(s)`, with `φ₁′/φ₁(s) = −2Λ′/Λ(2 − 2s) − 2Λ′/Λ(2s)`.
    pub fn log_derivative(&self, s: Complex64) -> Result<Complex64> {
        let d1 = -2.0 * completed_zeta_log_derivative(2.0 - 2.0 * s)? - 2.0 * completed_zeta_log_derivative(2.0 * s)?;
        Ok(-2.0 * (self.a as f64).ln() + self.e as f64 * ratio3_log_derivative(s) + self.m as f64 * d1)
    }

    /// `φ_Γ(½)`, the mean of the values at `½ ± iε` around the removable
    /// singularity of `φ₁`.
    pub fn value_at_half(&self) -> Result<Complex64> {
        let eps = 1e-6;
        Ok(0.5 * (self.phi(Complex64::new(0.5, eps))? + self.phi(Complex64::new(0.5, -eps))?))
    }
}

/// The descriptor quoted for each group.
pub fn scattering_descriptor(g: &Group) -> Result<ScatteringDescriptor> {
    let (a, e, m) = match g {
        Group::Psl2z | Group::Gamma0(1) => (1, 0, 1),
        Group::Gamma0(3) => (9, 1, 2),
        Group::Gamma0(9) => (2187, 3, 4),
        Group::Gamma3 => (3, 0, 1),
        _ => return Err(Error::Unsupported(format!("scattering determinant of {g}"))),
    };
    Ok(ScatteringDescriptor { a, e, m })
}

/// One factor `(χ, m)` of the product formula for `φ_{Γ₀(N)}`.
#[derive(Clone, Debug)]
pub struct HuxleyFactor {
    pub chi: DirichletCharacter,
    pub m: u64,
}

/// `F(N) = {(χ, m) : m | N, q_χ | m, q_χ m | N, χ primitive mod q_χ}`.
pub fn huxley_factors(n: u64) -> Result<Vec<HuxleyFactor>> {
    let mut out = Vec::new();
    for m in (1..=n).filter(|m| n % m == 0) {
        for q in (1..=m).filter(|q| m % q == 0 && n % (q * m) == 0) {
            for chi in DirichletCharacter::all(q)? {
                if chi.is_primitive() {
                    out.push(HuxleyFactor { chi, m });
                }
            }
        }
    }
    Ok(out)
}

/// Multiplies out `A(N)^{1−2s} ∏ Q_{χ²χ_{0,m}}(s)` for `N ∈ {3, 9}`, with
/// `A(N) = ∏ q_χ N/(m, N/m)` and `Q_{χ_{0,q}} = ∏_{p|q} (1 − p^{2s−2})/(1 − p^{−2s}) · φ₁`.
pub fn huxley_expand(n: u64) -> Result<ScatteringDescriptor> {
    if n != 3 && n != 9 {
        return Err(Error::Unsupported(format!("Huxley expansion for N = {n}")));
    }
    let mut a = 1u64;
    let (mut e, mut m) = (0i32, 0u32);
    for f in huxley_factors(n)? {
        let q = f.chi.modulus();
        a *= q * n / num_integer::gcd(f.m, n / f.m);
        let chi = f.chi.product(&f.chi).product(&DirichletCharacter::principal(f.m)?);
        if !chi.is_principal() {
            return Err(Error::Unsupported(format!("non-principal χ²χ₀ for (q = {q}, m = {})", f.m)));
        }
        let modulus = chi.modulus();
        // principal modulo `modulus`: one ratio factor per prime divisor
        for p in (2..=modulus).filter(|p| modulus % p == 0 && (2..*p).all(|d| p % d != 0)) {
            if p != 3 {
                return Err(Error::Unsupported(format!("prime {p} in the Huxley product")));
            }
            e += 1;
        }
        m += 1;
    }
    Ok(ScatteringDescriptor { a, e, m })
}

/// Per-node arithmetic data shared by every test function.
struct Table {
    nodes: Vec<(f64, f64)>,
    /// `Re ψ(1 + ir)`
    re_psi: Vec<f64>,
    /// `φ₁′/φ₁(½ + ir)`
    dlog_phi1: Vec<f64>,
    /// continuous `arg φ₁(½ + ir)`, tending to π as r → 0⁺
    theta1: Vec<f64>,
    theta1_end: f64,
}

fn table() -> Result<&'static Table> {
    static TABLE: OnceLock<std::result::Result<Table, String>> = OnceLock::new();
    TABLE
        .get_or_init(|| build_table().map_err(|e| e.to_string()))
        .as_ref()
        .map_err(|e| Error::Convergence { what: format!("scattering table: {e}"), estimate: f64::NAN })
}

fn build_table() -> Result<Table> {
    let nodes = nodes(16);
    let mut re_psi = Vec::with_capacity(nodes.len());
    let mut dlog_phi1 = Vec::with_capacity(nodes.len());
    let mut theta1 = Vec::with_capacity(nodes.len());
    let mut prev = -0.5 * PI;
    let mut phase = |r: f64| -> Result<f64> {
        let (gamma_part, z) = completed_zeta_phase_parts(r)?;
        let mut arg = z.arg();
        arg += 2.0 * PI * ((prev - arg) / (2.0 * PI)).round();
        prev = arg;
        Ok(-2.0 * (gamma_part + arg))
    };
    for &(r, _) in &nodes {
        re_psi.push(digamma_line(r).re);
        let s = Complex64::new(1.0, 2.0 * r);
        dlog_phi1.push(-4.0 * completed_zeta_log_derivative(s)?.re);
        theta1.push(phase(r)?);
    }
    let theta1_end = phase(R_MAX)?;
    Ok(Table { nodes, re_psi, dlog_phi1, theta1, theta1_end })
}

/// The pieces of the parabolic term of the modular group and the two
/// integrals shared by the other groups.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ParabolicUnits {
    /// `P₁ = ¼h(0)(1 − φ₁(½)) − g(0) ln 2 + Φ₁ − Ψ` with `φ₁(½) = −1`.
    pub p1: f64,
    /// `(1/4π)∫ h φ₁′/φ₁(½ + ir) dr`
    pub phi1_integral: f64,
    /// `(1/2π)∫ h Re ψ(1 + ir) dr`
    pub digamma_integral: f64,
    /// `(1/4π)∫ h = g(0)/2`
    pub j0: f64,
    /// `(1/4π)∫ h · d/ds ln((1 − 3^{2s−2})/(1 − 3^{−2s}))`
    pub j3: f64,
    pub error_estimate: f64,
}

/// `d/ds ln((1 − 3^{2s−2})/(1 − 3^{−2s}))` at `s = ½ + ir`, which is real.
fn ratio3_line(r: f64) -> f64 {
    let w = Complex64::from_polar(1.0 / 3.0, 2.0 * r * 3f64.ln());
    -4.0 * 3f64.ln() * (w / (1.0 - w)).re
}

pub fn parabolic_units(f: &TestFunction) -> Result<ParabolicUnits> {
    let tb = table()?;
    let (tail_h, tail_hln) = f.tails();
    let (mut phi1_sum, mut psi_sum, mut j3_sum) = (0.0, 0.0, 0.0);
    for (k, &(r, w)) in tb.nodes.iter().enumerate() {
        let h = f.h(r);
        phi1_sum += w * h * tb.dlog_phi1[k];
        psi_sum += w * h * tb.re_psi[k];
        j3_sum += w * h * ratio3_line(r);
    }
    // large r: φ₁′/φ₁ ≈ 2 ln π − 2 ln r, Re ψ ≈ ln r
    let phi1_integral = (phi1_sum + 2.0 * PI.ln() * tail_h - 2.0 * tail_hln) / (2.0 * PI);
    let digamma_integral = (psi_sum + tail_hln) / PI;
    let j0 = 0.5 * f.g(0.0);
    let j3 = j3_sum / (2.0 * PI);
    let p1 = 0.5 * f.h(0.0) - f.g(0.0) * LN_2 + phi1_integral - digamma_integral;
    Ok(ParabolicUnits { p1, phi1_integral, digamma_integral, j0, j3, error_estimate: 10.0 * f.tail_error() })
}

/// `(1/4π)∫ h φ_Γ′/φ_Γ(½ + ir) dr` from the continuous phase `θ` of
/// `φ_Γ` on the critical line, integrated by parts:
/// `−(1/2π)∫₀^R h′(θ − θ(0⁺)) dr + (1/2π)h(R)(θ(R) − θ(0⁺))`.
pub fn scattering_integral_by_phase(d: &ScatteringDescriptor, f: &TestFunction) -> Result<f64> {
    let tb = table()?;
    let ln_a = (d.a as f64).ln();
    let theta = |r: f64, theta1: f64| {
        let w = Complex64::from_polar(1.0 / 3.0, 2.0 * r * 3f64.ln());
        -2.0 * r * ln_a + d.e as f64 * 2.0 * (1.0 - w).arg() + d.m as f64 * theta1
    };
    let theta0 = d.m as f64 * PI;
    let body: f64 = tb
        .nodes
        .iter()
        .zip(&tb.theta1)
        .map(|(&(r, w), &t1)| w * f.h_prime(r) * (theta(r, t1) - theta0))
        .sum();
    let boundary = f.h(R_MAX) * (theta(R_MAX, tb.theta1_end) - theta0);
    let (tail_h, tail_hln) = f.tails();
    let m = d.m as f64;
    let tail = (-2.0 * ln_a + 2.0 * m * PI.ln()) * tail_h - 2.0 * m * tail_hln;
    Ok((-body + boundary + tail) / (2.0 * PI))
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ParabolicParts {
    /// coefficient of `P₁` (the number of cusps)
    pub p1_multiple: f64,
    /// coefficient of `J₀`, `−2 ln A`
    pub ln_j0_coefficient: f64,
    /// coefficient of `J₃`
    pub j3_coefficient: f64,
    pub p1: f64,
    pub j0: f64,
    pub j3: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceTerms {
    pub group: String,
    pub test_function: TestFunction,
    #[serde(rename = "I")]
    pub identity: f64,
    #[serde(rename = "E2")]
    pub elliptic2: f64,
    #[serde(rename = "E3")]
    pub elliptic3: f64,
    /// `P` from the decomposition.
    #[serde(rename = "P")]
    pub parabolic: f64,
    /// `P` with the scattering integral taken from the phase of `φ_Γ`.
    #[serde(rename = "P_direct")]
    pub parabolic_direct: f64,
    pub parts: ParabolicParts,
    pub error_estimate: f64,
}

impl ParabolicParts {
    pub fn reconstruct(&self) -> f64 {
        self.p1_multiple * self.p1 + self.ln_j0_coefficient * self.j0 + self.j3_coefficient * self.j3
    }
}

/// `κP₁ − 2 ln A · J₀ + e J₃`.
pub fn parabolic_term(g: &Group, f: &TestFunction) -> Result<(f64, ParabolicParts)> {
    let d = scattering_descriptor(g)?;
    let kappa = g.signature()?.cusps as f64;
    let u = parabolic_units(f)?;
    let parts = ParabolicParts {
        p1_multiple: kappa,
        ln_j0_coefficient: -2.0 * (d.a as f64).ln(),
        j3_coefficient: d.e as f64,
        p1: u.p1,
        j0: u.j0,
        j3: u.j3,
    };
    Ok((parts.reconstruct(), parts))
}

/// `P` assembled term by term from the general formula, with the
/// scattering integral from [`scattering_integral_by_phase`].
pub fn parabolic_term_direct(g: &Group, f: &TestFunction) -> Result<f64> {
    let d = scattering_descriptor(g)?;
    let kappa = g.signature()?.cusps as f64;
    let u = parabolic_units(f)?;
    let s = scattering_integral_by_phase(&d, f)?;
    // ¼h(0) tr(I − Φ(½)) with Φ(½) = −I
    Ok(kappa * (0.5 * f.h(0.0) - f.g(0.0) * LN_2 - u.digamma_integral) + s)
}

pub fn trace_terms(g: &Group, f: &TestFunction) -> Result<TraceTerms> {
    let sig = g.signature()?;
    let (parabolic, parts) = parabolic_term(g, f)?;
    let parabolic_direct = parabolic_term_direct(g, f)?;
    let (e2, e3) = elliptic_terms(sig.v2, sig.v3, f);
    Ok(TraceTerms {
        group: g.to_string(),
        test_function: *f,
        identity: identity_term(sig.index, f),
        elliptic2: e2,
        elliptic3: e3,
        parabolic,
        parabolic_direct,
        parts,
        error_estimate: parabolic_units(f)?.error_estimate * sig.cusps as f64,
    })
}

/// `X(9) + 3X₁ − 3X(3) − X(Γ³)` for `X = I, E, P`.
#[derive(Clone, Debug, Serialize)]
pub struct GnResiduals {
    pub test_function: TestFunction,
    #[serde(rename = "I_gn")]
    pub identity: f64,
    #[serde(rename = "E_gn")]
    pub elliptic: f64,
    #[serde(rename = "P_gn")]
    pub parabolic: f64,
}

impl GnResiduals {
    pub fn max_abs(&self) -> f64 {
        self.identity.abs().max(self.elliptic.abs()).max(self.parabolic.abs())
    }
}

pub fn genuinely_new_residuals(f: &TestFunction) -> Result<GnResiduals> {
    let groups = [(Group::Gamma0(9), 1.0), (Group::Psl2z, 3.0), (Group::Gamma0(3), -3.0), (Group::Gamma3, -1.0)];
    let (mut i, mut e, mut p) = (0.0, 0.0, 0.0);
    for (g, c) in groups {
        let t = trace_terms(&g, f)?;
        i += c * t.identity;
        e += c * (t.elliptic2 + t.elliptic3);
        p += c * t.parabolic;
    }
    Ok(GnResiduals { test_function: *f, identity: i, elliptic: e, parabolic: p })
}

/// `Σ h(r_j)` over a list of spectral parameters; a diagnostic only, since
/// truncated eigenvalue lists converge slowly against `h_T`.
pub fn spectral_sum(f: &TestFunction, rs: &[f64]) -> f64 {
    rs.iter().map(|&r| f.h(r)).sum()
}

/// Weyl main term `μ T²/12`.
pub fn weyl_main_term(g: &Group, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::domain("T must be positive"));
    }
    Ok(g.index_formula()? as f64 / 12.0 * t * t)
}

/// Main terms of the counting functions of newform families on Γ₀(9) and Γ³.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct NewformMainTerms {
    /// newforms on Γ³, i.e. not coming from PSL₂(Z)
    pub gamma3_new: f64,
    /// newforms on Γ₀(9)
    pub gamma0_9_new: f64,
    /// twists by `χ₃` of forms on PSL₂(Z) and of newforms on Γ₀(3)
    pub twists: f64,
    /// newforms on Γ₀(9) that are not twists
    pub genuinely_new: f64,
}

pub fn newform_main_terms(t: f64) -> Result<NewformMainTerms> {
    let w = |g: Group| weyl_main_term(&g, t);
    let level1 = w(Group::Psl2z)?;
    let level3_new = w(Group::Gamma0(3))? - 2.0 * level1;
    // old space on Γ₀(9): three copies from level 1, two from level 3
    let gamma0_9_new = w(Group::Gamma0(9))? - 3.0 * level1 - 2.0 * level3_new;
    let twists = level1 + level3_new;
    Ok(NewformMainTerms {
        gamma3_new: w(Group::Gamma3)? - level1,
        gamma0_9_new,
        twists,
        genuinely_new: gamma0_9_new - twists,
    })
}

/// `h_T(r) = ∫ g_T(u) e^{iur} du`, integrating the closed form piece by piece
/// over its four cubic pieces.
pub fn h_from_g(t: f64, r: f64) -> f64 {
    let gl = GaussLegendre::new(16);
    (0..4)
        .map(|k| {
            let (a, b) = ((k as f64 - 2.0) / t, (k as f64 - 1.0) / t);
            gl.integrate(a, b, (b - a) / 4.0, |u| g_closed_form(t, u) * (u * r).cos())
        })
        .sum()
}

/// `(x₀, T₀)`: the length of the shortest closed geodesic on the modular
/// surface, `2 arccosh(3/2)`, and `T₀ = 2/x₀`, above which `g_T` vanishes
/// on the whole length spectrum.
pub fn hyperbolic_cutoff() -> (f64, f64) {
    let x0 = 2.0 * 1.5f64.acosh();
    (x0, 2.0 / x0)
}

/// `ln N(P) = 2 arccosh(|tr P|/2)` for hyperbolic `P`.
pub fn geodesic_length(m: &ProjMatrix) -> Result<f64> {
    if crate::group::classify_element(m)? != ElementType::Hyperbolic {
        return Err(Error::domain("element is not hyperbolic"));
    }
    let t = m.trace_abs().to_f64().ok_or_else(|| Error::domain("trace too large"))?;
    Ok(2.0 * (0.5 * t).acosh())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irwin_hall_normalized() {
        let gl = GaussLegendre::new(8);
        let mass: f64 = (0..4).map(|k| gl.integrate(k as f64, k as f64 + 1.0, 1.0, irwin_hall4)).sum();
        assert!((mass - 1.0).abs() < 1e-14);
        assert!((irwin_hall4(2.0) - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn ci_asymptotic() {
        let x: f64 = 20.0;
        let mut s = 0.0;
        let mut term = 1.0;
        for k in 1..200 {
            term *= -x * x / ((2 * k - 1) as f64 * (2 * k) as f64);
            s += term / (2 * k) as f64;
        }
        let ci = 0.5772156649015329 + x.ln() + s;
        assert!((cos_integral_asymptotic(x) - ci).abs() < 3e-8, "{} {}", cos_integral_asymptotic(x), ci);
    }

    /// `(1/π)∫₀^L h(r) cos(ur) dr` by composite Simpson.
    fn fourier_oracle(f: &TestFunction, u: f64, l: f64) -> f64 {
        let n = 400_000;
        let dx = l / n as f64;
        let mut s = f.h(0.0) + f.h(l) * (u * l).cos();
        for k in 1..n {
            let r = k as f64 * dx;
            s += if k % 2 == 1 { 4.0 } else { 2.0 } * f.h(r) * (u * r).cos();
        }
        s * dx / 3.0 / PI
    }

    #[test]
    fn transforms_match_quadrature() {
        for f in [TestFunction::sinc_fourth(1.5).unwrap(), TestFunction::sinc_fourth(3.0).unwrap()] {
            for u in [0.0, 0.2, 0.5, 1.0] {
                let tol = if u == 0.0 { 1e-7 } else { 1e-6 };
                assert!((f.g(u) - fourier_oracle(&f, u, 4000.0)).abs() < tol, "{f:?} {u}");
            }
        }
        let f = TestFunction::gaussian(2.0).unwrap();
        for u in [0.0, 0.7, 1.3] {
            assert!((f.g(u) - fourier_oracle(&f, u, 40.0)).abs() < 1e-11);
        }
        let t = 2.0;
        assert!((g_closed_form(t, 0.0) - 2.0 * t / 3.0).abs() < 1e-15);
    }

    #[test]
    fn support_is_exact() {
        for t in [0.5, 1.0, 1.5, 2.0, 3.0, 7.0] {
            let s = 2.0 / t;
            for u in [s, s * 1.0000001, s + 1.0, 50.0] {
                assert_eq!(g_closed_form(t, u), 0.0);
                assert_eq!(g_closed_form(t, -u), 0.0);
            }
            assert!(g_closed_form(t, 0.99 * s) > 0.0);
        }
    }

    #[test]
    fn cutoff() {
        let (x0, t0) = hyperbolic_cutoff();
        assert!((x0 - 2.0 * (1.5f64 + (1.25f64).sqrt()).ln()).abs() < 1e-15);
        assert!((t0 - 1.0390).abs() < 1e-4);
        let m = ProjMatrix::from_i64(2, 1, 1, 1).unwrap();
        assert!((geodesic_length(&m).unwrap() - x0).abs() < 1e-14);
    }

    #[test]
    fn scattering_descriptors() {
        for n in [3, 9] {
            assert_eq!(huxley_expand(n).unwrap(), scattering_descriptor(&Group::Gamma0(n)).unwrap());
        }
        for g in [Group::Psl2z, Group::Gamma0(3), Group::Gamma0(9), Group::Gamma3] {
            let d = scattering_descriptor(&g).unwrap();
            for r in [0.3, 1.0, 7.5] {
                let z = d.phi(Complex64::new(0.5, r)).unwrap();
                assert!((z.norm() - 1.0).abs() < 1e-12, "{g} {r}");
            }
            let v = d.value_at_half().unwrap();
            assert!(v.im.abs() < 1e-10 && (v.re.abs() - 1.0).abs() < 1e-10, "{g} {v}");
        }
    }

    #[test]
    fn weyl_fractions() {
        let t = newform_main_terms(10.0).unwrap();
        let total = weyl_main_term(&Group::Psl2z, 10.0).unwrap();
        assert!((t.gamma3_new / total - 2.0).abs() < 1e-14);
        assert!((t.gamma0_9_new / total - 5.0).abs() < 1e-14);
        assert!((t.twists / total - 3.0).abs() < 1e-14);
        assert!((t.genuinely_new / total - 2.0).abs() < 1e-14);
    }
}
