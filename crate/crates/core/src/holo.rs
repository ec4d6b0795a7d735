//! Exact q-expansions: Ramanujan's τ, the weight-12 newforms on Γ₀(9), and
//! dimensions of cusp form spaces from the group signature.

use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::group::{Group, Signature};
use crate::special::DirichletCharacter;
use crate::{Error, Result};

pub const DELTA_MAX_TERMS: usize = 10_000;

/// `u + v√2520`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QuadInt {
    pub u: i128,
    pub v: i128,
}

impl QuadInt {
    pub const D: i128 = 2520;

    pub const fn new(u: i128, v: i128) -> Self {
        QuadInt { u, v }
    }

    pub const fn int(u: i128) -> Self {
        QuadInt { u, v: 0 }
    }

    /// `σ^±(u + v√D) = u ± v√D`, as a real number.
    pub fn embed(&self, sign: i8) -> f64 {
        self.u as f64 + sign as f64 * self.v as f64 * (Self::D as f64).sqrt()
    }

    pub fn conj(&self) -> Self {
        QuadInt::new(self.u, -self.v)
    }
}

impl Add for QuadInt {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        QuadInt::new(self.u + o.u, self.v + o.v)
    }
}
impl Sub for QuadInt {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        QuadInt::new(self.u - o.u, self.v - o.v)
    }
}
impl Neg for QuadInt {
    type Output = Self;
    fn neg(self) -> Self {
        QuadInt::new(-self.u, -self.v)
    }
}
impl Mul for QuadInt {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        QuadInt::new(self.u * o.u + Self::D * self.v * o.v, self.u * o.v + self.v * o.u)
    }
}

/// `Σ_{n≥1} a(n) qⁿ` truncated after `a(M)`; `coeffs[n − 1] = a(n)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QExpansion<C> {
    pub weight: u32,
    pub level: u64,
    pub coeffs: Vec<C>,
}

impl<C: Copy + Default> QExpansion<C> {
    /// `a(n)`, zero past the truncation.
    pub fn get(&self, n: usize) -> C {
        if n == 0 || n > self.coeffs.len() {
            C::default()
        } else {
            self.coeffs[n - 1]
        }
    }
}

impl Default for QuadInt {
    fn default() -> Self {
        QuadInt::int(0)
    }
}

fn mul_series(a: &[i128], b: &[i128], len: usize) -> Result<Vec<i128>> {
    let mut out = vec![0i128; len];
    for (i, &x) in a.iter().enumerate().take(len).filter(|(_, x)| **x != 0) {
        for (j, &y) in b.iter().enumerate().take(len - i) {
            let t = x.checked_mul(y).and_then(|t| t.checked_add(out[i + j]));
            out[i + j] = t.ok_or_else(|| Error::Unsupported("coefficient overflow".into()))?;
        }
    }
    Ok(out)
}

/// `Δ = q∏(1 − qⁿ)²⁴`, built from Jacobi's `∏(1 − qⁿ)³ = Σ(−1)ᵏ(2k+1)q^{k(k+1)/2}`
/// by three squarings.
pub fn delta_qexp(m: usize) -> Result<QExpansion<i128>> {
    if m == 0 || m > DELTA_MAX_TERMS {
        return Err(Error::domain(format!("truncation {m} outside 1..={DELTA_MAX_TERMS}")));
    }
    let mut e3 = vec![0i128; m];
    for k in 0.. {
        let e = k * (k + 1) / 2;
        if e >= m {
            break;
        }
        e3[e] = if k % 2 == 0 { 2 * k as i128 + 1 } else { -(2 * k as i128 + 1) };
    }
    let e6 = mul_series(&e3, &e3, m)?;
    let e12 = mul_series(&e6, &e6, m)?;
    let e24 = mul_series(&e12, &e12, m)?;
    Ok(QExpansion { weight: 12, level: 1, coeffs: e24 })
}

/// `∏(1 − qⁿ)²⁴` term by term, factor after factor. Slower and only used
/// as a cross-check of [`delta_qexp`].
pub fn delta_qexp_naive(m: usize) -> Result<QExpansion<i128>> {
    let mut s = vec![0i128; m];
    s[0] = 1;
    for n in 1..m {
        for _ in 0..24 {
            for k in (n..m).rev() {
                s[k] -= s[k - n];
            }
        }
    }
    Ok(QExpansion { weight: 12, level: 1, coeffs: s })
}

/// The three newforms spanning the new part of `S₁₂(Γ₀(9))`, as printed,
/// for n = 1..=10.
pub fn printed_newforms() -> (QExpansion<i128>, QExpansion<i128>, QExpansion<QuadInt>) {
    let f = vec![1, 24, 0, -1472, -4830, 0, -16744, -84480, 0, -115920];
    let g = vec![1, -78, 0, 4036, 5370, 0, -27760, -155064, 0, -418860];
    let q = QuadInt::new;
    let h = vec![
        q(1, 0),
        q(0, 1),
        q(0, 0),
        q(472, 0),
        q(0, 224),
        q(0, 0),
        q(58100, 0),
        q(0, -1576),
        q(0, 0),
        q(564480, 0),
    ];
    (
        QExpansion { weight: 12, level: 9, coeffs: f },
        QExpansion { weight: 12, level: 9, coeffs: g },
        QExpansion { weight: 12, level: 9, coeffs: h },
    )
}

#[derive(Clone, Debug, Serialize)]
pub struct CoefficientCheck {
    pub n: usize,
    pub expected: String,
    pub found: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TwistReport {
    /// `χ₃(n)τ(n)` against the printed coefficients of `f`.
    pub f_checks: Vec<CoefficientCheck>,
    /// Hecke relations at 2, 5 and 7 among the printed coefficients of `g`.
    pub g_checks: Vec<CoefficientCheck>,
    /// `√2520` only at `n ≡ 2 mod 3`, and the Hecke relations of `h`.
    pub h_checks: Vec<CoefficientCheck>,
    pub holds: bool,
}

fn check<T: std::fmt::Debug + PartialEq>(n: usize, expected: T, found: T) -> CoefficientCheck {
    CoefficientCheck { n, holds: expected == found, expected: format!("{expected:?}"), found: format!("{found:?}") }
}

/// `a(p)a(n) = a(pn) + p^{11} a(n/p)` at every pair the printed range allows.
fn hecke_relations<C>(e: &QExpansion<C>, scalar: impl Fn(i128) -> C) -> Vec<CoefficientCheck>
where
    C: Copy + Default + PartialEq + std::fmt::Debug + Add<Output = C> + Mul<Output = C>,
{
    let m = e.coeffs.len();
    let mut out = Vec::new();
    for p in [2usize, 5, 7] {
        for n in (1..=m).filter(|n| p * n <= m) {
            let lhs = e.get(p) * e.get(n);
            let rhs = e.get(p * n) + if n % p == 0 { scalar((p as i128).pow(11)) * e.get(n / p) } else { C::default() };
            out.push(check(p * n, lhs, rhs));
        }
    }
    out
}

pub fn verify_twist_example() -> Result<TwistReport> {
    let (f, g, h) = printed_newforms();
    let tau = delta_qexp(f.coeffs.len())?;
    let chi = DirichletCharacter::chi3();
    let chi_int = |n: usize| chi.value(n as i64).re.round() as i128;

    let f_checks: Vec<CoefficientCheck> = (1..=f.coeffs.len()).map(|n| check(n, chi_int(n) * tau.get(n), f.get(n))).collect();
    let mut g_checks = hecke_relations(&g, |x| x);
    g_checks.extend((1..=g.coeffs.len()).filter(|n| n % 3 == 0).map(|n| check(n, 0, g.get(n))));
    let mut h_checks: Vec<CoefficientCheck> = (1..=h.coeffs.len())
        .map(|n| {
            let a = h.get(n);
            let irrational = a.v != 0;
            check(n, n % 3 == 2 && a != QuadInt::int(0), irrational)
        })
        .collect();
    // σ⁻(a(n)) = χ₃(n)σ⁺(a(n)) exactly: conj(a) = χ₃(n)·a
    h_checks.extend(
        (1..=h.coeffs.len()).filter(|n| n % 3 != 0).map(|n| check(n, QuadInt::int(chi_int(n)) * h.get(n), h.get(n).conj())),
    );
    h_checks.extend(hecke_relations(&h, QuadInt::int));
    let holds = f_checks.iter().chain(&g_checks).chain(&h_checks).all(|c| c.holds);
    Ok(TwistReport { f_checks, g_checks, h_checks, holds })
}

/// `dim S_k(Γ) = (k − 1)(g − 1) + ⌊k/4⌋v₂ + ⌊k/3⌋v₃ + (k/2 − 1)κ` for even
/// `k ≥ 4`, and `g` for `k = 2`.
pub fn dim_cusp_forms(sig: &Signature, k: u32) -> Result<u64> {
    if k % 2 == 1 || k == 0 {
        return Err(Error::domain(format!("weight {k} is not a positive even integer")));
    }
    if k == 2 {
        return Ok(sig.genus);
    }
    let k = k as i64;
    let d = (k - 1) * (sig.genus as i64 - 1) + (k / 4) * sig.v2 as i64 + (k / 3) * sig.v3 as i64 + (k / 2 - 1) * sig.cusps as i64;
    u64::try_from(d).map_err(|_| Error::CheckFailed(format!("negative dimension {d}")))
}

#[derive(Clone, Debug, Serialize)]
pub struct DimensionRow {
    pub k: u32,
    pub d9: u64,
    pub d1: u64,
    pub d3: u64,
    pub d_gamma3: u64,
    /// `d(9) + 3d(1) − 3d(3) − d(Γ³)`
    pub combination: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CancellationReport {
    pub k_max: u32,
    pub rows: Vec<DimensionRow>,
    pub holds: bool,
}

pub fn gn_dimension_cancellation(k_max: u32) -> Result<CancellationReport> {
    if !(4..=200).contains(&k_max) {
        return Err(Error::domain(format!("k_max = {k_max} outside 4..=200")));
    }
    let sigs: Vec<Signature> = [Group::Gamma0(9), Group::Psl2z, Group::Gamma0(3), Group::Gamma3]
        .iter()
        .map(|g| g.signature())
        .collect::<Result<_>>()?;
    let mut rows = Vec::new();
    for k in (4..=k_max).step_by(2) {
        let d: Vec<u64> = sigs.iter().map(|s| dim_cusp_forms(s, k)).collect::<Result<_>>()?;
        let combination = d[0] as i64 + 3 * d[1] as i64 - 3 * d[2] as i64 - d[3] as i64;
        rows.push(DimensionRow { k, d9: d[0], d1: d[1], d3: d[2], d_gamma3: d[3], combination });
    }
    let holds = rows.iter().all(|r| r.combination == 0);
    Ok(CancellationReport { k_max, rows, holds })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_values() {
        let d = delta_qexp(30).unwrap();
        assert_eq!(&d.coeffs[..6], &[1, -24, 252, -1472, 4830, -6048]);
        assert_eq!(d.get(6), d.get(2) * d.get(3));
        assert_eq!(d, delta_qexp_naive(30).unwrap());
    }

    #[test]
    fn large_truncation_is_exact() {
        let d = delta_qexp(DELTA_MAX_TERMS).unwrap();
        // τ(p²) = τ(p)² − p¹¹ at p = 97
        let p = 97usize;
        assert_eq!(d.get(p * p), d.get(p) * d.get(p) - (p as i128).pow(11));
        assert!(delta_qexp(DELTA_MAX_TERMS + 1).is_err());
    }

    #[test]
    fn example_forms() {
        let r = verify_twist_example().unwrap();
        assert!(r.holds, "{r:#?}");
        assert!(r.f_checks.iter().any(|c| c.n == 5 && c.found == "-4830"));
    }

    #[test]
    fn dimensions() {
        let s = |g: Group| g.signature().unwrap();
        assert_eq!(dim_cusp_forms(&s(Group::Psl2z), 12).unwrap(), 1);
        assert_eq!(dim_cusp_forms(&s(Group::Gamma0(9)), 12).unwrap(), 9);
        assert_eq!(dim_cusp_forms(&s(Group::Gamma3), 12).unwrap(), 3);
        assert_eq!(dim_cusp_forms(&s(Group::Psl2z), 2).unwrap(), 0);
        assert!(dim_cusp_forms(&s(Group::Psl2z), 5).is_err());
        assert!(gn_dimension_cancellation(200).unwrap().holds);
    }
}
