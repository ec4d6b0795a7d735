//! Hecke operators, character twists, the `T^{1/3}` and `J` actions and the
//! construction of paired forms, all on truncated Fourier coefficients.
//!
//! Coefficients are generic over [`Coefficient`] so that the operator
//! identities can be checked exactly, over `Q` or over `Q(ζ₃)`, as well as
//! in floating point.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::group::ProjMatrix;
use crate::maass::Parity;
use crate::special::{gauss_sum, DirichletCharacter};
use crate::{Error, Result};

/// A ring the coefficients live in.
pub trait Coefficient:
    Clone + Debug + PartialEq + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn from_i64(n: i64) -> Self;
    /// `e^{2πi e/order}` when the ring contains it.
    fn root_of_unity(e: u64, order: u64) -> Option<Self>;
    fn to_complex(&self) -> Complex64;
}

impl Coefficient for Complex64 {
    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn root_of_unity(e: u64, order: u64) -> Option<Self> {
        Some(crate::special::root_of_unity(e, order))
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
}

impl Coefficient for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(n.into())
    }
    fn root_of_unity(e: u64, order: u64) -> Option<Self> {
        match (2 * e) % order {
            0 if e % order == 0 => Some(Self::one()),
            0 => Some(-Self::one()),
            _ => None,
        }
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }
}

/// `a + bω` in `Q(ω)`, `ω = e^{2πi/3}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Eisenstein {
    pub a: BigRational,
    pub b: BigRational,
}

impl Eisenstein {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Eisenstein { a, b }
    }
    pub fn omega() -> Self {
        Eisenstein::new(BigRational::zero(), BigRational::one())
    }
    /// `ω^k`
    pub fn omega_pow(k: i64) -> Self {
        match k.rem_euclid(3) {
            0 => Self::one(),
            1 => Self::omega(),
            _ => -Self::one() - Self::omega(),
        }
    }
}

impl Add for Eisenstein {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Eisenstein::new(self.a + o.a, self.b + o.b)
    }
}
impl Sub for Eisenstein {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Eisenstein::new(self.a - o.a, self.b - o.b)
    }
}
impl Neg for Eisenstein {
    type Output = Self;
    fn neg(self) -> Self {
        Eisenstein::new(-self.a, -self.b)
    }
}
impl Mul for Eisenstein {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        // ω² = −1 − ω
        let bd = &self.b * &o.b;
        Eisenstein::new(&self.a * &o.a - &bd, &self.a * &o.b + &self.b * &o.a - bd)
    }
}
impl Zero for Eisenstein {
    fn zero() -> Self {
        Eisenstein::new(BigRational::zero(), BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}
impl One for Eisenstein {
    fn one() -> Self {
        Eisenstein::new(BigRational::one(), BigRational::zero())
    }
}

impl Coefficient for Eisenstein {
    fn from_i64(n: i64) -> Self {
        Eisenstein::new(BigRational::from_integer(n.into()), BigRational::zero())
    }
    fn root_of_unity(e: u64, order: u64) -> Option<Self> {
        if (6 * e) % order != 0 {
            return None;
        }
        // ζ₆ = −ω², so ζ₆^k = (−1)^k ω^{2k}
        let k = (6 * e / order) % 6;
        let w = Self::omega_pow(2 * k as i64);
        Some(if k % 2 == 0 { w } else { -w })
    }
    fn to_complex(&self) -> Complex64 {
        let w = crate::special::root_of_unity(1, 3);
        Complex64::new(self.a.to_f64().unwrap_or(f64::NAN), 0.0) + w * self.b.to_f64().unwrap_or(f64::NAN)
    }
}

/// Coefficients `a(n)`, `0 < |n| ≤ M`, of `Σ_{n≠0} a(n) κ_n(y) e(nx)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierExpansion<C> {
    pub r: f64,
    pub level: u64,
    pub parity: Option<Parity>,
    m: usize,
    /// index `n + M` for n < 0, `n + M − 1` for n > 0
    coeffs: Vec<C>,
}

impl<C: Coefficient> FourierExpansion<C> {
    /// Coefficients `f(n)` for `0 < |n| ≤ m`; no parity is recorded.
    pub fn from_fn(r: f64, level: u64, m: usize, f: impl Fn(i64) -> C) -> Self {
        let mi = m as i64;
        let coeffs = (-mi..=mi).filter(|&n| n != 0).map(f).collect();
        FourierExpansion { r, level, parity: None, m, coeffs }
    }

    /// A form of definite parity from `a(1), …, a(M)`.
    pub fn with_parity(r: f64, level: u64, parity: Parity, positive: &[C]) -> Self {
        let m = positive.len();
        let mut e = Self::from_fn(r, level, m, |n| {
            let a = positive[n.unsigned_abs() as usize - 1].clone();
            if n < 0 && parity == Parity::Odd {
                -a
            } else {
                a
            }
        });
        e.parity = Some(parity);
        e
    }

    pub fn truncation(&self) -> usize {
        self.m
    }

    /// `a(n)`, zero outside the stored range and at `n = 0`.
    pub fn get(&self, n: i64) -> C {
        let mi = self.m as i64;
        if n == 0 || n.abs() > mi {
            return C::zero();
        }
        let k = if n < 0 { n + mi } else { n + mi - 1 };
        self.coeffs[k as usize].clone()
    }

    /// All stored `(n, a(n))`, n ascending.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &C)> + '_ {
        let mi = self.m as i64;
        (-mi..=mi).filter(|&n| n != 0).zip(self.coeffs.iter())
    }

    fn rebuild(&self, m: usize, parity: Option<Parity>, f: impl Fn(i64) -> C) -> Self {
        let mut e = Self::from_fn(self.r, self.level, m, f);
        e.parity = parity;
        e
    }

    /// Whether `a(−n) = ±a(n)` for the recorded parity.
    pub fn parity_consistent(&self) -> bool {
        match self.parity {
            None => true,
            Some(p) => (1..=self.m as i64).all(|n| {
                let a = self.get(n);
                self.get(-n) == if p == Parity::Odd { -a } else { a }
            }),
        }
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// `(T_n a)(m) = Σ_{d | (m, n), (d, N) = 1} a(mn/d²)`, truncated to `⌊M/n⌋`.
/// Requires `(n, N) = 1`.
pub fn hecke_tn<C: Coefficient>(e: &FourierExpansion<C>, n: u64) -> Result<FourierExpansion<C>> {
    if n == 0 {
        return Err(Error::domain("T_0 is not defined"));
    }
    if n.gcd(&e.level) != 1 {
        return Err(Error::domain(format!(
            "T_{n} on level {}: use the (n, N) = 1 family only",
            e.level
        )));
    }
    let ni = n as i64;
    let level = e.level as i64;
    Ok(e.rebuild(e.m / n as usize, e.parity, |m| {
        let g = m.abs().gcd(&ni);
        let mut s = C::zero();
        for d in (1..=g).filter(|d| g % d == 0 && d.gcd(&level) == 1) {
            s = s + e.get(m * ni / (d * d));
        }
        s
    }))
}

/// `T_p` for a prime `p ∤ N`.
pub fn hecke_tp<C: Coefficient>(e: &FourierExpansion<C>, p: u64) -> Result<FourierExpansion<C>> {
    if !is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    hecke_tn(e, p)
}

/// `U_p`: `(U_p a)(m) = a(pm)`, the action of `T_p` for `p | N`.
pub fn hecke_up<C: Coefficient>(e: &FourierExpansion<C>, p: u64) -> FourierExpansion<C> {
    let pi = p as i64;
    e.rebuild(e.m / p as usize, e.parity, |m| e.get(pi * m))
}

/// `λ` with `e' = λ e` on the common range, if `e` is an eigenvector.
pub fn eigenvalue<C: Coefficient>(e: &FourierExpansion<C>, image: &FourierExpansion<C>, tol: f64) -> Option<Complex64> {
    let (n0, a0) = e.iter().find(|(_, a)| a.to_complex().norm() > tol)?;
    let lambda = image.get(n0).to_complex() / a0.to_complex();
    image
        .iter()
        .all(|(n, b)| (b.to_complex() - lambda * e.get(n).to_complex()).norm() <= tol)
        .then_some(lambda)
}

fn character_value<C: Coefficient>(chi: &DirichletCharacter, n: i64) -> Result<C> {
    match chi.exponent(n) {
        None => Ok(C::zero()),
        Some(k) => C::root_of_unity(k, chi.order())
            .ok_or_else(|| Error::Unsupported(format!("character of order {} in this coefficient ring", chi.order()))),
    }
}

/// `a'(n) = χ(n) a(n)`.
pub fn twist_by_coeffs<C: Coefficient>(e: &FourierExpansion<C>, chi: &DirichletCharacter) -> Result<FourierExpansion<C>> {
    let values: Vec<C> = (0..chi.modulus() as i64).map(|k| character_value(chi, k)).collect::<Result<_>>()?;
    let q = chi.modulus() as i64;
    let parity = e.parity.map(|p| if chi.is_odd() { p.flip() } else { p });
    Ok(e.rebuild(e.m, parity, |n| values[n.rem_euclid(q) as usize].clone() * e.get(n)))
}

/// `φ_χ(z) = τ(χ̄)⁻¹ Σ_{m mod q} χ̄(m) φ(z + m/q)` on the `e(nx)` basis:
/// `a'(n) = τ(χ̄)⁻¹ (Σ_m χ̄(m) e(nm/q)) a(n)`. `χ` must be primitive.
pub fn twist_by_sum(e: &FourierExpansion<Complex64>, chi: &DirichletCharacter) -> Result<FourierExpansion<Complex64>> {
    if !chi.is_primitive() {
        return Err(Error::domain(format!(
            "the shift-sum twist needs a primitive character (conductor {} < modulus {})",
            chi.conductor(),
            chi.modulus()
        )));
    }
    let cb = chi.conj();
    let tau = gauss_sum(&cb);
    let q = chi.modulus() as i64;
    let factor: Vec<Complex64> = (0..q)
        .map(|n| (0..q).map(|m| cb.value(m) * crate::special::e_rational(n * m, q)).sum::<Complex64>() / tau)
        .collect();
    let parity = e.parity.map(|p| if chi.is_odd() { p.flip() } else { p });
    Ok(e.rebuild(e.m, parity, |n| factor[n.rem_euclid(q) as usize] * e.get(n)))
}

/// `a'(n) = ζ₃^{kn} a(n)`, the action of `T^{k/3}`.
pub fn t13_power<C: Coefficient>(e: &FourierExpansion<C>, k: i64) -> Result<FourierExpansion<C>> {
    let z: Vec<C> = (0..3)
        .map(|j| C::root_of_unity(j, 3).ok_or_else(|| Error::Unsupported("ζ₃ in this coefficient ring".into())))
        .collect::<Result<_>>()?;
    Ok(e.rebuild(e.m, None, |n| z[(k * n).rem_euclid(3) as usize].clone() * e.get(n)))
}

/// `a'(n) = ζ₃ⁿ a(n)`.
pub fn t13_action<C: Coefficient>(e: &FourierExpansion<C>) -> Result<FourierExpansion<C>> {
    t13_power(e, 1)
}

/// `a'(n) = a(−n)`.
pub fn reflect_j<C: Coefficient>(e: &FourierExpansion<C>) -> FourierExpansion<C> {
    e.rebuild(e.m, e.parity, |n| e.get(-n))
}

/// `𝒯_p`: `T_p` for `p ≡ 1 mod 3`, `J T_p` for `p ≡ 2 mod 3`.
pub fn script_tp<C: Coefficient>(e: &FourierExpansion<C>, p: u64) -> Result<FourierExpansion<C>> {
    let t = hecke_tp(e, p)?;
    match p % 3 {
        1 => Ok(t),
        2 => Ok(reflect_j(&t)),
        _ => Err(Error::domain("𝒯_p needs p ≠ 3")),
    }
}

/// The residue class mod 3 carrying the support, if there is exactly one.
fn support_class<C: Coefficient>(e: &FourierExpansion<C>) -> Option<i64> {
    let classes: Vec<i64> = e.iter().filter(|(_, a)| !a.is_zero()).map(|(n, _)| n.rem_euclid(3)).collect();
    let first = *classes.first()?;
    classes.iter().all(|&c| c == first).then_some(first)
}

/// Whether `U₃` annihilates `e`; `e` must be a `ζ₃^{±1}`-eigenvector of
/// `T^{1/3}`.
pub fn t3_degeneracy_check<C: Coefficient>(e: &FourierExpansion<C>) -> Result<bool> {
    match support_class(e) {
        Some(1) | Some(2) => Ok(hecke_up(e, 3).iter().all(|(_, a)| a.is_zero())),
        None if e.iter().all(|(_, a)| a.is_zero()) => Ok(true),
        _ => Err(Error::domain("expansion is not in a ζ₃^{±1}-eigenspace of T^{1/3}")),
    }
}

/// `(F⁺, F⁻) = (Φ + Ψ, Φ − Ψ)` with `Ψ = JΦ`, for `Φ` supported on
/// `n ≡ 1 mod 3`. Then `c⁻(n) = χ₃(n) c⁺(n)`.
pub fn build_pair<C: Coefficient>(phi: &FourierExpansion<C>) -> Result<(FourierExpansion<C>, FourierExpansion<C>)> {
    if let Some((n, _)) = phi.iter().find(|(n, a)| n.rem_euclid(3) != 1 && !a.is_zero()) {
        return Err(Error::domain(format!("a({n}) ≠ 0 but {n} ≢ 1 mod 3")));
    }
    let psi = reflect_j(phi);
    let plus = phi.rebuild(phi.m, Some(Parity::Even), |n| phi.get(n) + psi.get(n));
    let minus = phi.rebuild(phi.m, Some(Parity::Odd), |n| phi.get(n) - psi.get(n));
    Ok((plus, minus))
}

/// `Σ_n c⁺(n) conj(c⁻(n))` over the stored range.
pub fn pair_inner_product<C: Coefficient>(plus: &FourierExpansion<C>, minus: &FourierExpansion<C>) -> Complex64 {
    plus.iter().map(|(n, a)| a.to_complex() * minus.get(n).to_complex().conj()).sum()
}

/// `D(S_χ) = |{p ∈ (Z/q)* : χ(p) ≠ 1}| / φ(q)`.
pub fn twist_density(chi: &DirichletCharacter) -> BigRational {
    let q = chi.modulus() as i64;
    let units: Vec<i64> = (1..=q).filter(|n| n.gcd(&q) == 1).collect();
    let moved = units.iter().filter(|&&n| chi.exponent(n) != Some(0)).count();
    BigRational::new(BigInt::from(moved), BigInt::from(units.len()))
}

/// Outcome of one matrix identity.
#[derive(Clone, Debug, serde::Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub holds: bool,
}

/// `x = T^k y` for some integer `k`.
fn equal_mod_translation(x: &ProjMatrix, y: &ProjMatrix) -> bool {
    x.mul(&y.inverse()).as_translation().is_some()
}

/// The coset rearrangements behind the commutation of `T_p` with `J` and
/// `T^{1/3}`, as identities modulo left multiplication by integer
/// translations:
/// `Jα_pJ = α_p`, `Jβ_{p,b}J = β_{p,−b}`, `α_p T^{1/3} = T^{±1/3} α_p` and
/// `β_{p,b} T^{1/3} = T^{±1/3} β_{p,b'}` with `b' ≡ b + (1 − p)/3` for
/// `p ≡ 1` and `b' ≡ b + (1 + p)/3` for `p ≡ 2 mod 3`.
pub fn tp_coset_checks(p: u64) -> Result<Vec<IdentityCheck>> {
    if p == 3 {
        return Err(Error::domain("p = 3 degenerates; use t3_degeneracy_check"));
    }
    if !is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    let pi = p as i64;
    let j = ProjMatrix::j();
    let t13 = ProjMatrix::t_third();
    let (sign, shift) = if p % 3 == 1 { (1, (1 - pi) / 3) } else { (-1, (1 + pi) / 3) };
    let t_side = ProjMatrix::t_thirds(sign);
    let alpha = ProjMatrix::alpha(pi)?;
    let mut out = vec![
        IdentityCheck { name: format!("J α_{p} J = α_{p}"), holds: equal_mod_translation(&j.mul(&alpha).mul(&j), &alpha) },
        IdentityCheck {
            name: format!("α_{p} T^(1/3) = T^({sign}/3) α_{p}"),
            holds: equal_mod_translation(&alpha.mul(&t13), &t_side.mul(&alpha)),
        },
    ];
    for b in 0..pi {
        let beta = ProjMatrix::beta(pi, b)?;
        let neg = ProjMatrix::beta(pi, (-b).rem_euclid(pi))?;
        out.push(IdentityCheck {
            name: format!("J β_{p},{b} J = β_{p},{}", (-b).rem_euclid(pi)),
            holds: equal_mod_translation(&j.mul(&beta).mul(&j), &neg),
        });
        let b2 = (b + shift).rem_euclid(pi);
        let target = ProjMatrix::beta(pi, b2)?;
        out.push(IdentityCheck {
            name: format!("β_{p},{b} T^(1/3) = T^({sign}/3) β_{p},{b2}"),
            holds: equal_mod_translation(&beta.mul(&t13), &t_side.mul(&target)),
        });
    }
    Ok(out)
}

/// `T^{1/3} β_{3,j} = β_{3,j+1}` for `j = 0, 1, 2`; `β_{3,3} = T β_{3,0}`.
pub fn t3_beta_shift_checks() -> Result<Vec<IdentityCheck>> {
    let t13 = ProjMatrix::t_third();
    (0..3)
        .map(|j| {
            Ok(IdentityCheck {
                name: format!("T^(1/3) β_3,{j} = β_3,{}", j + 1),
                holds: t13.mul(&ProjMatrix::beta(3, j)?) == ProjMatrix::beta(3, j + 1)?,
            })
        })
        .collect()
}

/// Integer mock coefficients in `[−9, 9]` over `Q(ω)`.
pub fn random_expansion(level: u64, m: usize, seed: u64) -> FourierExpansion<Eisenstein> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let vals: Vec<Eisenstein> = (0..2 * m)
        .map(|_| {
            let (a, b): (i64, i64) = (rng.gen_range(-9..=9), rng.gen_range(-9..=9));
            Eisenstein::new(BigRational::from_integer(a.into()), BigRational::from_integer(b.into()))
        })
        .collect();
    let mi = m as i64;
    FourierExpansion::from_fn(0.0, level, m, |n| vals[(if n < 0 { n + mi } else { n + mi - 1 }) as usize].clone())
}

fn restrict<C: Coefficient>(e: &FourierExpansion<C>, m: usize) -> FourierExpansion<C> {
    e.rebuild(m.min(e.m), e.parity, |n| e.get(n))
}

/// The operator identities `J T_p J = T_p` and `T_p T^{1/3} = T^{±1/3} T_p`
/// on level-9 random data in exact arithmetic.
pub fn tp_coefficient_checks(p: u64, seed: u64) -> Result<Vec<IdentityCheck>> {
    if p == 3 {
        return Err(Error::domain("p = 3 degenerates; use t3_degeneracy_check"));
    }
    let e = random_expansion(9, 60, seed);
    let tp = hecke_tp(&e, p)?;
    let jtj = reflect_j(&hecke_tp(&reflect_j(&e), p)?);
    let sign = if p % 3 == 1 { 1 } else { -1 };
    let lhs = hecke_tp(&t13_action(&e)?, p)?;
    let rhs = t13_power(&tp, sign)?;
    Ok(vec![
        IdentityCheck { name: format!("J T_{p} J = T_{p}"), holds: jtj == tp },
        IdentityCheck { name: format!("T_{p} T^(1/3) = T^({sign}/3) T_{p}"), holds: lhs == restrict(&rhs, lhs.m) },
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn eisenstein_roots() {
        let w = Eisenstein::omega();
        assert_eq!(w.clone() * w.clone() * w.clone(), Eisenstein::one());
        for k in 0..6 {
            let z = Eisenstein::root_of_unity(k, 6).unwrap();
            assert!((z.to_complex() - crate::special::root_of_unity(k, 6)).norm() < 1e-15);
        }
        assert!(BigRational::root_of_unity(1, 3).is_none());
        assert_eq!(BigRational::root_of_unity(1, 2), Some(q(-1)));
    }

    #[test]
    fn t1_is_identity() {
        let e = FourierExpansion::from_fn(1.0, 1, 20, |n| q(n * n - 3));
        assert_eq!(hecke_tn(&e, 1).unwrap(), e);
    }

    #[test]
    fn level_guard() {
        let e = FourierExpansion::from_fn(1.0, 9, 20, |n| q(n));
        assert!(hecke_tp(&e, 3).is_err());
        assert!(hecke_tp(&e, 4).is_err());
        assert!(hecke_tp(&e, 2).is_ok());
    }

    #[test]
    fn matrix_identities() {
        for p in [2, 5, 7, 11, 13] {
            for c in tp_coset_checks(p).unwrap() {
                assert!(c.holds, "{}", c.name);
            }
        }
        assert!(tp_coset_checks(3).is_err());
        // the shift (2 − p)/3 fails already for p = 2
        let lhs = ProjMatrix::beta(2, 0).unwrap().mul(&ProjMatrix::t_third());
        let rhs = ProjMatrix::t_thirds(-1).mul(&ProjMatrix::beta(2, 0).unwrap());
        assert!(!equal_mod_translation(&lhs, &rhs));
    }

    #[test]
    fn b_shift_for_seven() {
        let checks = tp_coset_checks(7).unwrap();
        assert!(checks.iter().any(|c| c.name == "β_7,0 T^(1/3) = T^(1/3) β_7,5" && c.holds));
    }

    #[test]
    fn coefficient_identities() {
        for p in [2, 5, 7, 11] {
            for c in tp_coefficient_checks(p, 7).unwrap() {
                assert!(c.holds, "{}", c.name);
            }
        }
        for c in t3_beta_shift_checks().unwrap() {
            assert!(c.holds, "{}", c.name);
        }
    }

    #[test]
    fn t13_and_j() {
        let e = random_expansion(9, 30, 1);
        let t = t13_action(&e).unwrap();
        assert_eq!(t13_action(&t13_action(&t).unwrap()).unwrap(), e);
        assert_eq!(reflect_j(&reflect_j(&e)), e);
        assert_eq!(reflect_j(&t13_action(&reflect_j(&e)).unwrap()), t13_power(&e, -1).unwrap());
        let fixed = FourierExpansion::from_fn(0.0, 9, 30, |n| Eisenstein::from_i64(if n % 3 == 0 { n } else { 0 }));
        assert_eq!(t13_action(&fixed).unwrap(), fixed);
    }

    #[test]
    fn twists_agree() {
        let chi = DirichletCharacter::chi3();
        let e = FourierExpansion::from_fn(1.0, 1, 40, |n| Complex64::new((n as f64).sin(), (n as f64 * 0.3).cos()));
        let a = twist_by_coeffs(&e, &chi).unwrap();
        let b = twist_by_sum(&e, &chi).unwrap();
        for (n, x) in a.iter() {
            assert!((x - b.get(n)).norm() < 1e-12);
            if n % 3 == 0 {
                assert!(b.get(n).norm() < 1e-14);
            }
        }
        let twice = twist_by_coeffs(&a, &chi).unwrap();
        for (n, x) in twice.iter().filter(|(n, _)| n % 3 != 0) {
            assert!((x - e.get(n)).norm() < 1e-15);
        }
        assert!(twist_by_sum(&e, &DirichletCharacter::principal(3).unwrap()).is_err());
    }

    #[test]
    fn pair_relation() {
        let chi = DirichletCharacter::chi3();
        let phi = FourierExpansion::from_fn(0.0, 9, 30, |n| if n.rem_euclid(3) == 1 { q(n * n + 1) } else { q(0) });
        let (plus, minus) = build_pair(&phi).unwrap();
        assert!(plus.parity_consistent() && minus.parity_consistent());
        for (n, c) in plus.iter().filter(|(n, _)| n % 3 != 0) {
            let x = chi.value(n).re.round() as i64;
            assert_eq!(minus.get(n), q(x) * c.clone());
        }
        assert_eq!(minus.get(2), -plus.get(2));
        let bad = FourierExpansion::from_fn(0.0, 9, 10, |n| if n == 5 { q(1) } else { q(0) });
        let err = build_pair(&bad).unwrap_err().to_string();
        assert!(err.contains("a(5)"), "{err}");
        assert!(t3_degeneracy_check(&phi).unwrap());
    }

    #[test]
    fn multiplicativity() {
        let e = random_expansion(1, 120, 3);
        let t6 = hecke_tn(&hecke_tn(&e, 2).unwrap(), 3).unwrap();
        assert_eq!(t6, hecke_tn(&e, 6).unwrap());
        let t4 = hecke_tn(&hecke_tn(&e, 2).unwrap(), 2).unwrap();
        let rhs = hecke_tn(&e, 4).unwrap();
        assert_eq!(t4, rhs.rebuild(rhs.m, None, |n| rhs.get(n) + e.get(n)));
    }

    #[test]
    fn densities() {
        let chi = DirichletCharacter::chi3();
        assert_eq!(twist_density(&chi), BigRational::new(1.into(), 2.into()));
        let mod5 = DirichletCharacter::all(5).unwrap();
        let quad = mod5.iter().find(|c| c.order() == 2).unwrap();
        let quartic = mod5.iter().find(|c| c.order() == 4).unwrap();
        assert_eq!(twist_density(quad), BigRational::new(1.into(), 2.into()));
        assert_eq!(twist_density(quartic), BigRational::new(3.into(), 4.into()));
    }
}
