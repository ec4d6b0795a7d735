//! Special functions: K-Bessel of imaginary order, log-gamma and digamma,
//! the Riemann zeta function and its completion, Dirichlet characters and
//! Gauss sums.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_integer::Integer;

use crate::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Accuracy settings for the quadrature-based functions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Precision {
    /// Target absolute tolerance.
    pub tol: f64,
    /// Multiplies the number of trapezoid nodes; used for self-convergence checks.
    pub refinement: f64,
}

impl Default for Precision {
    fn default() -> Self {
        Precision { tol: 1e-12, refinement: 1.0 }
    }
}

impl Precision {
    pub fn new(tol: f64) -> Result<Self> {
        if !(tol > 0.0) {
            return Err(Error::domain("tolerance must be positive"));
        }
        Ok(Precision { tol, refinement: 1.0 })
    }

    pub fn refined(self, factor: f64) -> Self {
        Precision { refinement: self.refinement * factor, ..self }
    }
}

/// `K_{iR}(x)` for real `R` and `x > 0`.
///
/// The integrand of `½∫ e^{−x cosh t} e^{iRt} dt` is entire, so the trapezoid
/// rule converges geometrically. Values that underflow are returned as 0.
pub fn bessel_k_ir(r: f64, x: f64) -> Result<f64> {
    bessel_k_ir_with(r, x, Precision::default())
}

pub fn bessel_k_ir_with(r: f64, x: f64, prec: Precision) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::domain(format!("bessel_k_ir needs x > 0, got {x}")));
    }
    let r = r.abs();
    let log_eps = -(prec.tol.min(1e-12) * 1e-5).ln();
    // strip half-width for the trapezoid error estimate
    let eta = 1.4_f64;
    let h = 2.0 * PI * eta / (log_eps + eta * r) / prec.refinement;
    // e^{−x cosh t} below e^{−x}·ε
    let t_max = ((x + log_eps) / x).acosh();
    let n = (t_max / h).ceil() as usize;
    let mut s = 0.5 * (-x).exp();
    for k in 1..=n {
        let t = k as f64 * h;
        s += (-x * t.cosh()).exp() * (r * t).cos();
    }
    Ok(s * h)
}

/// `e^{πR/2} K_{iR}(x)`, which stays of moderate size for x ≲ R.
pub fn bessel_k_ir_scaled(r: f64, x: f64) -> Result<f64> {
    Ok(bessel_k_ir(r, x)? * (0.5 * PI * r.abs()).exp())
}

/// Bernoulli numbers `B_{2k}` for k = 1..=20.
pub fn bernoulli_even() -> [f64; 20] {
    let mut b = [0.0; 20];
    let exact = [
        1.0 / 6.0,
        -1.0 / 30.0,
        1.0 / 42.0,
        -1.0 / 30.0,
        5.0 / 66.0,
        -691.0 / 2730.0,
        7.0 / 6.0,
        -3617.0 / 510.0,
        43867.0 / 798.0,
        -174611.0 / 330.0,
    ];
    b[..10].copy_from_slice(&exact);
    // B_{2k} = (−1)^{k+1} 2 (2k)! ζ(2k) / (2π)^{2k}
    for k in 11..=20usize {
        let n2k = 2 * k as i32;
        let zeta: f64 = (1..60).map(|n| (n as f64).powi(-n2k)).sum();
        let mut v = 2.0 * zeta;
        for j in 1..=2 * k {
            v *= j as f64 / (2.0 * PI);
        }
        b[k - 1] = if k % 2 == 1 { v } else { -v };
    }
    b
}

/// Digamma `Γ'/Γ(z)` for complex `z` away from the poles.
pub fn digamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // ψ(1−z) − ψ(z) = π cot(πz)
        let pz = z * PI;
        return digamma(Complex64::new(1.0, 0.0) - z) - pz.cos() / pz.sin() * PI;
    }
    let mut w = z;
    let mut acc = Complex64::new(0.0, 0.0);
    while w.re < 12.0 {
        acc -= w.inv();
        w += 1.0;
    }
    let b = bernoulli_even();
    let w2 = (w * w).inv();
    let mut p = w2;
    let mut series = w.ln() - 0.5 * w.inv();
    for (k, bk) in b.iter().enumerate().take(12) {
        series -= p * (bk / (2.0 * (k + 1) as f64));
        p *= w2;
    }
    acc + series
}

/// `Γ'/Γ(1 + ir)`.
pub fn digamma_line(r: f64) -> Complex64 {
    digamma(Complex64::new(1.0, r))
}

/// Principal-branch-continuous `ln Γ(z)` for `Re z > 0`; reflection elsewhere.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        let one = Complex64::new(1.0, 0.0);
        return Complex64::new(PI.ln(), 0.0) - (z * PI).sin().ln() - ln_gamma(one - z);
    }
    let mut w = z;
    let mut acc = Complex64::new(0.0, 0.0);
    while w.re < 12.0 {
        acc -= w.ln();
        w += 1.0;
    }
    let b = bernoulli_even();
    let w2 = (w * w).inv();
    let mut p = w.inv();
    let mut series = (w - 0.5) * w.ln() - w + 0.5 * (2.0 * PI).ln();
    for (k, bk) in b.iter().enumerate().take(12) {
        let k2 = 2.0 * (k + 1) as f64;
        series += p * (bk / (k2 * (k2 - 1.0)));
        p *= w2;
    }
    acc + series
}

/// `ζ(s)` and `ζ'(s)` by Euler–Maclaurin summation.
pub fn zeta_with_derivative(s: Complex64) -> Result<(Complex64, Complex64)> {
    let dist = (s - 1.0).norm();
    if dist < 1e-12 {
        return Err(Error::domain(format!("zeta pole at s = 1 (distance {dist:e})")));
    }
    let n_terms = 30usize.max((s.norm() / 2.0).ceil() as usize + 1);
    let mut val = Complex64::new(0.0, 0.0);
    let mut der = Complex64::new(0.0, 0.0);
    for n in 1..n_terms {
        let ln_n = (n as f64).ln();
        let t = (-s * ln_n).exp();
        val += t;
        der -= t * ln_n;
    }
    let nf = n_terms as f64;
    let ln_nf = nf.ln();
    let n_s = (-s * ln_nf).exp(); // N^{−s}
    let tail = n_s * nf / (s - 1.0);
    val += tail;
    der += -tail * ln_nf - tail / (s - 1.0);
    val += 0.5 * n_s;
    der -= 0.5 * ln_nf * n_s;

    // Σ B_{2k}/(2k)! · s(s+1)…(s+2k−2) · N^{−s−2k+1}
    let b = bernoulli_even();
    let mut poly = s;
    let mut dpoly = Complex64::new(1.0, 0.0);
    let mut npow = n_s / nf; // N^{−s−1}
    let mut fact = 2.0;
    for k in 1..=b.len() {
        let c = b[k - 1] / fact;
        let term = c * poly * npow;
        let dterm = c * npow * (dpoly - poly * ln_nf);
        val += term;
        der += dterm;
        if term.norm() < 1e-18 * val.norm() && dterm.norm() < 1e-18 * der.norm() {
            break;
        }
        // advance: multiply by (s+2k−1)(s+2k)
        let a1 = s + (2 * k - 1) as f64;
        let a2 = s + (2 * k) as f64;
        let q = a1 * a2;
        let dq = a1 + a2;
        dpoly = dpoly * q + poly * dq;
        poly *= q;
        npow /= nf * nf;
        fact *= ((2 * k + 1) * (2 * k + 2)) as f64;
    }
    Ok((val, der))
}

pub fn zeta(s: Complex64) -> Result<Complex64> {
    Ok(zeta_with_derivative(s)?.0)
}

fn check_poles(s: Complex64) -> Result<()> {
    for p in [0.0, 1.0] {
        let d = (s - p).norm();
        if d < 1e-12 {
            return Err(Error::domain(format!("completed zeta pole at s = {p} (distance {d:e})")));
        }
    }
    Ok(())
}

/// `Λ(s) = π^{−s/2} Γ(s/2) ζ(s)`.
pub fn completed_zeta(s: Complex64) -> Result<Complex64> {
    check_poles(s)?;
    let z = zeta(s)?;
    Ok((-0.5 * s * PI.ln() + ln_gamma(0.5 * s)).exp() * z)
}

/// `Λ'/Λ(s) = −½ ln π + ½ ψ(s/2) + ζ'/ζ(s)`.
pub fn completed_zeta_log_derivative(s: Complex64) -> Result<Complex64> {
    check_poles(s)?;
    let (z, dz) = zeta_with_derivative(s)?;
    Ok(-0.5 * PI.ln() + 0.5 * digamma(0.5 * s) + dz / z)
}

/// Continuous branch of `arg Λ(1 + 2ir)` for `r > 0` is assembled by the
/// caller; this returns the principal-value pieces `(Im ln Γ-part, ζ(1+2ir))`.
pub(crate) fn completed_zeta_phase_parts(r: f64) -> Result<(f64, Complex64)> {
    let s = Complex64::new(1.0, 2.0 * r);
    let gamma_part = (-0.5 * s * PI.ln() + ln_gamma(0.5 * s)).im;
    Ok((gamma_part, zeta(s)?))
}

/// A Dirichlet character, stored as exponents of a primitive root of unity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirichletCharacter {
    modulus: u64,
    /// χ(n) = ζ_order^{exps[n]} for gcd(n, q) = 1.
    order: u64,
    exps: Vec<Option<u64>>,
    conductor: u64,
}

fn phi(n: u64) -> u64 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
}

fn primitive_root(q: u64) -> Option<u64> {
    let ph = phi(q);
    (1..q.max(2)).find(|&g| {
        g.gcd(&q) == 1 && {
            let mut x = 1u64;
            let mut ord = 0;
            loop {
                x = x * g % q;
                ord += 1;
                if x == 1 % q {
                    break;
                }
            }
            ord == ph
        }
    })
}

impl DirichletCharacter {
    /// The principal character modulo `q`.
    pub fn principal(q: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::domain("modulus must be positive"));
        }
        let exps = (0..q).map(|n| (n.gcd(&q) == 1).then_some(0)).collect();
        Ok(Self::finish(q, 1, exps))
    }

    /// The character sending a fixed primitive root `g` mod `q` to
    /// `e^{2πik/φ(q)}`; `q` must have a primitive root.
    pub fn from_generator(q: u64, k: u64) -> Result<Self> {
        if q == 1 {
            return Self::principal(1);
        }
        let g = primitive_root(q)
            .ok_or_else(|| Error::domain(format!("no primitive root modulo {q}")))?;
        let ph = phi(q);
        let k = k % ph;
        let order = ph / k.gcd(&ph).max(1);
        let order = if k == 0 { 1 } else { order };
        let mut exps = vec![None; q as usize];
        let mut x = 1u64;
        for j in 0..ph {
            // exponent of ζ_ph is k·j; rescale to ζ_order
            exps[x as usize] = Some((k * j % ph) * order / ph);
            x = x * g % q;
        }
        Ok(Self::finish(q, order, exps))
    }

    /// The quadratic character `(·/3)`.
    pub fn chi3() -> Self {
        Self::from_generator(3, 1).expect("3 has a primitive root")
    }

    fn finish(modulus: u64, order: u64, exps: Vec<Option<u64>>) -> Self {
        let mut chi = DirichletCharacter { modulus, order, exps, conductor: modulus };
        chi.conductor = (1..=modulus)
            .filter(|d| modulus % d == 0)
            .find(|&d| {
                (1..modulus)
                    .filter(|&n| n.gcd(&modulus) == 1 && n % d == 1 % d)
                    .all(|n| chi.exps[n as usize] == Some(0))
            })
            .unwrap_or(modulus);
        chi
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
    pub fn order(&self) -> u64 {
        self.order
    }
    pub fn conductor(&self) -> u64 {
        self.conductor
    }
    pub fn is_primitive(&self) -> bool {
        self.conductor == self.modulus
    }
    pub fn is_principal(&self) -> bool {
        self.exps.iter().all(|e| e.is_none_or(|e| e == 0))
    }

    /// `χ(n) = ζ_order^e`, or `None` when `gcd(n, q) > 1`.
    pub fn exponent(&self, n: i64) -> Option<u64> {
        self.exps[n.rem_euclid(self.modulus as i64) as usize]
    }

    pub fn value(&self, n: i64) -> Complex64 {
        match self.exponent(n) {
            None => Complex64::new(0.0, 0.0),
            Some(e) => root_of_unity(e, self.order),
        }
    }

    /// The complex-conjugate character.
    pub fn conj(&self) -> Self {
        let exps = self
            .exps
            .iter()
            .map(|e| e.map(|e| (self.order - e) % self.order))
            .collect();
        DirichletCharacter { exps, ..self.clone() }
    }

    /// All characters modulo `q` (which must have a primitive root), the
    /// principal one first.
    pub fn all(q: u64) -> Result<Vec<Self>> {
        let ph = if q == 1 { 1 } else { phi(q) };
        (0..ph).map(|k| Self::from_generator(q, k)).collect()
    }

    /// The product character modulo `lcm(q₁, q₂)`.
    pub fn product(&self, other: &Self) -> Self {
        let q = self.modulus.lcm(&other.modulus);
        let order = self.order.lcm(&other.order);
        let exps = (0..q as i64)
            .map(|n| match (self.exponent(n), other.exponent(n)) {
                (Some(a), Some(b)) => Some((a * (order / self.order) + b * (order / other.order)) % order),
                _ => None,
            })
            .collect();
        Self::finish(q, order, exps).reduce_order()
    }

    fn reduce_order(mut self) -> Self {
        let g = self.exps.iter().flatten().fold(self.order, |g, &e| g.gcd(&e));
        if g > 1 {
            self.order /= g;
            for e in self.exps.iter_mut().flatten() {
                *e /= g;
            }
        }
        self
    }

    /// `χ(−1) = −1`.
    pub fn is_odd(&self) -> bool {
        self.modulus > 2 && self.exponent(-1).is_some_and(|e| 2 * e == self.order)
    }
}

/// `e^{2πi e / order}`, exact at the quarter points.
pub fn root_of_unity(e: u64, order: u64) -> Complex64 {
    let e = e % order;
    if 4 * e % order == 0 {
        return match 4 * e / order {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    Complex64::from_polar(1.0, 2.0 * PI * e as f64 / order as f64)
}

/// `e(x) = e^{2πix}` for rational `x = num/den`, reduced exactly first.
pub fn e_rational(num: i64, den: i64) -> Complex64 {
    let den = den.unsigned_abs();
    root_of_unity(num.rem_euclid(den as i64) as u64, den)
}

/// `τ(χ) = Σ_{n mod q} χ(n) e(n/q)`.
pub fn gauss_sum(chi: &DirichletCharacter) -> Complex64 {
    let q = chi.modulus as i64;
    (0..q).map(|n| chi.value(n) * e_rational(n, q)).sum()
}

/// Euler's constant, exposed for tests and diagnostics.
pub fn euler_gamma() -> f64 {
    EULER_GAMMA
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    // K_0(1) from its power series: −(ln(x/2)+γ) I_0(x) + Σ H_k (x²/4)^k/(k!)²
    fn k0_series(x: f64) -> f64 {
        let q = x * x / 4.0;
        let (mut i0, mut s, mut term, mut h) = (1.0, 0.0, 1.0, 0.0);
        for k in 1..40 {
            term *= q / (k * k) as f64;
            h += 1.0 / k as f64;
            i0 += term;
            s += h * term;
        }
        -((x / 2.0).ln() + EULER_GAMMA) * i0 + s
    }

    #[test]
    fn k0_matches_series() {
        assert!((k0_series(1.0) - 0.421_024_438_240_708_34).abs() < 1e-15);
        assert!((bessel_k_ir(0.0, 1.0).unwrap() - 0.421_024_438_240_708_34).abs() < 1e-14);
    }

    #[test]
    fn k_self_convergence() {
        for &(r, x) in &[(5.0, 1.0), (9.5, 0.3), (30.0, 0.1), (12.0, 20.0)] {
            let a = bessel_k_ir(r, x).unwrap();
            let b = bessel_k_ir_with(r, x, Precision::default().refined(2.0)).unwrap();
            assert!((a - b).abs() < 1e-13, "{r} {x}: {a} {b}");
        }
        assert!(bessel_k_ir(1.0, 0.0).is_err());
    }

    #[test]
    fn digamma_values() {
        assert!((digamma_line(0.0) - c(-EULER_GAMMA, 0.0)).norm() < 1e-14);
        // ψ(½) = −γ − 2 ln 2
        let v = digamma(c(0.5, 0.0));
        assert!((v.re + EULER_GAMMA + 2.0 * 2f64.ln()).abs() < 1e-14);
        let a = digamma_line(3.0);
        let b = digamma_line(-3.0);
        assert!((a - b.conj()).norm() < 1e-15);
        // Im ψ(1+ir) = −1/(2r) + (π/2) coth(πr)
        let r = 2.5;
        let im = -0.5 / r + 0.5 * PI / (PI * r).tanh();
        assert!((digamma_line(r).im - im).abs() < 1e-14);
    }

    #[test]
    fn zeta_values() {
        assert!((zeta(c(2.0, 0.0)).unwrap().re - PI * PI / 6.0).abs() < 1e-14);
        assert!((zeta(c(4.0, 0.0)).unwrap().re - PI.powi(4) / 90.0).abs() < 1e-14);
        // ζ(0) = −½, ζ'(0) = −½ ln 2π
        let (z0, d0) = zeta_with_derivative(c(0.0, 0.0)).unwrap();
        assert!((z0.re + 0.5).abs() < 1e-14);
        assert!((d0.re + 0.5 * (2.0 * PI).ln()).abs() < 1e-13);
        // first zero
        let z = zeta(c(0.5, 14.134_725_141_734_693)).unwrap();
        assert!(z.norm() < 1e-12);
    }

    #[test]
    fn zeta_derivative_against_differences() {
        let s = c(1.0, 37.2);
        let h = 1e-5;
        let fd = (zeta(s + h).unwrap() - zeta(s - h).unwrap()) / (2.0 * h);
        let (_, d) = zeta_with_derivative(s).unwrap();
        assert!((fd - d).norm() < 1e-8 * d.norm().max(1.0));
    }

    #[test]
    fn functional_equation() {
        let s = c(0.3, 2.0);
        let a = completed_zeta(s).unwrap();
        let b = completed_zeta(c(1.0, 0.0) - s).unwrap();
        assert!((a - b).norm() < 1e-12 * a.norm());
        assert!(completed_zeta(c(1.0, 0.0)).is_err());
    }

    #[test]
    fn gauss_sums() {
        let chi3 = DirichletCharacter::chi3();
        assert!((gauss_sum(&chi3) - c(0.0, 3f64.sqrt())).norm() < 1e-15);
        assert!(chi3.is_odd());
        let p1 = DirichletCharacter::principal(1).unwrap();
        assert!((gauss_sum(&p1) - c(1.0, 0.0)).norm() < 1e-15);
        for q in [5u64, 7, 9] {
            for k in 1..phi(q) {
                let chi = DirichletCharacter::from_generator(q, k).unwrap();
                if chi.is_primitive() {
                    assert!((gauss_sum(&chi).norm_sqr() - q as f64).abs() < 1e-12);
                }
            }
        }
        let imprim = DirichletCharacter::from_generator(9, 3).unwrap();
        assert_eq!(imprim.conductor(), 3);
    }
}
