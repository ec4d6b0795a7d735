//! Exact arithmetic in PGL₂(Q) and the congruence subgroups PSL₂(Z), Γ₀(N),
//! Γ(N) and Γ³.
//!
//! Matrices are stored with arbitrary-precision integer entries and kept in a
//! canonical form (primitive entries, first nonzero entry positive), so two
//! matrices are projectively equal exactly when they compare equal.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

/// A 2×2 integer matrix modulo scalars.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjMatrix {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl fmt::Debug for ProjMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} {}; {} {}]", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Display for ProjMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl ProjMatrix {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<Self> {
        if (&a * &d - &b * &c).is_zero() {
            return Err(Error::domain("singular matrix"));
        }
        Ok(Self::canonical(a, b, c, d))
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    fn from_i64_unchecked(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self::canonical(a.into(), b.into(), c.into(), d.into())
    }

    fn canonical(mut a: BigInt, mut b: BigInt, mut c: BigInt, mut d: BigInt) -> Self {
        let g = a.gcd(&b).gcd(&c).gcd(&d);
        if !g.is_one() && !g.is_zero() {
            a /= &g;
            b /= &g;
            c /= &g;
            d /= &g;
        }
        let lead = [&a, &b, &c, &d].into_iter().find(|x| !x.is_zero()).cloned();
        if lead.is_some_and(|x| x.is_negative()) {
            a = -a;
            b = -b;
            c = -c;
            d = -d;
        }
        ProjMatrix { a, b, c, d }
    }

    pub fn identity() -> Self {
        Self::from_i64_unchecked(1, 0, 0, 1)
    }
    pub fn s() -> Self {
        Self::from_i64_unchecked(0, -1, 1, 0)
    }
    pub fn t() -> Self {
        Self::from_i64_unchecked(1, 1, 0, 1)
    }
    /// `T^k`.
    pub fn translation(k: i64) -> Self {
        Self::from_i64_unchecked(1, k, 0, 1)
    }
    /// The reflection `z ↦ -z̄`, of determinant −1.
    pub fn j() -> Self {
        Self::from_i64_unchecked(-1, 0, 0, 1)
    }
    /// `T^{1/3}`, the translation by one third.
    pub fn t_third() -> Self {
        Self::from_i64_unchecked(3, 1, 0, 3)
    }
    /// `T^{k/3}`.
    pub fn t_thirds(k: i64) -> Self {
        Self::from_i64_unchecked(3, k, 0, 3)
    }
    /// The Fricke involution `ω_d = (0 −1; d 0)`.
    pub fn fricke(d: i64) -> Result<Self> {
        Self::from_i64(0, -1, d, 0)
    }
    /// `A_d = (d 0; 0 1)`, conjugating Γ₀(d²) onto Γ(d) for d = 3.
    pub fn dilation(d: i64) -> Result<Self> {
        Self::from_i64(d, 0, 0, 1)
    }
    /// `α_p = (p 0; 0 1)`.
    pub fn alpha(p: i64) -> Result<Self> {
        Self::from_i64(p, 0, 0, 1)
    }
    /// `β_{p,b} = (1 b; 0 p)`.
    pub fn beta(p: i64, b: i64) -> Result<Self> {
        Self::from_i64(1, b, 0, p)
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn entries_i64(&self) -> Option<[i64; 4]> {
        Some([
            self.a.to_i64()?,
            self.b.to_i64()?,
            self.c.to_i64()?,
            self.d.to_i64()?,
        ])
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    /// True when the matrix lies in PSL₂(Z).
    pub fn is_sl2z(&self) -> bool {
        self.det().is_one()
    }

    pub fn mul(&self, o: &ProjMatrix) -> ProjMatrix {
        Self::canonical(
            &self.a * &o.a + &self.b * &o.c,
            &self.a * &o.b + &self.b * &o.d,
            &self.c * &o.a + &self.d * &o.c,
            &self.c * &o.b + &self.d * &o.d,
        )
    }

    /// Projective inverse (the adjugate).
    pub fn inverse(&self) -> ProjMatrix {
        Self::canonical(self.d.clone(), -&self.b, -&self.c, self.a.clone())
    }

    pub fn pow(&self, k: i64) -> ProjMatrix {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = ProjMatrix::identity();
        let mut sq = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            sq = sq.mul(&sq);
            e >>= 1;
        }
        acc
    }

    /// `g h g⁻¹`.
    pub fn conjugate(&self, h: &ProjMatrix) -> ProjMatrix {
        self.mul(h).mul(&self.inverse())
    }

    /// `|a + d|` of the primitive representative, meaningful for PSL₂(Z).
    pub fn trace_abs(&self) -> BigInt {
        (&self.a + &self.d).abs()
    }

    /// Möbius action on the upper half plane (for positive determinant).
    pub fn act(&self, z: Complex64) -> Complex64 {
        let f = |x: &BigInt| x.to_f64().unwrap_or(f64::NAN);
        let (a, b, c, d) = (f(&self.a), f(&self.b), f(&self.c), f(&self.d));
        (z * a + b) / (z * c + d)
    }

    /// Returns `k` when `self = T^k` exactly.
    pub fn as_translation(&self) -> Option<BigInt> {
        if self.c.is_zero() && self.a == self.d && self.a.is_one() {
            Some(self.b.clone())
        } else {
            None
        }
    }
}

/// A word `T^{e₀} S T^{e₁} S … S T^{e_k}` in the generators of PSL₂(Z).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SWord {
    pub exponents: Vec<i64>,
}

impl SWord {
    pub fn evaluate(&self) -> ProjMatrix {
        let mut m = ProjMatrix::identity();
        for (i, &e) in self.exponents.iter().enumerate() {
            if i > 0 {
                m = m.mul(&ProjMatrix::s());
            }
            m = m.mul(&ProjMatrix::translation(e));
        }
        m
    }

    /// Sum of the `T`-exponents modulo 3, the homomorphism PSL₂(Z) → Z/3
    /// whose kernel is Γ³.
    pub fn h_mod3(&self) -> u8 {
        self.exponents.iter().sum::<i64>().rem_euclid(3) as u8
    }
}

impl fmt::Display for SWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponents.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .exponents
            .iter()
            .map(|&e| match e {
                0 => String::new(),
                1 => "T".into(),
                _ => format!("T^{e}"),
            })
            .collect();
        let s = parts.join("S");
        write!(f, "{}", if s.is_empty() { "1" } else { &s })
    }
}

/// Writes an element of PSL₂(Z) as a word in `S` and `T` by nearest-integer
/// continued fractions.
pub fn decompose_st(m: &ProjMatrix) -> Result<SWord> {
    if !m.is_sl2z() {
        return Err(Error::domain(format!("{m} is not in PSL2(Z)")));
    }
    let [mut a, mut b, mut c, mut d] = m.entries().map(|x| x.clone());
    let mut exps = Vec::new();
    loop {
        if c.is_zero() {
            // a = d = ±1
            let e = (&b * &d).to_i64().ok_or_else(|| Error::domain("exponent overflow"))?;
            exps.push(e);
            break;
        }
        let k = (BigInt::from(2) * &a + &c).div_floor(&(BigInt::from(2) * &c));
        exps.push(k.to_i64().ok_or_else(|| Error::domain("exponent overflow"))?);
        let x = &a - &k * &c;
        let y = &b - &k * &d;
        (a, b, c, d) = (c, d, -x, -y);
    }
    if exps == [0] {
        exps.clear();
    }
    Ok(SWord { exponents: exps })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElementType {
    Identity,
    Elliptic,
    Parabolic,
    Hyperbolic,
}

pub fn classify_element(m: &ProjMatrix) -> Result<ElementType> {
    if !m.is_sl2z() {
        return Err(Error::domain(format!("{m} is not in PSL2(Z)")));
    }
    if *m == ProjMatrix::identity() {
        return Ok(ElementType::Identity);
    }
    let t = m.trace_abs();
    Ok(if t < BigInt::from(2) {
        ElementType::Elliptic
    } else if t == BigInt::from(2) {
        ElementType::Parabolic
    } else {
        ElementType::Hyperbolic
    })
}

/// The finite-index subgroups of PSL₂(Z) handled by the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Group {
    Psl2z,
    Gamma0(u64),
    Principal(u64),
    /// The normal subgroup of index 3, the kernel of the `T`-exponent sum mod 3.
    Gamma3,
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Group::Psl2z => write!(f, "PSL2(Z)"),
            Group::Gamma0(n) => write!(f, "Gamma0({n})"),
            Group::Principal(n) => write!(f, "Gamma({n})"),
            Group::Gamma3 => write!(f, "Gamma^3"),
        }
    }
}

impl std::str::FromStr for Group {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase().replace(['_', ' '], "");
        let num = |p: &str| -> Result<u64> {
            t[p.len()..]
                .trim_matches(|c| c == '(' || c == ')')
                .parse::<u64>()
                .map_err(|_| Error::domain(format!("bad group name {s:?}")))
        };
        let g = match t.as_str() {
            "psl2z" | "psl2(z)" | "gamma0(1)" | "1" => Group::Psl2z,
            "gamma3" | "gamma^3" | "g3" => Group::Gamma3,
            _ if t.starts_with("gamma0") => Group::Gamma0(num("gamma0")?),
            _ if t.starts_with("gamma") => Group::Principal(num("gamma")?),
            _ => return Err(Error::domain(format!("bad group name {s:?}"))),
        };
        g.validate()?;
        Ok(g)
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut ps = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            ps.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        ps.push(n);
    }
    ps
}

impl Group {
    fn validate(&self) -> Result<()> {
        match self {
            Group::Gamma0(0) | Group::Principal(0) => Err(Error::domain("level must be positive")),
            _ => Ok(()),
        }
    }

    /// Membership test. Matrices of determinant −1 are never members; any
    /// other non-unimodular matrix is a domain error.
    pub fn contains(&self, m: &ProjMatrix) -> Result<bool> {
        self.validate()?;
        let det = m.det();
        if det == BigInt::from(-1) {
            return Ok(false);
        }
        if !det.is_one() {
            return Err(Error::domain(format!("{m} has determinant {det}")));
        }
        Ok(self.contains_sl2z(m))
    }

    /// Membership of a matrix already known to be (projectively) in PGL₂(Q);
    /// anything outside PSL₂(Z) is simply not a member.
    pub fn contains_projective(&self, m: &ProjMatrix) -> bool {
        m.is_sl2z() && self.contains_sl2z(m)
    }

    fn contains_sl2z(&self, m: &ProjMatrix) -> bool {
        let [a, b, c, d] = m.entries();
        match *self {
            Group::Psl2z => true,
            Group::Gamma0(n) => (c % BigInt::from(n)).is_zero(),
            Group::Principal(n) => {
                let n = BigInt::from(n);
                let r = |x: &BigInt| x.mod_floor(&n);
                let one = BigInt::one().mod_floor(&n);
                let mone = BigInt::from(-1).mod_floor(&n);
                r(b).is_zero()
                    && r(c).is_zero()
                    && ((r(a) == one && r(d) == one) || (r(a) == mone && r(d) == mone))
            }
            Group::Gamma3 => ((a * b + c * d) % BigInt::from(3)).is_zero(),
        }
    }

    /// Index in PSL₂(Z) from the closed-form product formula.
    pub fn index_formula(&self) -> Result<u64> {
        self.validate()?;
        Ok(match *self {
            Group::Psl2z => 1,
            Group::Gamma3 => 3,
            Group::Gamma0(n) => {
                let ps = prime_factors(n);
                ps.iter().fold(n, |acc, p| acc / p * (p + 1))
            }
            Group::Principal(1) => 1,
            Group::Principal(n) => {
                let ps = prime_factors(n);
                let full = ps.iter().fold(n * n * n, |acc, p| acc / (p * p) * (p * p - 1));
                if n == 2 {
                    full
                } else {
                    full / 2
                }
            }
        })
    }

    /// Right cosets `G·r` in PSL₂(Z), found by breadth-first search over
    /// `S`, `T` and `T⁻¹`. The first representative is the identity.
    pub fn cosets(&self) -> Result<CosetTable> {
        self.validate()?;
        let cap = self.index_formula()? as usize;
        let gens = [ProjMatrix::s(), ProjMatrix::t(), ProjMatrix::t().inverse()];
        let mut reps = vec![ProjMatrix::identity()];
        let mut inv = vec![ProjMatrix::identity()];
        let mut perms: [Vec<usize>; 3] = Default::default();
        let mut i = 0;
        while i < reps.len() {
            for (g, gen) in gens.iter().enumerate() {
                let cand = reps[i].mul(gen);
                let found = (0..reps.len()).find(|&k| self.contains_sl2z(&cand.mul(&inv[k])));
                let k = match found {
                    Some(k) => k,
                    None => {
                        if reps.len() >= cap {
                            return Err(Error::CheckFailed(format!(
                                "coset search for {self} exceeded index {cap}"
                            )));
                        }
                        inv.push(cand.inverse());
                        reps.push(cand);
                        reps.len() - 1
                    }
                };
                perms[g].push(k);
            }
            i += 1;
        }
        let [s_perm, t_perm, _] = perms;
        Ok(CosetTable { group: *self, reps, s_perm, t_perm })
    }

    /// Cusp, elliptic and genus data computed from the coset permutations.
    pub fn signature(&self) -> Result<Signature> {
        self.cosets()?.signature()
    }

    /// Schreier generators of the subgroup.
    pub fn generators(&self) -> Result<Vec<ProjMatrix>> {
        let table = self.cosets()?;
        let inv: Vec<ProjMatrix> = table.reps.iter().map(|r| r.inverse()).collect();
        let mut gens = Vec::new();
        for (j, r) in table.reps.iter().enumerate() {
            for (g, perm) in [(ProjMatrix::s(), &table.s_perm), (ProjMatrix::t(), &table.t_perm)] {
                let x = r.mul(&g).mul(&inv[perm[j]]);
                if x != ProjMatrix::identity() && !gens.contains(&x) {
                    gens.push(x);
                }
            }
        }
        if gens.is_empty() {
            gens.push(ProjMatrix::identity());
        }
        Ok(gens)
    }

    /// True when every generator of `self` lies in `other`.
    pub fn is_subgroup_of(&self, other: &Group) -> Result<bool> {
        Ok(self.generators()?.iter().all(|g| other.contains_sl2z(g)))
    }
}

/// Right coset representatives together with the permutation action of the
/// generators `S` and `T` on them.
#[derive(Clone, Debug)]
pub struct CosetTable {
    pub group: Group,
    pub reps: Vec<ProjMatrix>,
    /// `reps[j]·S` lies in the coset of `reps[s_perm[j]]`.
    pub s_perm: Vec<usize>,
    pub t_perm: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Signature {
    pub index: u64,
    pub cusps: u64,
    pub v2: u64,
    pub v3: u64,
    pub genus: u64,
    /// Widths of the cusps, one per `T`-cycle on the cosets.
    pub cusp_widths: Vec<u64>,
}

impl CosetTable {
    pub fn index(&self) -> usize {
        self.reps.len()
    }

    /// Index of the coset containing `m`.
    pub fn locate(&self, m: &ProjMatrix) -> Option<usize> {
        self.reps
            .iter()
            .position(|r| self.group.contains_sl2z(&m.mul(&r.inverse())))
    }

    /// Cycles of the `T` permutation, each listed from its smallest coset.
    pub fn t_cycles(&self) -> Vec<Vec<usize>> {
        let n = self.index();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                cyc.push(j);
                j = self.t_perm[j];
            }
            cycles.push(cyc);
        }
        cycles
    }

    pub fn signature(&self) -> Result<Signature> {
        let mu = self.index() as i64;
        let cycles = self.t_cycles();
        let kappa = cycles.len() as i64;
        let v2 = (0..self.index()).filter(|&j| self.s_perm[j] == j).count() as i64;
        let v3 = (0..self.index())
            .filter(|&j| self.t_perm[self.s_perm[j]] == j)
            .count() as i64;
        let twelve_g = 12 + mu - 3 * v2 - 4 * v3 - 6 * kappa;
        if twelve_g < 0 || twelve_g % 12 != 0 {
            return Err(Error::CheckFailed(format!(
                "non-integral genus for {}: 12g = {twelve_g}",
                self.group
            )));
        }
        Ok(Signature {
            index: mu as u64,
            cusps: kappa as u64,
            v2: v2 as u64,
            v3: v3 as u64,
            genus: (twelve_g / 12) as u64,
            cusp_widths: cycles.iter().map(|c| c.len() as u64).collect(),
        })
    }
}

/// Representatives of `sub\sup` chosen from the PSL₂(Z) coset representatives
/// of `sub`; the first one is the identity.
pub fn coset_reps(sub: &Group, sup: &Group) -> Result<Vec<ProjMatrix>> {
    if !sub.is_subgroup_of(sup)? {
        return Err(Error::domain(format!("{sub} is not contained in {sup}")));
    }
    let reps: Vec<ProjMatrix> = sub
        .cosets()?
        .reps
        .into_iter()
        .filter(|r| sup.contains_sl2z(r))
        .collect();
    let expected = sub.index_formula()? / sup.index_formula()?;
    if reps.len() as u64 != expected {
        return Err(Error::CheckFailed(format!(
            "found {} cosets of {sub} in {sup}, expected {expected}",
            reps.len()
        )));
    }
    Ok(reps)
}

/// Result of a randomized conjugation test.
#[derive(Clone, Debug)]
pub struct ConjugationReport {
    pub holds: bool,
    pub samples: usize,
    /// An element `γ` of the source (or target) group whose conjugate escapes.
    pub witness: Option<ProjMatrix>,
}

fn random_word(gens: &[ProjMatrix], len: usize, rng: &mut ChaCha8Rng) -> ProjMatrix {
    let mut m = ProjMatrix::identity();
    for _ in 0..len {
        let g = &gens[rng.gen_range(0..gens.len())];
        m = if rng.gen_bool(0.5) { m.mul(g) } else { m.mul(&g.inverse()) };
    }
    m
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct DualDefinitionReport {
    pub samples: usize,
    pub in_gamma3: usize,
    pub disagreements: usize,
    pub holds: bool,
}

/// Compares the two descriptions of Γ³ on random words in `S` and `T`: the
/// exponent sum of the reduced `S`/`T` word vanishing mod 3, and the
/// congruence `ab + cd ≡ 0 mod 3`.
pub fn gamma3_dual_check(samples: usize, seed: u64) -> Result<DualDefinitionReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gens = [ProjMatrix::s(), ProjMatrix::t()];
    let (mut inside, mut bad) = (0, 0);
    for _ in 0..samples {
        let m = random_word(&gens, 1 + rng.gen_range(0..40), &mut rng);
        let by_word = decompose_st(&m)?.h_mod3() == 0;
        let by_congruence = Group::Gamma3.contains(&m)?;
        inside += by_word as usize;
        bad += (by_word != by_congruence) as usize;
    }
    Ok(DualDefinitionReport { samples, in_gamma3: inside, disagreements: bad, holds: bad == 0 })
}

/// Tests `a·G·a⁻¹ = H` on the generators of both groups and on `samples`
/// random words in each direction.
pub fn conjugate_group_check(
    a: &ProjMatrix,
    g: &Group,
    h: &Group,
    samples: usize,
    seed: u64,
) -> Result<ConjugationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ainv = a.inverse();
    let g_gens = g.generators()?;
    let h_gens = h.generators()?;
    let mut checked = 0;
    let mut forward: Vec<ProjMatrix> = g_gens.clone();
    forward.extend((0..samples).map(|_| random_word(&g_gens, 1 + rng.gen_range(0..12), &mut rng)));
    for x in &forward {
        checked += 1;
        if !h.contains_projective(&a.conjugate(x)) {
            return Ok(ConjugationReport { holds: false, samples: checked, witness: Some(x.clone()) });
        }
    }
    let mut backward: Vec<ProjMatrix> = h_gens.clone();
    backward.extend((0..samples).map(|_| random_word(&h_gens, 1 + rng.gen_range(0..12), &mut rng)));
    for y in &backward {
        checked += 1;
        if !g.contains_projective(&ainv.conjugate(y)) {
            return Ok(ConjugationReport { holds: false, samples: checked, witness: Some(y.clone()) });
        }
    }
    Ok(ConjugationReport { holds: true, samples: checked, witness: None })
}

/// One named relation among the normalizer elements.
#[derive(Clone, Debug, serde::Serialize)]
pub struct RelationCheck {
    pub name: String,
    pub holds: bool,
}

/// Relations among `ω_N`, `T^{1/3}` and `A_3` that generate the normalizer
/// action on Γ₀(9) (or the Fricke relations for other levels).
pub fn normalizer_relations_check(level: u64) -> Result<Vec<RelationCheck>> {
    let n = level as i64;
    let g = Group::Gamma0(level);
    let w = ProjMatrix::fricke(n)?;
    let mut out = Vec::new();
    let mut push = |name: &str, holds: bool| out.push(RelationCheck { name: name.into(), holds });
    push("omega^2 = 1", w.pow(2) == ProjMatrix::identity());
    push(
        "omega normalizes",
        conjugate_group_check(&w, &g, &g, 64, level)?.holds,
    );
    if level == 9 {
        let t3 = ProjMatrix::t_third();
        let a3 = ProjMatrix::dilation(3)?;
        push("(T^1/3)^3 = T", t3.pow(3) == ProjMatrix::t());
        push("T^1/3 normalizes", conjugate_group_check(&t3, &g, &g, 64, 9)?.holds);
        push("(omega T^1/3)^3 = 1", w.mul(&t3).pow(3) == ProjMatrix::identity());
        push("A3 omega A3^-1 = S", a3.conjugate(&w) == ProjMatrix::s());
        push("A3 T^1/3 A3^-1 = T", a3.conjugate(&t3) == ProjMatrix::t());
        push(
            "A3 Gamma0(9) A3^-1 = Gamma(3)",
            conjugate_group_check(&a3, &g, &Group::Principal(3), 64, 9)?.holds,
        );
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(a: i64, b: i64, c: i64, d: i64) -> ProjMatrix {
        ProjMatrix::from_i64(a, b, c, d).unwrap()
    }

    #[test]
    fn canonical_form() {
        assert_eq!(m(-1, 0, 0, -1), ProjMatrix::identity());
        assert_eq!(m(2, 0, 0, 2), ProjMatrix::identity());
        assert_eq!(m(0, 1, -1, 0), ProjMatrix::s());
        assert!(ProjMatrix::from_i64(1, 2, 2, 4).is_err());
    }

    #[test]
    fn words() {
        let a1 = m(-1, -2, 1, 1);
        let a2 = m(-1, -1, 2, 1);
        let w1 = decompose_st(&a1).unwrap();
        assert_eq!(w1.exponents, vec![-1, 1]);
        assert_eq!(w1.evaluate(), a1);
        let w2 = decompose_st(&a2).unwrap();
        assert_eq!(w2.exponents, vec![0, 2, 1]);
        assert_eq!(w2.h_mod3(), 0);
        assert_eq!(decompose_st(&ProjMatrix::s()).unwrap().exponents, vec![0, 0]);
        assert!(decompose_st(&ProjMatrix::identity()).unwrap().exponents.is_empty());
    }

    #[test]
    fn gamma3_members() {
        for x in [ProjMatrix::s(), m(-1, -2, 1, 1), m(-1, -1, 2, 1)] {
            assert!(Group::Gamma3.contains(&x).unwrap());
        }
        assert!(!Group::Gamma3.contains(&ProjMatrix::t()).unwrap());
        assert!(!Group::Gamma3.contains(&ProjMatrix::j()).unwrap());
        assert!(Group::Gamma3.contains(&m(2, 0, 0, 1)).is_err());
    }

    #[test]
    fn signatures() {
        let sig = |g: Group| {
            let s = g.signature().unwrap();
            (s.index, s.cusps, s.v2, s.v3, s.genus)
        };
        assert_eq!(sig(Group::Psl2z), (1, 1, 1, 1, 0));
        assert_eq!(sig(Group::Gamma3), (3, 1, 3, 0, 0));
        assert_eq!(sig(Group::Gamma0(3)), (4, 2, 0, 1, 0));
        assert_eq!(sig(Group::Gamma0(9)), (12, 4, 0, 0, 0));
        assert_eq!(sig(Group::Principal(3)), (12, 4, 0, 0, 0));
        let mut w = Group::Gamma0(9).signature().unwrap().cusp_widths;
        w.sort();
        assert_eq!(w, vec![1, 1, 1, 9]);
    }

    #[test]
    fn conjugations() {
        let a3 = ProjMatrix::dilation(3).unwrap();
        assert!(conjugate_group_check(&a3, &Group::Gamma0(9), &Group::Principal(3), 100, 1)
            .unwrap()
            .holds);
        let r = conjugate_group_check(&a3, &Group::Gamma0(3), &Group::Principal(3), 100, 1).unwrap();
        assert!(!r.holds && r.witness.is_some());
    }

    #[test]
    fn normalizer() {
        for r in normalizer_relations_check(9).unwrap() {
            assert!(r.holds, "{}", r.name);
        }
    }
}
