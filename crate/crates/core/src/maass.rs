//! Collocation solver for Maass cusp forms on Γ₀(N), N ∈ {1, 3, 9}.
//!
//! A form is expanded at every cusp `c` of width `w_c` as
//! `f_c(z) = Σ_{n≠0} a_c(n) √y K_{iR}(2π|n|y/w_c) e(nx/w_c)`, where
//! `f_c = f∘U_c` for a coset representative `U_c` mapping ∞ to the cusp.
//! Sample points on a low horocycle are pulled back into the standard
//! fundamental domain of PSL₂(Z); the coset of the reducing matrix tells
//! which cusp expansion the pulled-back point belongs to. Automorphy then
//! gives a linear system for the coefficients. Eigenvalues are located at
//! minima of the joint least-squares residual of the systems at two heights
//! and accepted when the two separate solutions agree.

use std::collections::HashMap;
use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::group::Group;
use crate::special::bessel_k_ir;
use crate::{Error, Result};

pub mod archive;
mod classify;

pub use archive::{Archive, ArchiveRecord};
pub use classify::{
    classify, multiplicity_report, pair_discrepancy, Label, MultiplicityReport, MultiplicityRow, MATCH_TOL, PAIR_TOL,
    SUPPORT_TOL,
};

const SQRT3_2: f64 = 0.866_025_403_784_438_6;

/// J-parity of a form: even (`+1`) or odd (`−1`) under `z ↦ −z̄`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn sign(self) -> f64 {
        match self {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
        }
    }
    pub fn flip(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

impl std::str::FromStr for Parity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even" | "+1" | "1" => Ok(Parity::Even),
            "odd" | "-1" => Ok(Parity::Odd),
            _ => Err(Error::domain(format!("bad parity {s:?}"))),
        }
    }
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

type Mat2 = [i64; 4];

fn mat_mul(x: Mat2, y: Mat2) -> Mat2 {
    [
        x[0] * y[0] + x[1] * y[2],
        x[0] * y[1] + x[1] * y[3],
        x[2] * y[0] + x[3] * y[2],
        x[2] * y[1] + x[3] * y[3],
    ]
}

fn mat_act(m: Mat2, z: Complex64) -> Complex64 {
    (z * m[0] as f64 + m[1] as f64) / (z * m[2] as f64 + m[3] as f64)
}

/// Reduces `z` into the closed standard fundamental domain of PSL₂(Z).
///
/// Returns the reduced point and the matrix `γ` with `γ(z)` equal to it.
pub fn pullback(z: Complex64) -> Result<(Complex64, [i64; 4])> {
    if !(z.im > 0.0) {
        return Err(Error::domain(format!("point {z} is not in the upper half plane")));
    }
    let mut w = z;
    let mut a: Mat2 = [1, 0, 0, 1];
    for _ in 0..10_000 {
        let n = w.re.round();
        if n != 0.0 {
            w.re -= n;
            let n = n as i64;
            a = mat_mul([1, -n, 0, 1], a);
        }
        if w.norm_sqr() < 1.0 - 1e-15 {
            w = -w.inv();
            a = mat_mul([0, -1, 1, 0], a);
        } else {
            if a[2] < 0 || (a[2] == 0 && a[3] < 0) {
                a = a.map(|x| -x);
            }
            return Ok((w, a));
        }
    }
    Err(Error::Convergence { what: format!("pullback of {z}"), estimate: z.im })
}

/// One cusp of Γ₀(N): a representative `U_c` with `U_c(∞)` the cusp, its
/// width, and the cosets `U_c T^i`, i < width.
#[derive(Clone, Debug)]
pub struct Cusp {
    pub rep: [i64; 4],
    pub width: u64,
    pub cosets: Vec<usize>,
}

/// Coset and cusp bookkeeping for pulling points back to Γ₀(N)\H.
#[derive(Clone, Debug)]
pub struct PullbackMap {
    pub level: u64,
    pub cusps: Vec<Cusp>,
    /// coset index → (cusp, shift)
    coset_cusp: Vec<(usize, i64)>,
    /// bottom row mod N → coset index
    rows: HashMap<(i64, i64), usize>,
}

impl PullbackMap {
    pub fn new(level: u64) -> Result<Self> {
        if ![1, 3, 9].contains(&level) {
            return Err(Error::Unsupported(format!("level {level}; only 1, 3, 9")));
        }
        let table = Group::Gamma0(level).cosets()?;
        let reps: Vec<[i64; 4]> = table
            .reps
            .iter()
            .map(|r| r.entries_i64().ok_or_else(|| Error::domain("coset entry overflow")))
            .collect::<Result<_>>()?;
        let n = level as i64;
        let mut rows = HashMap::new();
        for (k, r) in reps.iter().enumerate() {
            for u in 1..=n.max(1) {
                if num_integer::gcd(u, n) != 1 {
                    continue;
                }
                rows.insert(((u * r[2]).rem_euclid(n), (u * r[3]).rem_euclid(n)), k);
            }
        }
        let mut coset_cusp = vec![(0, 0); reps.len()];
        let mut cusps = Vec::new();
        for cycle in table.t_cycles() {
            for (i, &k) in cycle.iter().enumerate() {
                coset_cusp[k] = (cusps.len(), i as i64);
            }
            cusps.push(Cusp { rep: reps[cycle[0]], width: cycle.len() as u64, cosets: cycle });
        }
        Ok(PullbackMap { level, cusps, coset_cusp, rows })
    }

    fn locate(&self, m: Mat2) -> usize {
        let n = self.level as i64;
        self.rows[&(m[2].rem_euclid(n), m[3].rem_euclid(n))]
    }

    /// For `w` in H, returns `(d, z')` with `f(w) = f_d(z')` for every
    /// Γ₀(N)-invariant `f`, where `Im z' ≥ √3/2`.
    pub fn cusp_coordinate(&self, w: Complex64) -> Result<(usize, Complex64)> {
        let (ws, a) = pullback(w)?;
        let ainv = [a[3], -a[1], -a[2], a[0]];
        let (d, shift) = self.coset_cusp[self.locate(ainv)];
        Ok((d, ws + shift as f64))
    }
}

/// Coefficients whose two-height values differ by more than this are dropped
/// from accepted candidates.
const RELIABLE_DELTA: f64 = 1e-5;

/// Numerical parameters of the solver.
#[derive(Clone, Debug)]
pub struct SolverConfig {
    /// The two horocycle heights compared by the eigenvalue indicator.
    pub y1: f64,
    pub y2: f64,
    /// Relative size below which expansion terms are truncated.
    pub trunc_eps: f64,
    /// Extra collocation points beyond the number of unknowns.
    pub extra_points: usize,
    pub grid_step: f64,
    pub residual_tol: f64,
    /// Number of coefficients compared for the residual.
    pub check_terms: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            y1: 0.50,
            y2: 0.42,
            trunc_eps: 1e-14,
            extra_points: 8,
            grid_step: 0.01,
            residual_tol: 1e-6,
            check_terms: 6,
        }
    }
}

fn kappa(r: f64, n: i64, y: f64, width: f64) -> f64 {
    let x = 2.0 * PI * n.unsigned_abs() as f64 * y / width;
    y.sqrt() * bessel_k_ir(r, x).unwrap_or(0.0) * (0.5 * PI * r).exp()
}

/// Smallest `M` beyond which every scaled expansion term at height `y`
/// is below `eps`.
fn truncation(r: f64, y: f64, width: f64, eps: f64) -> usize {
    let mut n = ((r * width) / (2.0 * PI * y)).ceil().max(1.0) as i64;
    while kappa(r, n, y, width).abs() > eps || kappa(r, n + 1, y, width).abs() > eps {
        n += 1;
    }
    n as usize
}

/// Coefficients of a solution at cusp ∞.
#[derive(Clone, Debug)]
pub struct Solution {
    /// `coeffs[n-1] = a(n)` for n = 1..=M.
    pub coeffs: Vec<Complex64>,
}

/// The linear system for one `(R, Y, parity)`: `matrix · a = 0` with
/// unknowns ordered cusp by cusp.
pub struct LinearSystem {
    pub matrix: DMatrix<Complex64>,
    /// (cusp, n) for each column.
    pub unknowns: Vec<(usize, i64)>,
    /// Columns fixed by the normalization, with their values.
    pub normalization: Vec<(usize, Complex64)>,
}

fn index_set(cusp: usize, m: usize) -> Vec<i64> {
    if cusp == 0 {
        (1..=m as i64).collect()
    } else {
        (-(m as i64)..=m as i64).filter(|&n| n != 0).collect()
    }
}

/// Normalization conditions at cusp ∞: `a(1) = 1`, and on level 9 also
/// `a(3) = a(9) = 0`, which picks one vector out of each old space.
fn normalization(level: u64) -> Vec<(i64, Complex64)> {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    match level {
        9 => vec![(1, one), (3, zero), (9, zero)],
        _ => vec![(1, one)],
    }
}

/// Assembles the collocation system.
pub fn build_system(
    map: &PullbackMap,
    r: f64,
    parity: Parity,
    y: f64,
    cfg: &SolverConfig,
) -> Result<LinearSystem> {
    build_system_truncated(map, r, parity, y, y, cfg)
}

/// As [`build_system`], with the expansion truncated as if sampled at
/// height `y_trunc ≤ y`, so that systems at different heights share unknowns.
pub fn build_system_truncated(
    map: &PullbackMap,
    r: f64,
    parity: Parity,
    y: f64,
    y_trunc: f64,
    cfg: &SolverConfig,
) -> Result<LinearSystem> {
    if !(y > 0.0 && y < SQRT3_2) {
        return Err(Error::domain(format!(
            "height Y = {y} must lie in (0, √3/2); choose a smaller Y"
        )));
    }
    let eps = parity.sign();
    let ms: Vec<usize> = map
        .cusps
        .iter()
        .map(|c| truncation(r, y_trunc.min(y), c.width as f64, cfg.trunc_eps))
        .collect();
    let mut unknowns = Vec::new();
    let mut offset = Vec::new();
    for (c, &m) in ms.iter().enumerate() {
        offset.push(unknowns.len());
        unknowns.extend(index_set(c, m).into_iter().map(|n| (c, n)));
    }
    let col = |c: usize, n: i64| -> usize {
        if c == 0 {
            offset[0] + n as usize - 1
        } else {
            let m = ms[c] as i64;
            offset[c] + if n < 0 { (n + m) as usize } else { (n + m - 1) as usize }
        }
    };
    let ncols = unknowns.len();
    let mut rows: Vec<Vec<Complex64>> = Vec::new();
    for (c, cusp) in map.cusps.iter().enumerate() {
        let w = cusp.width as f64;
        let m = ms[c];
        let q2 = 2 * m + 2 * cfg.extra_points;
        let xs: Vec<f64> = (1..=q2)
            .map(|j| w * (j as f64 - 0.5 - q2 as f64 / 2.0) / q2 as f64)
            .collect();
        // V[j][col]: value of the expansion at the pulled-back point
        let u = cusp.rep;
        let points: Vec<(usize, Complex64)> = xs
            .iter()
            .map(|&x| map.cusp_coordinate(mat_act(u, Complex64::new(x, y))))
            .collect::<Result<_>>()?;
        let vrows: Vec<Vec<(usize, Complex64)>> = points
            .par_iter()
            .map(|&(d, zp)| {
                let wd = map.cusps[d].width as f64;
                let mut entries = Vec::new();
                for l in index_set(d, ms[d]) {
                    let k = kappa(r, l, zp.im, wd);
                    let arg = 2.0 * PI * l as f64 * zp.re / wd;
                    let mut v = Complex64::from_polar(k, arg);
                    if d == 0 {
                        v += eps * Complex64::from_polar(k, -arg);
                    }
                    entries.push((col(d, l), v));
                }
                entries
            })
            .collect();
        for n in index_set(c, m) {
            let mut row = vec![Complex64::new(0.0, 0.0); ncols];
            for (j, &x) in xs.iter().enumerate() {
                let phase = Complex64::from_polar(1.0 / q2 as f64, -2.0 * PI * n as f64 * x / w);
                for &(k, v) in &vrows[j] {
                    row[k] += phase * v;
                }
            }
            row[col(c, n)] -= kappa(r, n, y, w);
            rows.push(row);
        }
    }
    let matrix = DMatrix::from_fn(rows.len(), ncols, |i, j| rows[i][j]);
    let normalization = normalization(map.level)
        .into_iter()
        .filter(|&(n, _)| (n as usize) <= ms[0])
        .map(|(n, v)| (col(0, n), v))
        .collect();
    Ok(LinearSystem { matrix, unknowns, normalization })
}

impl LinearSystem {
    /// Appends the rows of `other`, which must have the same unknowns.
    pub fn stack(mut self, other: &LinearSystem) -> Result<Self> {
        if self.unknowns != other.unknowns {
            return Err(Error::CheckFailed("stacked systems have different unknowns".into()));
        }
        let (r1, r2, nc) = (self.matrix.nrows(), other.matrix.nrows(), self.matrix.ncols());
        let mut m = DMatrix::zeros(r1 + r2, nc);
        m.rows_mut(0, r1).copy_from(&self.matrix);
        m.rows_mut(r1, r2).copy_from(&other.matrix);
        self.matrix = m;
        Ok(self)
    }

    /// Least-squares solution with the normalized columns fixed.
    pub fn solve(&self) -> Result<Vec<Complex64>> {
        Ok(self.solve_with_residual()?.0)
    }

    /// Least-squares solution together with the relative residual
    /// `‖A a‖ / ‖A_fixed a_fixed‖`.
    pub fn solve_with_residual(&self) -> Result<(Vec<Complex64>, f64)> {
        let fixed: HashMap<usize, Complex64> = self.normalization.iter().cloned().collect();
        let free: Vec<usize> = (0..self.matrix.ncols()).filter(|j| !fixed.contains_key(j)).collect();
        let nr = self.matrix.nrows();
        // equilibrate columns: high-index terms have tiny entries
        let scale: Vec<f64> = free
            .iter()
            .map(|&j| {
                let n = self.matrix.column(j).norm();
                if n > 0.0 { 1.0 / n } else { 1.0 }
            })
            .collect();
        let a = DMatrix::from_fn(nr, free.len(), |i, j| self.matrix[(i, free[j])] * scale[j]);
        let mut b = DVector::from_element(nr, Complex64::new(0.0, 0.0));
        for (&j, &v) in &fixed {
            for i in 0..nr {
                b[i] -= self.matrix[(i, j)] * v;
            }
        }
        let svd = a.svd(true, true);
        let cutoff = svd.singular_values.max() * 1e-15;
        let x = svd
            .solve(&b, cutoff)
            .map_err(|e| Error::CheckFailed(format!("least squares failed: {e}")))?;
        let mut out = vec![Complex64::new(0.0, 0.0); self.matrix.ncols()];
        for (k, &j) in free.iter().enumerate() {
            out[j] = x[k] * scale[k];
        }
        for (&j, &v) in &fixed {
            out[j] = v;
        }
        let xv = DVector::from_column_slice(&out);
        let res = (&self.matrix * xv).norm() / b.norm();
        Ok((out, res))
    }
}

/// Solves at one height and returns the coefficients at cusp ∞.
pub fn solve_at(map: &PullbackMap, r: f64, parity: Parity, y: f64, cfg: &SolverConfig) -> Result<Solution> {
    let sys = build_system(map, r, parity, y, cfg)?;
    let x = sys.solve()?;
    let coeffs = sys
        .unknowns
        .iter()
        .zip(&x)
        .filter(|((c, _), _)| *c == 0)
        .map(|(_, v)| *v)
        .collect();
    Ok(Solution { coeffs })
}

/// Solves the systems at both heights jointly; returns the coefficients at
/// cusp ∞ and the relative least-squares residual, which vanishes (up to
/// truncation) exactly at eigenvalues.
pub fn joint_solve(map: &PullbackMap, r: f64, parity: Parity, cfg: &SolverConfig) -> Result<(Solution, f64)> {
    let yt = cfg.y1.min(cfg.y2);
    let s1 = build_system_truncated(map, r, parity, cfg.y1, yt, cfg)?;
    let s2 = build_system_truncated(map, r, parity, cfg.y2, yt, cfg)?;
    let sys = s1.stack(&s2)?;
    let (x, res) = sys.solve_with_residual()?;
    let coeffs = sys
        .unknowns
        .iter()
        .zip(&x)
        .filter(|((c, _), _)| *c == 0)
        .map(|(_, v)| *v)
        .collect();
    Ok((Solution { coeffs }, res))
}

/// Coefficients at both heights and the indicator built from their difference.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub r: f64,
    pub sol1: Solution,
    pub sol2: Solution,
}

impl Evaluation {
    /// `a_{Y₁}(n) − a_{Y₂}(n)`.
    pub fn delta(&self, n: usize) -> Complex64 {
        let get = |s: &Solution| s.coeffs.get(n - 1).copied().unwrap_or_default();
        get(&self.sol1) - get(&self.sol2)
    }

    /// Coefficients at the second height up to the first `n` whose two-height
    /// discrepancy exceeds `tol`.
    pub fn reliable_coeffs(&self, tol: f64) -> Vec<Complex64> {
        let m = self.sol1.coeffs.len().min(self.sol2.coeffs.len());
        let k = (1..=m).take_while(|&n| self.delta(n).norm() <= tol).count();
        self.sol2.coeffs[..k].to_vec()
    }

    /// Largest coefficient discrepancy over `n ≤ terms`.
    pub fn residual(&self, terms: usize) -> f64 {
        (1..=terms).map(|n| self.delta(n).norm()).fold(0.0, f64::max)
    }
}

pub fn evaluate(map: &PullbackMap, r: f64, parity: Parity, cfg: &SolverConfig) -> Result<Evaluation> {
    Ok(Evaluation {
        r,
        sol1: solve_at(map, r, parity, cfg.y1, cfg)?,
        sol2: solve_at(map, r, parity, cfg.y2, cfg)?,
    })
}

/// An accepted eigenvalue with its cusp-∞ coefficients.
#[derive(Clone, Debug)]
pub struct SpectralCandidate {
    pub level: u64,
    pub r: f64,
    pub parity: Parity,
    pub residual: f64,
    /// `a(n)` for n = 1..=M.
    pub coeffs: Vec<Complex64>,
    /// Provenance, filled in by [`classify`]; empty until then.
    pub labels: Vec<Label>,
}

impl SpectralCandidate {
    pub fn coeff(&self, n: i64) -> Complex64 {
        let a = self.coeffs.get(n.unsigned_abs() as usize - 1).copied().unwrap_or_default();
        if n < 0 {
            a * self.parity.sign()
        } else {
            a
        }
    }

    /// Eigenvalue `λ = ¼ + R²`.
    pub fn lambda(&self) -> f64 {
        0.25 + self.r * self.r
    }

    /// `|m|` for the `T^{1/3}` eigenvalues `ζ₃^{±m}` carried by the form:
    /// 0 when supported on multiples of 3, 1 when supported off them (a
    /// real-parity form there mixes `ζ₃` and `ζ₃⁻¹`), `None` when mixed.
    pub fn t13_class(&self, tol: f64) -> Option<u8> {
        let (mut on, mut off) = (0.0f64, 0.0f64);
        for (k, a) in self.coeffs.iter().enumerate() {
            if (k + 1) % 3 == 0 {
                on = on.max(a.norm());
            } else {
                off = off.max(a.norm());
            }
        }
        match (on > tol, off > tol) {
            (true, false) => Some(0),
            (false, true) => Some(1),
            _ => None,
        }
    }
}

/// Scans `[lo, hi]` on a grid, locates local minima of the joint residual and
/// refines them; candidates whose coefficients agree at both heights are
/// returned.
pub fn find_eigenvalues(
    level: u64,
    lo: f64,
    hi: f64,
    parity: Parity,
    cfg: &SolverConfig,
) -> Result<Vec<SpectralCandidate>> {
    if !(lo < hi) || hi > 12.0 || lo < 0.0 {
        return Err(Error::domain(format!("window [{lo}, {hi}] must satisfy 0 ≤ lo < hi ≤ 12")));
    }
    if !(cfg.grid_step > 0.0 && cfg.grid_step <= 0.01) {
        return Err(Error::domain("grid step must lie in (0, 0.01]"));
    }
    let map = PullbackMap::new(level)?;
    let h = cfg.grid_step;
    let n = ((hi - lo) / h).ceil() as usize;
    // one extra point on each side so minima at the window edge are seen
    let grid: Vec<f64> = (0..=n + 2).map(|k| lo + (k as f64 - 1.0) * h).filter(|&r| r > 0.0).collect();
    let values: Vec<f64> = grid
        .par_iter()
        .map(|&r| joint_solve(&map, r, parity, cfg).map(|(_, res)| res))
        .collect::<Result<_>>()?;
    let minima: Vec<[f64; 3]> = (1..grid.len().saturating_sub(1))
        .filter(|&k| values[k] <= values[k - 1] && values[k] <= values[k + 1])
        .map(|k| [grid[k - 1], grid[k], grid[k + 1]])
        .collect();
    let refined: Vec<Option<SpectralCandidate>> = minima
        .par_iter()
        .map(|&bracket| refine(&map, parity, cfg, bracket).ok().flatten())
        .collect();
    let mut out: Vec<SpectralCandidate> = Vec::new();
    for c in refined.into_iter().flatten() {
        if c.r < lo || c.r > hi {
            continue;
        }
        match out.iter_mut().find(|o| (o.r - c.r).abs() < 1e-5) {
            Some(o) => {
                if c.residual < o.residual {
                    *o = c;
                }
            }
            None => out.push(c),
        }
    }
    out.sort_by(|a, b| a.r.total_cmp(&b.r));
    Ok(out)
}

/// Successive parabolic interpolation on the squared joint residual, which is
/// close to quadratic near an eigenvalue.
fn refine(map: &PullbackMap, parity: Parity, cfg: &SolverConfig, bracket: [f64; 3]) -> Result<Option<SpectralCandidate>> {
    let f = |r: f64| joint_solve(map, r, parity, cfg).map(|(_, res)| res * res);
    let (lo, hi) = (bracket[0], bracket[2]);
    let mut pts: Vec<(f64, f64)> = bracket.iter().map(|&r| f(r).map(|v| (r, v))).collect::<Result<_>>()?;
    for _ in 0..40 {
        pts.sort_by(|a, b| a.1.total_cmp(&b.1));
        pts.truncate(3);
        let [(x0, f0), (x1, f1), (x2, f2)] = [pts[0], pts[1], pts[2]];
        let num = (x1 - x0).powi(2) * (f1 - f2) - (x1 - x2).powi(2) * (f1 - f0);
        let den = (x1 - x0) * (f1 - f2) - (x1 - x2) * (f1 - f0);
        let mut x = x1 - 0.5 * num / den;
        if !x.is_finite() || x <= lo || x >= hi {
            // golden step towards the best point instead
            x = x0 + 0.381966 * (if x1 > x0 { x1 - x0 } else { x2 - x0 });
        }
        if pts.iter().any(|p| (p.0 - x).abs() < 1e-13) {
            break;
        }
        let step = (x - x0).abs();
        pts.push((x, f(x)?));
        if step < 1e-11 {
            break;
        }
    }
    pts.sort_by(|a, b| a.1.total_cmp(&b.1));
    let r = pts[0].0;
    let ev = evaluate(map, r, parity, cfg)?;
    let residual = ev.residual(cfg.check_terms);
    if !(residual <= cfg.residual_tol) {
        return Ok(None);
    }
    Ok(Some(SpectralCandidate {
        level: map.level,
        r,
        parity,
        residual,
        coeffs: ev.reliable_coeffs(RELIABLE_DELTA),
        labels: Vec::new(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pullback_examples() {
        let (w, a) = pullback(Complex64::new(5.0, 1.0)).unwrap();
        assert!((w - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        assert_eq!(a, [1, -5, 0, 1]);
        let z = Complex64::new(0.1, 0.1);
        let (w, a) = pullback(z).unwrap();
        assert!(w.norm() >= 1.0 - 1e-12 && w.re.abs() <= 0.5);
        assert!((mat_act(a, z) - w).norm() < 1e-13);
        let (_, a) = pullback(Complex64::new(0.2, 1.5)).unwrap();
        assert_eq!(a, [1, 0, 0, 1]);
    }

    #[test]
    fn cusp_widths() {
        let m = PullbackMap::new(9).unwrap();
        let mut w: Vec<u64> = m.cusps.iter().map(|c| c.width).collect();
        assert_eq!(w[0], 1);
        w.sort();
        assert_eq!(w, vec![1, 1, 1, 9]);
    }
}
