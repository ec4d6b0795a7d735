//! Provenance labels for level-9 eigenvalues and the multiplicity table.

use serde::{Deserialize, Serialize};

use super::{Parity, SpectralCandidate};
use crate::special::DirichletCharacter;

/// Two spectral parameters closer than this are taken to be equal.
pub const MATCH_TOL: f64 = 1e-5;
/// Coefficients below this count as zero when reading off the support.
pub const SUPPORT_TOL: f64 = 1e-4;
/// Allowed deviation in `c⁻(n) = χ₃(n)c⁺(n)` for a measured pair.
pub const PAIR_TOL: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Label {
    /// Old or twist-related to a form on the modular group.
    LevelOne,
    /// Old or twist-related to a newform on Γ₀(3).
    LevelThree,
    /// Related to a newform on Γ³.
    Gamma3Lift,
    Unclassified,
}

/// `max_{(n,3)=1} |c⁻(n) − χ₃(n)c⁺(n)|` over the coefficients both carry.
pub fn pair_discrepancy(even: &SpectralCandidate, odd: &SpectralCandidate) -> f64 {
    let chi = DirichletCharacter::chi3();
    let m = even.coeffs.len().min(odd.coeffs.len());
    (1..=m as i64)
        .filter(|n| n % 3 != 0)
        .map(|n| (odd.coeff(n) - chi.value(n) * even.coeff(n)).norm())
        .fold(0.0, f64::max)
}

fn lower_matches<'a>(c: &SpectralCandidate, archive: &'a [SpectralCandidate]) -> impl Iterator<Item = &'a SpectralCandidate> {
    let (level, r) = (c.level, c.r);
    archive
        .iter()
        .filter(move |a| a.level < level && matches!(a.level, 1 | 3) && (a.r - r).abs() < MATCH_TOL)
}

/// Labels `c` against the spectra in `archive`.
///
/// A match in R with a level-1 or level-3 eigenvalue gives the corresponding
/// label. Otherwise a level-9 candidate supported off multiples of 3 is a
/// Γ³ lift, provided every opposite-parity partner at the same R in the
/// archive satisfies the `χ₃` pairing. Twists of lower-level forms share
/// that support, so the support test is only consulted when no lower level
/// matches.
pub fn classify(c: &SpectralCandidate, archive: &[SpectralCandidate]) -> Vec<Label> {
    let mut labels: Vec<Label> = match c.level {
        1 => vec![Label::LevelOne],
        _ => lower_matches(c, archive)
            .map(|a| if a.level == 1 { Label::LevelOne } else { Label::LevelThree })
            .collect(),
    };
    if c.level == 3 && labels.is_empty() {
        labels.push(Label::LevelThree);
    }
    if labels.is_empty() && c.level == 9 && c.t13_class(SUPPORT_TOL) == Some(1) {
        let paired_ok = archive
            .iter()
            .filter(|a| a.level == 9 && a.parity != c.parity && (a.r - c.r).abs() < MATCH_TOL)
            .all(|a| {
                let (even, odd) = if c.parity == Parity::Even { (c, a) } else { (a, c) };
                pair_discrepancy(even, odd) < PAIR_TOL
            });
        if paired_ok {
            labels.push(Label::Gamma3Lift);
        }
    }
    if labels.is_empty() {
        labels.push(Label::Unclassified);
    }
    labels.sort();
    labels.dedup();
    labels
}

#[derive(Clone, Debug, Serialize)]
pub struct MultiplicityRow {
    #[serde(rename = "R")]
    pub r: f64,
    pub parities: Vec<Parity>,
    pub multiplicity: usize,
    pub labels: Vec<Label>,
    /// Members not explained as oldforms, i.e. without a lower-level match in
    /// the same parity.
    pub new: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct MultiplicityReport {
    pub level: u64,
    pub r_max: f64,
    pub rows: Vec<MultiplicityRow>,
    pub new_count: usize,
    pub gamma3_count: usize,
    pub gamma3_fraction: f64,
}

/// Groups the level-`level` eigenvalues up to `r_max` in `archive` by R and
/// counts parity doublings and Γ³ lifts among the new part.
pub fn multiplicity_report(archive: &[SpectralCandidate], level: u64, r_max: f64) -> MultiplicityReport {
    let mut own: Vec<&SpectralCandidate> = archive.iter().filter(|c| c.level == level && c.r <= r_max).collect();
    own.sort_by(|a, b| a.r.total_cmp(&b.r));
    let mut groups: Vec<Vec<&SpectralCandidate>> = Vec::new();
    for c in own {
        match groups.last_mut() {
            Some(g) if (g[0].r - c.r).abs() < MATCH_TOL => g.push(c),
            _ => groups.push(vec![c]),
        }
    }
    let mut rows = Vec::new();
    let (mut new_count, mut gamma3_count) = (0, 0);
    for g in groups {
        let mut labels = Vec::new();
        let mut new = 0;
        for c in &g {
            let ls = if c.labels.is_empty() { classify(c, archive) } else { c.labels.clone() };
            let old = lower_matches(c, archive).any(|a| a.parity == c.parity);
            if !old {
                new += 1;
                if ls.contains(&Label::Gamma3Lift) {
                    gamma3_count += 1;
                }
            }
            labels.extend(ls);
        }
        labels.sort();
        labels.dedup();
        let mut parities: Vec<Parity> = g.iter().map(|c| c.parity).collect();
        parities.sort();
        new_count += new;
        rows.push(MultiplicityRow {
            r: g.iter().map(|c| c.r).sum::<f64>() / g.len() as f64,
            multiplicity: g.len(),
            parities,
            labels,
            new,
        });
    }
    MultiplicityReport {
        level,
        r_max,
        rows,
        new_count,
        gamma3_count,
        gamma3_fraction: if new_count > 0 { gamma3_count as f64 / new_count as f64 } else { 0.0 },
    }
}
