//! Spectral data of the section: coexact spectra, harmonic ranks, heat
//! coefficients, built-in flat sections, and the JSON interchange format.

pub mod residues;
pub mod torsion;
pub mod zeta_q;

use crate::error::{Result, TorsionError};
use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub use residues::{coexact_heat_coeffs, residue_table, zeta0_coexact, zeta0_form};
pub use torsion::section_analytic_torsion;
pub use zeta_q::{
    epstein_lattice_zeta, log_ratio_series_truncated, reg_log_ratio, zeta_cex_continued, zeta_q,
    zeta_q_direct,
};

/// How the continued zeta functions of the section are computed.
#[derive(Debug, Clone, PartialEq)]
pub enum SectionKind {
    /// Circle of radius r (m = 1).
    Circle { r: f64 },
    /// Flat rectangular torus with side lengths (m = 2).
    Torus { lx: f64, ly: f64 },
    /// Loaded from a file; continuations go through the heat expansion.
    Generic,
}

/// Truncated spectral data of a closed oriented section W of dimension m.
#[derive(Debug, Clone)]
pub struct SectionSpectrum {
    pub dim: usize,
    pub label: String,
    pub volume: f64,
    /// Per degree q = 0..=m: ascending (eigenvalue, multiplicity) of the
    /// coexact Hodge-Laplace spectrum, truncated at `cutoff`.
    pub coexact: Vec<Vec<(f64, u32)>>,
    /// r_q = rk H_q(W), q = 0..=m.
    pub harmonic_ranks: Vec<usize>,
    /// Per degree q: a_{q,h} with Tr e^{-t Lap^{(q)}} ~ t^{-m/2} sum_h a_{q,h} t^{h/2}.
    pub heat_coeffs: Vec<Vec<f64>>,
    pub cutoff: f64,
    pub torsion_log_t: Option<f64>,
    pub kind: SectionKind,
}

/// Exact order shift and shifted frequency of one coexact eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaMu {
    pub alpha: Rational64,
    pub mu: f64,
    /// The negative-order solutions degenerate at integer mu (logarithmic
    /// case, excluded from scope); flagged so Y/J_{-mu} consumers can reject.
    pub mu_is_integer: bool,
}

impl SectionSpectrum {
    /// alpha_q = (1 + 2q - m)/2 as an exact rational.
    pub fn alpha(&self, q: i64) -> Rational64 {
        Rational64::new(1 + 2 * q - self.dim as i64, 2)
    }

    /// alpha_q and mu_{q,n} for the n-th stored coexact eigenvalue (n is a
    /// 0-based index into the truncated list).
    pub fn alpha_mu(&self, q: usize, n: usize) -> Result<AlphaMu> {
        let list = self
            .coexact
            .get(q)
            .ok_or_else(|| TorsionError::Domain(format!("degree {q} out of range")))?;
        let (lambda, _) = *list.get(n).ok_or_else(|| {
            TorsionError::Domain(format!("index {n} beyond truncation at degree {q}"))
        })?;
        let alpha = self.alpha(q as i64);
        let af = rational_to_f64_64(alpha);
        let mu = (lambda + af * af).sqrt();
        Ok(AlphaMu {
            alpha,
            mu,
            mu_is_integer: (mu - mu.round()).abs() < 1e-9,
        })
    }

    /// Shifted frequencies (mu, mult) at degree q, ascending.
    pub fn mu_list(&self, q: usize) -> Vec<(f64, u32)> {
        let af = rational_to_f64_64(self.alpha(q as i64));
        self.coexact
            .get(q)
            .map(|l| {
                l.iter()
                    .map(|&(lam, m)| ((lam + af * af).sqrt(), m))
                    .collect()
            })
            .unwrap_or_default()
    }

    pub fn rank(&self, q: i64) -> usize {
        if q < 0 || q as usize >= self.harmonic_ranks.len() {
            0
        } else {
            self.harmonic_ranks[q as usize]
        }
    }

    /// Euler characteristic from the harmonic ranks.
    pub fn euler_characteristic(&self) -> i64 {
        self.harmonic_ranks
            .iter()
            .enumerate()
            .map(|(q, &r)| if q % 2 == 0 { r as i64 } else { -(r as i64) })
            .sum()
    }

    pub fn is_even_dim(&self) -> bool {
        self.dim % 2 == 0
    }

    /// Smallest stored coexact eigenvalue at degree q.
    pub fn lambda_min(&self, q: usize) -> Option<f64> {
        self.coexact.get(q).and_then(|l| l.first()).map(|&(l, _)| l)
    }

    /// Validate every structural invariant; used by the builders and the loader.
    pub fn validate(&self) -> Result<()> {
        let m = self.dim;
        if m == 0 {
            return Err(TorsionError::Schema("dimension must be >= 1".into()));
        }
        if self.volume <= 0.0 {
            return Err(TorsionError::Schema("volume must be positive".into()));
        }
        if self.coexact.len() != m + 1 {
            return Err(TorsionError::Schema(format!(
                "coexact table must cover degrees 0..={m}"
            )));
        }
        if self.harmonic_ranks.len() != m + 1 {
            return Err(TorsionError::Schema(format!(
                "harmonic ranks must cover degrees 0..={m}"
            )));
        }
        if self.heat_coeffs.len() != m + 1 {
            return Err(TorsionError::Schema(format!(
                "heat coefficients must cover degrees 0..={m}"
            )));
        }
        for (q, list) in self.coexact.iter().enumerate() {
            let mut prev = 0.0f64;
            for &(lam, mult) in list {
                if lam <= 0.0 {
                    return Err(TorsionError::NonAscending(format!(
                        "degree {q}: eigenvalue {lam} <= 0"
                    )));
                }
                if lam <= prev {
                    return Err(TorsionError::NonAscending(format!(
                        "degree {q}: {lam} after {prev}"
                    )));
                }
                if mult == 0 {
                    return Err(TorsionError::Schema(format!(
                        "degree {q}: zero multiplicity at {lam}"
                    )));
                }
                prev = lam;
            }
        }
        // Poincare duality of ranks
        for q in 0..=m {
            if self.harmonic_ranks[q] != self.harmonic_ranks[m - q] {
                return Err(TorsionError::Duality(format!(
                    "r_{q} = {} != r_{} = {}",
                    self.harmonic_ranks[q],
                    m - q,
                    self.harmonic_ranks[m - q]
                )));
            }
        }
        // coexact Hodge duality: degree q matches degree m-1-q
        for q in 0..m {
            let dual = m - 1 - q;
            let a = &self.coexact[q];
            let b = &self.coexact[dual];
            if a.len() != b.len() {
                return Err(TorsionError::Duality(format!(
                    "coexact lists at degrees {q} and {dual} differ in length"
                )));
            }
            for (&(la, ma), &(lb, mb)) in a.iter().zip(b.iter()) {
                if ma != mb || (la - lb).abs() > 1e-12 * la.abs().max(1.0) {
                    return Err(TorsionError::Duality(format!(
                        "coexact duality broken between degrees {q} and {dual} near {la}"
                    )));
                }
            }
        }
        // coexact degree m is always empty (no (m+1)-forms to co-differentiate)
        if !self.coexact[m].is_empty() {
            return Err(TorsionError::Schema(format!(
                "coexact degree {m} must be empty"
            )));
        }
        // leading heat coefficient
        let norm = (4.0 * std::f64::consts::PI).powf(m as f64 / 2.0);
        for q in 0..=m {
            if self.heat_coeffs[q].is_empty() {
                return Err(TorsionError::MissingHeatCoeffs(q));
            }
            let want = binomial(m, q) * self.volume / norm;
            let got = self.heat_coeffs[q][0];
            if (got - want).abs() > 1e-10 * want.abs().max(1.0) {
                return Err(TorsionError::Schema(format!(
                    "leading heat coefficient at degree {q}: got {got}, expected {want}"
                )));
            }
        }
        Ok(())
    }

    /// Weyl counting consistency at the truncation edge: the stored counting
    /// function against a_{q,0} Lambda^{m/2} / Gamma(m/2 + 1).
    pub fn weyl_ratio(&self, q: usize) -> Option<f64> {
        let list = self.coexact.get(q)?;
        if list.is_empty() {
            return None;
        }
        let count: f64 = list.iter().map(|&(_, m)| m as f64).sum();
        let c0 = coexact_heat_coeffs(self, q)[0];
        let lam = list.last().unwrap().0;
        let want = c0 * lam.powf(self.dim as f64 / 2.0)
            / crate::special::gamma::ln_gamma(self.dim as f64 / 2.0 + 1.0).exp();
        Some(count / want)
    }
}

pub(crate) fn rational_to_f64_64(r: Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

pub(crate) fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// Circle of radius r: Fourier spectrum n^2/r^2 with multiplicity 2.
pub fn make_circle(r: f64, cutoff: f64) -> Result<SectionSpectrum> {
    if r <= 0.0 || cutoff <= 0.0 {
        return Err(TorsionError::Domain("circle needs r > 0, cutoff > 0".into()));
    }
    let nmax = (r * cutoff.sqrt()).floor() as u64;
    let coexact0: Vec<(f64, u32)> = (1..=nmax)
        .map(|n| ((n * n) as f64 / (r * r), 2u32))
        .collect();
    let a0 = r * std::f64::consts::PI.sqrt(); // 2 pi r / sqrt(4 pi)
    let s = SectionSpectrum {
        dim: 1,
        label: format!("circle r={r}"),
        volume: 2.0 * std::f64::consts::PI * r,
        coexact: vec![coexact0, Vec::new()],
        harmonic_ranks: vec![1, 1],
        heat_coeffs: vec![vec![a0, 0.0], vec![a0, 0.0]],
        cutoff,
        torsion_log_t: Some((2.0 * std::f64::consts::PI * r).ln()),
        kind: SectionKind::Circle { r },
    };
    s.validate()?;
    Ok(s)
}

/// Flat rectangular torus with side lengths lx, ly: function eigenvalues
/// 4 pi^2 (k1^2/lx^2 + k2^2/ly^2) over nonzero integer pairs, coexact degree 1
/// duplicated from degree 0 by Hodge duality.
pub fn make_flat_torus(lx: f64, ly: f64, cutoff: f64) -> Result<SectionSpectrum> {
    if lx <= 0.0 || ly <= 0.0 || cutoff <= 0.0 {
        return Err(TorsionError::Domain("torus needs lx, ly, cutoff > 0".into()));
    }
    let four_pi2 = 4.0 * std::f64::consts::PI * std::f64::consts::PI;
    let k1max = (lx * (cutoff / four_pi2).sqrt()).floor() as i64;
    let k2max = (ly * (cutoff / four_pi2).sqrt()).floor() as i64;
    let mut raw: Vec<f64> = Vec::new();
    for k1 in -k1max..=k1max {
        for k2 in -k2max..=k2max {
            if k1 == 0 && k2 == 0 {
                continue;
            }
            let lam = four_pi2 * ((k1 * k1) as f64 / (lx * lx) + (k2 * k2) as f64 / (ly * ly));
            if lam <= cutoff {
                raw.push(lam);
            }
        }
    }
    raw.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut grouped: Vec<(f64, u32)> = Vec::new();
    for lam in raw {
        match grouped.last_mut() {
            Some((l, m)) if (lam - *l).abs() <= 1e-9 * lam => *m += 1,
            _ => grouped.push((lam, 1)),
        }
    }
    let vol = lx * ly;
    let a = |q: usize| binomial(2, q) * vol / (4.0 * std::f64::consts::PI);
    let s = SectionSpectrum {
        dim: 2,
        label: format!("torus {lx}x{ly}"),
        volume: vol,
        coexact: vec![grouped.clone(), grouped, Vec::new()],
        harmonic_ranks: vec![1, 2, 1],
        heat_coeffs: vec![
            vec![a(0), 0.0, 0.0],
            vec![a(1), 0.0, 0.0],
            vec![a(2), 0.0, 0.0],
        ],
        cutoff,
        torsion_log_t: Some(0.0),
        kind: SectionKind::Torus { lx, ly },
    };
    s.validate()?;
    Ok(s)
}

// ---------------------------------------------------------------------------
// JSON interchange
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct SectionJson {
    dim: usize,
    label: String,
    volume: f64,
    coexact: BTreeMap<String, Vec<(f64, u32)>>,
    harmonic_ranks: Vec<usize>,
    heat_coeffs: BTreeMap<String, Vec<f64>>,
    cutoff: f64,
    #[serde(rename = "torsion_logT")]
    torsion_log_t: Option<f64>,
}

impl SectionSpectrum {
    pub fn to_json(&self) -> Result<String> {
        let mut coexact = BTreeMap::new();
        let mut heat = BTreeMap::new();
        for q in 0..=self.dim {
            coexact.insert(q.to_string(), self.coexact[q].clone());
            heat.insert(q.to_string(), self.heat_coeffs[q].clone());
        }
        let j = SectionJson {
            dim: self.dim,
            label: self.label.clone(),
            volume: self.volume,
            coexact,
            harmonic_ranks: self.harmonic_ranks.clone(),
            heat_coeffs: heat,
            cutoff: self.cutoff,
            torsion_log_t: self.torsion_log_t,
        };
        Ok(serde_json::to_string_pretty(&j)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: SectionJson = serde_json::from_str(text)?;
        let m = j.dim;
        let mut coexact = vec![Vec::new(); m + 1];
        for (k, v) in j.coexact {
            let q: usize = k
                .parse()
                .map_err(|_| TorsionError::Schema(format!("bad coexact degree key {k}")))?;
            if q > m {
                return Err(TorsionError::Schema(format!("coexact degree {q} > dim {m}")));
            }
            coexact[q] = v;
        }
        let mut heat = vec![Vec::new(); m + 1];
        for (k, v) in j.heat_coeffs {
            let q: usize = k
                .parse()
                .map_err(|_| TorsionError::Schema(format!("bad heat degree key {k}")))?;
            if q > m {
                return Err(TorsionError::Schema(format!("heat degree {q} > dim {m}")));
            }
            heat[q] = v;
        }
        let s = SectionSpectrum {
            dim: m,
            label: j.label,
            volume: j.volume,
            coexact,
            harmonic_ranks: j.harmonic_ranks,
            heat_coeffs: heat,
            cutoff: j.cutoff,
            torsion_log_t: j.torsion_log_t,
            kind: SectionKind::Generic,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// Equality on the interchange fields (the continuation kind is derived).
    pub fn schema_eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.label == other.label
            && self.volume == other.volume
            && self.coexact == other.coexact
            && self.harmonic_ranks == other.harmonic_ranks
            && self.heat_coeffs == other.heat_coeffs
            && self.cutoff == other.cutoff
            && self.torsion_log_t == other.torsion_log_t
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn circle_spectrum_shape() {
        let s = make_circle(1.0, 1e4).unwrap();
        assert_eq!(s.dim, 1);
        assert_eq!(s.coexact[0][0], (1.0, 2));
        assert_eq!(s.harmonic_ranks, vec![1, 1]);
        assert_eq!(s.euler_characteristic(), 0);
        assert_relative_eq!(
            s.heat_coeffs[0][0],
            std::f64::consts::PI.sqrt(),
            epsilon = 1e-14
        );
        let am = s.alpha_mu(0, 2).unwrap();
        assert_eq!(am.alpha, Rational64::new(0, 1));
        assert_relative_eq!(am.mu, 3.0, epsilon = 1e-14);
        assert!(am.mu_is_integer);
    }

    #[test]
    fn torus_spectrum_shape() {
        let s = make_flat_torus(1.0, 1.0, 4.0 * std::f64::consts::PI.powi(2) * 30.0).unwrap();
        assert_eq!(s.dim, 2);
        // lambda_min = 4 pi^2 with multiplicity 4
        let (lam, mult) = s.coexact[0][0];
        assert_relative_eq!(lam, 4.0 * std::f64::consts::PI.powi(2), epsilon = 1e-12);
        assert_eq!(mult, 4);
        assert_eq!(s.euler_characteristic(), 0);
        assert_relative_eq!(
            s.heat_coeffs[1][0],
            2.0 / (4.0 * std::f64::consts::PI),
            epsilon = 1e-14
        );
        // alpha_1 = 1/2 in the middle degree
        assert_eq!(s.alpha(1), Rational64::new(1, 2));
        assert_eq!(s.alpha(0), Rational64::new(-1, 2));
    }

    #[test]
    fn alpha_examples() {
        let c = make_circle(2.0, 100.0).unwrap();
        // m=1, q=0 -> alpha = 0; circle mu_n = n/r
        let am = c.alpha_mu(0, 0).unwrap();
        assert_relative_eq!(am.mu, 0.5, epsilon = 1e-14);
        // m=3 formula check through the struct-free helper
        let fake = SectionSpectrum {
            dim: 3,
            ..make_circle(1.0, 10.0).unwrap()
        };
        assert_eq!(fake.alpha(0), Rational64::new(-1, 1));
    }

    #[test]
    fn json_roundtrip_circle() {
        let s = make_circle(1.0, 400.0).unwrap();
        let text = s.to_json().unwrap();
        let back = SectionSpectrum::from_json(&text).unwrap();
        assert!(s.schema_eq(&back));
    }

    #[test]
    fn loader_rejects_bad_sections() {
        let s = make_circle(1.0, 400.0).unwrap();
        // break rank duality
        let mut bad = s.clone();
        bad.harmonic_ranks = vec![1, 2];
        assert!(matches!(bad.validate(), Err(TorsionError::Duality(_))));
        // break positivity
        let mut bad = s.clone();
        bad.coexact[0][0].0 = -1.0;
        assert!(matches!(bad.validate(), Err(TorsionError::NonAscending(_))));
        // break coexact duality on a 2d section
        let mut t = make_flat_torus(1.0, 1.0, 500.0).unwrap();
        t.coexact[1].pop();
        assert!(matches!(t.validate(), Err(TorsionError::Duality(_))));
    }

    #[test]
    fn weyl_ratio_near_one() {
        let s = make_flat_torus(1.0, 1.0, 4.0 * std::f64::consts::PI.powi(2) * 400.0).unwrap();
        let r = s.weyl_ratio(0).unwrap();
        assert!((r - 1.0).abs() < 0.05, "weyl ratio {r}");
    }
}
