//! Enumerated Hodge-Laplace spectra of the cone and frustum, assembled from
//! the Bessel-zero families row by row, with verification oracles.
//!
//! Each form degree q collects six rows: Robin-type (hat) families over the
//! coexact spectra at section degrees q and q-1, plain families at q-1 and
//! q-2, and two harmonic rows.  For an even-dimensional section the ideal
//! boundary conditions split the middle-degree harmonics into two half-rank
//! families of order +-1/2.  Completeness below the cutoff is guaranteed by
//! the scan bounds of the zero families; every entry keeps its provenance.

use crate::error::{Result, TorsionError};
use crate::section::residues::cone_weyl_constant;
use crate::section::{rational_to_f64_64, SectionSpectrum};
use crate::special::zeros::ZeroFamily;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FrustumBc {
    #[serde(rename = "mixed")]
    Mixed,
    #[serde(rename = "abs")]
    Absolute,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum Geometry {
    #[serde(rename = "cone")]
    Cone { l: f64 },
    #[serde(rename = "frustum")]
    Frustum { l1: f64, l2: f64 },
}

/// One enumerated eigenvalue with provenance.  Serializes as the tuple
/// [value, mult, family, q_section, n, k].
#[derive(Debug, Clone)]
pub struct EigenEntry {
    pub value: f64,
    pub mult: u32,
    /// Which of the zero-family rows produced it.
    pub family: String,
    /// Section degree of the producing row.
    pub q_section: i64,
    /// Index into the coexact list (0 for harmonic rows).
    pub n: usize,
    /// Zero index within the family, starting at 1.
    pub k: usize,
}

impl Serialize for EigenEntry {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (
            self.value,
            self.mult,
            &self.family,
            self.q_section,
            self.n,
            self.k,
        )
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for EigenEntry {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (value, mult, family, q_section, n, k) =
            <(f64, u32, String, i64, usize, usize)>::deserialize(d)?;
        Ok(EigenEntry {
            value,
            mult,
            family,
            q_section,
            n,
            k,
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EigenList {
    pub q: usize,
    pub geometry: Geometry,
    pub bc: Option<FrustumBc>,
    pub cutoff: f64,
    pub entries: Vec<EigenEntry>,
}

impl EigenList {
    pub fn total_count(&self) -> usize {
        self.entries.iter().map(|e| e.mult as usize).sum()
    }

    /// Expand multiplicities into a sorted value list.
    pub fn expanded(&self) -> Vec<f64> {
        let mut v = Vec::with_capacity(self.total_count());
        for e in &self.entries {
            for _ in 0..e.mult {
                v.push(e.value);
            }
        }
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

struct RowSpec {
    family: ZeroFamily,
    mult: u32,
    name: &'static str,
    q_section: i64,
    n: usize,
}

/// Lower bound for the first zero of a Robin family c J_mu + x J'_mu: below
/// min(j_1/sqrt2, sqrt((mu+1)(mu+c))) the logarithmic derivative stays above -c.
fn jhat_first_zero_bound(mu: f64, c: f64) -> f64 {
    let a = mu / std::f64::consts::SQRT_2;
    let b = ((mu + 1.0) * (mu + c)).max(0.0).sqrt();
    a.min(b)
}

/// Positive part of the Hodge-Laplace spectrum of C_l(W) at form degree q,
/// with absolute (and, for even sections, ideal) boundary conditions, complete
/// below the eigenvalue cutoff.
pub fn cone_spectrum(
    section: &SectionSpectrum,
    q: usize,
    l: f64,
    cutoff: f64,
) -> Result<EigenList> {
    if l <= 0.0 || cutoff <= 0.0 {
        return Err(TorsionError::Geometry("cone needs l > 0 and cutoff > 0".into()));
    }
    let m = section.dim;
    if q > m + 1 {
        return Err(TorsionError::Domain(format!(
            "form degree {q} exceeds cone dimension {}",
            m + 1
        )));
    }
    let even = m % 2 == 0;
    let p = m / 2;
    if even && section.harmonic_ranks[p] % 2 != 0 {
        return Err(TorsionError::OddMiddleRank(section.harmonic_ranks[p]));
    }
    let xmax = cutoff.sqrt() * l;
    let mut rows: Vec<RowSpec> = Vec::new();

    // coexact rows
    let push_coexact = |rows: &mut Vec<RowSpec>, d: i64, hat: bool, name: &'static str| {
        if d < 0 || d as usize >= m {
            return;
        }
        let alpha = rational_to_f64_64(section.alpha(d));
        for (n, &(lam, mult)) in section.coexact[d as usize].iter().enumerate() {
            let mu = (lam + alpha * alpha).sqrt();
            let fam = if hat {
                if jhat_first_zero_bound(mu, alpha) > xmax {
                    break;
                }
                ZeroFamily::jhat(mu, alpha)
            } else {
                if mu > xmax {
                    break;
                }
                ZeroFamily::j(mu)
            };
            rows.push(RowSpec {
                family: fam,
                mult,
                name,
                q_section: d,
                n,
            });
        }
    };

    push_coexact(&mut rows, q as i64, true, "coexact_hat_q");
    push_coexact(&mut rows, q as i64 - 1, true, "coexact_hat_qm1");
    push_coexact(&mut rows, q as i64 - 1, false, "coexact_j_qm1");
    push_coexact(&mut rows, q as i64 - 2, false, "coexact_j_qm2");

    // harmonic rows: hat_{|alpha_d|, alpha_d} reduces to a plain Bessel family
    // of shifted order (alpha > 0 -> alpha - 1; alpha < 0 -> -alpha + 1;
    // alpha = 0 -> order 1)
    let harmonic_row = |d: i64| -> Option<ZeroFamily> {
        let a = rational_to_f64_64(section.alpha(d));
        let order = if a > 0.0 {
            a - 1.0
        } else if a < 0.0 {
            -a + 1.0
        } else {
            1.0
        };
        Some(ZeroFamily::j(order))
    };
    // even-dimensional sections: the ideal split replaces the middle-degree
    // harmonic rows with half-rank families of orders +-1/2
    let push_harmonic = |rows: &mut Vec<RowSpec>, d: i64, name: &'static str| {
        if d < 0 || d as usize > m {
            return;
        }
        let r = section.harmonic_ranks[d as usize] as u32;
        if r == 0 {
            return;
        }
        if even && d as usize == p {
            rows.push(RowSpec {
                family: ZeroFamily::j(0.5),
                mult: r / 2,
                name: "harmonic_split_plus",
                q_section: d,
                n: 0,
            });
            rows.push(RowSpec {
                family: ZeroFamily::j(-0.5),
                mult: r / 2,
                name: "harmonic_split_minus",
                q_section: d,
                n: 0,
            });
        } else if let Some(fam) = harmonic_row(d) {
            rows.push(RowSpec {
                family: fam,
                mult: r,
                name,
                q_section: d,
                n: 0,
            });
        }
    };
    push_harmonic(&mut rows, q as i64, "harmonic_q");
    push_harmonic(&mut rows, q as i64 - 1, "harmonic_qm1");

    let mut entries = Vec::new();
    for row in &rows {
        let zeros = row.family.zeros_up_to(xmax)?;
        for (k, z) in zeros.iter().enumerate() {
            entries.push(EigenEntry {
                value: (z / l) * (z / l),
                mult: row.mult,
                family: row.name.to_string(),
                q_section: row.q_section,
                n: row.n,
                k: k + 1,
            });
        }
    }
    entries.sort_by(|a, b| {
        a.value
            .partial_cmp(&b.value)
            .unwrap()
            .then_with(|| a.family.cmp(&b.family))
            .then_with(|| a.n.cmp(&b.n))
            .then_with(|| a.k.cmp(&b.k))
    });
    Ok(EigenList {
        q,
        geometry: Geometry::Cone { l },
        bc: None,
        cutoff,
        entries,
    })
}

/// Positive part of the frustum spectrum at form degree q: mixed boundary
/// conditions (relative at the inner radius) or absolute at both.
pub fn frustum_spectrum(
    section: &SectionSpectrum,
    q: usize,
    bc: FrustumBc,
    l1: f64,
    l2: f64,
    cutoff: f64,
) -> Result<EigenList> {
    if !(l1 > 0.0 && l1 < l2) {
        return Err(TorsionError::Geometry(format!(
            "frustum needs 0 < l1 < l2, got {l1}, {l2}"
        )));
    }
    let m = section.dim;
    if q > m + 1 {
        return Err(TorsionError::Domain(format!(
            "form degree {q} exceeds frustum dimension {}",
            m + 1
        )));
    }
    let xmax = cutoff.sqrt();
    let mut rows: Vec<RowSpec> = Vec::new();

    let push_coexact = |rows: &mut Vec<RowSpec>,
                            d: i64,
                            pick: &dyn Fn(f64, f64) -> ZeroFamily,
                            name: &'static str| {
        if d < 0 || d as usize >= m {
            return;
        }
        let alpha = rational_to_f64_64(section.alpha(d));
        for (n, &(lam, mult)) in section.coexact[d as usize].iter().enumerate() {
            let mu = (lam + alpha * alpha).sqrt();
            if (mu * mu - 0.25).max(0.0).sqrt() / l2 > xmax {
                break;
            }
            rows.push(RowSpec {
                family: pick(mu, alpha),
                mult,
                name,
                q_section: d,
                n,
            });
        }
    };

    match bc {
        FrustumBc::Mixed => {
            push_coexact(
                &mut rows,
                q as i64,
                &|mu, a| ZeroFamily::frustum_mixed(mu, a, l1, l2),
                "mixed_hat_q",
            );
            push_coexact(
                &mut rows,
                q as i64 - 1,
                &|mu, a| ZeroFamily::frustum_mixed(mu, a, l1, l2),
                "mixed_hat_qm1",
            );
            push_coexact(
                &mut rows,
                q as i64 - 1,
                &|mu, a| ZeroFamily::frustum_mixed(mu, -a, l2, l1),
                "mixed_hat_qm1_swapped",
            );
            push_coexact(
                &mut rows,
                q as i64 - 2,
                &|mu, a| ZeroFamily::frustum_mixed(mu, -a, l2, l1),
                "mixed_hat_qm2_swapped",
            );
            // harmonic rows: hats of order |alpha| with c = alpha at (l1, l2)
            for (d, name) in [(q as i64, "mixed_harmonic_q"), (q as i64 - 1, "mixed_harmonic_qm1")]
            {
                if d < 0 || d as usize > m {
                    continue;
                }
                let r = section.harmonic_ranks[d as usize] as u32;
                if r == 0 {
                    continue;
                }
                let a = rational_to_f64_64(section.alpha(d));
                rows.push(RowSpec {
                    family: ZeroFamily::frustum_mixed(a.abs(), a, l1, l2),
                    mult: r,
                    name,
                    q_section: d,
                    n: 0,
                });
            }
        }
        FrustumBc::Absolute => {
            push_coexact(
                &mut rows,
                q as i64,
                &|mu, a| ZeroFamily::upsilon_hat(mu, a, l1, l2),
                "abs_upsilon_hat_q",
            );
            push_coexact(
                &mut rows,
                q as i64 - 1,
                &|mu, a| ZeroFamily::upsilon_hat(mu, a, l1, l2),
                "abs_upsilon_hat_qm1",
            );
            push_coexact(
                &mut rows,
                q as i64 - 1,
                &|mu, _| ZeroFamily::upsilon(mu, l1, l2),
                "abs_upsilon_qm1",
            );
            push_coexact(
                &mut rows,
                q as i64 - 2,
                &|mu, _| ZeroFamily::upsilon(mu, l1, l2),
                "abs_upsilon_qm2",
            );
            for (d, name) in [(q as i64, "abs_harmonic_q"), (q as i64 - 1, "abs_harmonic_qm1")] {
                if d < 0 || d as usize > m {
                    continue;
                }
                let r = section.harmonic_ranks[d as usize] as u32;
                if r == 0 {
                    continue;
                }
                let a = rational_to_f64_64(section.alpha(d));
                rows.push(RowSpec {
                    family: ZeroFamily::upsilon_hat(a.abs(), a, l1, l2),
                    mult: r,
                    name,
                    q_section: d,
                    n: 0,
                });
            }
        }
    }

    let mut entries = Vec::new();
    for row in &rows {
        let zeros = row.family.zeros_up_to(xmax)?;
        for (k, z) in zeros.iter().enumerate() {
            entries.push(EigenEntry {
                value: z * z,
                mult: row.mult,
                family: row.name.to_string(),
                q_section: row.q_section,
                n: row.n,
                k: k + 1,
            });
        }
    }
    entries.sort_by(|a, b| {
        a.value
            .partial_cmp(&b.value)
            .unwrap()
            .then_with(|| a.family.cmp(&b.family))
            .then_with(|| a.n.cmp(&b.n))
            .then_with(|| a.k.cmp(&b.k))
    });
    Ok(EigenList {
        q,
        geometry: Geometry::Frustum { l1, l2 },
        bc: Some(bc),
        cutoff,
        entries,
    })
}

/// Verification report for one enumerated list.
#[derive(Debug, Clone, Serialize)]
pub struct SpectrumReport {
    pub q: usize,
    pub count: usize,
    /// N(cutoff) over the leading Weyl term of the cone at this degree.
    pub weyl_ratio: Option<f64>,
    pub family_counts: Vec<(String, usize)>,
    pub empty_below_cutoff: bool,
}

/// Weyl ratio and family-level counts for a cone eigenvalue list.
pub fn verify_spectrum(e: &EigenList, section: &SectionSpectrum) -> SpectrumReport {
    let count = e.total_count();
    let weyl_ratio = match &e.geometry {
        Geometry::Cone { l } => {
            let c = cone_weyl_constant(section, e.q, *l);
            let d = section.dim + 1;
            let want = c * e.cutoff.powf(d as f64 / 2.0);
            if want > 0.0 {
                Some(count as f64 / want)
            } else {
                None
            }
        }
        Geometry::Frustum { .. } => None,
    };
    let mut fam: std::collections::BTreeMap<String, usize> = Default::default();
    for entry in &e.entries {
        *fam.entry(entry.family.clone()).or_default() += entry.mult as usize;
    }
    SpectrumReport {
        q: e.q,
        count,
        weyl_ratio,
        family_counts: fam.into_iter().collect(),
        empty_below_cutoff: count == 0,
    }
}

/// Hodge-pairing (McKean-Singer) defect: the even-degree and odd-degree
/// spectra of a compact piece coincide as multisets away from the kernel.
/// Returns the largest relative mismatch between the sorted merged lists,
/// or infinity when the counts differ.
pub fn susy_defect(lists: &[EigenList]) -> f64 {
    let mut even: Vec<f64> = Vec::new();
    let mut odd: Vec<f64> = Vec::new();
    for e in lists {
        let target = if e.q % 2 == 0 { &mut even } else { &mut odd };
        target.extend(e.expanded());
    }
    even.sort_by(|a, b| a.partial_cmp(b).unwrap());
    odd.sort_by(|a, b| a.partial_cmp(b).unwrap());
    if even.len() != odd.len() {
        return f64::INFINITY;
    }
    even.iter()
        .zip(odd.iter())
        .map(|(a, b)| (a - b).abs() / a.abs().max(1.0))
        .fold(0.0, f64::max)
}
