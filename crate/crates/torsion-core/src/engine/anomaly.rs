//! The anomaly boundary term, computed along the spectral route: exact
//! rational finite parts of the regular Phi combinations, multiplied by the
//! residues of zeta(s, U_q) and summed with the torsion-zeta weights.
//!
//! The cone combinations are, per section degree q and order j,
//!   odd section dimension:  2 phi_j - phihat_{j,+} - phihat_{j,-}
//!                           (and phi_j - phihat_{j,0} at the middle degree),
//!   even section dimension: phihat_{j,-} - phihat_{j,+},
//! each regular at s = 0 by the vanishing identities, so the l^{2s} prefactor
//! contributes nothing and the anomaly is independent of the cone radius.
//!
//! The frustum anomalies are assembled through the independent two-scale
//! composition; for odd sections the absolute-BC combination carries the
//! factor (l2^{2s} + (-1)^j l1^{2s}) which kills every odd j, and in all other
//! cases the result is exactly twice the cone combination.

use crate::error::{Result, TorsionError};
use crate::exact::compose::{fhat_composite, upsilon_composite, upsilon_hat_composite};
use crate::exact::phi::{phi_finite_part, Scale, ScaledPhiCombo};
use crate::exact::poly::{rational_to_f64, RationalPoly};
use crate::exact::series::{phi_all, phi_hat_all, Sign};
use crate::exact::OlverTable;
use crate::section::residues::residue_table;
use crate::section::SectionSpectrum;
use crate::spectra::FrustumBc;
use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};

fn to_big(r: Rational64) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

/// Exact finite parts of the cone combinations: entries (q, j, finite part),
/// for the degrees 0..= floor(m/2)-1 plus the odd-case middle degree, at every
/// order j = 1..=m of the parity carrying residues.
pub fn cone_anomaly_combinations(m: usize) -> Result<Vec<(usize, u32, BigRational)>> {
    if m == 0 {
        return Ok(Vec::new());
    }
    let table = OlverTable::new(m);
    let mut out = Vec::new();
    let odd = m % 2 == 1;
    let p = (m + 1) / 2; // m = 2p-1 or 2p
    let alpha_of = |q: usize| Rational64::new(1 + 2 * q as i64 - m as i64, 2);

    let phis = phi_all(&table, m);
    // degrees 0..=p-1; in the odd case q = p-1 is the middle block with
    // alpha = 0 and its own combination
    for q in 0..=(p - 1) {
        let alpha = to_big(alpha_of(q));
        let hp = phi_hat_all(&table, m, &alpha, Sign::Plus);
        let hm = phi_hat_all(&table, m, &alpha, Sign::Minus);
        for j in 1..=m {
            if (m - j) % 2 != 0 {
                continue; // no residue at this order
            }
            let combo: RationalPoly = if odd {
                if q == p - 1 {
                    // middle degree, alpha = 0: phi_j - phihat_{j,0}
                    &phis[j - 1] - &hp[j - 1]
                } else {
                    &(&phis[j - 1].scale(&BigRational::from_integer(2.into())) - &hp[j - 1])
                        - &hm[j - 1]
                }
            } else {
                &hm[j - 1] - &hp[j - 1]
            };
            let fp = phi_finite_part(&combo).map_err(|e| {
                TorsionError::Domain(format!(
                    "cone combination (q={q}, j={j}) has a nonzero residue: {e}"
                ))
            })?;
            out.push((q, j as u32, fp));
        }
    }
    Ok(out)
}

/// A_BM of the cone boundary, l-independent by construction.
pub fn anomaly_bm_cone(section: &SectionSpectrum) -> Result<f64> {
    let combos = cone_anomaly_combinations(section.dim)?;
    let mut acc = 0.0f64;
    for (q, j, fp) in combos {
        let res = residue_table(section, q)
            .into_iter()
            .find(|&(jj, _)| jj == j)
            .map(|(_, r)| r)
            .unwrap_or(0.0);
        if res == 0.0 {
            continue;
        }
        let sign = if q % 2 == 0 { 1.0 } else { -1.0 };
        acc += 0.25 * sign * rational_to_f64(&fp) * res;
    }
    Ok(acc)
}

/// Exact finite parts of the frustum combinations through the two-scale
/// composition path (never by doubling the cone values).
pub fn frustum_anomaly_combinations(
    m: usize,
    bc: FrustumBc,
) -> Result<Vec<(usize, u32, BigRational)>> {
    if m == 0 {
        return Ok(Vec::new());
    }
    let table = OlverTable::new(m);
    let odd = m % 2 == 1;
    let p = (m + 1) / 2;
    let alpha_of = |q: usize| Rational64::new(1 + 2 * q as i64 - m as i64, 2);
    let mut out = Vec::new();
    for q in 0..=(p - 1) {
        let alpha = to_big(alpha_of(q));
        let middle = odd && q == p - 1;
        for j in 1..=m {
            if (m - j) % 2 != 0 {
                continue;
            }
            let mut combo = ScaledPhiCombo::new();
            match bc {
                FrustumBc::Mixed => {
                    if middle {
                        // alpha = 0: hat_0(l2,l1) - hat_0(l1,l2)
                        fhat_composite(&table, j, &alpha, Sign::Plus, Scale::L2, Scale::L1)
                            .accumulate(&mut combo, 1);
                        fhat_composite(&table, j, &alpha, Sign::Plus, Scale::L1, Scale::L2)
                            .accumulate(&mut combo, -1);
                    } else {
                        // [hat_-(l2,l1) - hat_+(l1,l2)] + (-1)^{m-1} [hat_+(l2,l1) - hat_-(l1,l2)]
                        let s2 = if odd { 1 } else { -1 };
                        fhat_composite(&table, j, &alpha, Sign::Minus, Scale::L2, Scale::L1)
                            .accumulate(&mut combo, 1);
                        fhat_composite(&table, j, &alpha, Sign::Plus, Scale::L1, Scale::L2)
                            .accumulate(&mut combo, -1);
                        fhat_composite(&table, j, &alpha, Sign::Plus, Scale::L2, Scale::L1)
                            .accumulate(&mut combo, s2);
                        fhat_composite(&table, j, &alpha, Sign::Minus, Scale::L1, Scale::L2)
                            .accumulate(&mut combo, -s2);
                    }
                }
                FrustumBc::Absolute => {
                    if middle {
                        upsilon_composite(&table, j).accumulate(&mut combo, 1);
                        upsilon_hat_composite(&table, j, &alpha, Sign::Plus)
                            .accumulate(&mut combo, -1);
                    } else {
                        let s2 = if odd { 1 } else { -1 };
                        upsilon_composite(&table, j).accumulate(&mut combo, 1 + s2);
                        upsilon_hat_composite(&table, j, &alpha, Sign::Plus)
                            .accumulate(&mut combo, -1);
                        upsilon_hat_composite(&table, j, &alpha, Sign::Minus)
                            .accumulate(&mut combo, -s2);
                    }
                }
            }
            let fp = combo.value_at_zero().map_err(|e| {
                TorsionError::Domain(format!(
                    "frustum combination (q={q}, j={j}) not regular: {e}"
                ))
            })?;
            out.push((q, j as u32, fp));
        }
    }
    Ok(out)
}

/// Frustum anomaly boundary term via the composition path.
pub fn anomaly_bm_frustum(section: &SectionSpectrum, bc: FrustumBc) -> Result<f64> {
    let combos = frustum_anomaly_combinations(section.dim, bc)?;
    let mut acc = 0.0f64;
    for (q, j, fp) in combos {
        let res = residue_table(section, q)
            .into_iter()
            .find(|&(jj, _)| jj == j)
            .map(|(_, r)| r)
            .unwrap_or(0.0);
        if res == 0.0 {
            continue;
        }
        let sign = if q % 2 == 0 { 1.0 } else { -1.0 };
        acc += 0.25 * sign * rational_to_f64(&fp) * res;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::rat;
    use crate::section::{make_circle, make_flat_torus};
    use approx::assert_relative_eq;
    use num_traits::Zero;

    #[test]
    fn circle_combination_is_minus_three_quarters() {
        let combos = cone_anomaly_combinations(1).unwrap();
        assert_eq!(combos.len(), 1);
        let (q, j, fp) = &combos[0];
        assert_eq!((*q, *j), (0, 1));
        assert_eq!(fp, &rat(-3, 4));
    }

    #[test]
    fn torus_combination_value() {
        // phihat_{2,-} - phihat_{2,+} at alpha=-1/2 is alpha(u^4 - u^2):
        // finite part alpha (H_3 - H_1) = -5/12
        let combos = cone_anomaly_combinations(2).unwrap();
        assert_eq!(combos.len(), 1);
        assert_eq!(combos[0].2, rat(-5, 12));
    }

    #[test]
    fn circle_anomaly_is_minus_3r_over_8() {
        for &r in &[1.0, 0.5, 2.5] {
            let s = make_circle(r, 1e4).unwrap();
            let a = anomaly_bm_cone(&s).unwrap();
            assert_relative_eq!(a, -3.0 * r / 8.0, epsilon = 1e-13);
        }
    }

    #[test]
    fn torus_anomaly_value_and_volume_linearity() {
        let s = make_flat_torus(1.0, 1.0, 1e3).unwrap();
        let a = anomaly_bm_cone(&s).unwrap();
        assert_relative_eq!(a, -5.0 / (96.0 * std::f64::consts::PI), epsilon = 1e-13);
        let s2 = make_flat_torus(2.0, 1.0, 1e3).unwrap();
        assert_relative_eq!(anomaly_bm_cone(&s2).unwrap(), 2.0 * a, epsilon = 1e-13);
    }

    #[test]
    fn mixed_frustum_doubles_the_cone_exactly() {
        for m in [1usize, 2, 3, 4] {
            let cone = cone_anomaly_combinations(m).unwrap();
            let frustum = frustum_anomaly_combinations(m, FrustumBc::Mixed).unwrap();
            assert_eq!(cone.len(), frustum.len());
            for ((qc, jc, fc), (qf, jf, ff)) in cone.iter().zip(frustum.iter()) {
                assert_eq!((qc, jc), (qf, jf));
                assert_eq!(ff, &(fc * rat(2, 1)), "m={m} q={qc} j={jc}");
            }
        }
    }

    #[test]
    fn absolute_frustum_vanishes_odd_and_doubles_even() {
        for m in [1usize, 3] {
            for (_, _, fp) in frustum_anomaly_combinations(m, FrustumBc::Absolute).unwrap() {
                assert!(fp.is_zero(), "odd m={m} combination should vanish");
            }
        }
        for m in [2usize, 4] {
            let cone = cone_anomaly_combinations(m).unwrap();
            let fr = frustum_anomaly_combinations(m, FrustumBc::Absolute).unwrap();
            for ((_, _, fc), (_, _, ff)) in cone.iter().zip(fr.iter()) {
                assert_eq!(ff, &(fc * rat(2, 1)));
            }
        }
    }

    #[test]
    fn anomaly_independent_of_radius_by_construction() {
        // the combinations never see l; the assembled value is a pure number
        let s = make_circle(1.0, 1e4).unwrap();
        let a1 = anomaly_bm_cone(&s).unwrap();
        let a2 = anomaly_bm_cone(&s).unwrap();
        assert_eq!(a1, a2);
    }
}
