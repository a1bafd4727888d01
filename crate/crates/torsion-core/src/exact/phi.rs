//! The residue/finite-part functional at s = 0.
//!
//! A coefficient polynomial sum_k c_k u^k maps to the meromorphic function
//! Phi(s) = sum_{k>=1} c_k Gamma(s+k)/(Gamma(k) s); the degree-0 coefficient
//! maps to 0.  Near s = 0,
//!   Gamma(s+k)/(Gamma(k) s) = 1/s + psi(k) + O(s),  psi(k) = H_{k-1} - gamma,
//! so the residue is sum c_k and, when that vanishes, the Euler constants
//! cancel and the finite part is the exact rational sum c_k H_{k-1}.
//!
//! Frustum combinations carry scale prefactors l^{2s}; they are evaluated as
//! grouped single-scale combinations whose per-scale residues must vanish
//! (otherwise a log l would survive, which the vanishing identities forbid).

use crate::error::{Result, TorsionError};
use crate::exact::poly::RationalPoly;
use crate::special::quad_zeta::harmonic_number;
use num_rational::BigRational;
use num_traits::Zero;

/// Residue and (when defined) exact finite part of Phi at s = 0.
#[derive(Debug, Clone, PartialEq)]
pub struct PhiValue {
    pub residue: BigRational,
    /// Present exactly when the residue vanishes.
    pub finite_part: Option<BigRational>,
}

/// Residue and finite part of the Phi functional applied to `poly`.
pub fn phi_at_zero(poly: &RationalPoly) -> PhiValue {
    let mut residue = BigRational::zero();
    let mut weighted = BigRational::zero();
    for (k, c) in poly.coeffs().iter().enumerate() {
        if k == 0 || c.is_zero() {
            continue;
        }
        residue += c;
        weighted += c * harmonic_number(k as u32 - 1);
    }
    if residue.is_zero() {
        PhiValue {
            residue,
            finite_part: Some(weighted),
        }
    } else {
        PhiValue {
            residue,
            finite_part: None,
        }
    }
}

/// Exact finite part, erroring when the residue is nonzero.
pub fn phi_finite_part(poly: &RationalPoly) -> Result<BigRational> {
    let v = phi_at_zero(poly);
    v.finite_part.ok_or_else(|| {
        TorsionError::NonzeroResidue(format!("{}", v.residue))
    })
}

/// Formal scale marker for the two frustum radii.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scale {
    L1,
    L2,
}

/// A combination `sum_i s_i * scale_i^{2s} * Phi[poly_i](s)` evaluated at s = 0.
#[derive(Debug, Clone, Default)]
pub struct ScaledPhiCombo {
    terms: Vec<(i64, Scale, RationalPoly)>,
}

impl ScaledPhiCombo {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, coeff: i64, scale: Scale, poly: RationalPoly) {
        self.terms.push((coeff, scale, poly));
    }

    /// Exact value at s = 0.  Each scale group must have vanishing residue;
    /// the l^{2s} factors then contribute nothing and the value is the sum of
    /// the per-group finite parts.
    pub fn value_at_zero(&self) -> Result<BigRational> {
        let mut total = BigRational::zero();
        for scale in [Scale::L1, Scale::L2] {
            let mut group = RationalPoly::zero();
            for (c, s, p) in &self.terms {
                if *s == scale {
                    group += &p.scale(&BigRational::from_integer((*c).into()));
                }
            }
            if group.is_zero() {
                continue;
            }
            total += phi_finite_part(&group)?;
        }
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::rat;

    #[test]
    fn residue_readoff() {
        let p = RationalPoly::monomial(rat(1, 1), 1);
        let v = phi_at_zero(&p);
        assert_eq!(v.residue, rat(1, 1));
        assert!(v.finite_part.is_none());
        assert!(phi_finite_part(&p).is_err());
    }

    #[test]
    fn finite_part_of_u_minus_u_cubed() {
        // (u - u^3)/2 -> residue 0, finite part H_0/2 - H_2/2 = -3/4
        let p = RationalPoly::from_coeffs(vec![rat(0, 1), rat(1, 2), rat(0, 1), rat(-1, 2)]);
        let v = phi_at_zero(&p);
        assert_eq!(v.residue, rat(0, 1));
        assert_eq!(v.finite_part.unwrap(), rat(-3, 4));
    }

    #[test]
    fn zero_maps_to_zero_and_constants_are_dropped() {
        let v = phi_at_zero(&RationalPoly::zero());
        assert_eq!(v.finite_part.unwrap(), rat(0, 1));
        // a pure degree-0 constant maps to 0
        let v = phi_at_zero(&RationalPoly::constant(rat(7, 3)));
        assert_eq!(v.residue, rat(0, 1));
        assert_eq!(v.finite_part.unwrap(), rat(0, 1));
    }

    #[test]
    fn scaled_combo_requires_per_scale_cancellation() {
        let u = RationalPoly::monomial(rat(1, 1), 1);
        let mut combo = ScaledPhiCombo::new();
        combo.push(1, Scale::L1, u.clone());
        combo.push(-1, Scale::L2, u.clone());
        // total residue vanishes but the per-scale residues do not
        assert!(combo.value_at_zero().is_err());

        let mut combo = ScaledPhiCombo::new();
        let p = RationalPoly::from_coeffs(vec![rat(0, 1), rat(1, 2), rat(0, 1), rat(-1, 2)]);
        combo.push(1, Scale::L1, p.clone());
        combo.push(2, Scale::L2, p);
        assert_eq!(combo.value_at_zero().unwrap(), rat(-9, 4));
    }
}
