//! Olver's uniform-asymptotic polynomials u_j, v_j and the derived
//! order-expansion coefficients U_j, V_j, W_{alpha,j}.
//!
//! The recursions are
//!   u_{j+1}(w) = w^2 (1 - w^2) u_j'(w) / 2 + (1/8) int_0^w (1 - 5 y^2) u_j(y) dy,
//!   v_{j+1}(w) = u_{j+1}(w) - w (1 - w^2) u_j(w) / 2 - w^2 (1 - w^2) u_j'(w),
//! with u_0 = v_0 = 1.  In the engine the variable is u = 1/sqrt(1 - lambda),
//! so U_j and V_j are the same polynomials read in u, and
//!   W_{alpha,j} = V_j + alpha u U_{j-1}.

use crate::exact::poly::{rat, RationalPoly};
use num_rational::BigRational;

/// Table of u_j, v_j up to a fixed order.
#[derive(Debug, Clone)]
pub struct OlverTable {
    u: Vec<RationalPoly>,
    v: Vec<RationalPoly>,
}

impl OlverTable {
    pub fn new(max_order: usize) -> Self {
        let mut u = Vec::with_capacity(max_order + 1);
        let mut v = Vec::with_capacity(max_order + 1);
        u.push(RationalPoly::one());
        v.push(RationalPoly::one());
        // w^2(1-w^2)/2 and (1-5w^2)/8 as fixed polynomials
        let half_w2_1mw2 = RationalPoly::from_coeffs(vec![
            rat(0, 1),
            rat(0, 1),
            rat(1, 2),
            rat(0, 1),
            rat(-1, 2),
        ]);
        let kernel = RationalPoly::from_coeffs(vec![rat(1, 8), rat(0, 1), rat(-5, 8)]);
        for j in 0..max_order {
            let du = u[j].derivative();
            let next_u = &(&half_w2_1mw2 * &du) + &(&kernel * &u[j]).integral();
            // v_{j+1} = u_{j+1} - w(1-w^2)u_j/2 - w^2(1-w^2)u_j'
            let w_1mw2_half = RationalPoly::from_coeffs(vec![
                rat(0, 1),
                rat(1, 2),
                rat(0, 1),
                rat(-1, 2),
            ]);
            let w2_1mw2 = RationalPoly::from_coeffs(vec![
                rat(0, 1),
                rat(0, 1),
                rat(1, 1),
                rat(0, 1),
                rat(-1, 1),
            ]);
            let next_v = &(&next_u - &(&w_1mw2_half * &u[j])) - &(&w2_1mw2 * &du);
            u.push(next_u);
            v.push(next_v);
        }
        Self { u, v }
    }

    pub fn max_order(&self) -> usize {
        self.u.len() - 1
    }

    pub fn u(&self, j: usize) -> &RationalPoly {
        &self.u[j]
    }

    pub fn v(&self, j: usize) -> &RationalPoly {
        &self.v[j]
    }

    /// W_{alpha,j} = V_j + alpha u U_{j-1}, j >= 1.
    pub fn w_coeff(&self, j: usize, alpha: &BigRational) -> RationalPoly {
        assert!(j >= 1, "W is defined for j >= 1");
        &self.v[j] + &self.u[j - 1].shift(1).scale(alpha)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn first_orders_match_hand_computation() {
        let t = OlverTable::new(3);
        assert_eq!(t.u(0), &RationalPoly::one());
        // u_1 = (3w - 5w^3)/24
        let u1 = RationalPoly::from_coeffs(vec![rat(0, 1), rat(3, 24), rat(0, 1), rat(-5, 24)]);
        assert_eq!(t.u(1), &u1);
        // v_1 = (-9w + 7w^3)/24
        let v1 = RationalPoly::from_coeffs(vec![rat(0, 1), rat(-9, 24), rat(0, 1), rat(7, 24)]);
        assert_eq!(t.v(1), &v1);
        // u_2 = (81w^2 - 462w^4 + 385w^6)/1152
        let u2 = RationalPoly::from_coeffs(vec![
            rat(0, 1),
            rat(0, 1),
            rat(81, 1152),
            rat(0, 1),
            rat(-462, 1152),
            rat(0, 1),
            rat(385, 1152),
        ]);
        assert_eq!(t.u(2), &u2);
    }

    #[test]
    fn degree_and_parity_bounds() {
        let t = OlverTable::new(10);
        for j in 0..=10 {
            assert_eq!(t.u(j).degree(), 3 * j);
            assert_eq!(t.v(j).degree(), 3 * j);
            assert!(t.u(j).has_pure_parity(j));
            assert!(t.v(j).has_pure_parity(j));
            if j >= 1 {
                assert!(t.u(j).min_degree().unwrap() >= j);
                assert!(t.v(j).min_degree().unwrap() >= j);
            }
        }
    }

    #[test]
    fn u_and_v_agree_at_one() {
        // V_j(0) = U_j(0) in the lambda variable, i.e. equal values at w = 1
        let t = OlverTable::new(8);
        for j in 0..=8 {
            assert_eq!(t.u(j).eval_at_one(), t.v(j).eval_at_one());
        }
    }

    #[test]
    fn w_parity_follows_j() {
        let t = OlverTable::new(6);
        let alpha = rat(3, 2);
        for j in 1..=6 {
            let w = t.w_coeff(j, &alpha);
            assert!(w.has_pure_parity(j));
            assert!(!w.is_zero());
        }
        // alpha = 0 reduces to V
        assert_eq!(t.w_coeff(2, &BigRational::zero()), t.v(2).clone());
    }
}
