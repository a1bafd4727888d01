//! Sparse bivariate rational polynomials, used to verify the two-scale
//! composition of the frustum expansion coefficients as an exact polynomial
//! identity (the two variables are the uniform scales of the two radii).

use num_rational::BigRational;
use num_traits::Zero;
use std::collections::BTreeMap;

use crate::exact::poly::RationalPoly;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RationalPoly2 {
    terms: BTreeMap<(u32, u32), BigRational>,
}

impl RationalPoly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Embed a univariate polynomial in the first or second variable.
    pub fn embed(p: &RationalPoly, var: usize) -> Self {
        let mut terms = BTreeMap::new();
        for (d, c) in p.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let key = if var == 0 { (d as u32, 0) } else { (0, d as u32) };
            terms.insert(key, c.clone());
        }
        Self { terms }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (k, v) in &rhs.terms {
            let e = terms.entry(*k).or_insert_with(BigRational::zero);
            *e += v;
            if e.is_zero() {
                terms.remove(k);
            }
        }
        Self { terms }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(&BigRational::from_integer((-1).into())))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut terms: BTreeMap<(u32, u32), BigRational> = BTreeMap::new();
        for ((a1, a2), ca) in &self.terms {
            for ((b1, b2), cb) in &rhs.terms {
                let key = (a1 + b1, a2 + b2);
                let e = terms.entry(key).or_insert_with(BigRational::zero);
                *e += ca * cb;
            }
        }
        terms.retain(|_, v| !v.is_zero());
        Self { terms }
    }

    /// True when no monomial mixes the two variables.
    pub fn is_separated(&self) -> bool {
        self.terms.keys().all(|&(a, b)| a == 0 || b == 0)
    }
}

/// log(1 + sum_k A_k t^k) for bivariate coefficients.
pub fn log_compose2(a: &[RationalPoly2]) -> Vec<RationalPoly2> {
    let jmax = a.len();
    let mut f: Vec<RationalPoly2> = Vec::with_capacity(jmax);
    for j in 1..=jmax {
        let mut acc = a[j - 1].clone();
        for i in 1..j {
            let w = BigRational::new(
                (-((j - i) as i64)).into(),
                (j as i64).into(),
            );
            acc = acc.add(&a[i - 1].mul(&f[j - i - 1]).scale(&w));
        }
        f.push(acc);
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::rat;

    #[test]
    fn embed_and_multiply() {
        let p = RationalPoly::from_coeffs(vec![rat(1, 1), rat(2, 1)]);
        let q = RationalPoly::from_coeffs(vec![rat(0, 1), rat(3, 1)]);
        let a = RationalPoly2::embed(&p, 0);
        let b = RationalPoly2::embed(&q, 1);
        let prod = a.mul(&b);
        assert!(!prod.is_separated());
        assert!(prod.sub(&prod).is_zero());
    }
}
