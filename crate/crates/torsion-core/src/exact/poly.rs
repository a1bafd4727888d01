//! Dense univariate polynomials with exact rational coefficients.
//!
//! The variable is u = 1/sqrt(1 - lambda), the uniform-asymptotic scale; a
//! degree-0 coefficient stores the constant terms that some expansion
//! coefficients carry.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Default)]
pub struct RationalPoly {
    /// coeffs[d] multiplies u^d; trailing zeros are trimmed.
    coeffs: Vec<BigRational>,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl RationalPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Self { coeffs: vec![c] };
        p.trim();
        p
    }

    /// c * u^d
    pub fn monomial(c: BigRational, d: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); d + 1];
        coeffs[d] = c;
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Smallest degree with a nonzero coefficient (None for the zero polynomial).
    pub fn min_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn coeff(&self, d: usize) -> BigRational {
        self.coeffs.get(d).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, d: usize, c: BigRational) {
        if d >= self.coeffs.len() {
            self.coeffs.resize(d + 1, BigRational::zero());
        }
        self.coeffs[d] = c;
        self.trim();
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by u^k.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigRational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::from_coeffs(coeffs)
    }

    /// d/du.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(d, c)| c * BigRational::from_integer(BigInt::from(d)))
                .collect(),
        )
    }

    /// Antiderivative with zero constant term.
    pub fn integral(&self) -> Self {
        let mut coeffs = vec![BigRational::zero()];
        for (d, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c / BigRational::from_integer(BigInt::from(d + 1)));
        }
        Self::from_coeffs(coeffs)
    }

    /// Exact value at u = 1 (i.e. lambda = 0): the sum of all coefficients.
    pub fn eval_at_one(&self) -> BigRational {
        self.coeffs.iter().fold(BigRational::zero(), |a, c| a + c)
    }

    /// Floating-point evaluation.
    pub fn eval_f64(&self, u: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * u + rational_to_f64(c);
        }
        acc
    }

    /// True when every nonzero monomial degree has the parity of `parity`.
    pub fn has_pure_parity(&self, parity: usize) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(d, c)| c.is_zero() || d % 2 == parity % 2)
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    // split to avoid overflow of numerator/denominator conversion
    let n = r.numer();
    let d = r.denom();
    let nf = big_to_f64(n);
    let df = big_to_f64(d);
    if nf.is_finite() && df.is_finite() && df != 0.0 {
        nf / df
    } else {
        // fall back through a scaled route for very large entries
        let bits = (n.bits().max(d.bits()) as i64 - 900).max(0) as u64;
        let ns = big_to_f64(&(n >> bits));
        let ds = big_to_f64(&(d >> bits));
        ns / ds
    }
}

fn big_to_f64(x: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

impl Add for &RationalPoly {
    type Output = RationalPoly;
    fn add(self, rhs: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for d in 0..n {
            coeffs.push(self.coeff(d) + rhs.coeff(d));
        }
        RationalPoly::from_coeffs(coeffs)
    }
}

impl Sub for &RationalPoly {
    type Output = RationalPoly;
    fn sub(self, rhs: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for d in 0..n {
            coeffs.push(self.coeff(d) - rhs.coeff(d));
        }
        RationalPoly::from_coeffs(coeffs)
    }
}

impl Mul for &RationalPoly {
    type Output = RationalPoly;
    fn mul(self, rhs: &RationalPoly) -> RationalPoly {
        if self.is_zero() || rhs.is_zero() {
            return RationalPoly::zero();
        }
        let mut coeffs =
            vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += a * b;
            }
        }
        RationalPoly::from_coeffs(coeffs)
    }
}

impl Neg for &RationalPoly {
    type Output = RationalPoly;
    fn neg(self) -> RationalPoly {
        RationalPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl AddAssign<&RationalPoly> for RationalPoly {
    fn add_assign(&mut self, rhs: &RationalPoly) {
        *self = &*self + rhs;
    }
}

impl fmt::Debug for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(d, c)| match d {
                0 => format!("{c}"),
                1 => format!("{c}*u"),
                _ => format!("{c}*u^{d}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_roundtrip() {
        let p = RationalPoly::from_coeffs(vec![rat(1, 2), rat(0, 1), rat(-3, 4)]);
        let q = RationalPoly::monomial(rat(2, 1), 1);
        let prod = &p * &q;
        assert_eq!(prod.coeff(1), rat(1, 1));
        assert_eq!(prod.coeff(3), rat(-3, 2));
        assert_eq!(p.derivative().integral().coeff(2), p.coeff(2));
        assert_eq!((&p - &p).is_zero(), true);
    }

    #[test]
    fn eval_consistency() {
        let p = RationalPoly::from_coeffs(vec![rat(1, 3), rat(1, 1), rat(2, 5)]);
        let s = p.eval_at_one();
        assert_eq!(s, rat(26, 15));
        assert!((p.eval_f64(1.0) - 26.0 / 15.0).abs() < 1e-15);
    }
}
