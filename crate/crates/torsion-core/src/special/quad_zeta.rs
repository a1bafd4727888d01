//! Closed-form zeta invariants of Bessel-zero sequences.
//!
//! For l, q > 0 let z(s, nu, q, l) = sum_k (j_{nu,k}^2/l^2 + q^2)^{-s}.  The
//! value and derivative at s = 0 have elementary closed forms; the q -> 0
//! limit is taken explicitly.  The companion table covers the sequences built
//! from zeros of Y_n (integer n), which regularize the non-square-integrable
//! modes.

use crate::error::{Result, TorsionError};
use crate::special::bessel::bessel_i;
use crate::special::gamma::ln_gamma;
use num_bigint::BigInt;
use num_rational::BigRational;

use std::f64::consts::PI;

/// H_k = 1 + 1/2 + ... + 1/k as an exact rational (H_0 = 0).
pub fn harmonic_number(k: u32) -> BigRational {
    let mut h = BigRational::from_integer(BigInt::from(0));
    for i in 1..=k {
        h += BigRational::new(BigInt::from(1), BigInt::from(i));
    }
    h
}

/// z(0, nu, q, l) = -(nu + 1/2)/2, independent of q and l.
pub fn quad_bessel_zeta0(nu: f64) -> f64 {
    -0.5 * (nu + 0.5)
}

/// z'(0, nu, q, l).
///
/// For q > 0 this is -log( sqrt(2 pi l) I_nu(l q) / q^nu ); at q = 0 it
/// degenerates to -log( sqrt(pi) l^(nu+1/2) / (2^(nu-1/2) Gamma(nu+1)) ).
pub fn quad_bessel_zeta_prime0(nu: f64, q: f64, l: f64) -> Result<f64> {
    if l <= 0.0 {
        return Err(TorsionError::Domain(format!("need l > 0, got {l}")));
    }
    if q < 0.0 {
        return Err(TorsionError::Domain(format!("need q >= 0, got {q}")));
    }
    if q == 0.0 {
        if nu <= -1.0 {
            return Err(TorsionError::Domain(format!(
                "closed form needs nu > -1, got {nu}"
            )));
        }
        return Ok(-(0.5 * PI.ln() + (nu + 0.5) * l.ln() - (nu - 0.5) * 2.0f64.ln()
            - ln_gamma(nu + 1.0)));
    }
    let i = bessel_i(nu, l * q)?;
    Ok(-(0.5 * (2.0 * PI * l).ln() + i.ln() - nu * q.ln()))
}

/// zeta(0) for the squared-zero sequence of Y_n, integer n >= 1: (2n - 1)/4.
pub fn y_zero_zeta0(n: u32) -> f64 {
    if n == 0 {
        // Y_0 zeros: same leading counting as n >= 1 with the log-modified
        // small-argument normalization; the value matches the n -> 0 row.
        return -0.25;
    }
    (2.0 * n as f64 - 1.0) / 4.0
}

/// zeta'(0) for the squared-zero sequence of Y_n, integer n >= 0.
pub fn y_zero_zeta_prime0(n: u32) -> f64 {
    if n == 0 {
        // derived from the product representation of Y_0 on the imaginary axis
        return 0.5 * (PI / 2.0).ln() - 2.0f64.ln();
    }
    -((n as f64 + 0.5) * 2.0f64.ln() + ln_gamma(n as f64) - 0.5 * PI.ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::zeta::riemann_zeta;
    use approx::assert_relative_eq;
    use num_traits::ToPrimitive;

    #[test]
    fn harmonic_numbers_exact() {
        assert_eq!(harmonic_number(0), BigRational::from_integer(0.into()));
        assert_eq!(
            harmonic_number(2),
            BigRational::new(3.into(), 2.into())
        );
        assert_eq!(
            harmonic_number(5),
            BigRational::new(137.into(), 60.into())
        );
    }

    #[test]
    fn zeta0_values() {
        assert_relative_eq!(quad_bessel_zeta0(0.5), -0.5, epsilon = 1e-15);
        assert_relative_eq!(quad_bessel_zeta0(1.0), -0.75, epsilon = 1e-15);
        assert_relative_eq!(quad_bessel_zeta0(1.5), -1.0, epsilon = 1e-15);
    }

    #[test]
    fn zeta_prime_half_integer_equals_riemann_route() {
        // j_{1/2,k} = k pi, so z(s,1/2,0,1) = pi^{-2s} zeta_R(2s); compare the
        // closed form against a stencil derivative of that composite.
        let closed = quad_bessel_zeta_prime0(0.5, 0.0, 1.0).unwrap();
        assert_relative_eq!(closed, -(2.0f64.ln()), epsilon = 1e-14);
        let f = |s: f64| PI.powf(-2.0 * s) * riemann_zeta(2.0 * s);
        let h = 1e-3;
        let oracle =
            (-f(2.0 * h) + 8.0 * f(h) - 8.0 * f(-h) + f(-2.0 * h)) / (12.0 * h);
        assert_relative_eq!(closed, oracle, epsilon = 1e-10);
    }

    #[test]
    fn zeta_prime_shifted_matches_binomial_series() {
        // independent route: z'(0,1/2,q,l) via the binomial expansion onto
        // Riemann zeta values, valid for q < pi/l
        let (q, l) = (0.7, 1.0);
        let a = PI / l;
        let mut oracle = a.ln() - (2.0 * PI).ln();
        let mut j = 1u32;
        loop {
            let term = (if j % 2 == 0 { 1.0 } else { -1.0 }) / j as f64
                * (q / a).powi(2 * j as i32)
                * riemann_zeta(2.0 * j as f64);
            oracle += term;
            if term.abs() < 1e-16 || j > 200 {
                break;
            }
            j += 1;
        }
        let closed = quad_bessel_zeta_prime0(0.5, q, l).unwrap();
        assert_relative_eq!(closed, oracle, epsilon = 1e-12);
    }

    #[test]
    fn q_to_zero_limit_is_continuous() {
        let at_zero = quad_bessel_zeta_prime0(1.25, 0.0, 2.0).unwrap();
        let near_zero = quad_bessel_zeta_prime0(1.25, 1e-8, 2.0).unwrap();
        assert_relative_eq!(at_zero, near_zero, epsilon = 1e-7);
    }

    #[test]
    fn y_zero_zeta_consistency() {
        // relation used by the negative-torsion harmonic block:
        // z'_{+}(0) = -z'_{-}(0) - log 2 + log n at integer order n >= 2
        for n in 2..6u32 {
            let zminus = quad_bessel_zeta_prime0(n as f64, 0.0, 1.0).unwrap();
            let want = -zminus - 2.0f64.ln() + (n as f64).ln();
            assert_relative_eq!(y_zero_zeta_prime0(n), want, epsilon = 1e-12);
        }
        let h4: f64 = harmonic_number(4).to_f64().unwrap();
        assert_relative_eq!(h4, 25.0 / 12.0, epsilon = 1e-15);
    }
}
