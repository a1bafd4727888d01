//! Gamma-function kernels: log-gamma, signed gamma, and the upper incomplete
//! gamma function for real (possibly negative) order.

use crate::error::{Result, TorsionError};

/// Lanczos coefficients (g = 7, n = 9).
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0, "ln_gamma needs a positive argument, got {x}");
    if x < 0.5 {
        // reflection: Γ(x)Γ(1-x) = π / sin(πx)
        let pi = std::f64::consts::PI;
        return (pi / (pi * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut a = LANCZOS[0];
    let t = x + 7.5;
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
}

/// Γ(x) for real x off the nonpositive integers, with the correct sign.
pub fn gamma(x: f64) -> f64 {
    if x > 0.0 {
        ln_gamma(x).exp()
    } else {
        let (sign, ln) = ln_gamma_signed(x);
        sign * ln.exp()
    }
}

/// (sign of Γ(x), ln |Γ(x)|) for real x off the nonpositive integers.
pub fn ln_gamma_signed(x: f64) -> (f64, f64) {
    if x > 0.0 {
        return (1.0, ln_gamma(x));
    }
    // Γ(x) = π / (sin(πx) Γ(1-x))
    let pi = std::f64::consts::PI;
    let s = (pi * x).sin();
    let sign = if s > 0.0 { 1.0 } else { -1.0 };
    (sign, pi.ln() - s.abs().ln() - ln_gamma(1.0 - x))
}

const GAMMA_EPS: f64 = 1e-16;
const GAMMA_MAXIT: usize = 500;

/// Regularized lower incomplete gamma P(a, x) by series, for x < a + 1, a > 0.
fn gammp_series(a: f64, x: f64) -> f64 {
    let mut ap = a;
    let mut sum = 1.0 / a;
    let mut del = sum;
    for _ in 0..GAMMA_MAXIT {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if del.abs() < sum.abs() * GAMMA_EPS {
            break;
        }
    }
    sum * (-x + a * x.ln() - ln_gamma(a)).exp()
}

/// Regularized upper incomplete gamma Q(a, x) by continued fraction, for x >= a + 1, a > 0.
fn gammq_cf(a: f64, x: f64) -> f64 {
    let fpmin = f64::MIN_POSITIVE / GAMMA_EPS;
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / fpmin;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..GAMMA_MAXIT {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < fpmin {
            d = fpmin;
        }
        c = b + an / c;
        if c.abs() < fpmin {
            c = fpmin;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < GAMMA_EPS {
            break;
        }
    }
    (-x + a * x.ln() - ln_gamma(a)).exp() * h
}

/// Upper incomplete gamma Γ(a, x) for real a (any sign) and x > 0.
///
/// Negative orders are reached by downward recurrence
/// Γ(a-1, x) = (Γ(a, x) - x^(a-1) e^(-x)) / (a-1) from a seed order in (0, 1].
pub fn upper_gamma(a: f64, x: f64) -> Result<f64> {
    if x <= 0.0 {
        return Err(TorsionError::Domain(format!(
            "upper incomplete gamma needs x > 0, got {x}"
        )));
    }
    if a > 0.0 {
        let g = ln_gamma(a).exp();
        return Ok(if x < a + 1.0 {
            g * (1.0 - gammp_series(a, x))
        } else {
            g * gammq_cf(a, x)
        });
    }
    // a <= 0: descend from a0 = a + k in (0, 1].
    let k = (1.0 - a).floor() as i64;
    let a0 = a + k as f64;
    if a0 <= 0.0 || (a - a.round()).abs() < 1e-10 {
        return Err(TorsionError::Domain(format!(
            "upper incomplete gamma at nonpositive integer-like order {a}"
        )));
    }
    let mut g = upper_gamma(a0, x)?;
    let mut b = a0;
    for _ in 0..k {
        b -= 1.0;
        g = (g - (b * x.ln() - x).exp()) / b;
    }
    Ok(g)
}
