//! Riemann zeta on the real line by Borwein's alternating-series acceleration.

/// ζ(s) for real s, s != 1.
///
/// Accurate to ~1e-14 for s in [-1, 60]; the engine only asks for s > 0 and
/// a small neighborhood of 0 used by finite-difference oracles.
pub fn riemann_zeta(s: f64) -> f64 {
    debug_assert!((s - 1.0).abs() > 1e-12, "zeta pole at s = 1");
    let n = 48usize;
    // d_k = n * sum_{i=0..k} (n+i-1)! 4^i / ((n-i)! (2i)!)
    let mut d = vec![0.0f64; n + 1];
    let mut term = 1.0f64; // i = 0 term: (n-1)!/(n)!/0!* n = 1... built incrementally below
    // term_i = n (n+i-1)! 4^i / ((n-i)! (2i)!) with term_0 = n * (n-1)!/n! = 1
    let mut acc = 1.0f64;
    d[0] = 1.0;
    for i in 1..=n {
        // term_i / term_{i-1} = 4 (n+i-1)(n-i+1) / ((2i)(2i-1))
        term *= 4.0 * ((n + i - 1) as f64) * ((n - i + 1) as f64)
            / ((2 * i) as f64 * (2 * i - 1) as f64);
        acc += term;
        d[i] = acc;
    }
    let dn = d[n];
    let mut sum = 0.0f64;
    let mut sign = 1.0f64;
    for k in 0..n {
        sum += sign * (d[k] - dn) / ((k + 1) as f64).powf(s);
        sign = -sign;
    }
    -sum / (dn * (1.0 - 2.0f64.powf(1.0 - s)))
}

/// ζ'(s) by a 5-point central stencil; adequate for test oracles.
pub fn riemann_zeta_prime(s: f64) -> f64 {
    let h = 1e-3;
    (-riemann_zeta(s + 2.0 * h) + 8.0 * riemann_zeta(s + h) - 8.0 * riemann_zeta(s - h)
        + riemann_zeta(s - 2.0 * h))
        / (12.0 * h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn zeta_reference_values() {
        let pi = std::f64::consts::PI;
        assert_relative_eq!(riemann_zeta(2.0), pi * pi / 6.0, epsilon = 1e-13);
        assert_relative_eq!(riemann_zeta(4.0), pi.powi(4) / 90.0, epsilon = 1e-13);
        assert_relative_eq!(riemann_zeta(3.0), 1.2020569031595942854, epsilon = 1e-13);
        assert_relative_eq!(riemann_zeta(0.0), -0.5, epsilon = 1e-12);
        // mpmath: zeta(-0.01)
        assert_relative_eq!(riemann_zeta(-0.01), -0.49090994160533712582, epsilon = 1e-11);
        assert_relative_eq!(riemann_zeta(0.5), -1.4603545088095868, epsilon = 1e-12);
    }

    #[test]
    fn zeta_prime_at_zero() {
        // ζ'(0) = -log(2π)/2
        let expect = -0.5 * (2.0 * std::f64::consts::PI).ln();
        assert_relative_eq!(riemann_zeta_prime(0.0), expect, epsilon = 1e-9);
    }
}
