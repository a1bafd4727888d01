//! Closed-form torsion assembly: norm factors, determinant-line ratios, the
//! spectral anomaly term, the torsion reports for cone and frustum, the
//! negative torsion, and the collapse-limit experiment.

pub mod anomaly;
pub mod limit;
pub mod torsion;

use crate::error::{Result, TorsionError};
use crate::section::SectionSpectrum;
use crate::spectra::Geometry;
use serde::Serialize;

pub use anomaly::{
    anomaly_bm_cone, anomaly_bm_frustum, cone_anomaly_combinations, frustum_anomaly_combinations,
};
pub use limit::{limit_experiment, LimitReport, LimitRow};
pub use torsion::{negative_torsion_cone, torsion_cone, torsion_frustum};

/// gamma_q = l^{m - 2q + 1} / (m - 2q + 1), the squared norm of the constant
/// extension of a harmonic q-form to the cone.
pub fn norm_factor_cone(m: usize, q: usize, l: f64) -> Result<f64> {
    let e = m as i64 - 2 * q as i64 + 1;
    if e <= 0 {
        return Err(TorsionError::Domain(format!(
            "cone norm factor needs m - 2q + 1 > 0, got {e}"
        )));
    }
    Ok(l.powi(e as i32) / e as f64)
}

/// Gamma_q = (l2^{m+1-2q} - l1^{m+1-2q})/(m+1-2q), with the logarithmic
/// branch ln(l2/l1) exactly at m + 1 - 2q = 0.
pub fn norm_factor_frustum(m: usize, q: usize, l1: f64, l2: f64) -> Result<f64> {
    if !(l1 > 0.0 && l1 < l2) {
        return Err(TorsionError::Geometry(format!(
            "frustum needs 0 < l1 < l2, got {l1}, {l2}"
        )));
    }
    let e = m as i64 + 1 - 2 * q as i64;
    if e == 0 {
        Ok((l2 / l1).ln())
    } else {
        Ok((l2.powi(e as i32) - l1.powi(e as i32)) / e as f64)
    }
}

/// log of the determinant-line ratio for the cone with absolute and (in even
/// dimensions) ideal boundary conditions: the middle degree enters with the
/// quarter power gamma_p^{(-1)^p r_p / 4}.
pub fn det_ratio_cone_ideal(section: &SectionSpectrum, l: f64) -> Result<f64> {
    let m = section.dim;
    let mut acc = 0.0;
    let top = (m - 1) / 2; // [(m-1)/2]
    for q in 0..=top {
        let sign = if q % 2 == 0 { 1.0 } else { -1.0 };
        acc += 0.5 * sign * section.harmonic_ranks[q] as f64 * norm_factor_cone(m, q, l)?.ln();
    }
    if m % 2 == 0 {
        let p = m / 2;
        let rp = section.harmonic_ranks[p];
        if rp % 2 != 0 {
            return Err(TorsionError::OddMiddleRank(rp));
        }
        let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
        acc += 0.25 * sign * rp as f64 * norm_factor_cone(m, p, l)?.ln();
    }
    Ok(acc)
}

/// log of the determinant-line ratio for the frustum with absolute BC:
/// prod_q Gamma_q^{(-1)^q r_q / 2}.
pub fn det_ratio_frustum_abs(section: &SectionSpectrum, l1: f64, l2: f64) -> Result<f64> {
    let m = section.dim;
    let mut acc = 0.0;
    for q in 0..=m {
        let sign = if q % 2 == 0 { 1.0 } else { -1.0 };
        acc += 0.5
            * sign
            * section.harmonic_ranks[q] as f64
            * norm_factor_frustum(m, q, l1, l2)?.ln();
    }
    Ok(acc)
}

/// ln (2k-1)!! for n = 2k-1 >= -1 odd ((-1)!! = 1).
pub fn ln_odd_double_factorial(n: i64) -> f64 {
    let mut acc = 0.0;
    let mut i = 1i64;
    while i <= n {
        acc += (i as f64).ln();
        i += 2;
    }
    acc
}

/// Decomposed torsion value.  The total is
/// log_l_coefficient * log_geometry + the sum of the remaining parts.
#[derive(Debug, Clone, Serialize)]
pub struct TorsionReport {
    pub geometry: Geometry,
    pub bc: String,
    pub log_l_coefficient: f64,
    /// ln l for cones; 0 for frusta (scale dependence lives in det_ratio_term).
    pub log_geometry: f64,
    pub global_term: f64,
    pub det_ratio_term: f64,
    pub euler_term: f64,
    pub anomaly_term: f64,
    pub b1_term: f64,
    pub b2_term: f64,
    pub notes: Vec<String>,
}

impl TorsionReport {
    pub fn total(&self) -> f64 {
        self.log_l_coefficient * self.log_geometry
            + self.global_term
            + self.det_ratio_term
            + self.euler_term
            + self.anomaly_term
            + self.b1_term
            + self.b2_term
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "geometry": self.geometry,
            "bc": self.bc,
            "parts": {
                "log_l_coeff": self.log_l_coefficient,
                "global": self.global_term,
                "det_ratio": self.det_ratio_term,
                "euler": self.euler_term,
                "anomaly": self.anomaly_term,
                "b1": self.b1_term,
                "b2": self.b2_term,
            },
            "total": self.total(),
            "notes": self.notes,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::section::{make_circle, make_flat_torus};
    use approx::assert_relative_eq;

    #[test]
    fn norm_factor_examples() {
        // m=1, q=0, l=1: int_0^1 x dx = 1/2
        assert_relative_eq!(norm_factor_cone(1, 0, 1.0).unwrap(), 0.5, epsilon = 1e-15);
        // m=1, q=1: logarithmic branch, Gamma_1 = ln(l2/l1)
        assert_relative_eq!(
            norm_factor_frustum(1, 1, 1.0, std::f64::consts::E).unwrap(),
            1.0,
            epsilon = 1e-15
        );
        // l1 -> 0 limit reproduces gamma_q for q < (m+1)/2
        let g = norm_factor_cone(3, 1, 1.5).unwrap();
        let f = norm_factor_frustum(3, 1, 1e-8, 1.5).unwrap();
        assert_relative_eq!(f, g, max_relative = 1e-6);
        assert!(norm_factor_cone(1, 1, 1.0).is_err());
    }

    #[test]
    fn det_ratio_circle_cone() {
        // (1/2) log gamma_0 = (1/2) log(l^2/2)
        let s = make_circle(1.0, 100.0).unwrap();
        for &l in &[0.5, 1.0, 3.0] {
            let got = det_ratio_cone_ideal(&s, l).unwrap();
            assert_relative_eq!(got, 0.5 * (l * l / 2.0).ln(), epsilon = 1e-14);
        }
    }

    #[test]
    fn det_ratio_torus_frustum() {
        let s = make_flat_torus(1.0, 1.0, 500.0).unwrap();
        let (l1, l2) = (0.5f64, 2.0f64);
        let want = 0.5 * ((l2.powi(3) - l1.powi(3)) / 3.0).ln() - (l2 - l1).ln()
            + 0.5 * ((l2 - l1) / (l1 * l2)).ln();
        assert_relative_eq!(det_ratio_frustum_abs(&s, l1, l2).unwrap(), want, epsilon = 1e-13);
    }

    #[test]
    fn double_factorial_values() {
        assert_eq!(ln_odd_double_factorial(-1), 0.0);
        assert_eq!(ln_odd_double_factorial(1), 0.0);
        assert_relative_eq!(ln_odd_double_factorial(5), (15.0f64).ln(), epsilon = 1e-14);
    }
}
