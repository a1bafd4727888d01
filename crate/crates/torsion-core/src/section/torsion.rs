//! Analytic torsion of the section itself.

use crate::error::{Result, TorsionError};
use crate::section::{SectionKind, SectionSpectrum};

/// log T(W, g).
///
/// Built-in circle: log(2 pi r), from zeta'(0) = -2 log(2 pi r) of the two
/// degree Laplacians.  Even-dimensional sections: 0 by Hodge duality.  File
/// sections must carry the value (odd dimensions cannot be derived from a
/// truncated list).
pub fn section_analytic_torsion(section: &SectionSpectrum) -> Result<f64> {
    match &section.kind {
        SectionKind::Circle { r } => Ok((2.0 * std::f64::consts::PI * r).ln()),
        SectionKind::Torus { .. } => Ok(0.0),
        SectionKind::Generic => {
            if let Some(t) = section.torsion_log_t {
                Ok(t)
            } else if section.dim % 2 == 0 {
                Ok(0.0)
            } else {
                Err(TorsionError::MissingSectionTorsion(format!(
                    "odd-dimensional section '{}' carries no torsion value",
                    section.label
                )))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::section::{make_circle, make_flat_torus};
    use crate::special::zeta::{riemann_zeta, riemann_zeta_prime};
    use approx::assert_relative_eq;

    #[test]
    fn circle_torsion_matches_zeta_derivative_oracle() {
        // zeta(s, Lap^1) = 2 r^{2s} zeta_R(2s); log T = -zeta'(0)/2 * ... the
        // assembled value is log(2 pi r).  Check against the numeric route.
        for &r in &[1.0, 2.0] {
            let s = make_circle(r, 100.0).unwrap();
            let got = section_analytic_torsion(&s).unwrap();
            let zp0 = 2.0 * (2.0 * r.ln() * riemann_zeta(0.0) + 2.0 * riemann_zeta_prime(0.0));
            assert_relative_eq!(got, -0.5 * zp0, epsilon = 1e-8);
            assert_relative_eq!(got, (2.0 * std::f64::consts::PI * r).ln(), epsilon = 1e-14);
        }
    }

    #[test]
    fn torus_torsion_vanishes() {
        let s = make_flat_torus(1.0, 2.0, 500.0).unwrap();
        assert_eq!(section_analytic_torsion(&s).unwrap(), 0.0);
    }

    #[test]
    fn generic_odd_without_value_errors() {
        let mut s = make_circle(1.0, 100.0).unwrap();
        s.kind = SectionKind::Generic;
        s.torsion_log_t = None;
        assert!(section_analytic_torsion(&s).is_err());
        s.torsion_log_t = Some(1.25);
        assert_eq!(section_analytic_torsion(&s).unwrap(), 1.25);
    }
}
