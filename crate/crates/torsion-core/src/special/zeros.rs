//! Zero families for the cone and frustum spectra.
//!
//! Every family is enumerated by counted sign changes, never by an asymptotic
//! index formula alone.  Single-Bessel families are scanned with a step well
//! below the minimal zero gap; Robin-type families (c J + x J') are bracketed
//! by interlacing with the plain J zeros (the logarithmic derivative
//! x J'/J is strictly decreasing between consecutive J zeros, so each interval
//! carries exactly one Robin zero).  Frustum cross-product families are
//! scanned with a step below pi/(l2 - l1), the minimal asymptotic gap of the
//! radial Sturm-Liouville problem on [l1, l2].

use crate::error::{Result, TorsionError};
use crate::special::bessel::bessel_jy;

use std::f64::consts::PI;

/// Relative tolerance for polished roots.
pub const ROOT_TOL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZeroFamilyKind {
    /// Zeros of J_nu.
    J,
    /// Zeros of c J_nu(x) + x J'_nu(x).
    Jhat,
    /// Zeros of Y_nu.
    Y,
    /// Zeros of F-hat_{nu,c}(x; l1, l2): relative condition at l1, Robin at l2.
    FrustumMixed,
    /// Zeros of the Dirichlet cross product J_nu(l1 x) Y_nu(l2 x) - Y_nu(l1 x) J_nu(l2 x).
    FrustumUpsilon,
    /// Zeros of the Robin-Robin cross product (hats at both radii).
    FrustumUpsilonHat,
    /// Zeros of J_nu(l1 x) Y_{nu-1}(l2 x) - Y_nu(l1 x) J_{nu-1}(l2 x).
    FrustumF,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroFamily {
    pub kind: ZeroFamilyKind,
    pub order: f64,
    pub c: Option<f64>,
    pub l1: Option<f64>,
    pub l2: Option<f64>,
}

impl ZeroFamily {
    pub fn j(order: f64) -> Self {
        Self { kind: ZeroFamilyKind::J, order, c: None, l1: None, l2: None }
    }
    pub fn jhat(order: f64, c: f64) -> Self {
        Self { kind: ZeroFamilyKind::Jhat, order, c: Some(c), l1: None, l2: None }
    }
    pub fn y(order: f64) -> Self {
        Self { kind: ZeroFamilyKind::Y, order, c: None, l1: None, l2: None }
    }
    pub fn frustum_mixed(order: f64, c: f64, l1: f64, l2: f64) -> Self {
        Self { kind: ZeroFamilyKind::FrustumMixed, order, c: Some(c), l1: Some(l1), l2: Some(l2) }
    }
    pub fn upsilon(order: f64, l1: f64, l2: f64) -> Self {
        Self { kind: ZeroFamilyKind::FrustumUpsilon, order, c: None, l1: Some(l1), l2: Some(l2) }
    }
    pub fn upsilon_hat(order: f64, c: f64, l1: f64, l2: f64) -> Self {
        Self { kind: ZeroFamilyKind::FrustumUpsilonHat, order, c: Some(c), l1: Some(l1), l2: Some(l2) }
    }
    pub fn frustum_f(order: f64, l1: f64, l2: f64) -> Self {
        Self { kind: ZeroFamilyKind::FrustumF, order, c: None, l1: Some(l1), l2: Some(l2) }
    }

    fn validate(&self) -> Result<()> {
        use ZeroFamilyKind::*;
        match self.kind {
            J | Y => {
                if matches!(self.kind, J) && self.order <= -1.0 {
                    return Err(TorsionError::Domain(format!(
                        "J zero family needs order > -1, got {}",
                        self.order
                    )));
                }
                Ok(())
            }
            Jhat => {
                if self.order <= -1.0 {
                    return Err(TorsionError::Domain(format!(
                        "Jhat zero family needs order > -1, got {}",
                        self.order
                    )));
                }
                self.c.ok_or_else(|| TorsionError::Domain("Jhat needs a Robin constant".into()))?;
                Ok(())
            }
            FrustumMixed | FrustumUpsilonHat => {
                self.c.ok_or_else(|| TorsionError::Domain("frustum hat family needs c".into()))?;
                self.check_radii(matches!(self.kind, FrustumUpsilonHat))
            }
            FrustumUpsilon => self.check_radii(true),
            // mixed-order products take their radii in either order
            FrustumF => self.check_radii(false),
        }
    }

    fn check_radii(&self, ordered: bool) -> Result<()> {
        let (l1, l2) = (
            self.l1.ok_or_else(|| TorsionError::Geometry("missing l1".into()))?,
            self.l2.ok_or_else(|| TorsionError::Geometry("missing l2".into()))?,
        );
        if !(l1 > 0.0 && l2 > 0.0 && (l1 - l2).abs() > 0.0) {
            return Err(TorsionError::Geometry(format!(
                "need distinct positive radii, got l1={l1}, l2={l2}"
            )));
        }
        if ordered && l1 >= l2 {
            return Err(TorsionError::Geometry(format!(
                "need 0 < l1 < l2, got l1={l1}, l2={l2}"
            )));
        }
        Ok(())
    }

    /// Evaluate the defining function of the family at x > 0.
    pub fn eval(&self, x: f64) -> Result<f64> {
        use ZeroFamilyKind::*;
        let nu = self.order;
        match self.kind {
            J => Ok(bessel_jy(nu, x)?.0),
            Y => Ok(bessel_jy(nu, x)?.2),
            Jhat => {
                let c = self.c.unwrap();
                let (j, jp, _, _) = bessel_jy(nu, x)?;
                Ok(c * j + x * jp)
            }
            FrustumMixed => {
                let (c, l1, l2) = (self.c.unwrap(), self.l1.unwrap(), self.l2.unwrap());
                let (j1, _, y1, _) = bessel_jy(nu, l1 * x)?;
                let (j2, jp2, y2, yp2) = bessel_jy(nu, l2 * x)?;
                Ok(j1 * (c * y2 + l2 * x * yp2) - y1 * (c * j2 + l2 * x * jp2))
            }
            FrustumUpsilon => {
                let (l1, l2) = (self.l1.unwrap(), self.l2.unwrap());
                let (j1, _, y1, _) = bessel_jy(nu, l1 * x)?;
                let (j2, _, y2, _) = bessel_jy(nu, l2 * x)?;
                Ok(j1 * y2 - y1 * j2)
            }
            FrustumUpsilonHat => {
                let (c, l1, l2) = (self.c.unwrap(), self.l1.unwrap(), self.l2.unwrap());
                let (j1, jp1, y1, yp1) = bessel_jy(nu, l1 * x)?;
                let (j2, jp2, y2, yp2) = bessel_jy(nu, l2 * x)?;
                let hj1 = c * j1 + l1 * x * jp1;
                let hy1 = c * y1 + l1 * x * yp1;
                let hj2 = c * j2 + l2 * x * jp2;
                let hy2 = c * y2 + l2 * x * yp2;
                Ok(hj2 * hy1 - hy2 * hj1)
            }
            FrustumF => {
                let (l1, l2) = (self.l1.unwrap(), self.l2.unwrap());
                let (j1, _, y1, _) = bessel_jy(nu, l1 * x)?;
                let (j2m, _, y2m, _) = bessel_jy(nu - 1.0, l2 * x)?;
                Ok(j1 * y2m - y1 * j2m)
            }
        }
    }

    /// All zeros in (0, xmax], ascending, with guaranteed indexing.
    pub fn zeros_up_to(&self, xmax: f64) -> Result<Vec<f64>> {
        self.validate()?;
        use ZeroFamilyKind::*;
        match self.kind {
            J | Y => self.scan_zeros(self.single_bessel_start(), 1.2, xmax),
            Jhat => self.jhat_zeros(xmax),
            FrustumMixed | FrustumUpsilon | FrustumUpsilonHat | FrustumF => {
                let (l1, l2) = (self.l1.unwrap(), self.l2.unwrap());
                let step = 0.35 * PI / (l2 - l1).abs();
                // Robin conditions and mixed orders shift the lowest mode; the
                // order cushion keeps the scan start a provable zero-free zone
                let numin = if matches!(self.kind, FrustumUpsilon) {
                    self.order
                } else {
                    self.order - 2.0
                };
                let rmax = l1.max(l2);
                let start = (0.25 * (numin * numin - 0.25).max(0.0).sqrt() / rmax).max(1e-8 / rmax);
                self.scan_zeros(start, step, xmax)
            }
        }
    }

    /// k-th positive zero, k >= 1.
    pub fn zero(&self, k: usize) -> Result<f64> {
        if k == 0 {
            return Err(TorsionError::Domain("zero index starts at 1".into()));
        }
        self.validate()?;
        // grow the window until at least k zeros are found
        let spacing = match self.kind {
            ZeroFamilyKind::J | ZeroFamilyKind::Y | ZeroFamilyKind::Jhat => PI,
            _ => PI / (self.l2.unwrap() - self.l1.unwrap()),
        };
        let nu = self.order.abs();
        let mut xmax = nu + 2.0 * nu.cbrt() + spacing * (k as f64 + 2.0);
        for _ in 0..12 {
            let zs = self.zeros_up_to(xmax)?;
            if zs.len() >= k {
                return Ok(zs[k - 1]);
            }
            xmax *= 1.6;
        }
        Err(TorsionError::Bracketing {
            family: format!("{self:?}"),
            index: k,
            detail: "window growth exhausted".into(),
        })
    }

    /// No zero of J_nu or Y_nu lies below this point.
    fn single_bessel_start(&self) -> f64 {
        let nu = self.order;
        match self.kind {
            // j_{nu,1} > nu for nu >= 0; for nu in (-1,0) zeros can be tiny
            ZeroFamilyKind::J => {
                if nu > 0.0 {
                    0.99 * nu
                } else {
                    1e-9
                }
            }
            // y_{nu,1} > nu, and Y_nu < 0 below its first zero
            ZeroFamilyKind::Y => (0.5 * nu.abs()).max(1e-6),
            _ => unreachable!(),
        }
    }

    fn scan_zeros(&self, start: f64, step: f64, xmax: f64) -> Result<Vec<f64>> {
        let mut zeros = Vec::new();
        if xmax <= start {
            return Ok(zeros);
        }
        let mut x0 = start;
        let mut f0 = self.eval(x0)?;
        while x0 < xmax {
            let x1 = (x0 + step).min(xmax);
            let f1 = self.eval(x1)?;
            if f0 == 0.0 {
                zeros.push(x0);
            } else if f0 * f1 < 0.0 {
                zeros.push(self.refine(x0, x1, f0, f1)?);
            }
            if x1 >= xmax {
                break;
            }
            x0 = x1;
            f0 = f1;
        }
        Ok(zeros)
    }

    /// Robin family zeros via interlacing with the plain J zeros.
    fn jhat_zeros(&self, xmax: f64) -> Result<Vec<f64>> {
        let nu = self.order;
        let c = self.c.unwrap();
        let jfam = ZeroFamily::j(nu);
        // one J zero beyond the window closes the last bracket
        let mut jz = jfam.zeros_up_to(xmax + 2.0 * PI)?;
        if jz.is_empty() {
            jz = vec![jfam.zero(1)?];
        }
        let mut zeros = Vec::new();
        // pre-zero below j_{nu,1} iff c + nu > 0 (the logarithmic derivative
        // x J'/J decreases strictly from nu to -inf on (0, j_1)); it lies
        // above min(j_1/sqrt2, sqrt((nu+1)(nu+c))), which keeps the bracket
        // endpoint out of the underflow region of J_nu
        if c + nu > 1e-12 {
            let bound = (jz[0] / std::f64::consts::SQRT_2)
                .min(((nu + 1.0) * (nu + c)).max(0.0).sqrt());
            let mut lo = (0.999 * bound).max(1e-9).min(0.5 * jz[0]);
            let mut flo = self.eval(lo)?;
            // walk up out of a fully underflowed region if necessary
            while flo == 0.0 && lo < 0.9 * jz[0] {
                lo = (1.3 * lo).min(0.9 * jz[0]);
                flo = self.eval(lo)?;
            }
            let fhi = self.eval(jz[0])?;
            if flo * fhi < 0.0 {
                let z = self.refine(lo, jz[0], flo, fhi)?;
                if z <= xmax {
                    zeros.push(z);
                }
            } else {
                return Err(TorsionError::Bracketing {
                    family: format!("{self:?}"),
                    index: 1,
                    detail: "expected Robin pre-zero not bracketed".into(),
                });
            }
        }
        for w in jz.windows(2) {
            if w[0] > xmax {
                break;
            }
            let (flo, fhi) = (self.eval(w[0])?, self.eval(w[1])?);
            if flo * fhi >= 0.0 {
                return Err(TorsionError::Bracketing {
                    family: format!("{self:?}"),
                    index: zeros.len() + 1,
                    detail: format!("no sign change in J-zero interval ({}, {})", w[0], w[1]),
                });
            }
            let z = self.refine(w[0], w[1], flo, fhi)?;
            if z <= xmax {
                zeros.push(z);
            }
        }
        Ok(zeros)
    }

    /// Bisection to ROOT_TOL relative width.
    fn refine(&self, mut lo: f64, mut hi: f64, mut flo: f64, fhi: f64) -> Result<f64> {
        debug_assert!(flo * fhi < 0.0);
        let _ = fhi;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if (hi - lo) <= ROOT_TOL * mid.abs() {
                return Ok(mid);
            }
            let fm = self.eval(mid)?;
            if fm == 0.0 {
                return Ok(mid);
            }
            if flo * fm < 0.0 {
                hi = mid;
            } else {
                lo = mid;
                flo = fm;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn j_half_integer_zeros_are_multiples_of_pi() {
        let fam = ZeroFamily::j(0.5);
        for k in 1..=6 {
            assert_relative_eq!(fam.zero(k).unwrap(), k as f64 * PI, max_relative = 1e-12);
        }
        let fam = ZeroFamily::j(-0.5);
        for k in 1..=6 {
            assert_relative_eq!(fam.zero(k).unwrap(), (k as f64 - 0.5) * PI, max_relative = 1e-12);
        }
    }

    #[test]
    fn j0_zeros_reference() {
        let fam = ZeroFamily::j(0.0);
        assert_relative_eq!(fam.zero(1).unwrap(), 2.4048255576957727686, max_relative = 1e-12);
        assert_relative_eq!(fam.zero(5).unwrap(), 14.930917708487785948, max_relative = 1e-12);
    }

    #[test]
    fn j_large_order_zero() {
        let fam = ZeroFamily::j(10.0);
        assert_relative_eq!(fam.zero(3).unwrap(), 22.046985364697801872, max_relative = 1e-12);
    }

    #[test]
    fn jhat_reduces_to_shifted_j_for_half_integers() {
        // c = alpha, nu = |alpha| with alpha = 1/2: zeros of x J_{-1/2}, i.e. (k-1/2) pi
        let fam = ZeroFamily::jhat(0.5, 0.5);
        for k in 1..=5 {
            assert_relative_eq!(fam.zero(k).unwrap(), (k as f64 - 0.5) * PI, max_relative = 1e-11);
        }
        // alpha = -1/2: zeros of x J_{3/2}
        let fam = ZeroFamily::jhat(0.5, -0.5);
        let j32 = ZeroFamily::j(1.5);
        for k in 1..=5 {
            assert_relative_eq!(fam.zero(k).unwrap(), j32.zero(k).unwrap(), max_relative = 1e-11);
        }
    }

    #[test]
    fn jhat_with_zero_constant_gives_derivative_zeros() {
        // x J'_0(x) = -x J_1(x): first positive zero is j_{1,1}
        let fam = ZeroFamily::jhat(0.0, 0.0);
        assert_relative_eq!(fam.zero(1).unwrap(), 3.8317059702075123156, max_relative = 1e-12);
    }

    #[test]
    fn y_zeros_reference() {
        let fam = ZeroFamily::y(0.0);
        assert_relative_eq!(fam.zero(1).unwrap(), 0.89357696627916752158, max_relative = 1e-11);
        let fam = ZeroFamily::y(1.0);
        assert_relative_eq!(fam.zero(1).unwrap(), 2.1971413260310170351, max_relative = 1e-11);
    }

    #[test]
    fn upsilon_half_integer_closed_form() {
        // J/Y cross product of order 1/2 on [1, 2] has zeros k pi / (l2 - l1)
        let fam = ZeroFamily::upsilon(0.5, 1.0, 2.0);
        for k in 1..=4 {
            assert_relative_eq!(fam.zero(k).unwrap(), k as f64 * PI, max_relative = 1e-11);
        }
    }

    #[test]
    fn frustum_zeros_reference() {
        // mpmath scans for mu=0.8, c=0.3, l1=1, l2=2
        let fam = ZeroFamily::frustum_mixed(0.8, 0.3, 1.0, 2.0);
        let want = [1.55044899635555353, 4.7109041877751008, 7.8534464923333141, 10.9952666264926885];
        for (k, w) in want.iter().enumerate() {
            assert_relative_eq!(fam.zero(k + 1).unwrap(), *w, max_relative = 1e-10);
        }
        let fam = ZeroFamily::upsilon(0.8, 1.0, 2.0);
        let want = [3.17031421773821109, 6.29836646762493263, 9.43501972188783495];
        for (k, w) in want.iter().enumerate() {
            assert_relative_eq!(fam.zero(k + 1).unwrap(), *w, max_relative = 1e-10);
        }
    }

    #[test]
    fn zeros_interlace_and_increase() {
        for &nu in &[0.0, 0.37, 2.0, 7.3, 19.0] {
            let fam = ZeroFamily::j(nu);
            let zs = fam.zeros_up_to(nu + 60.0).unwrap();
            assert!(zs.len() > 5);
            for w in zs.windows(2) {
                assert!(w[1] > w[0]);
            }
            let residual = zs.iter().map(|&z| fam.eval(z).unwrap().abs()).fold(0.0, f64::max);
            assert!(residual < 1e-10, "max residual {residual}");
        }
    }

    #[test]
    fn frustum_f_small_argument_normalization() {
        // x F_nu(x; l1, l2) -> (2/pi) l2^(nu-1)/l1^nu as x -> 0
        for &nu in &[1.5, 2.5] {
            let (l1, l2) = (0.7, 1.9);
            let fam = ZeroFamily::frustum_f(nu, l1, l2);
            let x = 1e-6;
            let got = x * fam.eval(x).unwrap();
            let want = 2.0 / PI * l2.powf(nu - 1.0) / l1.powf(nu);
            assert_relative_eq!(got, want, max_relative = 1e-6);
        }
    }
}
