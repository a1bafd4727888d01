//! Heat-coefficient bookkeeping: coexact heat coefficients by the alternating
//! degree sum, zeta values at 0, and the residues of zeta(s, U_q) where
//! U_q = { m_cex : mu_{q,n} } and zeta(s, U_q) = zeta_cex(s/2, Lap^(q) + alpha_q^2).

use crate::section::{binomial, rational_to_f64_64, SectionSpectrum};
use crate::special::gamma::ln_gamma;

/// Coexact heat coefficients c_{q,h}, h = 0..=m: the alternating sum
/// c_{q,h} = (-1)^q sum_{k<=q} (-1)^k a_{k,h}, with the harmonic ranks
/// subtracted from the constant (h = m) entry.
pub fn coexact_heat_coeffs(section: &SectionSpectrum, q: usize) -> Vec<f64> {
    let m = section.dim;
    let mut c = vec![0.0f64; m + 1];
    if q > m {
        return c;
    }
    for h in 0..=m {
        let mut acc = 0.0;
        for k in 0..=q.min(m) {
            let a = section.heat_coeffs[k].get(h).copied().unwrap_or(0.0);
            let mut term = a;
            if h == m {
                term -= section.harmonic_ranks[k] as f64;
            }
            if (q - k) % 2 == 1 {
                term = -term;
            }
            acc += term;
        }
        c[h] = acc;
    }
    c
}

/// zeta(0, Lap^(q)) = (t^0 heat coefficient) - dim ker; for closed sections the
/// t^0 coefficient is a_{q,m} (zero in odd dimensions and for flat sections).
pub fn zeta0_form(section: &SectionSpectrum, q: usize) -> f64 {
    if q > section.dim {
        return 0.0;
    }
    let a_const = section.heat_coeffs[q].get(section.dim).copied().unwrap_or(0.0);
    a_const - section.harmonic_ranks[q] as f64
}

/// zeta_cex(0, Lap^(q)) through the alternating degree sum.
pub fn zeta0_coexact(section: &SectionSpectrum, q: usize) -> f64 {
    let mut acc = 0.0;
    for k in 0..=q.min(section.dim) {
        let term = zeta0_form(section, k);
        acc += if (q - k) % 2 == 0 { term } else { -term };
    }
    acc
}

/// Res_{s=j} zeta(s, U_q) for j = 1..=m.  Entries appear only at j with
/// m - j even; each is assembled from the coexact heat coefficients times the
/// Taylor expansion of e^{-t alpha_q^2}, read off through the Mellin transform:
/// Res_{w=j/2} zeta_cex(w, shifted) = coeff(t^{j/2 - ...}) / Gamma(j/2) and
/// Res_{s=j} = 2 Res_{w=j/2}.
pub fn residue_table(section: &SectionSpectrum, q: usize) -> Vec<(u32, f64)> {
    let m = section.dim;
    let c = coexact_heat_coeffs(section, q);
    let alpha = rational_to_f64_64(section.alpha(q as i64));
    let a2 = alpha * alpha;
    let mut out = Vec::new();
    for j in 1..=m {
        if (m - j) % 2 != 0 {
            continue;
        }
        let mut coeff = 0.0f64;
        let mut i = 0usize;
        loop {
            let rem = m as i64 - j as i64 - 2 * i as i64;
            if rem < 0 {
                break;
            }
            let h = rem as usize;
            // (-alpha^2)^i / i!
            let mut w = 1.0f64;
            for t in 0..i {
                w *= -a2 / (t as f64 + 1.0);
            }
            coeff += c[h] * w;
            i += 1;
        }
        let res = 2.0 * coeff / ln_gamma(j as f64 / 2.0).exp();
        if res != 0.0 {
            out.push((j as u32, res));
        }
    }
    out
}

/// Leading Weyl constant of the coexact counting function at degree q:
/// N_q(Lambda) ~ c_{q,0} Lambda^{m/2} / Gamma(m/2 + 1).
pub fn weyl_constant(section: &SectionSpectrum, q: usize) -> f64 {
    coexact_heat_coeffs(section, q)[0] / ln_gamma(section.dim as f64 / 2.0 + 1.0).exp()
}

/// Leading form-degree Weyl constant for the (m+1)-dimensional cone of radius l.
pub fn cone_weyl_constant(section: &SectionSpectrum, q: usize, l: f64) -> f64 {
    let d = section.dim + 1;
    let vol = l.powi(d as i32) * section.volume / d as f64;
    binomial(d, q) * vol
        / ((4.0 * std::f64::consts::PI).powf(d as f64 / 2.0)
            * ln_gamma(d as f64 / 2.0 + 1.0).exp())
}
