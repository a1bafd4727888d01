//! Cross-module invariants: dual derivation routes, interleaving counts,
//! serialization round trips, and property-based checks on the exact layer.

use proptest::prelude::*;
use torsion_core::engine::torsion_cone;
use torsion_core::exact::{exp_compose, log_compose, rat, RationalPoly};
use torsion_core::section::{make_circle, zeta0_coexact, SectionSpectrum};
use torsion_core::special::{quad_bessel_zeta_prime0, ZeroFamily};
use torsion_core::spectra::{cone_spectrum, frustum_spectrum, EigenList, FrustumBc};

/// The odd-case regular part two ways: the assembled report against the
/// route through the coexact zeta values at 0 and the closed-form harmonic
/// contributions.
#[test]
fn odd_regular_part_agrees_between_routes() {
    for &(r, l) in &[(1.0f64, 0.8f64), (2.0, 1.7)] {
        let s = make_circle(r, 1e4).unwrap();
        let m = s.dim;
        let p = (m + 1) / 2;
        let rep = torsion_cone(&s, l).unwrap();
        let route_a = rep.log_l_coefficient * rep.log_geometry + rep.global_term + rep.det_ratio_term;

        // log-l coefficient from the alternating coexact zeta values plus the
        // harmonic block, and constants from the closed-form z'(0) values
        let mut coeff = 0.0;
        for q in 0..p.saturating_sub(1) {
            let sgn = if q % 2 == 0 { 1.0 } else { -1.0 };
            coeff -= sgn * zeta0_coexact(&s, q);
        }
        let sgn_p = if (p - 1) % 2 == 0 { 1.0 } else { -1.0 };
        coeff -= 0.5 * sgn_p * zeta0_coexact(&s, p - 1);
        let mut t2 = 0.0;
        for q in 0..p {
            let sgn = if q % 2 == 0 { 1.0 } else { -1.0 };
            coeff += 0.5 * sgn * s.harmonic_ranks[q] as f64;
            let am1 = -((1 + 2 * (q as i64 - 1) - m as i64) as f64) / 2.0;
            let a = -((1 + 2 * q as i64 - m as i64) as f64) / 2.0;
            t2 += -0.5
                * sgn
                * s.harmonic_ranks[q] as f64
                * (quad_bessel_zeta_prime0(am1, 0.0, 1.0).unwrap()
                    - quad_bessel_zeta_prime0(a, 0.0, 1.0).unwrap());
        }
        let route_b = coeff * l.ln()
            + 0.5 * torsion_core::section::section_analytic_torsion(&s).unwrap()
            + t2;
        assert!(
            (route_a - route_b).abs() < 1e-12,
            "routes differ: {route_a} vs {route_b}"
        );
    }
}

/// Mixed-BC frustum: the two swapped Robin rows at section degree q-1 carry
/// matching zero counts (the eigenproblems differ only by which boundary is
/// relative, so the counting functions agree to one unit per row).
#[test]
fn frustum_mixed_rows_interleave() {
    let s = make_circle(1.0, 1e4).unwrap();
    let e = frustum_spectrum(&s, 1, FrustumBc::Mixed, 1.0, 2.0, 900.0).unwrap();
    use std::collections::BTreeMap;
    let mut per_row: BTreeMap<(String, usize), usize> = BTreeMap::new();
    for en in &e.entries {
        *per_row.entry((en.family.clone(), en.n)).or_default() += 1;
    }
    let mut checked = 0;
    for ((fam, n), count) in &per_row {
        if fam == "mixed_hat_qm1" {
            if let Some(swapped) = per_row.get(&("mixed_hat_qm1_swapped".to_string(), *n)) {
                assert!(
                    count.abs_diff(*swapped) <= 1,
                    "row n={n}: {count} vs {swapped}"
                );
                checked += 1;
            }
        }
    }
    assert!(checked > 3, "too few rows compared: {checked}");
}

#[test]
fn eigenlist_json_roundtrip() {
    let s = make_circle(1.0, 1e4).unwrap();
    let e = cone_spectrum(&s, 1, 1.0, 120.0).unwrap();
    let text = e.to_json().unwrap();
    let back: EigenList = serde_json::from_str(&text).unwrap();
    assert_eq!(e.entries.len(), back.entries.len());
    for (a, b) in e.entries.iter().zip(back.entries.iter()) {
        assert_eq!(a.value, b.value);
        assert_eq!(a.mult, b.mult);
        assert_eq!(a.family, b.family);
        assert_eq!((a.q_section, a.n, a.k), (b.q_section, b.n, b.k));
    }
    // documented wire format: entries are [value, mult, family, q', n, k]
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert!(v["entries"][0].is_array());
    assert_eq!(v["entries"][0].as_array().unwrap().len(), 6);
}

#[test]
fn interlacing_to_two_hundred_zeros() {
    for &nu in &[0.0, 0.5, 3.25, 11.0] {
        let fam = ZeroFamily::j(nu);
        let zs = fam.zeros_up_to(nu + 205.0 * std::f64::consts::PI).unwrap();
        assert!(zs.len() >= 200, "nu={nu}: only {} zeros", zs.len());
        for w in zs.windows(2).take(200) {
            assert!(w[1] > w[0]);
        }
    }
}

#[test]
fn section_file_roundtrip_through_disk() {
    let dir = std::env::temp_dir().join("torsion-section-roundtrip.json");
    let s = make_circle(1.5, 2.0e3).unwrap();
    std::fs::write(&dir, s.to_json().unwrap()).unwrap();
    let back = SectionSpectrum::load(&dir).unwrap();
    assert!(s.schema_eq(&back));
    std::fs::remove_file(&dir).ok();
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// exp inverts log on random short rational series.
    #[test]
    fn prop_exp_log_roundtrip(coeffs in proptest::collection::vec((-9i64..10, 1i64..7, 0usize..4), 1..5)) {
        let series: Vec<RationalPoly> = coeffs
            .iter()
            .map(|&(n, d, deg)| RationalPoly::monomial(rat(n, d), deg))
            .collect();
        let back = exp_compose(&log_compose(&series));
        prop_assert_eq!(back, series);
    }

    /// The truncated log-ratio series is odd in alpha on synthetic data.
    #[test]
    fn prop_log_ratio_odd(alpha in 0.05f64..0.9, start in 2u32..6) {
        let mu: Vec<(f64, u32)> = (start..start + 400).map(|n| (n as f64, 1u32)).collect();
        let (dp, sp) = torsion_core::section::log_ratio_series_truncated(&mu, alpha);
        let (dm, sm) = torsion_core::section::log_ratio_series_truncated(&mu, -alpha);
        prop_assert!((dp + dm).abs() < 1e-12 * dp.abs().max(1.0));
        prop_assert!((sp + sm).abs() < 1e-12 * sp.abs().max(1.0));
        prop_assert!((dp - sp).abs() < 1e-11 * dp.abs().max(1.0));
    }

    /// Enumerated eigenvalues are ascending and positive for random cutoffs.
    #[test]
    fn prop_eigenlist_sorted(cutoff in 30.0f64..400.0, l in 0.4f64..2.5) {
        let s = make_circle(1.0, 1e4).unwrap();
        let e = cone_spectrum(&s, 1, l, cutoff).unwrap();
        let mut prev = 0.0;
        for en in &e.entries {
            prop_assert!(en.value > 0.0 && en.value <= cutoff * (1.0 + 1e-12));
            prop_assert!(en.value >= prev);
            prev = en.value;
        }
    }
}
