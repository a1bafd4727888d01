//! Exact verification suites behind `torsion verify`: the polynomial
//! identities of the asymptotic-coefficient calculus, the two-scale
//! composition, spectrum oracles, and the rank-level zeta identities.

use torsion_core::Result;

pub use detail::run_suite;

mod detail {
    use super::*;
    use num_rational::BigRational;
    use num_traits::Zero;
    use torsion_core::engine::{cone_anomaly_combinations, frustum_anomaly_combinations};
    use torsion_core::exact::{
        phi_all, phi_at_zero, phi_hat_all, rat, verify_mixed_composition, OlverTable, Sign,
    };
    use torsion_core::section::{
        make_circle, make_flat_torus, zeta0_coexact, zeta0_form, SectionSpectrum,
    };
    use torsion_core::special::{quad_bessel_zeta0, quad_bessel_zeta_prime0, ZeroFamily};
    use torsion_core::spectra::{cone_spectrum, susy_defect, EigenList, FrustumBc};

    struct Tally {
        name: &'static str,
        passed: usize,
        failed: usize,
    }

    impl Tally {
        fn new(name: &'static str) -> Self {
            Self { name, passed: 0, failed: 0 }
        }
        fn check(&mut self, ok: bool, what: &str) {
            if ok {
                self.passed += 1;
            } else {
                self.failed += 1;
                eprintln!("  FAIL [{}] {}", self.name, what);
            }
        }
    }

    fn suite_asymptotics() -> Tally {
        let mut t = Tally::new("asymptotics");
        let table = OlverTable::new(10);
        let phis = phi_all(&table, 10);
        let mut alphas: Vec<BigRational> = Vec::new();
        for two_a in (-11i64..=11).step_by(2) {
            alphas.push(rat(two_a, 2));
        }
        for alpha in &alphas {
            let hp = phi_hat_all(&table, 10, alpha, Sign::Plus);
            let hm = phi_hat_all(&table, 10, alpha, Sign::Minus);
            for j in 1..=10usize {
                let combo = if j % 2 == 1 {
                    &(&phis[j - 1].scale(&rat(2, 1)) - &hp[j - 1]) - &hm[j - 1]
                } else {
                    &hm[j - 1] - &hp[j - 1]
                };
                t.check(
                    combo.eval_at_one().is_zero(),
                    &format!("vanishing combination j={j}, alpha={alpha}"),
                );
                t.check(
                    phi_at_zero(&combo).residue.is_zero(),
                    &format!("residue of combination j={j}, alpha={alpha}"),
                );
            }
        }
        // degree/parity structure of the generated polynomials
        for j in 1..=10usize {
            t.check(table.u(j).degree() == 3 * j, &format!("deg u_{j}"));
            t.check(table.v(j).degree() == 3 * j, &format!("deg v_{j}"));
            t.check(table.u(j).has_pure_parity(j), &format!("parity u_{j}"));
            t.check(
                table.u(j).min_degree().unwrap_or(0) >= j,
                &format!("min degree u_{j}"),
            );
        }
        t
    }

    fn suite_composition() -> Tally {
        let mut t = Tally::new("composition");
        let table = OlverTable::new(8);
        for alpha in [rat(1, 2), rat(5, 2), rat(0, 1)] {
            for sign in [Sign::Plus, Sign::Minus] {
                let ok = verify_mixed_composition(&table, 8, &alpha, sign).unwrap_or(false);
                t.check(ok, &format!("two-scale separation alpha={alpha}"));
            }
        }
        for m in 1..=8usize {
            let cone = cone_anomaly_combinations(m).unwrap();
            let mix = frustum_anomaly_combinations(m, FrustumBc::Mixed).unwrap();
            let abs = frustum_anomaly_combinations(m, FrustumBc::Absolute).unwrap();
            let two = rat(2, 1);
            for (((qc, jc, fc), (_, _, fm)), (_, _, fa)) in
                cone.iter().zip(mix.iter()).zip(abs.iter())
            {
                t.check(
                    fm == &(fc * &two),
                    &format!("mixed doubling m={m} q={qc} j={jc}"),
                );
                if m % 2 == 1 {
                    t.check(fa.is_zero(), &format!("odd absolute vanishing m={m} q={qc} j={jc}"));
                } else {
                    t.check(
                        fa == &(fc * &two),
                        &format!("even absolute doubling m={m} q={qc} j={jc}"),
                    );
                }
            }
        }
        t
    }

    fn suite_spectra() -> Tally {
        let mut t = Tally::new("spectra");
        // Robin reduction for half-integer orders
        for two_a in [1i64, -1, 3, -3, 5] {
            let a = two_a as f64 / 2.0;
            let hat = ZeroFamily::jhat(a.abs(), a);
            let shifted = if a > 0.0 {
                ZeroFamily::j(a - 1.0)
            } else {
                ZeroFamily::j(-a + 1.0)
            };
            let hz = hat.zeros_up_to(40.0).unwrap();
            let jz = shifted.zeros_up_to(40.0).unwrap();
            t.check(hz.len() == jz.len(), &format!("reduction count alpha={a}"));
            let ok = hz
                .iter()
                .zip(jz.iter())
                .all(|(x, y)| (x - y).abs() < 1e-10 * x.max(1.0));
            t.check(ok, &format!("reduction values alpha={a}"));
        }
        // interlacing over sampled orders
        for &nu in &[0.0, 0.5, 1.7, 8.0] {
            let zs = ZeroFamily::j(nu).zeros_up_to(nu + 80.0).unwrap();
            t.check(
                zs.windows(2).all(|w| w[1] > w[0]),
                &format!("interlacing nu={nu}"),
            );
        }
        // Hodge pairing + scaling on the disk
        let s = make_circle(1.0, 1e4).unwrap();
        let lists: Vec<EigenList> = (0..=2)
            .map(|q| cone_spectrum(&s, q, 1.0, 400.0).unwrap())
            .collect();
        t.check(susy_defect(&lists) < 1e-10, "disk Hodge pairing");
        let a = cone_spectrum(&s, 1, 1.0, 400.0).unwrap();
        let b = cone_spectrum(&s, 1, 2.0, 100.0).unwrap();
        let ok = a
            .entries
            .iter()
            .zip(b.entries.iter())
            .all(|(x, y)| (x.value / 4.0 - y.value).abs() < 1e-12 * x.value.max(1.0));
        t.check(ok && a.entries.len() == b.entries.len(), "1/l^2 scaling");
        t
    }

    fn suite_identities() -> Tally {
        let mut t = Tally::new("identities");
        for &nu in &[0.5, 1.0, 1.5] {
            t.check(
                (quad_bessel_zeta0(nu) + 0.5 * (nu + 0.5)).abs() == 0.0,
                &format!("quadratic zeta value nu={nu}"),
            );
        }
        t.check(
            (quad_bessel_zeta_prime0(0.5, 0.0, 1.0).unwrap() + 2.0f64.ln()).abs() < 1e-14,
            "zeta'(0) closed form",
        );
        let sections: Vec<SectionSpectrum> = vec![
            make_circle(1.0, 1e4).unwrap(),
            make_flat_torus(1.0, 1.0, 1e3).unwrap(),
        ];
        for s in &sections {
            let m = s.dim;
            for q in 0..=m {
                t.check(
                    (zeta0_form(s, q) + s.harmonic_ranks[q] as f64).abs() < 1e-12,
                    &format!("zeta(0) = -r_q at q={q} on {}", s.label),
                );
            }
            // coexact zeta duality at 0
            for q in 0..m {
                t.check(
                    (zeta0_coexact(s, q) - zeta0_coexact(s, m - 1 - q)).abs() < 1e-12,
                    &format!("coexact zeta(0) duality q={q} on {}", s.label),
                );
            }
            // alternating-rank identity
            let p = (m + 1) / 2;
            let mut lhs = 0.0;
            for q in 0..p.saturating_sub(1) {
                let sgn = if q % 2 == 0 { 1.0 } else { -1.0 };
                lhs += sgn * zeta0_coexact(s, q);
            }
            let sgn_p = if (p - 1) % 2 == 0 { 1.0 } else { -1.0 };
            lhs += 0.5 * sgn_p * zeta0_coexact(s, p - 1);
            let mut rhs = 0.0;
            for q in 0..p {
                let sgn = if q % 2 == 0 { 1.0 } else { -1.0 };
                rhs -= 0.5 * sgn * (2 * (p - q) - 1) as f64 * s.harmonic_ranks[q] as f64;
            }
            t.check((lhs - rhs).abs() < 1e-12, &format!("rank identity on {}", s.label));
        }
        t
    }

    pub fn run_suite(name: &str, json: bool) -> Result<()> {
        let wanted: Vec<&str> = match name {
            "all" => vec!["asymptotics", "composition", "spectra", "identities"],
            other => vec![other],
        };
        let mut results = Vec::new();
        for w in wanted {
            let tally = match w {
                "asymptotics" => suite_asymptotics(),
                "composition" => suite_composition(),
                "spectra" => suite_spectra(),
                "identities" => suite_identities(),
                other => {
                    return Err(torsion_core::TorsionError::Domain(format!(
                        "unknown suite '{other}'"
                    )))
                }
            };
            results.push(tally);
        }
        let mut any_failed = false;
        if json {
            let v: Vec<serde_json::Value> = results
                .iter()
                .map(|t| {
                    serde_json::json!({
                        "suite": t.name,
                        "passed": t.passed,
                        "failed": t.failed,
                    })
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&v)?);
            any_failed = results.iter().any(|t| t.failed > 0);
        } else {
            for t in &results {
                println!("suite {:<12} passed {:>4}  failed {:>3}", t.name, t.passed, t.failed);
                if t.failed > 0 {
                    any_failed = true;
                }
            }
        }
        if any_failed {
            std::process::exit(2);
        }
        Ok(())
    }
}
