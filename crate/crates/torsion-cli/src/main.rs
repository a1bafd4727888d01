//! `torsion` — analytic torsion of metric cones and frusta from section
//! spectral data.
//!
//! Sections are described by a small spec language: `circle:r=<f>`,
//! `torus:<L1>,<L2>`, or `file:<path>` pointing at a section JSON file.
//! Every subcommand emits either text or JSON (`--json`); JSON reports are
//! bit-identical across runs apart from the timestamp field.

mod suites;

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use torsion_core::engine::{self, TorsionReport};
use torsion_core::section::SectionSpectrum;
use torsion_core::spectra::{self, FrustumBc};
use torsion_core::{Result, TorsionError};

#[derive(Parser)]
#[command(name = "torsion", version, about = "L2 analytic torsion of metric cones and frusta")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BcArg {
    Abs,
    Mixed,
}

impl From<BcArg> for FrustumBc {
    fn from(b: BcArg) -> Self {
        match b {
            BcArg::Abs => FrustumBc::Absolute,
            BcArg::Mixed => FrustumBc::Mixed,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build a section and emit its spectral data.
    Section {
        #[arg(long)]
        section: String,
        /// Section eigenvalue truncation (defaults per builtin).
        #[arg(long)]
        cutoff: Option<f64>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Torsion of the cone C_l(W) with absolute/ideal boundary conditions.
    ConeTorsion {
        #[arg(long)]
        section: String,
        #[arg(long)]
        l: f64,
        #[arg(long)]
        cutoff: Option<f64>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Torsion of the frustum `C_[l1,l2](W)`.
    FrustumTorsion {
        #[arg(long)]
        section: String,
        #[arg(long)]
        l1: f64,
        #[arg(long)]
        l2: f64,
        #[arg(long, value_enum, default_value = "abs")]
        bc: BcArg,
        #[arg(long)]
        cutoff: Option<f64>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The negative torsion of the cone (non-square-integrable modes).
    NegativeTorsion {
        #[arg(long)]
        section: String,
        #[arg(long)]
        l: f64,
        #[arg(long)]
        cutoff: Option<f64>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Collapse experiment: frustum minus negative cone over shrinking l1.
    Limit {
        #[arg(long)]
        section: String,
        #[arg(long)]
        l2: f64,
        /// Comma-separated descending inner radii, e.g. 1e-2,1e-3,1e-4.
        #[arg(long, value_delimiter = ',')]
        l1: Vec<f64>,
        #[arg(long)]
        cutoff: Option<f64>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate an eigenvalue list with provenance.
    Spectrum {
        #[arg(long)]
        section: String,
        /// Form degree on the cone/frustum.
        #[arg(long)]
        q: usize,
        #[arg(long)]
        l: Option<f64>,
        #[arg(long)]
        l1: Option<f64>,
        #[arg(long)]
        l2: Option<f64>,
        #[arg(long, value_enum, default_value = "abs")]
        bc: BcArg,
        /// Eigenvalue cutoff of the enumeration.
        #[arg(long, default_value_t = 100.0)]
        cutoff: f64,
        /// Section truncation override.
        #[arg(long)]
        section_cutoff: Option<f64>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the exact verification suites.
    Verify {
        /// asymptotics | composition | spectra | identities | all
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        json: bool,
    },
}

fn parse_section(spec: &str, cutoff: Option<f64>) -> Result<SectionSpectrum> {
    if let Some(rest) = spec.strip_prefix("circle:") {
        let r = rest
            .strip_prefix("r=")
            .ok_or_else(|| TorsionError::Schema(format!("bad circle spec '{spec}'")))?
            .parse::<f64>()
            .map_err(|e| TorsionError::Schema(format!("bad circle radius: {e}")))?;
        torsion_core::make_circle(r, cutoff.unwrap_or(1.0e6))
    } else if let Some(rest) = spec.strip_prefix("torus:") {
        let parts: Vec<&str> = rest.split(',').collect();
        if parts.len() != 2 {
            return Err(TorsionError::Schema(format!("bad torus spec '{spec}'")));
        }
        let lx = parts[0]
            .parse::<f64>()
            .map_err(|e| TorsionError::Schema(format!("bad torus side: {e}")))?;
        let ly = parts[1]
            .parse::<f64>()
            .map_err(|e| TorsionError::Schema(format!("bad torus side: {e}")))?;
        let default = 4.0 * std::f64::consts::PI.powi(2) * 1.0e4;
        torsion_core::make_flat_torus(lx, ly, cutoff.unwrap_or(default))
    } else if let Some(path) = spec.strip_prefix("file:") {
        SectionSpectrum::load(std::path::Path::new(path))
    } else {
        Err(TorsionError::Schema(format!(
            "unknown section spec '{spec}' (expected circle:r=<f>, torus:<L1>,<L2>, file:<path>)"
        )))
    }
}

fn timestamp() -> String {
    // seconds since the epoch; the single non-deterministic field
    let now = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    now.to_string()
}

fn emit(text: String, json: Option<serde_json::Value>, out: Option<PathBuf>) -> Result<()> {
    let payload = if let Some(mut v) = json {
        if let Some(obj) = v.as_object_mut() {
            obj.insert("timestamp".into(), serde_json::Value::String(timestamp()));
        }
        serde_json::to_string_pretty(&v)? + "\n"
    } else {
        text
    };
    match out {
        Some(path) => std::fs::write(path, payload)?,
        None => print!("{payload}"),
    }
    Ok(())
}

fn report_text(title: &str, rep: &TorsionReport) -> String {
    let mut s = String::new();
    s.push_str(&format!("{title}\n"));
    s.push_str(&format!("  geometry:        {:?}  bc: {}\n", rep.geometry, rep.bc));
    s.push_str(&format!(
        "  log-l coefficient: {:+.15e}  (x log geometry {:+.15e})\n",
        rep.log_l_coefficient, rep.log_geometry
    ));
    s.push_str(&format!("  global:          {:+.15e}\n", rep.global_term));
    s.push_str(&format!("  det ratio:       {:+.15e}\n", rep.det_ratio_term));
    s.push_str(&format!("  euler:           {:+.15e}\n", rep.euler_term));
    s.push_str(&format!("  anomaly:         {:+.15e}\n", rep.anomaly_term));
    s.push_str(&format!("  B1:              {:+.15e}\n", rep.b1_term));
    s.push_str(&format!("  B2:              {:+.15e}\n", rep.b2_term));
    s.push_str(&format!("  total:           {:+.15e}\n", rep.total()));
    for n in &rep.notes {
        s.push_str(&format!("  note: {n}\n"));
    }
    s
}

fn run() -> Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Section { section, cutoff, json, out } => {
            let s = parse_section(&section, cutoff)?;
            if json || out.is_some() {
                // the section schema itself is fixed; wrap only for stdout json
                let v: serde_json::Value = serde_json::from_str(&s.to_json()?)?;
                emit(String::new(), Some(v), out)
            } else {
                let mut t = format!(
                    "section '{}' (dim {}, volume {:.12}, chi {})\n",
                    s.label,
                    s.dim,
                    s.volume,
                    s.euler_characteristic()
                );
                for q in 0..=s.dim {
                    t.push_str(&format!(
                        "  degree {q}: {} coexact entries, rank {}\n",
                        s.coexact[q].len(),
                        s.harmonic_ranks[q]
                    ));
                }
                emit(t, None, out)
            }
        }
        Command::ConeTorsion { section, l, cutoff, json, out } => {
            let s = parse_section(&section, cutoff)?;
            let rep = engine::torsion_cone(&s, l)?;
            let j = if json || out.is_some() {
                Some(rep.to_json_value())
            } else {
                None
            };
            emit(report_text("cone torsion", &rep), j, out)
        }
        Command::FrustumTorsion { section, l1, l2, bc, cutoff, json, out } => {
            let s = parse_section(&section, cutoff)?;
            let rep = engine::torsion_frustum(&s, l1, l2, bc.into())?;
            let j = if json || out.is_some() {
                Some(rep.to_json_value())
            } else {
                None
            };
            emit(report_text("frustum torsion", &rep), j, out)
        }
        Command::NegativeTorsion { section, l, cutoff, json, out } => {
            let s = parse_section(&section, cutoff)?;
            let rep = engine::negative_torsion_cone(&s, l)?;
            let j = if json || out.is_some() {
                Some(rep.to_json_value())
            } else {
                None
            };
            emit(report_text("negative torsion", &rep), j, out)
        }
        Command::Limit { section, l2, l1, cutoff, json, out } => {
            let s = parse_section(&section, cutoff)?;
            let rep = engine::limit_experiment(&s, l2, &l1)?;
            let j = if json || out.is_some() {
                Some(serde_json::to_value(&rep)?)
            } else {
                None
            };
            let mut t = String::from("collapse experiment\n");
            for row in &rep.rows {
                t.push_str(&format!(
                    "  l1 = {:<10.3e} delta = {:+.12e}  reduced = {:+.12e}\n",
                    row.l1, row.delta, row.reduced
                ));
            }
            t.push_str(&format!("  finite part:    {:+.15e}\n", rep.finite_part));
            t.push_str(&format!("  target:         {:+.15e}\n", rep.target));
            t.push_str(&format!("  difference:     {:+.3e}\n", rep.difference));
            if let Some(o) = rep.observed_order {
                t.push_str(&format!("  observed order: {o:.3}\n"));
            }
            for n in &rep.notes {
                t.push_str(&format!("  note: {n}\n"));
            }
            emit(t, j, out)
        }
        Command::Spectrum {
            section,
            q,
            l,
            l1,
            l2,
            bc,
            cutoff,
            section_cutoff,
            json,
            out,
        } => {
            let s = parse_section(&section, section_cutoff)?;
            let list = match (l, l1, l2) {
                (Some(l), None, None) => spectra::cone_spectrum(&s, q, l, cutoff)?,
                (None, Some(a), Some(b)) => {
                    spectra::frustum_spectrum(&s, q, bc.into(), a, b, cutoff)?
                }
                _ => {
                    return Err(TorsionError::Geometry(
                        "give either --l (cone) or --l1 and --l2 (frustum)".into(),
                    ))
                }
            };
            let report = spectra::verify_spectrum(&list, &s);
            if json || out.is_some() {
                let mut v = serde_json::to_value(&list)?;
                v["verification"] = serde_json::to_value(&report)?;
                emit(String::new(), Some(v), out)
            } else {
                let mut t = format!(
                    "spectrum q={} ({} eigenvalues below {})\n",
                    list.q,
                    list.total_count(),
                    list.cutoff
                );
                if let Some(w) = report.weyl_ratio {
                    t.push_str(&format!("  Weyl ratio: {w:.4}\n"));
                }
                for (f, c) in &report.family_counts {
                    t.push_str(&format!("  {f}: {c}\n"));
                }
                for e in list.entries.iter().take(12) {
                    t.push_str(&format!(
                        "  {:>14.8} x{:<3} {} (q'={}, n={}, k={})\n",
                        e.value, e.mult, e.family, e.q_section, e.n, e.k
                    ));
                }
                if list.entries.len() > 12 {
                    t.push_str(&format!("  ... {} more\n", list.entries.len() - 12));
                }
                emit(t, None, out)
            }
        }
        Command::Verify { suite, json } => suites::run_suite(&suite, json),
    }
}

fn main() {
    if let Err(e) = run() {
        let json_wanted = std::env::args().any(|a| a == "--json");
        if json_wanted {
            let v = serde_json::json!({
                "error": { "message": e.to_string() }
            });
            eprintln!("{}", serde_json::to_string(&v).unwrap());
        } else {
            eprintln!("error: {e}");
        }
        std::process::exit(1);
    }
}
