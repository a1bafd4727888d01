//! Spectral computation of the L2 analytic torsion of finite metric cones
//! `C_l(W)` and frusta `C_[l1,l2](W)` over a compact oriented section W.
//!
//! The crate is organized bottom-up:
//!
//! * [`special`] — Bessel kernels, zero families with guaranteed bracketing,
//!   gamma/zeta utilities, and closed-form Bessel-zero zeta invariants;
//! * [`exact`] — exact rational Olver polynomials, logarithmic composition of
//!   the order expansions, and the residue/finite-part functional that feeds
//!   the anomaly boundary term;
//! * [`section`] — spectral data of the section (built-in circle and flat
//!   torus, JSON interchange), heat-coefficient residues, continued zeta
//!   functions, and the regularized log-ratio sum;
//! * [`spectra`] — enumerated cone/frustum spectra with provenance and
//!   verification oracles;
//! * [`engine`] — the assembled torsion reports, the negative torsion of the
//!   non-square-integrable modes, and the collapse-limit experiment.

pub mod engine;
pub mod error;
pub mod exact;
pub mod section;
pub mod special;
pub mod spectra;

pub use engine::{
    anomaly_bm_cone, anomaly_bm_frustum, limit_experiment, negative_torsion_cone, torsion_cone,
    torsion_frustum, LimitReport, TorsionReport,
};
pub use error::{Result, TorsionError};
pub use section::{make_circle, make_flat_torus, SectionKind, SectionSpectrum};
pub use spectra::{cone_spectrum, frustum_spectrum, verify_spectrum, EigenList, FrustumBc};
