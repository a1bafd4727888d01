//! Exact rational layer: Olver polynomials, logarithmic composition of the
//! order expansions, the finite-part functional, and the two-scale frustum
//! composites.  Floating point never enters before multiplication by section
//! residues.

pub mod compose;
pub mod olver;
pub mod phi;
pub mod poly;
pub mod poly2;
pub mod series;

pub use compose::{
    fhat_composite, upsilon_composite, upsilon_hat_composite, verify_mixed_composition,
    CompositeCoeff,
};
pub use olver::OlverTable;
pub use phi::{phi_at_zero, phi_finite_part, PhiValue, Scale, ScaledPhiCombo};
pub use poly::{rat, rational_to_f64, RationalPoly};
pub use series::{exp_compose, log_compose, phi_all, phi_hat_all, Sign};
