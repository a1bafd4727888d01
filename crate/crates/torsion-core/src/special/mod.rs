//! Floating-point special-function kernels: Bessel functions and their zero
//! families, gamma-function utilities, Riemann zeta, and the closed-form zeta
//! invariants of Bessel-zero sequences.
//!
//! All operations here are pure and reentrant.

pub mod bessel;
pub mod gamma;
pub mod quad_zeta;
pub mod zeros;
pub mod zeta;

pub use bessel::{bessel_eval, bessel_i, bessel_jy, bessel_k, BesselKind};
pub use quad_zeta::{
    harmonic_number, quad_bessel_zeta0, quad_bessel_zeta_prime0, y_zero_zeta0,
    y_zero_zeta_prime0,
};
pub use zeros::{ZeroFamily, ZeroFamilyKind, ROOT_TOL};
pub use zeta::{riemann_zeta, riemann_zeta_prime};
