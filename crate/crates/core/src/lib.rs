//! Faber polynomials of Joukowski airfoils.
//!
//! The crate is organised bottom-up:
//!
//! - [`conformal`]: airfoil parameters, the exterior maps `Ψ`/`Φ`, and the
//!   auxiliary functions `U`, `V`, `W`, `φ_b` with their branch conventions.
//! - [`faber`]: coefficient and closed-form evaluation of `F_n`, the shifted
//!   polynomials, Chebyshev `T_n`, the residual equation and an FFT oracle.
//! - [`limitsets`]: the arc `𝒜`, the circles `𝒞_b`/`𝒞̃_b`, the loop `ℒ_b⁺`,
//!   the intersection point `i_b` and case classification.
//! - [`rootfind`]: simultaneous (Aberth) and asymptotics-seeded zero finders.
//! - [`measures`]: predicted limit measures, moments, quadrature and
//!   potential diagnostics.
//! - [`report`]: fixed-format CSV/JSON serialisation shared by the CLI.

pub mod conformal;
pub mod error;
pub mod faber;
pub mod limitsets;
pub mod measures;
pub mod report;
pub mod rootfind;

pub use num_complex::Complex64;

pub use conformal::AirfoilParams;
pub use error::{FaberError, Result};
