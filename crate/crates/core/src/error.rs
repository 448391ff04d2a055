use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, FaberError>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum FaberError {
    #[error("invalid airfoil parameters: {0}")]
    Parameter(String),

    #[error("pole of the exterior map at w = {0}")]
    Pole(Complex64),

    #[error("point {point} outside the domain: {reason}")]
    Domain { point: Complex64, reason: String },

    #[error("singular point z = {0} (V(z) = 0)")]
    Singularity(Complex64),

    #[error("coefficients of F_{degree} exceed double range")]
    Overflow { degree: usize },

    #[error("sampling grid of {samples} points does not resolve degree {degree}")]
    Resolution { degree: usize, samples: usize },

    #[error("no convergence after {iterations} iterations (max residual {max_residual:e})")]
    Convergence {
        iterations: usize,
        max_residual: f64,
    },

    #[error("{missing} of {degree} zeros not found")]
    Deficit { degree: usize, missing: usize },

    #[error("{} zeros unmatched (max distance {max_distance:e})", unmatched.len())]
    Mismatch {
        unmatched: Vec<Complex64>,
        max_distance: f64,
    },

    #[error("no modulus-one root of the phase equation (closest modulus deviation {0:e})")]
    Branch(f64),

    #[error("operation requires the {expected} case")]
    Case { expected: &'static str },
}

impl FaberError {
    /// True for failures of an iterative numerical method, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            FaberError::Convergence { .. }
                | FaberError::Deficit { .. }
                | FaberError::Resolution { .. }
                | FaberError::Overflow { .. }
                | FaberError::Branch(_)
                | FaberError::Mismatch { .. }
        )
    }
}
