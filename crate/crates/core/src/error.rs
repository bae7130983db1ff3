use thiserror::Error;

use crate::potentials::Family;

pub type Result<T> = std::result::Result<T, QesError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QesError {
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter { name: &'static str, value: f64, reason: &'static str },

    #[error("r = {0} is outside the radial domain r > 0")]
    Domain(f64),

    #[error("ansatz profile is for the {found} family but the potential is {expected}")]
    FamilyMismatch { expected: Family, found: Family },

    #[error("recurrence divisor C_{0} vanishes; series coefficients are undetermined")]
    SingularRecurrence(usize),

    /// The requested configuration does not satisfy a quantization condition.
    /// `nearest` lists the admissible values of `parameter` for reference.
    #[error("{condition} violated: residual {residual:e}; admissible {parameter}: {nearest:?}")]
    ConstraintViolated { condition: &'static str, parameter: &'static str, residual: f64, nearest: Vec<f64> },

    #[error("determinant polynomial has no real roots")]
    NoRealRoots,

    #[error("no admissible solution: {0}")]
    NoSolution(String),

    #[error("closed-form energy is not real (discriminant {discriminant:e})")]
    NonRealEnergy { discriminant: f64 },

    #[error("quadrature did not reach tolerance {tolerance:e} (estimate {estimate:e})")]
    QuadratureFailure { tolerance: f64, estimate: f64 },

    #[error("grid error: {0}")]
    Grid(String),
}
