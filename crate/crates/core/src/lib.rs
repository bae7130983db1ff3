//! Quasi-exactly-solvable bound states of the two-dimensional radial
//! Schrödinger equation
//!
//! ```text
//! R''(r) + [E - V(r) - (m² - 1/4)/r²] R(r) = 0,   ħ = 1, mass = 1/2
//! ```
//!
//! for three potential families: sextic `a r² + b r⁴ + c r⁶`, mixed
//! `a r + b r² + c/r` and singular even-power `a r² + b/r² + c/r⁴ + d/r⁶`.
//!
//! A state is written as `exp(p(r)) · Σ aₖ r^{k·step + δ}`. Substituting that
//! form into the radial equation gives a three-term recurrence; truncating the
//! series at order `p` forces `A_p = 0` plus a tridiagonal (continuant)
//! determinant condition. [`quantization`] solves those conditions,
//! [`wavefunction`] evaluates and normalizes the resulting states, and
//! [`oracle`] checks everything against an independent finite-difference
//! eigensolver.

pub mod ansatz;
pub mod cli;
mod error;
pub mod oracle;
pub mod output;
pub mod potentials;
pub mod quadrature;
pub mod quantization;
pub mod recurrence;
pub mod roots;
pub mod wavefunction;

pub use ansatz::{build_profile, AnsatzProfile};
pub use error::{QesError, Result};
pub use oracle::{cross_validate, fd_spectrum, ode_residual, Grid, OracleReport};
pub use potentials::{Family, PotentialSpec};
pub use quantization::{solve, QesSolution, SolveOptions};
pub use recurrence::{FormulaSet, RecurrenceRow, SeriesCoefficients};
pub use wavefunction::RadialState;
