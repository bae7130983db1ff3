//! Three-term recurrence for the series coefficients.
//!
//! Substituting `exp(p(r)) · Σ aₙ r^{n·step + δ}` into the radial equation and
//! collecting powers gives, for every `n ≥ 0`,
//!
//! ```text
//! Aₙ aₙ + Bₙ₊₁ aₙ₊₁ + Cₙ₊₂ aₙ₊₂ = 0
//! ```
//!
//! with `C₀ = 0` fixing `δ`. The rows are
//!
//! ```text
//! sextic    Aₙ = α² + β(3 + 2δ + 4n) − a
//!           Bₙ = E + α(1 + 2δ + 4n)
//!           Cₙ = (δ + 2n)(δ + 2n − 1) − (m² − 1/4)
//! mixed     Aₙ = E + α² + β(1 + 2n + 2δ)
//!           Bₙ = −c + α(2n + 2δ)
//!           Cₙ = (n + δ)(n + δ − 1) − (m² − 1/4)
//! singular  Aₙ = E + α(1 + 2δ + 4n)
//!           Bₙ = −b − 2αβ − (m² − 1/4) + (δ + 2n)(δ + 2n − 1)
//!           Cₙ = β(3 − 2δ − 4n) − c
//! ```
//!
//! [`FormulaSet::Printed`] drops the `α²` from the mixed `Aₙ` and the factor
//! `β` from the singular `Cₙ`, reproducing the published closed forms for
//! auditing. Those variants do not solve the radial equation.

use crate::ansatz::AnsatzProfile;
use crate::error::{QesError, Result};
use crate::potentials::{Family, PotentialSpec};

/// Which set of closed forms to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FormulaSet {
    /// Rows obtained by direct substitution into the radial equation.
    #[default]
    Corrected,
    /// The published expressions, kept for side-by-side comparison.
    Printed,
}

/// One row `(Aₙ, Bₙ, Cₙ)`. In the truncated determinant `Aₙ` sits on the
/// sub-diagonal, `Bₙ` on the diagonal and `Cₙ` on the super-diagonal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecurrenceRow {
    pub n: usize,
    pub lower: f64,
    pub diag: f64,
    pub upper: f64,
}

/// Series coefficients `a₀..a_p`, scaled so that `a₀ = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesCoefficients {
    values: Vec<f64>,
}

impl SeriesCoefficients {
    pub fn new(values: Vec<f64>) -> Self {
        assert!(!values.is_empty(), "series needs at least a_0");
        Self { values }
    }

    /// Truncation order.
    pub fn order(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

fn check_family(spec: &PotentialSpec, profile: &AnsatzProfile) -> Result<()> {
    if spec.family() == profile.family {
        Ok(())
    } else {
        Err(QesError::FamilyMismatch { expected: spec.family(), found: profile.family })
    }
}

pub fn coeff_row(
    spec: &PotentialSpec,
    profile: &AnsatzProfile,
    m: u32,
    n: usize,
    energy: f64,
) -> Result<RecurrenceRow> {
    coeff_row_with(spec, profile, m, n, energy, FormulaSet::Corrected)
}

pub fn coeff_row_with(
    spec: &PotentialSpec,
    profile: &AnsatzProfile,
    m: u32,
    n: usize,
    energy: f64,
    formulas: FormulaSet,
) -> Result<RecurrenceRow> {
    check_family(spec, profile)?;
    let AnsatzProfile { alpha, beta, delta, .. } = *profile;
    let mf = f64::from(m);
    let cent = mf * mf - 0.25;
    let nf = n as f64;
    let (lower, diag, upper) = match *spec {
        PotentialSpec::Sextic { a, .. } => {
            let k = delta + 2.0 * nf;
            (
                alpha * alpha + beta * (3.0 + 2.0 * delta + 4.0 * nf) - a,
                energy + alpha * (1.0 + 2.0 * delta + 4.0 * nf),
                k * (k - 1.0) - cent,
            )
        }
        PotentialSpec::Mixed { c, .. } => {
            let k = delta + nf;
            let quadratic = match formulas {
                FormulaSet::Corrected => alpha * alpha,
                FormulaSet::Printed => 0.0,
            };
            (
                energy + quadratic + beta * (1.0 + 2.0 * nf + 2.0 * delta),
                -c + alpha * (2.0 * nf + 2.0 * delta),
                k * (k - 1.0) - cent,
            )
        }
        PotentialSpec::SingularEvenPower { b, c, .. } => {
            let k = delta + 2.0 * nf;
            let slope = match formulas {
                FormulaSet::Corrected => beta,
                FormulaSet::Printed => 1.0,
            };
            (
                energy + alpha * (1.0 + 2.0 * delta + 4.0 * nf),
                -b - 2.0 * alpha * beta - cent + k * (k - 1.0),
                slope * (3.0 - 2.0 * delta - 4.0 * nf) - c,
            )
        }
    };
    Ok(RecurrenceRow { n, lower, diag, upper })
}

/// Rows `0..count`.
pub fn rows(
    spec: &PotentialSpec,
    profile: &AnsatzProfile,
    m: u32,
    count: usize,
    energy: f64,
    formulas: FormulaSet,
) -> Result<Vec<RecurrenceRow>> {
    (0..count).map(|n| coeff_row_with(spec, profile, m, n, energy, formulas)).collect()
}

pub fn series_coefficients(
    spec: &PotentialSpec,
    profile: &AnsatzProfile,
    m: u32,
    p: usize,
    energy: f64,
) -> Result<SeriesCoefficients> {
    series_coefficients_with(spec, profile, m, p, energy, FormulaSet::Corrected)
}

/// Runs the recurrence forward from `a₀ = 1`:
/// `a_k = −(A_{k−2} a_{k−2} + B_{k−1} a_{k−1}) / C_k`, with `a_{−1} = 0`.
pub fn series_coefficients_with(
    spec: &PotentialSpec,
    profile: &AnsatzProfile,
    m: u32,
    p: usize,
    energy: f64,
    formulas: FormulaSet,
) -> Result<SeriesCoefficients> {
    let rows = rows(spec, profile, m, p + 1, energy, formulas)?;
    let mut values = Vec::with_capacity(p + 1);
    values.push(1.0);
    for k in 1..=p {
        let divisor = rows[k].upper;
        if divisor.abs() <= 1e-13 {
            return Err(QesError::SingularRecurrence(k));
        }
        let mut acc = rows[k - 1].diag * values[k - 1];
        if k >= 2 {
            acc += rows[k - 2].lower * values[k - 2];
        }
        values.push(-acc / divisor);
    }
    Ok(SeriesCoefficients::new(values))
}

/// `A_p`; zero exactly when the series may stop at order `p`.
pub fn termination_residual(
    spec: &PotentialSpec,
    profile: &AnsatzProfile,
    m: u32,
    p: usize,
    energy: f64,
) -> Result<f64> {
    Ok(coeff_row(spec, profile, m, p, energy)?.lower)
}

/// True when `A_n` depends on the energy for this family.
pub fn lower_depends_on_energy(family: Family) -> bool {
    !matches!(family, Family::Sextic)
}
