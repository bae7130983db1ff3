//! Quantization: the truncation condition `A_p = 0` together with the
//! vanishing of the `(p+1)×(p+1)` tridiagonal determinant
//!
//! ```text
//! | B₀  C₁                 |
//! | A₀  B₁  C₂             |
//! |     ⋱   ⋱    ⋱         |
//! |          A_{p−1}  B_p  |
//! ```
//!
//! evaluated by the continuant recursion `D_k = B_k D_{k−1} − A_{k−1} C_k D_{k−2}`.
//!
//! For the sextic family `A_p` does not involve the energy, so it constrains
//! the coefficients and the determinant is a degree `p+1` polynomial in `E`.
//! For the mixed and singular families `A_p = 0` fixes `E`, and the
//! determinant becomes a polynomial in the remaining free coefficient (`c`
//! and `b` respectively). Every row entry is affine in the unknown, so the
//! polynomial is built from rows evaluated at unknown = 0 and unknown = 1.

use crate::ansatz::build_profile;
use crate::error::{QesError, Result};
use crate::potentials::{Family, PotentialSpec};
use crate::recurrence::{rows, series_coefficients_with, FormulaSet, RecurrenceRow, SeriesCoefficients};
use crate::roots::{real_roots, Polynomial, RealRoot};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    pub formulas: FormulaSet,
    /// Relative tolerance for the truncation and determinant conditions.
    pub tolerance: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self { formulas: FormulaSet::Corrected, tolerance: 1e-9 }
    }
}

/// One closed-form bound state.
#[derive(Debug, Clone, PartialEq)]
pub struct QesSolution {
    pub spec: PotentialSpec,
    pub m: u32,
    pub p: usize,
    pub energy: f64,
    pub coefficients: SeriesCoefficients,
    /// `A_p` at this energy, from the corrected rows.
    pub termination_residual: f64,
    /// `D_p` at this energy, from the corrected rows.
    pub determinant_residual: f64,
    /// `Π max(1, |B_k|)`, the natural size of `D_p`.
    pub determinant_scale: f64,
    /// Number of coincident determinant roots reported as this one.
    pub multiplicity: usize,
    pub formulas: FormulaSet,
}

impl QesSolution {
    pub fn family(&self) -> Family {
        self.spec.family()
    }

    /// Whether both quantization residuals are within `tolerance`.
    pub fn is_consistent(&self, tolerance: f64) -> bool {
        self.termination_residual.abs() <= tolerance * self.energy.abs().max(1.0)
            && self.determinant_residual.abs() <= tolerance * self.determinant_scale
    }
}

/// `D_p` for rows `0..=p`.
pub fn continuant(rows: &[RecurrenceRow], p: usize) -> f64 {
    let mut prev = 1.0;
    let mut cur = rows[0].diag;
    for k in 1..=p {
        let next = rows[k].diag * cur - rows[k - 1].lower * rows[k].upper * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `Π_{k≤p} max(1, |B_k|)`
pub fn continuant_scale(rows: &[RecurrenceRow], p: usize) -> f64 {
    rows[..=p].iter().map(|r| r.diag.abs().max(1.0)).product()
}

/// `D_p(x)` as a polynomial, given the rows at `x = 0` and `x = 1`.
fn continuant_polynomial(at0: &[RecurrenceRow], at1: &[RecurrenceRow], p: usize) -> Polynomial {
    let affine = |e0: f64, e1: f64| Polynomial::affine(e0, e1 - e0);
    let diag = |k: usize| affine(at0[k].diag, at1[k].diag);
    let lower = |k: usize| affine(at0[k].lower, at1[k].lower);
    let upper = |k: usize| affine(at0[k].upper, at1[k].upper);

    let mut prev = Polynomial::constant(1.0);
    let mut cur = diag(0);
    for k in 1..=p {
        let next = diag(k).mul(&cur).sub(&lower(k - 1).mul(&upper(k)).mul(&prev));
        prev = cur;
        cur = next;
    }
    cur
}

fn roots_or_error(poly: &Polynomial) -> Result<Vec<RealRoot>> {
    if poly.is_zero() {
        return Err(QesError::NoSolution("determinant vanishes identically".into()));
    }
    let roots = real_roots(poly);
    if roots.is_empty() {
        Err(QesError::NoRealRoots)
    } else {
        Ok(roots)
    }
}

fn real_quadratic_roots(a2: f64, a1: f64, a0: f64) -> Result<Vec<f64>> {
    let disc = a1 * a1 - 4.0 * a2 * a0;
    if disc < 0.0 {
        return Err(QesError::NoRealRoots);
    }
    let s = disc.sqrt();
    // avoid cancellation in the smaller root
    let q = -0.5 * (a1 + a1.signum() * s);
    let mut r = if q == 0.0 { vec![0.0, 0.0] } else { vec![q / a2, a0 / q] };
    r.sort_by(f64::total_cmp);
    Ok(r)
}

fn sextic_parts(spec: &PotentialSpec) -> Result<(f64, f64, f64)> {
    match *spec {
        PotentialSpec::Sextic { a, b, c } => Ok((a, b, c)),
        _ => Err(QesError::FamilyMismatch { expected: Family::Sextic, found: spec.family() }),
    }
}

/// The unknown coefficient in the sextic truncation condition
/// `a + 2√c(2 + m + 2p) − b²/(4c) = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SexticUnknown {
    A { b: f64, c: f64 },
    B { a: f64, c: f64 },
    C { a: f64, b: f64 },
}

/// Solves the sextic truncation condition for the missing coefficient.
/// Solving for `b` yields the pair `±b`; otherwise there is one value.
pub fn sextic_constraint_solve(m: u32, p: usize, known: SexticUnknown) -> Result<Vec<f64>> {
    let k = 2.0 + f64::from(m) + 2.0 * p as f64;
    match known {
        SexticUnknown::A { b, c } => {
            if c <= 0.0 {
                return Err(QesError::InvalidParameter { name: "c", value: c, reason: "β²=c requires c>0" });
            }
            Ok(vec![b * b / (4.0 * c) - 2.0 * c.sqrt() * k])
        }
        SexticUnknown::B { a, c } => {
            if c <= 0.0 {
                return Err(QesError::InvalidParameter { name: "c", value: c, reason: "β²=c requires c>0" });
            }
            let b2 = 4.0 * c * (a + 2.0 * c.sqrt() * k);
            if b2 < 0.0 {
                Err(QesError::NoSolution(format!("b² = {b2:e} is negative")))
            } else if b2 == 0.0 {
                Ok(vec![0.0])
            } else {
                Ok(vec![-b2.sqrt(), b2.sqrt()])
            }
        }
        SexticUnknown::C { a, b } => {
            // f is strictly increasing in c > 0
            let f = |c: f64| a + 2.0 * c.sqrt() * k - b * b / (4.0 * c);
            let mut lo = 1.0;
            while f(lo) >= 0.0 {
                lo *= 0.5;
                if lo < 1e-300 {
                    return Err(QesError::NoSolution(format!(
                        "no c > 0 satisfies the truncation condition for a = {a}, b = {b}"
                    )));
                }
            }
            let mut hi = 1.0;
            while f(hi) <= 0.0 {
                hi *= 2.0;
                if hi > 1e300 {
                    return Err(QesError::NoSolution("bracket for c not found".into()));
                }
            }
            for _ in 0..400 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if f(mid) < 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            Ok(vec![0.5 * (lo + hi)])
        }
    }
}

/// Real roots in `E` of the sextic determinant. The truncation condition
/// must already hold.
pub fn sextic_energies(spec: &PotentialSpec, m: u32, p: usize) -> Result<Vec<RealRoot>> {
    sextic_energies_with(spec, m, p, SolveOptions::default())
}

pub fn sextic_energies_with(spec: &PotentialSpec, m: u32, p: usize, options: SolveOptions) -> Result<Vec<RealRoot>> {
    let (a, b, c) = sextic_parts(spec)?;
    let profile = build_profile(spec, m)?;
    let at0 = rows(spec, &profile, m, p + 1, 0.0, options.formulas)?;
    let a_p = at0[p].lower;
    let scale = a.abs().max(profile.alpha * profile.alpha).max(1.0);
    if a_p.abs() > options.tolerance * scale {
        return Err(QesError::ConstraintViolated {
            condition: "truncation condition A_p = 0",
            parameter: "a",
            residual: a_p,
            nearest: sextic_constraint_solve(m, p, SexticUnknown::A { b, c })?,
        });
    }

    if options.formulas == FormulaSet::Printed && p == 1 {
        return printed_sextic_first_order(b, c, m);
    }

    let at1 = rows(spec, &profile, m, p + 1, 1.0, options.formulas)?;
    roots_or_error(&continuant_polynomial(&at0, &at1, p))
}

/// The published closed form for the two first-order sextic energies.
fn printed_sextic_first_order(b: f64, c: f64, m: u32) -> Result<Vec<RealRoot>> {
    let m = f64::from(m);
    let sc = c.sqrt();
    let disc = b * b * (2.0 + m) - 4.0 * c * (1.0 + m) * (2.0 + 2.0 * sc * (2.0 + m));
    if disc < 0.0 {
        return Err(QesError::NonRealEnergy { discriminant: disc });
    }
    let centre = b * (2.0 + m) / sc;
    let half = disc.sqrt() / sc;
    Ok(vec![RealRoot { value: centre - half, multiplicity: 1 }, RealRoot { value: centre + half, multiplicity: 1 }])
}

/// Energy fixed by `A_p = 0` for the mixed family:
/// `E_p = 2√b(1 + m + p) − a²/(4b)` (the printed variant omits `a²/(4b)`).
pub fn mixed_energy(spec: &PotentialSpec, m: u32, p: usize) -> Result<f64> {
    mixed_energy_with(spec, m, p, FormulaSet::Corrected)
}

pub fn mixed_energy_with(spec: &PotentialSpec, m: u32, p: usize, formulas: FormulaSet) -> Result<f64> {
    if spec.family() != Family::Mixed {
        return Err(QesError::FamilyMismatch { expected: Family::Mixed, found: spec.family() });
    }
    energy_from_truncation(spec, m, p, formulas)
}

/// Energy fixed by `A_p = 0` for the singular family: `E_p = √a(4 + 4p + 2μ)`.
pub fn singular_energy(spec: &PotentialSpec, m: u32, p: usize) -> Result<f64> {
    if spec.family() != Family::SingularEvenPower {
        return Err(QesError::FamilyMismatch { expected: Family::SingularEvenPower, found: spec.family() });
    }
    energy_from_truncation(spec, m, p, FormulaSet::Corrected)
}

/// `A_p` has unit slope in `E`, so `E = −A_p(E = 0)`.
fn energy_from_truncation(spec: &PotentialSpec, m: u32, p: usize, formulas: FormulaSet) -> Result<f64> {
    let profile = build_profile(spec, m)?;
    let row = crate::recurrence::coeff_row_with(spec, &profile, m, p, 0.0, formulas)?;
    Ok(-row.lower)
}

/// Determinant roots in the coefficient `name` at fixed energy.
fn parameter_roots(
    spec: &PotentialSpec,
    name: &str,
    m: u32,
    p: usize,
    energy: f64,
    formulas: FormulaSet,
) -> Result<Vec<f64>> {
    let spec0 = spec.with_coefficient(name, 0.0)?;
    let spec1 = spec.with_coefficient(name, 1.0)?;
    let profile = build_profile(&spec0, m)?;
    let at0 = rows(&spec0, &profile, m, p + 1, energy, formulas)?;
    let at1 = rows(&spec1, &profile, m, p + 1, energy, formulas)?;
    Ok(roots_or_error(&continuant_polynomial(&at0, &at1, p))?.into_iter().map(|r| r.value).collect())
}

/// Admissible Coulomb coefficients `c` for the mixed family.
pub fn mixed_coulomb_solve(a: f64, b: f64, m: u32, p: usize) -> Result<Vec<f64>> {
    mixed_coulomb_solve_with(a, b, m, p, FormulaSet::Corrected)
}

pub fn mixed_coulomb_solve_with(a: f64, b: f64, m: u32, p: usize, formulas: FormulaSet) -> Result<Vec<f64>> {
    let spec = PotentialSpec::Mixed { a, b, c: 0.0 }.validate()?;
    let mf = f64::from(m);
    let sb = b.sqrt();
    match (formulas, p) {
        (FormulaSet::Printed, 0) => Ok(vec![a * (1.0 + 2.0 * mf) / (2.0 * sb)]),
        (FormulaSet::Printed, 1) => {
            // (c + u)(c + v) = w
            let u = (1.0 + 2.0 * mf) * a / (2.0 * sb);
            let v = (3.0 + 2.0 * mf) * a / (2.0 * sb);
            let w = 2.0 * sb * (1.0 + 2.0 * mf);
            real_quadratic_roots(1.0, u + v, u * v - w)
        }
        _ => {
            let energy = mixed_energy_with(&spec, m, p, formulas)?;
            parameter_roots(&spec, "c", m, p, energy, formulas)
        }
    }
}

/// Admissible inverse-square coefficients `b` for the singular family.
pub fn singular_b_solve(a: f64, c: f64, d: f64, m: u32, p: usize) -> Result<Vec<f64>> {
    singular_b_solve_with(a, c, d, m, p, FormulaSet::Corrected)
}

pub fn singular_b_solve_with(a: f64, c: f64, d: f64, m: u32, p: usize, formulas: FormulaSet) -> Result<Vec<f64>> {
    let spec = PotentialSpec::SingularEvenPower { a, b: 0.0, c, d }.validate()?;
    let mf = f64::from(m);
    let mu = c / (2.0 * d.sqrt());
    let shift = -2.0 * (a * d).sqrt() - mf * mf;
    match (formulas, p) {
        (FormulaSet::Printed, 0) => Ok(vec![(1.0 + mu).powi(2) + shift]),
        (FormulaSet::Printed, 1) => {
            // (s₁ − b)(s₂ − b) = 16√(ad)
            let s1 = shift + (1.0 + mu).powi(2);
            let s2 = shift + (3.0 + mu).powi(2);
            real_quadratic_roots(1.0, -(s1 + s2), s1 * s2 - 16.0 * (a * d).sqrt())
        }
        _ => {
            let energy = singular_energy(&spec, m, p)?;
            parameter_roots(&spec, "b", m, p, energy, formulas)
        }
    }
}

/// Builds the solution record for a given energy.
fn assemble(
    spec: &PotentialSpec,
    m: u32,
    p: usize,
    energy: f64,
    multiplicity: usize,
    formulas: FormulaSet,
) -> Result<QesSolution> {
    let profile = build_profile(spec, m)?;
    let coefficients = series_coefficients_with(spec, &profile, m, p, energy, formulas)?;
    let truth = rows(spec, &profile, m, p + 1, energy, FormulaSet::Corrected)?;
    Ok(QesSolution {
        spec: *spec,
        m,
        p,
        energy,
        coefficients,
        termination_residual: truth[p].lower,
        determinant_residual: continuant(&truth, p),
        determinant_scale: continuant_scale(&truth, p),
        multiplicity,
        formulas,
    })
}

fn nearest_match(value: f64, admissible: &[f64], tolerance: f64) -> bool {
    admissible.iter().any(|&r| (value - r).abs() <= tolerance * r.abs().max(1.0))
}

/// All closed-form states of order `p` for `spec` at angular momentum `m`.
///
/// Sextic: checks the truncation condition, then returns one state per real
/// determinant root. Mixed and singular: the energy is fixed by truncation
/// and the state exists only if the given `c` (mixed) or `b` (singular) is
/// one of the determinant roots.
pub fn solve(spec: &PotentialSpec, m: u32, p: usize, options: SolveOptions) -> Result<Vec<QesSolution>> {
    let spec = spec.validate()?;
    let formulas = options.formulas;
    let mut out = match spec {
        PotentialSpec::Sextic { .. } => sextic_energies_with(&spec, m, p, options)?
            .into_iter()
            .map(|root| assemble(&spec, m, p, root.value, root.multiplicity, formulas))
            .collect::<Result<Vec<_>>>()?,
        PotentialSpec::Mixed { a, b, c } => {
            let admissible = mixed_coulomb_solve_with(a, b, m, p, formulas)?;
            if !nearest_match(c, &admissible, options.tolerance) {
                return Err(parameter_violation(&spec, "c", m, p, formulas, admissible));
            }
            let energy = mixed_energy_with(&spec, m, p, formulas)?;
            vec![assemble(&spec, m, p, energy, 1, formulas)?]
        }
        PotentialSpec::SingularEvenPower { a, b, c, d } => {
            let admissible = singular_b_solve_with(a, c, d, m, p, formulas)?;
            if !nearest_match(b, &admissible, options.tolerance) {
                return Err(parameter_violation(&spec, "b", m, p, formulas, admissible));
            }
            let energy = singular_energy(&spec, m, p)?;
            vec![assemble(&spec, m, p, energy, 1, formulas)?]
        }
    };
    out.sort_by(|x, y| x.energy.total_cmp(&y.energy));
    Ok(out)
}

fn parameter_violation(
    spec: &PotentialSpec,
    parameter: &'static str,
    m: u32,
    p: usize,
    formulas: FormulaSet,
    nearest: Vec<f64>,
) -> QesError {
    let residual = energy_from_truncation(spec, m, p, formulas)
        .and_then(|e| {
            let profile = build_profile(spec, m)?;
            let rows = rows(spec, &profile, m, p + 1, e, formulas)?;
            Ok(continuant(&rows, p))
        })
        .unwrap_or(f64::NAN);
    QesError::ConstraintViolated { condition: "determinant condition D_p = 0", parameter, residual, nearest }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn row(n: usize, lower: f64, diag: f64, upper: f64) -> RecurrenceRow {
        RecurrenceRow { n, lower, diag, upper }
    }

    #[test]
    fn continuant_small_orders() {
        let rows = [row(0, 2.0, 3.0, 0.0), row(1, 5.0, 7.0, 11.0), row(2, 0.0, 13.0, 17.0)];
        assert_eq!(continuant(&rows, 0), 3.0);
        assert_eq!(continuant(&rows, 1), 3.0 * 7.0 - 2.0 * 11.0);
        assert_eq!(continuant(&rows, 2), 13.0 * (21.0 - 22.0) - 5.0 * 17.0 * 3.0);
    }

    #[test]
    fn sextic_ground_state_energy() {
        let spec = PotentialSpec::Sextic { a: -3.75, b: 1.0, c: 1.0 };
        let e = sextic_energies(&spec, 0, 0).unwrap();
        assert_eq!(e.len(), 1);
        assert_relative_eq!(e[0].value, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn sextic_first_order_pair() {
        let spec = PotentialSpec::Sextic { a: -7.75, b: 1.0, c: 1.0 };
        let e = sextic_energies(&spec, 0, 1).unwrap();
        assert_eq!(e.len(), 2);
        assert_relative_eq!(e[0].value, 2.0 - 17f64.sqrt(), epsilon = 1e-10);
        assert_relative_eq!(e[1].value, 2.0 + 17f64.sqrt(), epsilon = 1e-10);
    }

    #[test]
    fn sextic_without_quartic_term() {
        let a = sextic_constraint_solve(1, 0, SexticUnknown::A { b: 0.0, c: 1.0 }).unwrap()[0];
        let spec = PotentialSpec::Sextic { a, b: 0.0, c: 1.0 };
        let e = sextic_energies(&spec, 1, 0).unwrap();
        assert_eq!(e.len(), 1);
        assert!(e[0].value.abs() < 1e-14);
    }

    #[test]
    fn printed_sextic_first_order_is_not_real() {
        let spec = PotentialSpec::Sextic { a: -7.75, b: 1.0, c: 1.0 };
        let opts = SolveOptions { formulas: FormulaSet::Printed, ..Default::default() };
        assert_eq!(sextic_energies_with(&spec, 0, 1, opts), Err(QesError::NonRealEnergy { discriminant: -22.0 }));
    }

    #[test]
    fn sextic_constraint_values() {
        let a = |m, p, b, c| sextic_constraint_solve(m, p, SexticUnknown::A { b, c }).unwrap()[0];
        assert_eq!(a(0, 0, 1.0, 1.0), -3.75);
        assert_eq!(a(0, 1, 1.0, 1.0), -7.75);
        assert_eq!(a(2, 0, 0.0, 4.0), -16.0);
    }

    #[test]
    fn sextic_constraint_for_b_and_c() {
        let b = sextic_constraint_solve(0, 1, SexticUnknown::B { a: -7.75, c: 1.0 }).unwrap();
        assert_eq!(b.len(), 2);
        assert_relative_eq!(b[1], 1.0, epsilon = 1e-14);
        assert_relative_eq!(b[0], -1.0, epsilon = 1e-14);

        let c = sextic_constraint_solve(0, 1, SexticUnknown::C { a: -7.75, b: 1.0 }).unwrap()[0];
        let residual = -7.75 + 2.0 * c.sqrt() * 4.0 - 1.0 / (4.0 * c);
        assert!(residual.abs() <= 1e-12 * 8.0);
        assert_relative_eq!(c, 1.0, max_relative = 1e-12);

        assert!(sextic_constraint_solve(0, 0, SexticUnknown::C { a: 1.0, b: 0.0 }).is_err());
        assert!(sextic_constraint_solve(0, 0, SexticUnknown::B { a: 1.0, c: -1.0 }).is_err());
    }

    #[test]
    fn mixed_energies() {
        let e = |a, b, m, p| mixed_energy(&PotentialSpec::Mixed { a, b, c: 0.0 }, m, p).unwrap();
        assert_eq!(e(0.0, 1.0, 0, 0), 2.0);
        assert_eq!(e(1.0, 1.0, 0, 0), 1.75);
        assert_eq!(e(0.0, 4.0, 1, 2), 16.0);
        let printed = mixed_energy_with(&PotentialSpec::Mixed { a: 1.0, b: 1.0, c: 0.0 }, 0, 0, FormulaSet::Printed);
        assert_eq!(printed.unwrap(), 2.0);
    }

    #[test]
    fn mixed_coulomb_roots() {
        let c = mixed_coulomb_solve(1.0, 1.0, 0, 0).unwrap();
        assert_eq!(c.len(), 1);
        assert_relative_eq!(c[0], -0.5, epsilon = 1e-14);
        let c = mixed_coulomb_solve(0.0, 1.0, 0, 0).unwrap();
        assert!(c[0].abs() < 1e-15);
        let printed = mixed_coulomb_solve_with(1.0, 1.0, 0, 0, FormulaSet::Printed).unwrap();
        assert_eq!(printed, vec![0.5]);
    }

    #[test]
    fn singular_energies() {
        let e = |a, c, d, p| singular_energy(&PotentialSpec::SingularEvenPower { a, b: 0.0, c, d }, 0, p).unwrap();
        assert_eq!(e(1.0, 2.0, 1.0, 0), 6.0);
        assert_eq!(e(1.0, 2.0, 1.0, 1), 10.0);
        assert_eq!(e(4.0, 0.0, 1.0, 0), 8.0);
    }

    #[test]
    fn singular_b_roots() {
        let b = singular_b_solve(1.0, 2.0, 1.0, 0, 0).unwrap();
        assert_relative_eq!(b[0], 2.0, epsilon = 1e-14);
        let b = singular_b_solve(1.0, 2.0, 1.0, 1, 0).unwrap();
        assert_relative_eq!(b[0], 1.0, epsilon = 1e-14);
        let b = singular_b_solve(1.0, 2.0, 1.0, 0, 1).unwrap();
        assert_eq!(b.len(), 2);
        assert_relative_eq!(b[0], 8.0 - 2.0 * 13f64.sqrt(), epsilon = 1e-12);
        assert_relative_eq!(b[1], 8.0 + 2.0 * 13f64.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn printed_singular_closed_forms_agree_with_determinant() {
        for (m, p) in [(0, 0), (1, 0), (0, 1), (2, 1)] {
            let corrected = singular_b_solve(1.3, 0.7, 2.1, m, p).unwrap();
            let printed = singular_b_solve_with(1.3, 0.7, 2.1, m, p, FormulaSet::Printed).unwrap();
            assert_eq!(corrected.len(), printed.len());
            for (x, y) in corrected.iter().zip(&printed) {
                assert_relative_eq!(x, y, max_relative = 1e-11, epsilon = 1e-11);
            }
        }
    }

    #[test]
    fn solve_sextic_ground_state() {
        let spec = PotentialSpec::Sextic { a: -3.75, b: 1.0, c: 1.0 };
        let sols = solve(&spec, 0, 0, SolveOptions::default()).unwrap();
        assert_eq!(sols.len(), 1);
        assert_relative_eq!(sols[0].energy, 1.0, epsilon = 1e-12);
        assert_eq!(sols[0].coefficients.values(), &[1.0]);
        assert!(sols[0].is_consistent(1e-9));
    }

    #[test]
    fn solve_reports_violated_truncation() {
        let spec = PotentialSpec::Sextic { a: 0.0, b: 1.0, c: 1.0 };
        match solve(&spec, 0, 0, SolveOptions::default()) {
            Err(QesError::ConstraintViolated { residual, nearest, parameter, .. }) => {
                assert_eq!(residual, -3.75);
                assert_eq!(parameter, "a");
                assert_eq!(nearest, vec![-3.75]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn solve_singular_ground_state() {
        let spec = PotentialSpec::SingularEvenPower { a: 1.0, b: 2.0, c: 2.0, d: 1.0 };
        let sols = solve(&spec, 0, 0, SolveOptions::default()).unwrap();
        assert_eq!(sols.len(), 1);
        assert_eq!(sols[0].energy, 6.0);
        assert!(sols[0].is_consistent(1e-9));
    }

    #[test]
    fn solve_mixed_rejects_printed_coulomb_coefficient() {
        let spec = PotentialSpec::Mixed { a: 1.0, b: 1.0, c: 0.5 };
        match solve(&spec, 0, 0, SolveOptions::default()) {
            Err(QesError::ConstraintViolated { parameter: "c", nearest, .. }) => {
                assert_relative_eq!(nearest[0], -0.5, epsilon = 1e-14);
            }
            other => panic!("unexpected {other:?}"),
        }
        let opts = SolveOptions { formulas: FormulaSet::Printed, ..Default::default() };
        let sols = solve(&spec, 0, 0, opts).unwrap();
        assert_eq!(sols[0].energy, 2.0);
        assert!(!sols[0].is_consistent(1e-9));
    }
}
