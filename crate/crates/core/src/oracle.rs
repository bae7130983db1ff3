//! Independent check of the closed forms: a finite-volume discretization of
//! the radial problem, diagonalized by Sturm-sequence bisection, plus the
//! pointwise ODE residual of each closed-form state.
//!
//! The radial operator is discretized in conservative form,
//! `−(1/r)(r u′)′ + (m²/r² + V) u` with `u = R/√r`, on cell centres
//! `rᵢ = r_min + (i + ½)h`. Symmetrizing with `vᵢ = √rᵢ uᵢ` gives a symmetric
//! tridiagonal matrix. When `r_min = 0` the left face has zero area, so the
//! origin needs no boundary condition and the scheme stays second order
//! for `m = 0`; otherwise both ends are Dirichlet.

use crate::error::{QesError, Result};
use crate::potentials::{Family, PotentialSpec};
use crate::quantization::QesSolution;
use crate::wavefunction::RadialState;

pub const EIGENVALUE_TOLERANCE: f64 = 1e-10;
pub const MATCH_TOLERANCE: f64 = 1e-3;
pub const RESIDUAL_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub r_min: f64,
    pub r_max: f64,
    /// Number of cells (= matrix dimension).
    pub n_points: usize,
}

impl Grid {
    pub fn new(r_min: f64, r_max: f64, n_points: usize) -> Result<Self> {
        if !(r_min >= 0.0 && r_min < r_max && r_max.is_finite()) {
            return Err(QesError::Grid(format!("need 0 ≤ r_min < r_max, got [{r_min}, {r_max}]")));
        }
        if n_points < 100 {
            return Err(QesError::Grid(format!("need at least 100 points, got {n_points}")));
        }
        Ok(Self { r_min, r_max, n_points })
    }

    pub fn default_for(family: Family) -> Self {
        match family {
            Family::Sextic | Family::Mixed => Self { r_min: 0.0, r_max: 12.0, n_points: 20000 },
            Family::SingularEvenPower => Self { r_min: 0.05, r_max: 10.0, n_points: 20000 },
        }
    }

    pub fn spacing(&self) -> f64 {
        (self.r_max - self.r_min) / self.n_points as f64
    }

    pub fn centre(&self, i: usize) -> f64 {
        self.r_min + (i as f64 + 0.5) * self.spacing()
    }
}

/// Symmetric tridiagonal matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

impl SymTridiagonal {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Self {
        assert_eq!(off.len() + 1, diag.len());
        Self { diag, off }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Number of eigenvalues below `shift`: negative pivots of the LDLᵀ
    /// factorization of `T − shift·I`.
    pub fn sturm_count(&self, shift: f64) -> usize {
        let mut count = 0;
        let mut q = 1.0;
        for i in 0..self.diag.len() {
            let coupling = if i == 0 { 0.0 } else { self.off[i - 1] * self.off[i - 1] / q };
            q = self.diag[i] - shift - coupling;
            if q == 0.0 {
                q = -f64::EPSILON * (self.diag[i].abs() + shift.abs()).max(f64::MIN_POSITIVE);
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Gershgorin enclosure of the spectrum.
    pub fn bounds(&self) -> (f64, f64) {
        let n = self.diag.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// The `k`-th smallest eigenvalue (0-based), bisected to `tol`.
    pub fn eigenvalue(&self, k: usize, tol: f64) -> f64 {
        let (mut lo, mut hi) = self.bounds();
        lo -= 1.0;
        hi += 1.0;
        while hi - lo > tol {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.sturm_count(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// Eigenvector for a (converged) eigenvalue by inverse iteration.
    pub fn eigenvector(&self, eigenvalue: f64) -> Vec<f64> {
        let n = self.diag.len();
        let shift = eigenvalue + 1e-9 * (1.0 + eigenvalue.abs());
        let mut x = vec![1.0; n];
        for _ in 0..3 {
            x = self.solve_shifted(shift, &x);
            let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm > 0.0 && norm.is_finite() {
                x.iter_mut().for_each(|v| *v /= norm);
            }
        }
        x
    }

    /// Thomas algorithm for `(T − shift·I) x = rhs`.
    fn solve_shifted(&self, shift: f64, rhs: &[f64]) -> Vec<f64> {
        let n = self.diag.len();
        let mut c = vec![0.0; n];
        let mut d = vec![0.0; n];
        let guard = |q: f64| if q == 0.0 { f64::EPSILON } else { q };
        let mut q = guard(self.diag[0] - shift);
        if n > 1 {
            c[0] = self.off[0] / q;
        }
        d[0] = rhs[0] / q;
        for i in 1..n {
            q = guard(self.diag[i] - shift - self.off[i - 1] * c[i - 1]);
            if i + 1 < n {
                c[i] = self.off[i] / q;
            }
            d[i] = (rhs[i] - self.off[i - 1] * d[i - 1]) / q;
        }
        for i in (0..n - 1).rev() {
            d[i] -= c[i] * d[i + 1];
        }
        d
    }
}

/// Sign changes in `v`, ignoring entries below `1e−6` of the largest.
pub fn sign_changes(v: &[f64]) -> usize {
    let peak = v.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
    let floor = 1e-6 * peak;
    let mut last = 0.0f64;
    let mut changes = 0;
    for &x in v.iter().filter(|x| x.abs() > floor) {
        if last != 0.0 && x.signum() != last.signum() {
            changes += 1;
        }
        last = x;
    }
    changes
}

/// Discretized radial Hamiltonian at angular momentum `m`.
pub fn radial_matrix(spec: &PotentialSpec, m: u32, grid: &Grid) -> Result<SymTridiagonal> {
    if spec.family() == Family::SingularEvenPower && grid.r_min <= 0.0 {
        return Err(QesError::Grid("singular potentials need r_min > 0".into()));
    }
    let n = grid.n_points;
    let h = grid.spacing();
    let h2 = h * h;
    let m2 = f64::from(m).powi(2);
    let face = |i: usize| grid.r_min + i as f64 * h;
    let mut diag = Vec::with_capacity(n);
    let mut off = Vec::with_capacity(n - 1);
    for i in 0..n {
        let r = grid.centre(i);
        let v = spec.value(r)?;
        if !v.is_finite() {
            return Err(QesError::Grid(format!("potential is not finite at r = {r}")));
        }
        // ghost-cell Dirichlet at the outer faces
        let left = if i == 0 { 2.0 * face(0) } else { face(i) };
        let right = if i + 1 == n { 2.0 * face(n) } else { face(i + 1) };
        diag.push((left + right) / (h2 * r) + m2 / (r * r) + v);
        if i + 1 < n {
            off.push(-face(i + 1) / (h2 * (r * grid.centre(i + 1)).sqrt()));
        }
    }
    Ok(SymTridiagonal::new(diag, off))
}

/// Lowest `k` eigenvalues of the discretized radial problem.
pub fn fd_spectrum(spec: &PotentialSpec, m: u32, grid: &Grid, k: usize) -> Result<Vec<f64>> {
    let t = radial_matrix(spec, m, grid)?;
    Ok((0..k.min(t.len())).map(|j| t.eigenvalue(j, EIGENVALUE_TOLERANCE)).collect())
}

/// 50 log-spaced radii on [0.2, 2.5].
pub fn residual_sample_points() -> Vec<f64> {
    let (lo, hi) = (0.2f64.ln(), 2.5f64.ln());
    (0..50).map(|i| (lo + (hi - lo) * i as f64 / 49.0).exp()).collect()
}

/// `max |R″ + (E − V_eff)R| / max(1, |E·R|)` over [`residual_sample_points`],
/// for the `a₀ = 1` state with analytic derivatives.
pub fn ode_residual(solution: &QesSolution) -> f64 {
    let Ok(state) = RadialState::unnormalized(solution.clone()) else {
        return f64::INFINITY;
    };
    let energy = solution.energy;
    residual_sample_points()
        .into_iter()
        .map(|r| {
            let (Ok((value, _, second)), Ok(veff)) = (state.derivatives(r), solution.spec.effective(solution.m, r))
            else {
                return f64::INFINITY;
            };
            let res = (second + (energy - veff) * value).abs() / (energy * value).abs().max(1.0);
            if res.is_nan() {
                f64::INFINITY
            } else {
                res
            }
        })
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub closed_form: f64,
    /// Nearest eigenvalue of the discretized problem.
    pub oracle: f64,
    /// 0-based index of that eigenvalue.
    pub index: usize,
    pub delta: f64,
    pub ode_residual: f64,
    /// Interior sign changes of the matched discrete eigenvector.
    pub sign_changes: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    /// Lowest eigenvalues of the discretized problem, up to the highest matched index.
    pub eigenvalues: Vec<f64>,
    pub matched: Vec<Comparison>,
    pub residual_max: f64,
}

impl OracleReport {
    pub fn all_pass(&self) -> bool {
        !self.matched.is_empty() && self.matched.iter().all(|c| c.pass)
    }
}

/// Matches each closed-form energy to the nearest discrete eigenvalue.
/// PASS iff `|Δ| ≤ max(1e−3, 1e−3·|E|)` and the ODE residual is ≤ 1e−8.
/// All solutions must share one spec and `m`.
pub fn cross_validate(solutions: &[QesSolution], grid: &Grid) -> Result<OracleReport> {
    let Some(first) = solutions.first() else {
        return Ok(OracleReport { eigenvalues: Vec::new(), matched: Vec::new(), residual_max: 0.0 });
    };
    let t = radial_matrix(&first.spec, first.m, grid)?;
    let mut matched = Vec::with_capacity(solutions.len());
    let mut top = 0;
    for sol in solutions {
        if sol.spec != first.spec || sol.m != first.m {
            return Err(QesError::Grid("cross-validation needs a common spec and m".into()));
        }
        let e = sol.energy;
        let below = t.sturm_count(e);
        let mut best = (usize::MAX, f64::NAN);
        for idx in [below.checked_sub(1), Some(below)].into_iter().flatten() {
            if idx >= t.len() {
                continue;
            }
            let ev = t.eigenvalue(idx, EIGENVALUE_TOLERANCE);
            if best.0 == usize::MAX || (ev - e).abs() < (best.1 - e).abs() {
                best = (idx, ev);
            }
        }
        let (index, oracle) = best;
        let delta = (oracle - e).abs();
        let residual = ode_residual(sol);
        let sign_changes = sign_changes(&t.eigenvector(oracle));
        let pass = delta.is_finite()
            && delta <= MATCH_TOLERANCE.max(MATCH_TOLERANCE * e.abs())
            && residual <= RESIDUAL_TOLERANCE;
        top = top.max(index + 1);
        matched.push(Comparison { closed_form: e, oracle, index, delta, ode_residual: residual, sign_changes, pass });
    }
    let eigenvalues = (0..top.min(t.len())).map(|j| t.eigenvalue(j, EIGENVALUE_TOLERANCE)).collect();
    let residual_max = matched.iter().map(|c| c.ode_residual).fold(0.0, f64::max);
    Ok(OracleReport { eigenvalues, matched, residual_max })
}
