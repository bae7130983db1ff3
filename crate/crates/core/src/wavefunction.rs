//! Closed-form radial eigenfunctions
//! `R(r) = N · (Σ aₖ r^{k·step}) · r^δ · exp(p(r))` and the full 2D state
//! `ψ(r, φ) = (2π)^{−1/2} r^{−1/2} R(r) e^{±imφ}`.
//!
//! `N` is chosen so that `∫₀^∞ R² dr = 1`; the explicit `(2π)^{−1/2}` then
//! makes `∫∫ |ψ|² r dr dφ = 1`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::ansatz::{build_profile, AnsatzProfile};
use crate::error::{QesError, Result};
use crate::potentials::Family;
use crate::quadrature::{adaptive_simpson, gauss_legendre_composite};
use crate::quantization::QesSolution;
use crate::roots::{real_roots, Polynomial};

const TAIL_FRACTION: f64 = 1e-16;
const QUADRATURE_RTOL: f64 = 1e-11;
const SCHEME_AGREEMENT: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct RadialState {
    pub solution: QesSolution,
    pub profile: AnsatzProfile,
    pub normalization: f64,
    pub node_count: usize,
}

impl RadialState {
    /// State with `N = 1`, i.e. the raw `a₀ = 1` series.
    pub fn unnormalized(solution: QesSolution) -> Result<Self> {
        let profile = build_profile(&solution.spec, solution.m)?;
        let node_count = node_count(&solution);
        Ok(Self { solution, profile, normalization: 1.0, node_count })
    }

    pub fn value(&self, r: f64) -> Result<f64> {
        Ok(self.derivatives(r)?.0)
    }

    /// `(R, R′, R″)` by the product rule over polynomial, `r^δ` and `exp(p)`.
    pub fn derivatives(&self, r: f64) -> Result<(f64, f64, f64)> {
        let e = self.profile.exponent(r)?;
        let delta = self.profile.delta;
        let step = f64::from(self.profile.step);
        let mut u = 0.0;
        let mut du = 0.0;
        let mut d2u = 0.0;
        let rs = r.powi(self.profile.step as i32);
        let mut xk = 1.0;
        for (k, &a) in self.solution.coefficients.values().iter().enumerate() {
            let power = k as f64 * step + delta;
            u += a * xk;
            du += a * power * xk;
            d2u += a * power * (power - 1.0) * xk;
            xk *= rs;
        }
        let rd = r.powf(delta);
        let (u, du, d2u) = (u * rd, du * rd / r, d2u * rd / (r * r));
        let scale = self.normalization * e.value.exp();
        if scale == 0.0 {
            return Ok((0.0, 0.0, 0.0));
        }
        Ok((
            scale * u,
            scale * (du + e.first * u),
            scale * (d2u + 2.0 * e.first * du + (e.second + e.first * e.first) * u),
        ))
    }

    /// Interval outside which `R²` is below `1e−16` of its peak. The lower
    /// end is 0 unless the singular family suppresses the origin.
    pub fn support(&self) -> Result<(f64, f64)> {
        let n = 4000;
        let (lg_lo, lg_hi) = (-4.0f64, 4.0f64);
        let grid: Vec<f64> = (0..=n).map(|i| 10f64.powf(lg_lo + (lg_hi - lg_lo) * i as f64 / n as f64)).collect();
        let vals: Vec<f64> = grid.iter().map(|&r| self.value(r).map(|v| v * v)).collect::<Result<_>>()?;
        let peak = vals.iter().cloned().fold(0.0, f64::max);
        if !(peak > 0.0 && peak.is_finite()) {
            return Err(QesError::QuadratureFailure { tolerance: QUADRATURE_RTOL, estimate: peak });
        }
        let cut = TAIL_FRACTION * peak;
        let last = vals.iter().rposition(|&v| v >= cut).unwrap_or(n);
        let hi = grid[(last + 1).min(n)];
        let lo = if self.profile.family == Family::SingularEvenPower {
            let first = vals.iter().position(|&v| v >= cut).unwrap_or(0);
            grid[first.saturating_sub(1)]
        } else {
            0.0
        };
        Ok((lo, hi))
    }
}

/// `∫ R(r)² dr` over the support, by adaptive Simpson; also returns the
/// Gauss–Legendre estimate for comparison.
pub fn norm_squared(state: &RadialState) -> Result<(f64, f64)> {
    let (lo, hi) = state.support()?;
    let f = |r: f64| {
        if r <= 0.0 {
            0.0
        } else {
            state.value(r).map(|v| v * v).unwrap_or(f64::NAN)
        }
    };
    let gl = gauss_legendre_composite(f, lo, hi, 64, 16);
    let simpson = adaptive_simpson(f, lo, hi, QUADRATURE_RTOL * gl.abs(), 16)?;
    Ok((simpson, gl))
}

/// Normalizes a solution so that `∫₀^∞ R² dr = 1` with `a₀ > 0`.
pub fn normalize(solution: QesSolution) -> Result<RadialState> {
    let mut state = RadialState::unnormalized(solution)?;
    let a0 = state.solution.coefficients.values()[0];
    state.normalization = a0.signum();
    let (simpson, gl) = norm_squared(&state)?;
    if (simpson - gl).abs() > SCHEME_AGREEMENT * simpson.abs() || simpson <= 0.0 {
        return Err(QesError::QuadratureFailure { tolerance: SCHEME_AGREEMENT, estimate: simpson - gl });
    }
    state.normalization = a0.signum() / simpson.sqrt();
    Ok(state)
}

/// Distinct positive real roots of `Σ aₖ xᵏ`.
pub fn node_count(solution: &QesSolution) -> usize {
    let poly = Polynomial::new(solution.coefficients.values().to_vec());
    if poly.degree() == 0 {
        return 0;
    }
    real_roots(&poly).iter().filter(|r| r.value > 0.0).count()
}

pub fn radial_value(state: &RadialState, r: f64) -> Result<f64> {
    state.value(r)
}

pub fn radial_derivatives(state: &RadialState, r: f64) -> Result<(f64, f64, f64)> {
    state.derivatives(r)
}

/// `ψ(r, φ)` for the `e^{±imφ}` branch selected by `sign`.
pub fn full_wavefunction(state: &RadialState, r: f64, phi: f64, sign: i32) -> Result<Complex64> {
    let radial = state.value(r)? / (2.0 * PI * r).sqrt();
    let phase = f64::from(sign.signum()) * f64::from(state.solution.m) * phi;
    Ok(Complex64::from_polar(radial, phase))
}

/// `∫₀^∞ R₁ R₂ dr`.
pub fn overlap(first: &RadialState, second: &RadialState) -> Result<f64> {
    let (lo1, hi1) = first.support()?;
    let (lo2, hi2) = second.support()?;
    let (lo, hi) = (lo1.max(lo2), hi1.min(hi2));
    let f = |r: f64| {
        if r <= 0.0 {
            0.0
        } else {
            match (first.value(r), second.value(r)) {
                (Ok(x), Ok(y)) => x * y,
                _ => f64::NAN,
            }
        }
    };
    let scale = gauss_legendre_composite(|r| f(r).abs(), lo, hi, 64, 16);
    adaptive_simpson(f, lo, hi, 1e-12 * scale.max(1e-300), 16)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potentials::PotentialSpec;
    use crate::quantization::{solve, SolveOptions};
    use approx::assert_relative_eq;

    fn first(spec: PotentialSpec, m: u32, p: usize) -> QesSolution {
        solve(&spec, m, p, SolveOptions::default()).unwrap().remove(0)
    }

    const AC1: PotentialSpec = PotentialSpec::Sextic { a: -3.75, b: 1.0, c: 1.0 };
    const OSC: PotentialSpec = PotentialSpec::Mixed { a: 0.0, b: 1.0, c: 0.0 };
    const SING: PotentialSpec = PotentialSpec::SingularEvenPower { a: 1.0, b: 2.0, c: 2.0, d: 1.0 };

    #[test]
    fn unnormalized_sextic_value() {
        let s = RadialState::unnormalized(first(AC1, 0, 0)).unwrap();
        assert_relative_eq!(s.value(1.0).unwrap(), (-0.5f64).exp(), max_relative = 1e-15);
        assert_relative_eq!(s.value(1.0).unwrap(), 0.606531, epsilon = 1e-6);
    }

    #[test]
    fn oscillator_normalization() {
        let s = normalize(first(OSC, 0, 0)).unwrap();
        assert_relative_eq!(s.normalization, 2f64.sqrt(), max_relative = 1e-9);
        assert_relative_eq!(s.value(1.0).unwrap(), 2f64.sqrt() * (-0.5f64).exp(), max_relative = 1e-9);
    }

    #[test]
    fn singular_state_vanishes_near_origin() {
        let s = normalize(first(SING, 0, 0)).unwrap();
        let v = s.value(1e-3).unwrap();
        assert_eq!(v, 0.0);
        assert!(s.value(0.05).unwrap() < 1e-80);
        assert!(s.value(0.05).unwrap().is_finite());
    }

    #[test]
    fn radial_value_rejects_origin() {
        let s = RadialState::unnormalized(first(OSC, 0, 0)).unwrap();
        assert_eq!(s.value(0.0), Err(QesError::Domain(0.0)));
    }

    #[test]
    fn second_derivative_solves_radial_equation() {
        let s = RadialState::unnormalized(first(AC1, 0, 0)).unwrap();
        let (r, _, d2) = s.derivatives(1.0).unwrap();
        let veff = AC1.effective(0, 1.0).unwrap();
        assert_eq!(veff, -2.0);
        assert!((d2 + (1.0 - veff) * r).abs() <= 1e-10 * r.abs());
    }

    #[test]
    fn logarithmic_derivatives() {
        let s = RadialState::unnormalized(first(OSC, 0, 0)).unwrap();
        let (r, d1, _) = s.derivatives(1.0).unwrap();
        assert_relative_eq!(d1 / r, -0.5, max_relative = 1e-14);

        let s = RadialState::unnormalized(first(SING, 0, 0)).unwrap();
        let (r, d1, _) = s.derivatives(1.0).unwrap();
        assert_relative_eq!(d1 / r, 2.5, max_relative = 1e-14);
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let spec = PotentialSpec::Sextic { a: -7.75, b: 1.0, c: 1.0 };
        for sol in solve(&spec, 0, 1, SolveOptions::default()).unwrap() {
            let s = RadialState::unnormalized(sol).unwrap();
            for r in [0.3, 0.9, 1.6] {
                let h = 1e-5;
                let (_, d1, d2) = s.derivatives(r).unwrap();
                let (_, lo1, _) = s.derivatives(r - h).unwrap();
                let (_, hi1, _) = s.derivatives(r + h).unwrap();
                let fd1 = (s.value(r + h).unwrap() - s.value(r - h).unwrap()) / (2.0 * h);
                assert_relative_eq!(d1, fd1, epsilon = 1e-8, max_relative = 1e-7);
                assert_relative_eq!(d2, (hi1 - lo1) / (2.0 * h), epsilon = 1e-8, max_relative = 1e-7);
            }
        }
    }

    #[test]
    fn normalization_is_scale_invariant() {
        let sol = first(AC1, 0, 0);
        let mut doubled = sol.clone();
        doubled.coefficients = crate::recurrence::SeriesCoefficients::new(vec![2.0]);
        let a = normalize(sol).unwrap();
        let b = normalize(doubled).unwrap();
        for r in [0.2, 1.0, 2.0] {
            assert_relative_eq!(a.value(r).unwrap(), b.value(r).unwrap(), max_relative = 1e-12);
        }
    }

    #[test]
    fn node_counts_of_first_order_pair() {
        let spec = PotentialSpec::Sextic { a: -7.75, b: 1.0, c: 1.0 };
        let sols = solve(&spec, 0, 1, SolveOptions::default()).unwrap();
        assert!(sols[0].coefficients.values()[1] > 0.0);
        assert_eq!(node_count(&sols[0]), 0);
        assert!(sols[1].coefficients.values()[1] < 0.0);
        assert_eq!(node_count(&sols[1]), 1);
        assert_eq!(node_count(&first(AC1, 0, 0)), 0);
    }

    #[test]
    fn full_wavefunction_phase() {
        let s = normalize(first(OSC, 0, 0)).unwrap();
        let psi = full_wavefunction(&s, 0.7, 1.3, 1).unwrap();
        assert_eq!(psi.im, 0.0);
        assert_relative_eq!(psi.re, full_wavefunction(&s, 0.7, -2.0, -1).unwrap().re);

        let osc_m2 = PotentialSpec::Mixed { a: 0.0, b: 1.0, c: 0.0 };
        let s = normalize(first(osc_m2, 2, 2)).unwrap();
        let a = full_wavefunction(&s, 0.9, 0.1, 1).unwrap();
        let b = full_wavefunction(&s, 0.9, 2.4, -1).unwrap();
        assert_relative_eq!(a.norm(), b.norm(), max_relative = 1e-14);
        assert!(a.im.abs() > 0.0);
    }

    #[test]
    fn full_wavefunction_is_normalized_in_the_plane() {
        let s = normalize(first(AC1, 0, 0)).unwrap();
        let (lo, hi) = s.support().unwrap();
        let f = |r: f64| {
            if r <= 0.0 {
                0.0
            } else {
                2.0 * PI * full_wavefunction(&s, r, 0.3, 1).unwrap().norm_sqr() * r
            }
        };
        let total = gauss_legendre_composite(f, lo, hi, 64, 16);
        assert_relative_eq!(total, 1.0, max_relative = 1e-9);
    }

    #[test]
    fn first_order_pair_is_orthogonal() {
        let spec = PotentialSpec::Sextic { a: -7.75, b: 1.0, c: 1.0 };
        let sols = solve(&spec, 0, 1, SolveOptions::default()).unwrap();
        let lo = normalize(sols[0].clone()).unwrap();
        let hi = normalize(sols[1].clone()).unwrap();
        assert!(overlap(&lo, &hi).unwrap().abs() <= 1e-8);
        assert_relative_eq!(overlap(&lo, &lo).unwrap(), 1.0, max_relative = 1e-9);
    }
}
