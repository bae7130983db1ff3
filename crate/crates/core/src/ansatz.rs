//! Exponential prefactor and leading power of the trial eigenfunction
//! `R(r) = exp(p(r)) · Σ aₖ r^{k·step + δ}`.
//!
//! | family   | p(r)                 | β      | α          | δ         | step |
//! |----------|----------------------|--------|------------|-----------|------|
//! | sextic   | α r²/2 + β r⁴/4      | −√c    | −b/(2√c)   | m + 1/2   | 2    |
//! | mixed    | α r + β r²/2         | −√b    | −a/(2√b)   | m + 1/2   | 1    |
//! | singular | α r²/2 + β r⁻²/2     | −√d    | −√a        | 3/2 + μ   | 2    |
//!
//! with `μ = c/(2√d)` for the singular family. Only the decaying root
//! branches are built.

use crate::error::{QesError, Result};
use crate::potentials::{Family, PotentialSpec};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnsatzProfile {
    pub family: Family,
    pub alpha: f64,
    pub beta: f64,
    /// Leading power of the series at the origin.
    pub delta: f64,
    /// `c/(2√d)` for the singular family, zero otherwise.
    pub mu: f64,
    /// Power increment between consecutive series terms.
    pub step: u32,
}

/// Exponent `p(r)` with its first two derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Exponent {
    pub value: f64,
    pub first: f64,
    pub second: f64,
}

pub fn build_profile(spec: &PotentialSpec, m: u32) -> Result<AnsatzProfile> {
    let spec = spec.validate()?;
    let m = f64::from(m);
    let profile = match spec {
        PotentialSpec::Sextic { b, c, .. } => {
            let beta = -c.sqrt();
            AnsatzProfile { family: Family::Sextic, alpha: b / (2.0 * beta), beta, delta: m + 0.5, mu: 0.0, step: 2 }
        }
        PotentialSpec::Mixed { a, b, .. } => {
            let beta = -b.sqrt();
            AnsatzProfile { family: Family::Mixed, alpha: a / (2.0 * beta), beta, delta: m + 0.5, mu: 0.0, step: 1 }
        }
        PotentialSpec::SingularEvenPower { a, c, d, .. } => {
            let beta = -d.sqrt();
            let mu = c / (2.0 * d.sqrt());
            // C_0 = β(3 − 2δ) − c = 0
            let delta = 0.5 * (3.0 - c / beta);
            debug_assert!((delta - (1.5 + mu)).abs() <= 1e-12 * (1.0 + mu));
            AnsatzProfile { family: Family::SingularEvenPower, alpha: -a.sqrt(), beta, delta, mu, step: 2 }
        }
    };
    Ok(profile)
}

impl AnsatzProfile {
    pub fn exponent(&self, r: f64) -> Result<Exponent> {
        if !(r > 0.0 && r.is_finite()) {
            return Err(QesError::Domain(r));
        }
        let (alpha, beta) = (self.alpha, self.beta);
        Ok(match self.family {
            Family::Sextic => {
                let r2 = r * r;
                Exponent {
                    value: 0.5 * alpha * r2 + 0.25 * beta * r2 * r2,
                    first: alpha * r + beta * r2 * r,
                    second: alpha + 3.0 * beta * r2,
                }
            }
            Family::Mixed => Exponent { value: alpha * r + 0.5 * beta * r * r, first: alpha + beta * r, second: beta },
            Family::SingularEvenPower => {
                let r2 = r * r;
                let inv2 = 1.0 / r2;
                Exponent {
                    value: 0.5 * alpha * r2 + 0.5 * beta * inv2,
                    first: alpha * r - beta * inv2 / r,
                    second: alpha + 3.0 * beta * inv2 * inv2,
                }
            }
        })
    }
}

/// `(p, p′, p″)` at `r`.
pub fn prefactor_and_derivatives(profile: &AnsatzProfile, r: f64) -> Result<(f64, f64, f64)> {
    let e = profile.exponent(r)?;
    Ok((e.value, e.first, e.second))
}
