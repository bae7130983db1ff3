//! Dense real polynomials and a Durand–Kerner root finder.

use num_complex::Complex64;

const MAX_ITERATIONS: usize = 128;
const CONVERGENCE: f64 = 1e-13;
const REAL_CUTOFF: f64 = 1e-8;
const MERGE_DISTANCE: f64 = 1e-7;

/// Polynomial with real coefficients, lowest power first.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        Self { coeffs }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![c])
    }

    /// `intercept + slope·x`
    pub fn affine(intercept: f64, slope: f64) -> Self {
        Self::new(vec![intercept, slope])
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::constant(0.0);
        }
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(k, &c)| k as f64 * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &x) in self.coeffs.iter().enumerate() {
            for (j, &y) in other.coeffs.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        Self::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[f64], k: usize| v.get(k).copied().unwrap_or(0.0);
        Self::new((0..len).map(|k| get(&self.coeffs, k) - get(&other.coeffs, k)).collect())
    }
}

/// All complex roots by simultaneous (Weierstrass) iteration.
pub fn durand_kerner(poly: &Polynomial) -> Vec<Complex64> {
    let n = poly.degree();
    if n == 0 {
        return Vec::new();
    }
    let lead = poly.coeffs[n];
    let monic = Polynomial::new(poly.coeffs.iter().map(|c| c / lead).collect());
    if n == 1 {
        return vec![Complex64::new(-monic.coeffs[0], 0.0)];
    }

    // Cauchy bound on root moduli
    let radius = 1.0 + monic.coeffs[..n].iter().fold(0.0f64, |acc, c| acc.max(c.abs()));
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32) * (0.5 * radius)).collect();

    for _ in 0..MAX_ITERATIONS {
        let mut worst = 0.0f64;
        for i in 0..n {
            let zi = z[i];
            let denom = z
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(Complex64::new(1.0, 0.0), |acc, (_, &zj)| acc * (zi - zj));
            if denom.norm() == 0.0 {
                continue;
            }
            let delta = monic.eval_complex(zi) / denom;
            z[i] = zi - delta;
            worst = worst.max(delta.norm() / (1.0 + z[i].norm()));
        }
        if worst <= CONVERGENCE {
            break;
        }
    }
    z
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealRoot {
    pub value: f64,
    /// Number of numerically coincident roots merged into this one.
    pub multiplicity: usize,
}

/// Sorted real roots. Roots with `|Im z| < 1e-8·(1 + |Re z|)` count as real;
/// roots closer than `1e-7·(1 + |x|)` are merged.
pub fn real_roots(poly: &Polynomial) -> Vec<RealRoot> {
    let deriv = poly.derivative();
    let mut reals: Vec<f64> = durand_kerner(poly)
        .into_iter()
        .filter(|z| z.im.abs() < REAL_CUTOFF * (1.0 + z.re.abs()))
        .map(|z| polish(poly, &deriv, z.re))
        .collect();
    reals.sort_by(f64::total_cmp);

    let mut out: Vec<(f64, usize)> = Vec::new();
    for x in reals {
        match out.last_mut() {
            Some((sum, count)) if (x - *sum / *count as f64).abs() < MERGE_DISTANCE * (1.0 + x.abs()) => {
                *sum += x;
                *count += 1;
            }
            _ => out.push((x, 1)),
        }
    }
    out.into_iter().map(|(sum, count)| RealRoot { value: sum / count as f64, multiplicity: count }).collect()
}

/// A few Newton steps, kept only while they shrink |f|.
fn polish(poly: &Polynomial, deriv: &Polynomial, mut x: f64) -> f64 {
    let mut fx = poly.eval(x).abs();
    for _ in 0..4 {
        let d = deriv.eval(x);
        if d == 0.0 || fx == 0.0 {
            break;
        }
        let next = x - poly.eval(x) / d;
        let fnext = poly.eval(next).abs();
        // also stops on NaN
        if fnext.partial_cmp(&fx) != Some(std::cmp::Ordering::Less) {
            break;
        }
        x = next;
        fx = fnext;
    }
    x
}
