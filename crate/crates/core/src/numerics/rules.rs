//! One-dimensional Gauss rules.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::specfun::{laguerre_unchecked, ln_gamma};

/// Nodes and weights of a one-dimensional rule.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Eigenvalues of the symmetric tridiagonal Jacobi matrix, ascending.
fn jacobi_eigenvalues(diag: &[f64], off: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let mut j = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        j[(i, i)] = diag[i];
        if i + 1 < n {
            j[(i, i + 1)] = off[i];
            j[(i + 1, i)] = off[i];
        }
    }
    let mut ev: Vec<f64> = SymmetricEigen::new(j).eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| a.total_cmp(b));
    ev
}

/// Generalized Gauss–Laguerre rule for `∫_0^∞ x^a e^{-x} f(x) dx`.
///
/// Nodes start from the Golub–Welsch eigenvalues and are polished by Newton
/// steps on `L_n^a`; weights use `Γ(n+a+1) / (n! x [L_n^a'(x)]²)`.
pub fn gauss_laguerre(n: usize, a: f64) -> Result<Rule> {
    if n == 0 {
        return Err(Error::Domain("a Gauss rule needs at least one node".into()));
    }
    if !(a > -1.0) {
        return Err(Error::Domain(format!("Laguerre weight exponent must exceed -1, got {a}")));
    }
    let diag: Vec<f64> = (0..n).map(|k| 2.0 * k as f64 + a + 1.0).collect();
    let off: Vec<f64> = (1..n).map(|k| (k as f64 * (k as f64 + a)).sqrt()).collect();
    let mut nodes = jacobi_eigenvalues(&diag, &off);
    let ni = n as i64;
    let deriv = |x: f64| -laguerre_unchecked(ni - 1, a + 1.0, x);
    for x in nodes.iter_mut() {
        for _ in 0..8 {
            let step = laguerre_unchecked(ni, a, *x) / deriv(*x);
            *x -= step;
            if step.abs() <= 4.0 * f64::EPSILON * x.abs() {
                break;
            }
        }
    }
    let ln_c = ln_gamma(n as f64 + a + 1.0) - ln_gamma(n as f64 + 1.0);
    let weights = nodes
        .iter()
        .map(|&x| {
            let d = deriv(x);
            (ln_c - x.ln() - 2.0 * d.abs().ln()).exp()
        })
        .collect();
    Ok(Rule { nodes, weights })
}

/// Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> Result<Rule> {
    if n == 0 {
        return Err(Error::Domain("a Gauss rule needs at least one node".into()));
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    let legendre_pair = |x: f64| {
        let (mut p0, mut p1) = (1.0, x);
        for k in 2..=n {
            let k = k as f64;
            let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        if n == 1 {
            (x, 1.0)
        } else {
            (p1, nf * (x * p1 - p0) / (x * x - 1.0))
        }
    };
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_pair(x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_pair(x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Ok(Rule { nodes, weights })
}

/// Gauss–Legendre rule mapped onto `[a, b]`.
pub fn gauss_legendre_on(n: usize, a: f64, b: f64) -> Result<Rule> {
    let base = gauss_legendre(n)?;
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    Ok(Rule {
        nodes: base.nodes.iter().map(|x| mid + half * x).collect(),
        weights: base.weights.iter().map(|w| w * half).collect(),
    })
}

/// Concatenation of Gauss–Legendre panels between consecutive breakpoints.
pub fn composite(n: usize, breaks: &[f64]) -> Result<Rule> {
    let mut nodes = Vec::with_capacity(n * breaks.len());
    let mut weights = Vec::with_capacity(n * breaks.len());
    for pair in breaks.windows(2) {
        let r = gauss_legendre_on(n, pair[0], pair[1])?;
        nodes.extend(r.nodes);
        weights.extend(r.weights);
    }
    Ok(Rule { nodes, weights })
}

/// Panels on `[δ, π - δ]` whose widths grow geometrically away from both poles.
pub fn graded_polar(n: usize, delta: f64) -> Result<Rule> {
    let half_pi = std::f64::consts::FRAC_PI_2;
    if !(delta > 0.0 && delta < half_pi) {
        return Err(Error::Domain(format!("pole exclusion must lie in (0, π/2), got {delta}")));
    }
    let mut left = vec![delta];
    let mut x = delta;
    while x * 2.0 < half_pi {
        x *= 2.0;
        left.push(x);
    }
    left.push(half_pi);
    let mut breaks = left.clone();
    for b in left.iter().rev().skip(1) {
        breaks.push(std::f64::consts::PI - b);
    }
    composite(n, &breaks)
}

/// Uniform rule on `[0, 2π)`, exact for trigonometric degree below `n`.
pub fn uniform_circle(n: usize) -> Rule {
    let h = std::f64::consts::TAU / n as f64;
    Rule {
        nodes: (0..n).map(|k| k as f64 * h).collect(),
        weights: vec![h; n],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn legendre_integrates_polynomials() {
        let r = gauss_legendre(7).unwrap();
        assert_relative_eq!(r.integrate(|x| x.powi(12)), 2.0 / 13.0, epsilon = 1e-14);
        assert_relative_eq!(r.integrate(|_| 1.0), 2.0, epsilon = 1e-14);
        let r = gauss_legendre(1).unwrap();
        assert_relative_eq!(r.integrate(|_| 1.0), 2.0, epsilon = 1e-15);
    }

    #[test]
    fn laguerre_moments_with_half_integer_weight() {
        let r = gauss_laguerre(10, 0.5).unwrap();
        for k in 0..20 {
            let exact = ln_gamma(k as f64 + 1.5).exp();
            assert_relative_eq!(r.integrate(|x| x.powi(k)), exact, max_relative = 1e-12);
        }
    }

    #[test]
    fn graded_panels_cover_the_interval() {
        let d = 1e-6;
        let r = graded_polar(8, d).unwrap();
        assert_relative_eq!(r.integrate(|_| 1.0), std::f64::consts::PI - 2.0 * d, epsilon = 1e-13);
        assert_relative_eq!(r.integrate(f64::sin), 2.0 * d.cos(), epsilon = 1e-13);
    }

    #[test]
    fn bad_parameters_are_rejected() {
        assert!(gauss_laguerre(0, 0.0).is_err());
        assert!(gauss_laguerre(4, -1.0).is_err());
        assert!(graded_polar(4, 0.0).is_err());
    }
}
