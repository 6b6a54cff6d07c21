//! Quadrature inner products, norms with divergence detection, and residuals.

pub mod ghost;
pub mod rules;

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::ComplexMatrix;
use crate::states::{is_square_integrable, CoordPoint, GroupKind, OscillatorState, StateLabel};
use rules::{composite, gauss_laguerre, gauss_legendre, graded_polar, uniform_circle, Rule};

pub use ghost::{ghost_norm, metric_norm, DEFAULT_REGULATOR};

/// Whether norms on the O(2,1) patch honour the representation metric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Signature {
    /// Component weights are ignored.
    Definite,
    /// Component weights multiply the norm.
    Indefinite,
}

/// Node counts, cutoffs and metric marker for quadrature on a polar patch.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    /// Gauss–Laguerre nodes in `x = ρ²`.
    pub radial_nodes: usize,
    /// Uniform nodes in φ.
    pub azimuthal_nodes: usize,
    /// Gauss–Legendre nodes in `cos θ`, or per panel on paneled patches.
    pub polar_nodes: usize,
    /// Truncation `|β| ≤ B` of the rapidity.
    pub beta_cutoff: f64,
    /// Excluded neighbourhood of the poles for the `s = 1/2` O(3) states.
    pub theta_exclusion: f64,
    /// Fixed Laguerre weight exponent; chosen from the integrands when absent.
    pub radial_alpha: Option<f64>,
    /// Gaussian regulator `e^{-εt²}` on the O(2,1) patch.
    pub regulator: Option<f64>,
    pub metric: Signature,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            radial_nodes: 40,
            azimuthal_nodes: 32,
            polar_nodes: 32,
            beta_cutoff: 12.0,
            theta_exclusion: 1e-6,
            radial_alpha: None,
            regulator: None,
            metric: Signature::Indefinite,
        }
    }
}

const PANEL_NODES: usize = 12;

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        for (name, n) in [
            ("radial", self.radial_nodes),
            ("azimuthal", self.azimuthal_nodes),
            ("polar", self.polar_nodes),
        ] {
            if n < 8 {
                return Err(Error::Domain(format!("{name} node count must be at least 8, got {n}")));
            }
        }
        if !(self.beta_cutoff > 0.0 && self.beta_cutoff.is_finite()) {
            return Err(Error::Domain(format!("beta cutoff must be positive, got {}", self.beta_cutoff)));
        }
        if !(self.theta_exclusion > 0.0 && self.theta_exclusion < 0.5) {
            return Err(Error::Domain(format!(
                "theta exclusion must lie in (0, 0.5), got {}",
                self.theta_exclusion
            )));
        }
        if let Some(e) = self.regulator {
            if !(e >= 0.0 && e.is_finite()) {
                return Err(Error::Domain(format!("regulator must be non-negative, got {e}")));
            }
        }
        Ok(())
    }

    pub fn with_beta_cutoff(&self, b: f64) -> Self {
        Self {
            beta_cutoff: b,
            ..self.clone()
        }
    }

    pub fn with_theta_exclusion(&self, d: f64) -> Self {
        Self {
            theta_exclusion: d,
            ..self.clone()
        }
    }

    pub fn with_regulator(&self, e: Option<f64>) -> Self {
        Self {
            regulator: e,
            ..self.clone()
        }
    }
}

/// A norm with an estimate of its truncation error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormReport {
    pub value: f64,
    /// Change of the value under the last refinement of the truncation.
    pub convergence_estimate: f64,
    pub divergent: bool,
}

/// Angular rule paired with the factor that completes the volume element.
struct AngularRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

fn angular_rule(group: GroupKind, half: bool, spec: &QuadratureSpec) -> Result<AngularRule> {
    match group {
        GroupKind::O2 => Ok(AngularRule {
            nodes: vec![0.0],
            weights: vec![1.0],
        }),
        GroupKind::O3 if half => {
            let r = graded_polar(PANEL_NODES.max(spec.polar_nodes / 2), spec.theta_exclusion)?;
            let weights = r.nodes.iter().zip(&r.weights).map(|(t, w)| w * t.sin()).collect();
            Ok(AngularRule {
                nodes: r.nodes,
                weights,
            })
        }
        GroupKind::O3 => {
            let r = gauss_legendre(spec.polar_nodes)?;
            Ok(AngularRule {
                nodes: r.nodes.iter().map(|z| z.acos()).collect(),
                weights: r.weights,
            })
        }
        GroupKind::O21 => {
            let b = spec.beta_cutoff;
            let panels = (2.0 * b).ceil().max(2.0) as usize;
            let breaks: Vec<f64> = (0..=panels)
                .map(|k| -b + 2.0 * b * k as f64 / panels as f64)
                .collect();
            let r = composite(PANEL_NODES.max(spec.polar_nodes / 4), &breaks)?;
            let weights = r.nodes.iter().zip(&r.weights).map(|(t, w)| w * t.cosh()).collect();
            Ok(AngularRule {
                nodes: r.nodes,
                weights,
            })
        }
    }
}

fn default_power(group: GroupKind, s: f64) -> f64 {
    match group {
        GroupKind::O2 => s,
        _ if s == 0.5 => -0.5,
        _ => 0.0,
    }
}

/// Laguerre weight exponent for integrating `f* g` against `ρ^{D-1} dρ`.
fn radial_exponent(f: &dyn Field, g: &dyn Field, spec: &QuadratureSpec) -> Result<f64> {
    if let Some(a) = spec.radial_alpha {
        return Ok(a);
    }
    let group = f.group();
    let pf = f.radial_power().unwrap_or(default_power(group, f.offset()));
    let pg = g.radial_power().unwrap_or(default_power(group, g.offset()));
    let a = pf.min(pg) + (group.dim() as f64 - 2.0) / 2.0;
    if a <= -1.0 {
        return Err(Error::Domain(format!(
            "integrand of {} and {} is not integrable at the origin",
            f.describe(),
            g.describe()
        )));
    }
    Ok(a)
}

/// `∫ F(ρ, aux, φ) dV` with the group's volume element, for a pair-specific radial rule.
fn integrate_with<F>(group: GroupKind, half: bool, a: f64, spec: &QuadratureSpec, integrand: F) -> Result<Complex64>
where
    F: Fn(&CoordPoint) -> Complex64 + Sync,
{
    spec.validate()?;
    let radial: Rule = gauss_laguerre(spec.radial_nodes, a)?;
    let ang = angular_rule(group, half, spec)?;
    let circle = uniform_circle(spec.azimuthal_nodes);
    let shift = (group.dim() as f64 - 2.0) / 2.0 - a;
    let regulator = if group == GroupKind::O21 {
        spec.regulator.unwrap_or(0.0)
    } else {
        0.0
    };
    let partial: Vec<Complex64> = radial
        .nodes
        .par_iter()
        .zip(radial.weights.par_iter())
        .map(|(&x, &w)| {
            let rho = x.sqrt();
            let wr = 0.5 * w * (x + shift * x.ln()).exp();
            let mut acc = Complex64::new(0.0, 0.0);
            for (&aux, &wa) in ang.nodes.iter().zip(&ang.weights) {
                let reg = if regulator > 0.0 {
                    let t = rho * aux.sinh();
                    (-regulator * t * t).exp()
                } else {
                    1.0
                };
                let mut ring = Complex64::new(0.0, 0.0);
                for (&phi, &wp) in circle.nodes.iter().zip(&circle.weights) {
                    ring += integrand(&CoordPoint::new(rho, phi, aux)) * wp;
                }
                acc += ring * (wa * reg);
            }
            acc * wr
        })
        .collect();
    Ok(partial.into_iter().sum())
}

fn check_pair(f: &dyn Field, g: &dyn Field) -> Result<()> {
    for h in [f, g] {
        if !h.is_fock() {
            return Err(Error::NonFock(format!("{} cannot enter an inner product", h.describe())));
        }
    }
    if f.group() != g.group() {
        return Err(Error::Basis(format!(
            "{} and {} live on different patches",
            f.describe(),
            g.describe()
        )));
    }
    Ok(())
}

fn is_half_patch(f: &dyn Field, g: &dyn Field) -> bool {
    f.group() == GroupKind::O3 && (f.offset() == 0.5 || g.offset() == 0.5)
}

/// `⟨f, g⟩ = ∫ f* g dV`; the first argument is conjugated.
pub fn inner_product(f: &dyn Field, g: &dyn Field, spec: &QuadratureSpec) -> Result<Complex64> {
    check_pair(f, g)?;
    let a = radial_exponent(f, g, spec)?;
    integrate_with(f.group(), is_half_patch(f, g), a, spec, |p| f.value(p).conj() * g.value(p))
}

/// `∫ |f|² dV` without the Fock-space check, for residual measurements.
pub fn norm_squared_unchecked(f: &dyn Field, spec: &QuadratureSpec) -> Result<f64> {
    let a = radial_exponent(f, f, spec)?;
    Ok(integrate_with(f.group(), is_half_patch(f, f), a, spec, |p| {
        Complex64::new(f.value(p).norm_sqr(), 0.0)
    })?
    .re)
}

/// Decides divergence from a sequence of values under successively weaker truncation.
fn sweep_report(values: &[f64]) -> NormReport {
    let last = *values.last().unwrap_or(&0.0);
    let n = values.len();
    if n < 3 {
        return NormReport {
            value: last,
            convergence_estimate: 0.0,
            divergent: false,
        };
    }
    let d_last = (values[n - 1] - values[n - 2]).abs();
    let d_prev = (values[n - 2] - values[n - 3]).abs();
    let scale = last.abs().max(f64::MIN_POSITIVE);
    let divergent = d_last / scale > 1e-8 && d_last > 0.5 * d_prev;
    NormReport {
        value: last,
        convergence_estimate: d_last / scale,
        divergent,
    }
}

/// `‖f‖²` with a truncation sweep on patches that need one.
///
/// O(3) `s = 1/2` integrands are swept over shrinking pole exclusions and
/// O(2,1) integrands over `B/2, B, 2B`; other patches are exact rules.
pub fn norm_report(f: &dyn Field, spec: &QuadratureSpec) -> Result<NormReport> {
    check_pair(f, f)?;
    let one = |s: &QuadratureSpec| inner_product(f, f, s).map(|z| z.re);
    match f.group() {
        GroupKind::O3 if f.offset() == 0.5 => {
            let mut deltas = vec![];
            let mut d = 1e-2;
            while d > spec.theta_exclusion * 1.0001 {
                deltas.push(d);
                d /= 10.0;
            }
            deltas.push(spec.theta_exclusion);
            let values = deltas
                .iter()
                .map(|&d| one(&spec.with_theta_exclusion(d)))
                .collect::<Result<Vec<_>>>()?;
            Ok(sweep_report(&values))
        }
        GroupKind::O21 => {
            let b = spec.beta_cutoff;
            let values = [0.5 * b, b, 2.0 * b]
                .iter()
                .map(|&bb| one(&spec.with_beta_cutoff(bb)))
                .collect::<Result<Vec<_>>>()?;
            let mut r = sweep_report(&values);
            r.value = values[1];
            r.convergence_estimate = (values[2] - values[1]).abs() / values[1].abs().max(f64::MIN_POSITIVE);
            Ok(r)
        }
        _ => Ok(NormReport {
            value: one(spec)?,
            convergence_estimate: 0.0,
            divergent: false,
        }),
    }
}

/// Gram matrix of the listed eigenstates, labels in row order.
pub fn orthonormality_matrix(labels: &[StateLabel], spec: &QuadratureSpec) -> Result<ComplexMatrix> {
    let Some(first) = labels.first() else {
        return Ok(ComplexMatrix::zeros(0, 0));
    };
    if labels.iter().any(|l| l.group != first.group || l.s != first.s) {
        return Err(Error::Basis("Gram matrix labels must share group and s".into()));
    }
    if let Some(bad) = labels.iter().find(|l| !is_square_integrable(l)) {
        return Err(Error::Label(format!("{bad} is not a normalizable state")));
    }
    let states: Vec<OscillatorState> =
        labels.iter().map(|l| OscillatorState::new(*l)).collect::<Result<_>>()?;
    let n = states.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let values: Vec<Complex64> = pairs
        .par_iter()
        .map(|&(i, j)| inner_product(&states[i], &states[j], spec))
        .collect::<Result<_>>()?;
    let mut g = ComplexMatrix::zeros(n, n);
    for (&(i, j), v) in pairs.iter().zip(values) {
        g[(i, j)] = v;
        g[(j, i)] = v.conj();
    }
    Ok(g)
}

/// Relative L² residual of the radial Schrödinger equation at eigenvalue `2E`.
pub fn schrodinger_residual(state: &OscillatorState, spec: &QuadratureSpec) -> Result<f64> {
    schrodinger_residual_at(state, 2.0 * state.energy, spec)
}

/// As [`schrodinger_residual`], with the eigenvalue `ε` supplied by the caller.
///
/// With the Casimir replaced by its eigenvalue the operator is radial, so the
/// angular factor cancels from the ratio.
pub fn schrodinger_residual_at(state: &OscillatorState, epsilon: f64, spec: &QuadratureSpec) -> Result<f64> {
    spec.validate()?;
    let rf = state.radial();
    let d = rf.dim as f64;
    let p_eff = state.radial_power().unwrap_or(rf.p);
    let a = p_eff + (d - 2.0) / 2.0;
    let rule = gauss_laguerre(spec.radial_nodes, a)?;
    // Integrand exponent relative to the rule weight.
    let shift = rf.p + (d - 2.0) / 2.0 - a;
    let (mut num, mut den) = (0.0, 0.0);
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        let rho = x.sqrt();
        let wx = w * x.powf(shift);
        let res = rf.reduced_residual(rho, epsilon);
        let g = rf.laguerre(rho);
        num += wx * res * res;
        den += wx * g * g;
    }
    if den <= 0.0 {
        return Err(Error::Domain(format!("{} has zero radial norm", state.label)));
    }
    Ok((num / den).sqrt())
}

/// Volume of the unit sphere in the angular variables, for reference values.
pub fn angular_volume(group: GroupKind) -> f64 {
    match group {
        GroupKind::O2 => 2.0 * PI,
        _ => 4.0 * PI,
    }
}
