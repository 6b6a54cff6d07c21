//! Exact realization of the ladder operators on Gaussian-times-polynomial functions.
//!
//! A function is stored as `e^{-Q/2} w^s Σ c_{jkp} w^j w̄^k u^p` with `w = x + iy`,
//! `u = z` (O3) or `t` (O21), and `Q = ρ²` on every patch. Exponents `j` may
//! be negative, which is how the O(2) lowering operator leaves the Fock space.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::operators::LadderKind;
use crate::specfun::{gamma, ln_gamma};
use crate::states::{CoordPoint, GroupKind};

type Key = (i32, u32, u32);

#[derive(Debug, Clone, PartialEq)]
pub struct GaussPoly {
    group: GroupKind,
    s: f64,
    terms: BTreeMap<Key, Complex64>,
}

const PRUNE: f64 = 1e-14;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

impl GaussPoly {
    pub fn zero(group: GroupKind, s: f64) -> Self {
        Self {
            group,
            s,
            terms: BTreeMap::new(),
        }
    }

    /// Normalized ground state; the `s = 1/2` families in 3D have no such form.
    pub fn ground(group: GroupKind, s: f64) -> Result<Self> {
        let a0 = match group {
            GroupKind::O2 => {
                if !(0.0..1.0).contains(&s) {
                    return Err(Error::Label(format!("O(2) offset must lie in [0, 1), got {s}")));
                }
                (1.0 / (PI * gamma(s + 1.0))).sqrt()
            }
            _ if s == 0.0 => PI.powf(-0.75),
            _ => {
                return Err(Error::Unsupported(format!(
                    "the {group} ground state with s = {s} is not Gaussian times polynomial"
                )))
            }
        };
        let mut g = Self::zero(group, s);
        g.terms.insert((0, 0, 0), c(a0));
        Ok(g)
    }

    /// `c e^{-ρ²/2} w^s`.
    pub fn constant(group: GroupKind, s: f64, c: Complex64) -> Self {
        let mut g = Self::zero(group, s);
        g.push((0, 0, 0), c);
        g
    }

    pub fn group(&self) -> GroupKind {
        self.group
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    /// Nonzero coefficients keyed by the exponents `(j, k, p)`.
    pub fn terms(&self) -> impl Iterator<Item = (Key, Complex64)> + '_ {
        self.terms.iter().map(|(k, v)| (*k, *v))
    }

    pub fn coefficient(&self, j: i32, k: u32, p: u32) -> Complex64 {
        self.terms.get(&(j, k, p)).copied().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn push(&mut self, key: Key, v: Complex64) {
        if v == Complex64::default() {
            return;
        }
        *self.terms.entry(key).or_default() += v;
    }

    fn max_coefficient(&self) -> f64 {
        self.terms.values().fold(0.0f64, |a, v| a.max(v.norm()))
    }

    /// Drops coefficients that are rounding noise relative to `scale`.
    fn pruned_against(mut self, scale: f64) -> Self {
        self.terms.retain(|_, v| v.norm() > PRUNE * scale);
        self
    }

    fn pruned(self) -> Self {
        let scale = self.max_coefficient();
        self.pruned_against(scale)
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.group != other.group || self.s != other.s {
            return Err(Error::Basis("functions from different representations".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.axpy(c(1.0), other)
    }

    /// `self + a·other`.
    pub fn axpy(&self, a: Complex64, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let scale = self.max_coefficient().max(a.norm() * other.max_coefficient());
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.push(*k, a * v);
        }
        Ok(out.pruned_against(scale))
    }

    pub fn scale(&self, a: Complex64) -> Self {
        let mut out = Self::zero(self.group, self.s);
        for (k, v) in &self.terms {
            out.push(*k, a * v);
        }
        out
    }

    fn require_kind(&self, kind: LadderKind) -> Result<()> {
        kind.validate_for(self.group)
    }

    // The four polar operators act on the polynomial factor as
    // a₊ = ∂_w̄, a₋ = ∂_w + s/w, ā₊ = w - ∂_w̄, ā₋ = w̄ - ∂_w - s/w.
    fn d_wbar(&self) -> Self {
        let mut out = Self::zero(self.group, self.s);
        for (&(j, k, p), v) in &self.terms {
            if k > 0 {
                out.push((j, k - 1, p), v * k as f64);
            }
        }
        out
    }

    fn d_w_shifted(&self) -> Self {
        let mut out = Self::zero(self.group, self.s);
        for (&(j, k, p), v) in &self.terms {
            out.push((j - 1, k, p), v * (j as f64 + self.s));
        }
        out
    }

    fn times_w(&self) -> Self {
        let mut out = Self::zero(self.group, self.s);
        for (&(j, k, p), v) in &self.terms {
            out.push((j + 1, k, p), *v);
        }
        out
    }

    fn times_wbar(&self) -> Self {
        let mut out = Self::zero(self.group, self.s);
        for (&(j, k, p), v) in &self.terms {
            out.push((j, k + 1, p), *v);
        }
        out
    }

    fn times_u(&self) -> Self {
        let mut out = Self::zero(self.group, self.s);
        for (&(j, k, p), v) in &self.terms {
            out.push((j, k, p + 1), *v);
        }
        out
    }

    fn d_u(&self) -> Self {
        let mut out = Self::zero(self.group, self.s);
        for (&(j, k, p), v) in &self.terms {
            if p > 0 {
                out.push((j, k, p - 1), v * p as f64);
            }
        }
        out
    }

    /// Applies one ladder operator exactly.
    pub fn apply(&self, kind: LadderKind) -> Result<Self> {
        self.require_kind(kind)?;
        let lorentz = self.group == GroupKind::O21;
        let out = match kind {
            LadderKind::APlus => self.d_wbar(),
            LadderKind::AMinus => self.d_w_shifted(),
            LadderKind::AbarPlus => self.times_w().axpy(c(-1.0), &self.d_wbar())?,
            LadderKind::AbarMinus => self.times_wbar().axpy(c(-1.0), &self.d_w_shifted())?,
            // a³ = ∂_z/√2 and a⁰ = -∂_t/√2 once the Gaussian is factored out.
            LadderKind::APar => {
                let sign = if lorentz { -1.0 } else { 1.0 };
                self.d_u().scale(c(sign * FRAC_1_SQRT_2))
            }
            LadderKind::AbarPar => {
                let sign = if lorentz { 1.0 } else { -1.0 };
                self.times_u()
                    .scale(c(SQRT_2))
                    .axpy(c(sign * FRAC_1_SQRT_2), &self.d_u())?
            }
            LadderKind::Cartesian { mu, bar } => return self.apply_cartesian(mu, bar),
        };
        Ok(out.pruned())
    }

    fn apply_cartesian(&self, mu: u8, bar: bool) -> Result<Self> {
        let (plus, minus, par) = if bar {
            (LadderKind::AbarPlus, LadderKind::AbarMinus, LadderKind::AbarPar)
        } else {
            (LadderKind::APlus, LadderKind::AMinus, LadderKind::APar)
        };
        match mu {
            1 => Ok(self
                .apply(plus)?
                .add(&self.apply(minus)?)?
                .scale(c(FRAC_1_SQRT_2))),
            2 => Ok(self
                .apply(plus)?
                .axpy(c(-1.0), &self.apply(minus)?)?
                .scale(Complex64::new(0.0, -FRAC_1_SQRT_2))),
            _ => self.apply(par),
        }
    }

    /// Applies a word of operators, rightmost first.
    pub fn apply_word(&self, word: &[LadderKind]) -> Result<Self> {
        word.iter().rev().try_fold(self.clone(), |f, &k| f.apply(k))
    }

    /// Smallest `ρ` exponent among the terms, as seen near the origin.
    pub fn leading_power(&self) -> Option<f64> {
        self.terms
            .keys()
            .map(|&(j, k, p)| match self.group {
                GroupKind::O2 => self.s + (j + k as i32) as f64,
                _ => (j + (k + p) as i32) as f64,
            })
            .min_by(|a, b| a.total_cmp(b))
    }

    /// Membership of the O(2) Fock space for the lowered sectors `m + s < 0`.
    ///
    /// In angular sector `m < 0` the function is `w^{s+m} P(|w|²)`. It lies in the
    /// span of the admissible states iff `P` has vanishing formal moments
    /// `Σ_k c_k Γ(m + s + k + i + 1)` for `i < -m`.
    fn lowered_sectors_ok(&self) -> bool {
        if self.group != GroupKind::O2 || self.s == 0.0 {
            return self.terms.keys().all(|&(j, _, _)| j >= 0);
        }
        let mut sectors: BTreeMap<i32, Vec<(u32, Complex64)>> = BTreeMap::new();
        for (&(j, k, _), v) in &self.terms {
            let m = j - k as i32;
            if m < 0 {
                sectors.entry(m).or_default().push((k, *v));
            }
        }
        sectors.iter().all(|(&m, poly)| {
            (0..(-m) as u32).all(|i| {
                let mut sum = Complex64::default();
                let mut scale = 0.0;
                for &(k, v) in poly {
                    let arg = m as f64 + self.s + (k + i) as f64 + 1.0;
                    let g = gamma(arg);
                    sum += v * g;
                    scale += v.norm() * g.abs();
                }
                sum.norm() <= 1e-9 * scale.max(f64::MIN_POSITIVE)
            })
        })
    }

    /// `‖f‖²` computed in closed form from the Gaussian moments.
    ///
    /// Only available on the definite patches; used to cross-check quadrature.
    pub fn exact_norm_squared(&self) -> Result<f64> {
        if self.group == GroupKind::O21 {
            return Err(Error::Unsupported("the O(2,1) Gaussian is not integrable".into()));
        }
        let mut total = 0.0;
        for (&(j1, k1, p1), v1) in &self.terms {
            for (&(j2, k2, p2), v2) in &self.terms {
                if j1 - k1 as i32 != j2 - k2 as i32 || (p1 + p2) % 2 == 1 {
                    continue;
                }
                // |w|^{2s} w^{j1} w̄^{k1} conj(w^{j2} w̄^{k2}) = |w|^{2(s + j1 + k2)}
                let a = self.s + (j1 + k2 as i32) as f64;
                // ∫ e^{-|w|²} |w|^{2a} d²w = π Γ(a + 1)
                let planar = PI * ln_gamma(a + 1.0).exp();
                let axial = match self.group {
                    GroupKind::O2 => {
                        if p1 + p2 != 0 {
                            continue;
                        }
                        1.0
                    }
                    // ∫ e^{-u²} u^{2q} du = Γ(q + 1/2)
                    _ => ln_gamma((p1 + p2) as f64 / 2.0 + 0.5).exp(),
                };
                total += (v1.conj() * v2).re * planar * axial;
            }
        }
        Ok(total)
    }
}

impl Field for GaussPoly {
    fn group(&self) -> GroupKind {
        self.group
    }

    fn offset(&self) -> f64 {
        self.s
    }

    fn value(&self, p: &CoordPoint) -> Complex64 {
        let r = p.cylindrical_radius(self.group);
        let u = p.to_cartesian(self.group)[2];
        let gauss = (-0.5 * p.rho * p.rho).exp();
        let mut acc = Complex64::default();
        for (&(j, k, q), v) in &self.terms {
            let mag = r.powf(self.s + j as f64 + k as f64) * u.powi(q as i32);
            let arg = (self.s + j as f64 - k as f64) * p.phi;
            acc += v * Complex64::from_polar(mag, arg);
        }
        acc * gauss
    }

    fn radial_power(&self) -> Option<f64> {
        Some(self.leading_power().unwrap_or(0.0))
    }

    fn is_fock(&self) -> bool {
        self.lowered_sectors_ok()
    }

    fn describe(&self) -> String {
        format!("gaussian polynomial on the {} patch ({} terms)", self.group, self.terms.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn ground_is_annihilated_and_normalized() {
        for s in [0.0, 0.25, 0.5] {
            let g = GaussPoly::ground(GroupKind::O2, s).unwrap();
            assert!(g.apply(LadderKind::APlus).unwrap().is_zero());
            assert_relative_eq!(g.exact_norm_squared().unwrap(), 1.0, epsilon = 1e-14);
        }
        let g = GaussPoly::ground(GroupKind::O3, 0.0).unwrap();
        assert_relative_eq!(g.exact_norm_squared().unwrap(), 1.0, epsilon = 1e-14);
        assert!(g.apply(LadderKind::APar).unwrap().is_zero());
    }

    #[test]
    fn lowered_ground_leaves_the_fock_space() {
        let g = GaussPoly::ground(GroupKind::O2, 0.5).unwrap();
        let low = g.apply(LadderKind::AMinus).unwrap();
        assert!(!low.is_fock());
        // ā₋ψ₀ ∝ ψ_{1,-1} is admissible.
        let up = g.apply(LadderKind::AbarMinus).unwrap();
        assert!(up.is_fock());
        assert_relative_eq!(up.exact_norm_squared().unwrap(), 1.0, epsilon = 1e-13);
    }

    #[test]
    fn s_half_in_three_dimensions_is_unsupported() {
        assert!(matches!(
            GaussPoly::ground(GroupKind::O3, 0.5),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn timelike_commutator_has_negative_sign() {
        let g = GaussPoly::ground(GroupKind::O21, 0.0).unwrap();
        let up = g.apply(LadderKind::AbarPar).unwrap();
        let back = up.apply(LadderKind::APar).unwrap();
        assert_relative_eq!(back.coefficient(0, 0, 0).re, -g.coefficient(0, 0, 0).re, epsilon = 1e-15);
    }
}
