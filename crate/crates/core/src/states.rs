//! Closed-form oscillator eigenstates for O(2), O(3) and the spacelike sector of O(2,1).

use std::f64::consts::{PI, TAU};
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::{
    laguerre_unchecked, legendre_p_unchecked, legendre_phat_unchecked, ln_gamma,
};

/// Symmetry group of the oscillator and its coordinate patch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    O2,
    O3,
    O21,
}

impl GroupKind {
    /// Number of Cartesian degrees of freedom.
    pub fn dim(self) -> u32 {
        match self {
            GroupKind::O2 => 2,
            GroupKind::O3 | GroupKind::O21 => 3,
        }
    }

    pub fn is_3d(self) -> bool {
        self != GroupKind::O2
    }

    pub fn name(self) -> &'static str {
        match self {
            GroupKind::O2 => "o2",
            GroupKind::O3 => "o3",
            GroupKind::O21 => "o21",
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for GroupKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "o2" => Ok(GroupKind::O2),
            "o3" => Ok(GroupKind::O3),
            "o21" | "o2,1" | "o(2,1)" => Ok(GroupKind::O21),
            other => Err(Error::Label(format!("unknown group '{other}'"))),
        }
    }
}

/// Quantum numbers of one eigenstate. `l` is ignored for O(2).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StateLabel {
    pub group: GroupKind,
    pub s: f64,
    pub n: u32,
    pub l: u32,
    pub m: i32,
}

impl StateLabel {
    pub fn o2(s: f64, n: u32, m: i32) -> Self {
        Self {
            group: GroupKind::O2,
            s,
            n,
            l: 0,
            m,
        }
    }

    pub fn new(group: GroupKind, s: f64, n: u32, l: u32, m: i32) -> Self {
        Self { group, s, n, l, m }
    }

    /// True for the `s = 1/2` families in three dimensions.
    pub fn is_half(&self) -> bool {
        self.group.is_3d() && self.s == 0.5
    }

    pub fn is_ground(&self) -> bool {
        match self.group {
            GroupKind::O2 => self.n == 0 && self.m == 0,
            _ if self.is_half() => self.n == 0 && self.l == 0,
            _ => self.n == 0 && self.l == 0 && self.m == 0,
        }
    }
}

impl fmt::Display for StateLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.group {
            GroupKind::O2 => write!(f, "o2[s={}](n={}, m={})", self.s, self.n, self.m),
            g => write!(
                f,
                "{g}[s={}](n={}, l={}, m={})",
                self.s, self.n, self.l, self.m
            ),
        }
    }
}

/// A point in the polar patch of a group: `aux` is θ for O(3), β for O(2,1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoordPoint {
    pub rho: f64,
    pub phi: f64,
    pub aux: f64,
}

impl CoordPoint {
    pub fn new(rho: f64, phi: f64, aux: f64) -> Self {
        Self { rho, phi, aux }
    }

    pub fn planar(rho: f64, phi: f64) -> Self {
        Self { rho, phi, aux: 0.0 }
    }

    /// Checks the coordinate ranges of the patch for `group`.
    pub fn validate(&self, group: GroupKind) -> Result<()> {
        let bad = |what: &str| Err(Error::Domain(format!("{what} out of range in {self:?}")));
        if !(self.rho.is_finite() && self.rho >= 0.0) {
            return bad("rho");
        }
        if !(self.phi.is_finite() && (0.0..TAU).contains(&self.phi)) {
            return bad("phi");
        }
        match group {
            GroupKind::O2 => Ok(()),
            GroupKind::O3 if !(0.0..=PI).contains(&self.aux) => bad("theta"),
            GroupKind::O21 if !self.aux.is_finite() => bad("beta"),
            _ => Ok(()),
        }
    }

    /// Cartesian image `(x, y, u)`, where `u` is `z` (O3), `t` (O21) or 0 (O2).
    pub fn to_cartesian(&self, group: GroupKind) -> [f64; 3] {
        let r = self.cylindrical_radius(group);
        let u = match group {
            GroupKind::O2 => 0.0,
            GroupKind::O3 => self.rho * self.aux.cos(),
            GroupKind::O21 => self.rho * self.aux.sinh(),
        };
        [r * self.phi.cos(), r * self.phi.sin(), u]
    }

    /// `√(x² + y²)` at this point.
    pub fn cylindrical_radius(&self, group: GroupKind) -> f64 {
        match group {
            GroupKind::O2 => self.rho,
            GroupKind::O3 => self.rho * self.aux.sin(),
            GroupKind::O21 => self.rho * self.aux.cosh(),
        }
    }

    /// Inverse of [`CoordPoint::to_cartesian`]; O(2,1) requires `x² + y² > t²`.
    pub fn from_cartesian(group: GroupKind, x: f64, y: f64, u: f64) -> Result<Self> {
        let r = x.hypot(y);
        let phi = branch_angle(x, y);
        match group {
            GroupKind::O2 => Ok(Self::planar(r, phi)),
            GroupKind::O3 => {
                let rho = r.hypot(u);
                let theta = if rho == 0.0 { 0.0 } else { r.atan2(u) };
                Ok(Self::new(rho, phi, theta))
            }
            GroupKind::O21 => {
                if r <= u.abs() {
                    return Err(Error::Domain(format!(
                        "({x}, {y}, {u}) is outside the spacelike sector"
                    )));
                }
                let rho = ((r - u) * (r + u)).sqrt();
                Ok(Self::new(rho, phi, (u / r).atanh()))
            }
        }
    }
}

/// Two-argument angle of `(x, y)` folded into `[0, 2π)`.
pub fn branch_angle(x: f64, y: f64) -> f64 {
    let a = y.atan2(x);
    let a = if a < 0.0 { a + TAU } else { a };
    if a >= TAU {
        0.0
    } else {
        a
    }
}

/// Radial factor `ρ^p e^{-ρ²/2} L_n^α(ρ²)` parameters and the angular eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialForm {
    pub n: u32,
    pub p: f64,
    pub alpha: f64,
    /// Eigenvalue of the Casimir operator on the angular factor.
    pub casimir: f64,
    pub dim: u32,
}

impl RadialForm {
    pub fn of(label: &StateLabel) -> Self {
        let l = label.l as f64;
        let (p, alpha, casimir) = match label.group {
            GroupKind::O2 => {
                let q = label.m as f64 + label.s;
                (q, q, q * q)
            }
            _ if label.is_half() => (l - 0.5, l, l * l - 0.25),
            _ => (l, l + 0.5, l * (l + 1.0)),
        };
        Self {
            n: label.n,
            p,
            alpha,
            casimir,
            dim: label.group.dim(),
        }
    }

    /// `ε = 2E`, the eigenvalue of the radial equation.
    pub fn epsilon(&self) -> f64 {
        4.0 * self.n as f64 + 2.0 * self.p + self.dim as f64
    }

    /// `L_n^α(ρ²)`.
    pub fn laguerre(&self, rho: f64) -> f64 {
        laguerre_unchecked(self.n as i64, self.alpha, rho * rho)
    }

    /// `(g, g', g'')` for `g(ρ) = L_n^α(ρ²)`.
    pub fn laguerre_jet(&self, rho: f64) -> (f64, f64, f64) {
        let x = rho * rho;
        let n = self.n as i64;
        let g = laguerre_unchecked(n, self.alpha, x);
        let d1 = -laguerre_unchecked(n - 1, self.alpha + 1.0, x);
        let d2 = laguerre_unchecked(n - 2, self.alpha + 2.0, x);
        (g, 2.0 * rho * d1, 2.0 * d1 + 4.0 * x * d2)
    }

    /// Full radial factor `R(ρ)`.
    pub fn value(&self, rho: f64) -> f64 {
        rho.powf(self.p) * (-0.5 * rho * rho).exp() * self.laguerre(rho)
    }

    /// `(R, R')` from the Laguerre derivative identity.
    pub fn value_and_derivative(&self, rho: f64) -> (f64, f64) {
        let h = rho.powf(self.p) * (-0.5 * rho * rho).exp();
        let (g, g1, _) = self.laguerre_jet(rho);
        let log_h = self.p / rho - rho;
        (h * g, h * (log_h * g + g1))
    }

    /// `[-∂²_ρ - ((D-1)/ρ)∂_ρ + Λ/ρ² + ρ² - ε] R / (ρ^p e^{-ρ²/2})`.
    ///
    /// Dividing out the prefactor keeps the expression regular near the origin.
    pub fn reduced_residual(&self, rho: f64, epsilon: f64) -> f64 {
        let (g, g1, g2) = self.laguerre_jet(rho);
        let p = self.p;
        let lh = p / rho - rho;
        let lh2 = lh * lh - p / (rho * rho) - 1.0;
        let d = self.dim as f64;
        let second = lh2 * g + 2.0 * lh * g1 + g2;
        let first = lh * g + g1;
        -second - (d - 1.0) / rho * first
            + (self.casimir / (rho * rho) + rho * rho - epsilon) * g
    }
}

fn is_valid_s3(s: f64) -> bool {
    s == 0.0 || s == 0.5
}

/// True iff `label` indexes a state of the oscillator's Fock space.
pub fn validate_label(label: &StateLabel) -> bool {
    if !label.s.is_finite() {
        return false;
    }
    match label.group {
        GroupKind::O2 => {
            (0.0..1.0).contains(&label.s) && label.n as f64 + label.m as f64 + label.s >= 0.0
        }
        _ => {
            if !is_valid_s3(label.s) {
                return false;
            }
            if label.s == 0.0 {
                label.m.unsigned_abs() <= label.l
            } else {
                label.m >= 0 && label.m as u32 >= label.l
            }
        }
    }
}

/// Stricter test: the closed form is square integrable near the origin.
///
/// For O(2), `n + m + s ≥ 0` admits labels with non-integer `m + s < -1`
/// whose radial factor behaves like `ρ^{m+s}` at the origin.
pub fn is_square_integrable(label: &StateLabel) -> bool {
    if !validate_label(label) {
        return false;
    }
    match label.group {
        GroupKind::O2 => {
            let q = label.m as f64 + label.s;
            q > -1.0 || (label.s == 0.0 && label.m < 0)
        }
        _ => true,
    }
}

fn require_valid(label: &StateLabel) -> Result<()> {
    if validate_label(label) {
        Ok(())
    } else {
        Err(Error::Label(format!("{label} is not an admissible state")))
    }
}

/// Energy in units of ω.
pub fn energy(label: &StateLabel) -> Result<f64> {
    require_valid(label)?;
    Ok(match label.group {
        GroupKind::O2 => 2.0 * label.n as f64 + label.m as f64 + label.s + 1.0,
        _ => 2.0 * label.n as f64 + label.l as f64 + 1.5 - label.s,
    })
}

fn sign_n(n: u32) -> f64 {
    if n % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `A_nm` for the O(2) family; zero on the excluded region `n + m + s < 0`.
pub fn normalization_2d(n: u32, m: i32, s: f64) -> f64 {
    let q = n as f64 + m as f64 + s;
    if q < 0.0 {
        return 0.0;
    }
    let ln = ln_gamma(n as f64 + 1.0) - PI.ln() - ln_gamma(q + 1.0);
    sign_n(n) * (0.5 * ln).exp()
}

fn normalization_3d(label: &StateLabel) -> f64 {
    let n = label.n as f64;
    let l = label.l as f64;
    if label.is_half() {
        // The angular constant of the s = 1/2 families is fixed to 1.
        let ln = 2f64.ln() + ln_gamma(n + 1.0) - ln_gamma(n + l + 1.0);
        return sign_n(label.n) * (0.5 * ln).exp();
    }
    let radial = ln_gamma(n + 1.0) + 2f64.ln() - ln_gamma(n + l + 1.5);
    let m = label.m as f64;
    let angular =
        (2.0 * l + 1.0).ln() + ln_gamma(l - m + 1.0) - (4.0 * PI).ln() - ln_gamma(l + m + 1.0);
    sign_n(label.n) * (0.5 * (radial + angular)).exp()
}

/// Normalization constant of any admissible label.
pub fn norm_const(label: &StateLabel) -> f64 {
    match label.group {
        GroupKind::O2 => normalization_2d(label.n, label.m, label.s),
        _ => normalization_3d(label),
    }
}

/// An eigenstate with its normalization constant and energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorState {
    pub label: StateLabel,
    pub norm_const: f64,
    pub energy: f64,
}

#[derive(Serialize, Deserialize)]
struct StateRecord {
    group: GroupKind,
    s: f64,
    n: u32,
    l: u32,
    m: i32,
    energy: f64,
    norm_const: f64,
}

impl Serialize for OscillatorState {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        StateRecord {
            group: self.label.group,
            s: self.label.s,
            n: self.label.n,
            l: self.label.l,
            m: self.label.m,
            energy: self.energy,
            norm_const: self.norm_const,
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for OscillatorState {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let r = StateRecord::deserialize(de)?;
        let label = StateLabel::new(r.group, r.s, r.n, r.l, r.m);
        OscillatorState::new(label).map_err(serde::de::Error::custom)
    }
}

impl OscillatorState {
    pub fn new(label: StateLabel) -> Result<Self> {
        require_valid(&label)?;
        Ok(Self {
            label,
            norm_const: norm_const(&label),
            energy: energy(&label)?,
        })
    }

    pub fn radial(&self) -> RadialForm {
        RadialForm::of(&self.label)
    }

    /// Exponent of `e^{iφ}` in the azimuthal factor.
    pub fn azimuthal_charge(&self) -> f64 {
        self.label.m as f64 + self.label.s
    }

    /// Angular factor and its derivative in `aux`. Always `(1, 0)` for O(2).
    pub fn angular(&self, aux: f64) -> (f64, f64) {
        let l = self.label.l as i64;
        let m = self.label.m as i64;
        match self.label.group {
            GroupKind::O2 => (1.0, 0.0),
            GroupKind::O3 if self.label.is_half() => {
                // P̂_m^l(cot θ) / √sin θ
                let (s, c) = aux.sin_cos();
                let z = c / s;
                let f = legendre_phat_unchecked(m, l, z);
                let num = (m + l) as f64 * legendre_phat_unchecked(m - 1, l, z)
                    + m as f64 * z * legendre_phat_unchecked(m, l, z);
                // dz/dθ = -(1 + z²), and num = (1 + z²) P̂'(z).
                let dp = -num;
                let amp = 1.0 / s.abs().sqrt();
                let damp = -0.5 * c / s * amp;
                (f * amp, dp * amp + f * damp)
            }
            GroupKind::O21 if self.label.is_half() => {
                // P_m^l(tanh β) / √cosh β
                let z = aux.tanh();
                let f = legendre_p_unchecked(m, l, z);
                let dp = (m + l) as f64 * legendre_p_unchecked(m - 1, l, z)
                    - m as f64 * z * legendre_p_unchecked(m, l, z);
                let amp = 1.0 / aux.cosh().sqrt();
                (f * amp, dp * amp - 0.5 * z * f * amp)
            }
            GroupKind::O3 => {
                let (s, c) = aux.sin_cos();
                let f = legendre_p_unchecked(l, m, c);
                let df = if s.abs() < 1e-300 {
                    0.0
                } else {
                    let num = (l + m) as f64 * legendre_p_unchecked(l - 1, m, c)
                        - l as f64 * c * f;
                    -num / s
                };
                (f, df)
            }
            GroupKind::O21 => {
                let (z, ch) = (aux.sinh(), aux.cosh());
                let f = legendre_phat_unchecked(l, m, z);
                let num = (l + m) as f64 * legendre_phat_unchecked(l - 1, m, z)
                    + l as f64 * z * f;
                (f, num / ch)
            }
        }
    }

    /// Amplitude at `p` without range checks.
    pub fn value_at(&self, p: &CoordPoint) -> Complex64 {
        if self.norm_const == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let r = self.radial().value(p.rho);
        let (a, _) = self.angular(p.aux);
        Complex64::from_polar(self.norm_const * r * a, self.azimuthal_charge() * p.phi)
    }

    /// `(ψ, ∂_ρψ, ∂_auxψ, ∂_φψ)` from the analytic derivative identities.
    pub fn jet_at(&self, p: &CoordPoint) -> [Complex64; 4] {
        let (r, dr) = self.radial().value_and_derivative(p.rho);
        let (a, da) = self.angular(p.aux);
        let phase = Complex64::from_polar(self.norm_const, self.azimuthal_charge() * p.phi);
        let v = phase * (r * a);
        [
            v,
            phase * (dr * a),
            phase * (r * da),
            v * Complex64::new(0.0, self.azimuthal_charge()),
        ]
    }
}

/// Evaluates the closed-form amplitude of an admissible label at `p`.
pub fn eval_state(label: &StateLabel, p: &CoordPoint) -> Result<Complex64> {
    let st = OscillatorState::new(*label)?;
    p.validate(label.group)?;
    if label.is_half() && label.group == GroupKind::O3 && (p.aux == 0.0 || p.aux == PI) {
        return Err(Error::Domain("the s = 1/2 O(3) states are singular on the poles".into()));
    }
    if p.rho == 0.0 && st.radial().p < 0.0 {
        return Err(Error::Domain(format!("{label} is singular at the origin")));
    }
    Ok(st.value_at(p))
}

/// The `n = l = 0` state; `m0` selects a member of the `s = 1/2` ground multiplet.
pub fn ground_state(group: GroupKind, s: f64, m0: i32) -> Result<OscillatorState> {
    let half = group.is_3d() && s == 0.5;
    if !half && m0 != 0 {
        return Err(Error::Label(format!(
            "the {group} ground state with s = {s} is unique; got m0 = {m0}"
        )));
    }
    OscillatorState::new(StateLabel::new(group, s, 0, 0, m0))
}

/// Ground state written directly in Cartesian coordinates; `aux` is `z` or `t`.
pub fn cartesian_form(label: &StateLabel, x: f64, y: f64, aux: f64) -> Result<Complex64> {
    if !label.is_ground() {
        return Err(Error::Unsupported(format!(
            "{label} is not separable; only ground states have a Cartesian form here"
        )));
    }
    let st = OscillatorState::new(*label)?;
    let a0 = st.norm_const;
    let r2 = x * x + y * y;
    let phi = branch_angle(x, y);
    let s = label.s;
    match label.group {
        GroupKind::O2 => Ok(Complex64::from_polar(
            a0 * (-0.5 * r2).exp() * r2.powf(0.5 * s),
            s * phi,
        )),
        GroupKind::O3 | GroupKind::O21 if s == 0.0 => {
            let q = if label.group == GroupKind::O3 {
                r2 + aux * aux
            } else {
                r2 - aux * aux
            };
            Ok(Complex64::new(a0 * (-0.5 * q).exp(), 0.0))
        }
        g => {
            let r = r2.sqrt();
            if r == 0.0 {
                return Err(Error::Domain("the s = 1/2 ground states are singular on the axis".into()));
            }
            let m0 = label.m as i64;
            let (q, ang) = if g == GroupKind::O3 {
                (r2 + aux * aux, legendre_phat_unchecked(m0, 0, aux / r))
            } else {
                if r <= aux.abs() {
                    return Err(Error::Domain("point outside the spacelike sector".into()));
                }
                (r2 - aux * aux, legendre_p_unchecked(m0, 0, aux / r))
            };
            Ok(Complex64::from_polar(
                a0 * (-0.5 * q).exp() * ang / r.sqrt(),
                (label.m as f64 + 0.5) * phi,
            ))
        }
    }
}

/// One row of a grid export.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridRow {
    pub rho: f64,
    pub aux: f64,
    pub phi: f64,
    pub re: f64,
    pub im: f64,
}

/// Evaluates `label` on every point of `points`, in order.
pub fn grid_rows(label: &StateLabel, points: &[CoordPoint]) -> Result<Vec<GridRow>> {
    points
        .iter()
        .map(|p| {
            let v = eval_state(label, p)?;
            Ok(GridRow {
                rho: p.rho,
                aux: p.aux,
                phi: p.phi,
                re: v.re,
                im: v.im,
            })
        })
        .collect()
}

/// Labels admissible for `group` and `s` within the given caps, in `(n, l, m)` order.
pub fn enumerate_labels(group: GroupKind, s: f64, nmax: u32, lmax: u32, mmax: u32) -> Vec<StateLabel> {
    let mut out = Vec::new();
    let mm = mmax as i32;
    for n in 0..=nmax {
        let ls = if group.is_3d() { 0..=lmax } else { 0..=0 };
        for l in ls {
            for m in -mm..=mm {
                let label = StateLabel::new(group, s, n, l, m);
                if is_square_integrable(&label) {
                    out.push(label);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn validation_examples() {
        assert!(!validate_label(&StateLabel::o2(0.5, 0, -1)));
        assert!(validate_label(&StateLabel::o2(0.0, 3, 0)));
        assert!(!validate_label(&StateLabel::new(GroupKind::O3, 0.0, 0, 2, 3)));
        assert!(!validate_label(&StateLabel::o2(1.0, 0, 0)));
        assert!(!validate_label(&StateLabel::new(GroupKind::O3, 0.25, 0, 0, 0)));
        assert!(validate_label(&StateLabel::new(GroupKind::O21, 0.5, 0, 1, 1)));
        assert!(!validate_label(&StateLabel::new(GroupKind::O21, 0.5, 0, 1, 0)));
    }

    #[test]
    fn square_integrability_is_stricter() {
        let l = StateLabel::o2(0.5, 2, -2);
        assert!(validate_label(&l));
        assert!(!is_square_integrable(&l));
        assert!(is_square_integrable(&StateLabel::o2(0.5, 1, -1)));
        assert!(is_square_integrable(&StateLabel::o2(0.0, 2, -2)));
    }

    #[test]
    fn energy_examples() {
        assert_eq!(energy(&StateLabel::o2(0.0, 0, 0)).unwrap(), 1.0);
        assert_eq!(energy(&StateLabel::new(GroupKind::O3, 0.0, 0, 0, 0)).unwrap(), 1.5);
        assert_eq!(energy(&StateLabel::new(GroupKind::O21, 0.5, 0, 1, 1)).unwrap(), 2.0);
        assert!(energy(&StateLabel::o2(0.5, 0, -1)).is_err());
    }

    #[test]
    fn normalization_examples() {
        let inv = 1.0 / PI.sqrt();
        assert_relative_eq!(normalization_2d(0, 0, 0.0), inv, epsilon = 1e-15);
        assert_relative_eq!(normalization_2d(1, 0, 0.0), -inv, epsilon = 1e-15);
        assert_eq!(normalization_2d(0, -1, 0.5), 0.0);
        let g = ground_state(GroupKind::O3, 0.0, 0).unwrap();
        assert_relative_eq!(g.norm_const, PI.powf(-0.75), epsilon = 1e-14);
    }

    #[test]
    fn ground_state_rejects_multiplet_index_when_unique() {
        assert!(ground_state(GroupKind::O2, 0.3, 1).is_err());
        assert!(ground_state(GroupKind::O3, 0.0, 1).is_err());
        assert!(ground_state(GroupKind::O21, 0.5, 2).is_ok());
    }

    #[test]
    fn origin_value_of_o2_ground() {
        let v = eval_state(&StateLabel::o2(0.0, 0, 0), &CoordPoint::planar(0.0, 0.0)).unwrap();
        assert_relative_eq!(v.re, 1.0 / PI.sqrt(), epsilon = 1e-15);
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn eval_rejects_out_of_range_points() {
        let l = StateLabel::new(GroupKind::O3, 0.0, 0, 1, 0);
        assert!(eval_state(&l, &CoordPoint::new(1.0, 0.0, 4.0)).is_err());
        assert!(eval_state(&l, &CoordPoint::new(-1.0, 0.0, 1.0)).is_err());
        assert!(eval_state(&l, &CoordPoint::new(1.0, 7.0, 1.0)).is_err());
    }

    #[test]
    fn state_record_round_trips() {
        let st = OscillatorState::new(StateLabel::new(GroupKind::O3, 0.0, 1, 2, -1)).unwrap();
        let js = serde_json::to_string(&st).unwrap();
        assert!(js.contains("\"group\":\"o3\""));
        let back: OscillatorState = serde_json::from_str(&js).unwrap();
        assert_eq!(back, st);
    }
}
