//! Evaluatable functions on a polar patch, with derivative access.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::specfun::gamma;
use crate::states::{CoordPoint, GroupKind, OscillatorState, StateLabel};

/// Finite-difference step used for every coordinate.
pub const FD_STEP: f64 = 1e-4;

/// A complex function on the polar patch of one group.
pub trait Field: Sync {
    fn group(&self) -> GroupKind;

    /// Angular offset of the representation the function lives in.
    fn offset(&self) -> f64;

    /// Amplitude at `p`; no range checks.
    fn value(&self, p: &CoordPoint) -> Complex64;

    /// `(f, ∂_ρ f, ∂_aux f, ∂_φ f)`; numerical unless overridden.
    fn jet(&self, p: &CoordPoint) -> [Complex64; 4] {
        fd_jet(self, p)
    }

    /// Exponent `p` with `|f| ~ ρ^p` near the origin, when known.
    fn radial_power(&self) -> Option<f64> {
        None
    }

    /// False for functions outside the Fock space, which inner products reject.
    fn is_fock(&self) -> bool {
        true
    }

    fn describe(&self) -> String;
}

/// Fourth-order central difference of `f` at `x` with step `h`.
pub fn central4<F: Fn(f64) -> Complex64>(f: F, x: f64, h: f64) -> Complex64 {
    (f(x - 2.0 * h) - f(x + 2.0 * h) + (f(x + h) - f(x - h)) * 8.0) / (12.0 * h)
}

/// Fourth-order central second difference.
pub fn central4_second<F: Fn(f64) -> Complex64>(f: F, x: f64, h: f64) -> Complex64 {
    let c = f(x);
    (-(f(x + 2.0 * h) + f(x - 2.0 * h)) + (f(x + h) + f(x - h)) * 16.0 - c * 30.0)
        / (12.0 * h * h)
}

/// Radial derivative that stays inside `ρ > 0`.
///
/// Close to the origin the step shrinks to `ρ/4` and two stencils are
/// combined by Richardson extrapolation.
pub fn radial_derivative<F: Fn(f64) -> Complex64>(f: F, rho: f64) -> Complex64 {
    if rho > 2.5 * FD_STEP {
        return central4(&f, rho, FD_STEP);
    }
    let h = rho / 4.0;
    let coarse = central4(&f, rho, h);
    let fine = central4(&f, rho, 0.5 * h);
    (fine * 16.0 - coarse) / 15.0
}

/// Numerical jet of any field.
pub fn fd_jet<F: Field + ?Sized>(f: &F, p: &CoordPoint) -> [Complex64; 4] {
    let at = |rho: f64, aux: f64, phi: f64| f.value(&CoordPoint::new(rho, phi, aux));
    let d_rho = radial_derivative(|r| at(r, p.aux, p.phi), p.rho);
    let d_aux = if f.group() == GroupKind::O2 {
        Complex64::new(0.0, 0.0)
    } else {
        central4(|a| at(p.rho, a, p.phi), p.aux, FD_STEP)
    };
    let d_phi = central4(|q| at(p.rho, p.aux, q), p.phi, FD_STEP);
    [f.value(p), d_rho, d_aux, d_phi]
}

impl Field for OscillatorState {
    fn group(&self) -> GroupKind {
        self.label.group
    }

    fn offset(&self) -> f64 {
        self.label.s
    }

    fn value(&self, p: &CoordPoint) -> Complex64 {
        self.value_at(p)
    }

    fn jet(&self, p: &CoordPoint) -> [Complex64; 4] {
        self.jet_at(p)
    }

    fn radial_power(&self) -> Option<f64> {
        let p = self.radial().p;
        let l = &self.label;
        // For integer negative m + s the Laguerre factor supplies x^{|m|}.
        if l.group == GroupKind::O2 && l.s == 0.0 && l.m < 0 {
            Some(-p)
        } else {
            Some(p)
        }
    }

    fn describe(&self) -> String {
        self.label.to_string()
    }
}

/// The function `A e^{-ρ²/2} (ρ e^{iφ})^{s-1}` reached by lowering the O(2) ground state.
///
/// It is kept as a formal object so operator chains can pass through it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonFockState {
    pub s: f64,
    pub norm_const: f64,
}

impl NonFockState {
    pub fn new(s: f64) -> Self {
        let norm_const = if s > 0.0 {
            (1.0 / (PI * gamma(s))).sqrt()
        } else {
            0.0
        };
        Self { s, norm_const }
    }

    /// Label this function would carry, `n = 0, m = -1`.
    pub fn label(&self) -> StateLabel {
        StateLabel::o2(self.s, 0, -1)
    }
}

impl Field for NonFockState {
    fn group(&self) -> GroupKind {
        GroupKind::O2
    }

    fn offset(&self) -> f64 {
        self.s
    }

    fn value(&self, p: &CoordPoint) -> Complex64 {
        let q = self.s - 1.0;
        Complex64::from_polar(
            self.norm_const * (-0.5 * p.rho * p.rho).exp() * p.rho.powf(q),
            q * p.phi,
        )
    }

    fn radial_power(&self) -> Option<f64> {
        Some(self.s - 1.0)
    }

    fn is_fock(&self) -> bool {
        false
    }

    fn describe(&self) -> String {
        format!("non-Fock psi(0,-1)[s={}]", self.s)
    }
}

/// A closure promoted to a [`Field`].
pub struct FnField<F> {
    pub group: GroupKind,
    pub offset: f64,
    pub radial_power: Option<f64>,
    pub f: F,
}

impl<F: Fn(&CoordPoint) -> Complex64 + Sync> FnField<F> {
    pub fn new(group: GroupKind, offset: f64, f: F) -> Self {
        Self {
            group,
            offset,
            radial_power: None,
            f,
        }
    }
}

impl<F: Fn(&CoordPoint) -> Complex64 + Sync> Field for FnField<F> {
    fn group(&self) -> GroupKind {
        self.group
    }

    fn offset(&self) -> f64 {
        self.offset
    }

    fn value(&self, p: &CoordPoint) -> Complex64 {
        (self.f)(p)
    }

    fn radial_power(&self) -> Option<f64> {
        self.radial_power
    }

    fn describe(&self) -> String {
        format!("function on the {} patch", self.group)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::StateLabel;

    #[test]
    fn analytic_and_numerical_jets_agree() {
        let labels = [
            StateLabel::o2(0.25, 2, 1),
            StateLabel::new(GroupKind::O3, 0.0, 1, 2, -1),
            StateLabel::new(GroupKind::O21, 0.0, 1, 2, 1),
            StateLabel::new(GroupKind::O3, 0.5, 1, 1, 2),
            StateLabel::new(GroupKind::O21, 0.5, 0, 2, 3),
        ];
        let p = CoordPoint::new(0.9, 1.3, 0.7);
        for l in labels {
            let st = OscillatorState::new(l).unwrap();
            let a = st.jet(&p);
            let n = fd_jet(&st, &p);
            for k in 0..4 {
                assert!((a[k] - n[k]).norm() < 1e-8, "{l} component {k}: {} vs {}", a[k], n[k]);
            }
        }
    }

    #[test]
    fn richardson_near_origin() {
        let f = |r: f64| Complex64::new(r.powi(3), 0.0);
        let d = radial_derivative(f, 1e-4);
        assert!((d.re - 3e-8).abs() < 1e-16);
    }
}
