//! The ladder operators as first-order differential operators on a polar patch.

use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{central4, central4_second, Field};
use crate::operators::{LadderKind, LadderOp};
use crate::states::{branch_angle, cartesian_form, CoordPoint, GroupKind, StateLabel};

/// Below this radius the polar derivatives are not evaluated.
pub const SINGULAR_RADIUS: f64 = 1e-6;

/// Step of the Cartesian stencils used on the ground state.
const GROUND_STEP: f64 = 1e-3;

/// Cartesian gradient `(∂x, ∂y, ∂u)` from the polar jet `(∂ρ, ∂aux, ∂φ)`.
fn cartesian_gradient(group: GroupKind, p: &CoordPoint, jet: &[Complex64; 4]) -> [Complex64; 3] {
    let [_, d_rho, d_aux, d_phi] = *jet;
    let (sp, cp) = p.phi.sin_cos();
    let rho = p.rho;
    match group {
        GroupKind::O2 => [
            d_rho * cp - d_phi * (sp / rho),
            d_rho * sp + d_phi * (cp / rho),
            Complex64::default(),
        ],
        GroupKind::O3 => {
            let (st, ct) = p.aux.sin_cos();
            let r = rho * st;
            [
                d_rho * (st * cp) + d_aux * (ct * cp / rho) - d_phi * (sp / r),
                d_rho * (st * sp) + d_aux * (ct * sp / rho) + d_phi * (cp / r),
                d_rho * ct - d_aux * (st / rho),
            ]
        }
        GroupKind::O21 => {
            let (sh, ch) = (p.aux.sinh(), p.aux.cosh());
            let r = rho * ch;
            [
                d_rho * (ch * cp) - d_aux * (sh * cp / rho) - d_phi * (sp / r),
                d_rho * (ch * sp) - d_aux * (sh * sp / rho) + d_phi * (cp / r),
                -d_rho * sh + d_aux * (ch / rho),
            ]
        }
    }
}

/// Applies `op` to `f` at `p` through its explicit differential form.
///
/// The polar pair is `a_± = ½(w_± + ∂x ± i∂y)` and `ā_± = ½(w_± - ∂x ∓ i∂y)`
/// with `w_+ = x + iy`, `w_- = x - iy`; along the axis `a³ = (z + ∂z)/√2` and
/// `a⁰ = (t - ∂t)/√2`. Phase conventions only affect the Fock action and are
/// not applied here.
pub fn apply_differential(op: &LadderOp, f: &dyn Field, p: &CoordPoint) -> Result<Complex64> {
    op.kind.validate_for(op.group)?;
    if f.group() != op.group {
        return Err(Error::Basis(format!("{} operator on {}", op.group, f.describe())));
    }
    p.validate(op.group)?;
    let r = p.cylindrical_radius(op.group);
    if p.rho < SINGULAR_RADIUS || r < SINGULAR_RADIUS {
        return Err(Error::Domain(format!(
            "differential operators are singular at rho = {}, axis distance {r}",
            p.rho
        )));
    }
    let jet = f.jet(p);
    let v = jet[0];
    let [dx, dy, du] = cartesian_gradient(op.group, p, &jet);
    let [x, y, u] = p.to_cartesian(op.group);
    let i = Complex64::new(0.0, 1.0);
    let w = Complex64::new(x, y);
    let half = 0.5;
    let lorentz = op.group == GroupKind::O21;
    Ok(match op.kind {
        LadderKind::APlus => (w * v + dx + i * dy) * half,
        LadderKind::AMinus => (w.conj() * v + dx - i * dy) * half,
        LadderKind::AbarPlus => (w * v - dx - i * dy) * half,
        LadderKind::AbarMinus => (w.conj() * v - dx + i * dy) * half,
        LadderKind::APar | LadderKind::Cartesian { mu: 0 | 3, bar: false } => {
            let sign = if lorentz { -1.0 } else { 1.0 };
            (v * u + du * sign) * FRAC_1_SQRT_2
        }
        LadderKind::AbarPar | LadderKind::Cartesian { mu: 0 | 3, bar: true } => {
            let sign = if lorentz { 1.0 } else { -1.0 };
            (v * u + du * sign) * FRAC_1_SQRT_2
        }
        LadderKind::Cartesian { mu, bar } => {
            let (q, dq) = if mu == 1 { (x, dx) } else { (y, dy) };
            let sign = if bar { -1.0 } else { 1.0 };
            (v * q + dq * sign) * FRAC_1_SQRT_2
        }
    })
}

/// O(2) ground state continued across the branch cut around `(x0, y0)`.
fn local_ground(s: f64, x0: f64, y0: f64) -> Result<impl Fn(f64, f64) -> Complex64> {
    if !(0.0..1.0).contains(&s) {
        return Err(Error::Label(format!("O(2) offset must lie in [0, 1), got {s}")));
    }
    if x0.hypot(y0) < 4.0 * GROUND_STEP {
        return Err(Error::Domain(format!("({x0}, {y0}) is too close to the origin")));
    }
    let label = StateLabel::o2(s, 0, 0);
    let phi0 = branch_angle(x0, y0);
    let base = Complex64::new(x0, y0);
    // Validate once so the closure can unwrap.
    cartesian_form(&label, x0, y0, 0.0)?;
    Ok(move |x: f64, y: f64| {
        let target = phi0 + (Complex64::new(x, y) / base).arg();
        let k = ((target - branch_angle(x, y)) / TAU).round();
        let v = cartesian_form(&label, x, y, 0.0).unwrap_or_default();
        v * Complex64::from_polar(1.0, s * TAU * k)
    })
}

/// `(ψ₀, Δψ₀, Qψ₀)` at `(x, y)` with Cartesian fourth-order stencils.
///
/// `Δ = ½(x² - y² - ∂x² + ∂y²)` and `Q = xy - ∂x∂y`.
fn ground_delta_q(s: f64, x: f64, y: f64) -> Result<(Complex64, Complex64, Complex64)> {
    let f = local_ground(s, x, y)?;
    let h = GROUND_STEP;
    let v = f(x, y);
    let fxx = central4_second(|a| f(a, y), x, h);
    let fyy = central4_second(|b| f(x, b), y, h);
    let fxy = central4(|a| central4(|b| f(a, b), y, h), x, h);
    let delta = (v * (x * x - y * y) - fxx + fyy) * 0.5;
    let q = v * (x * y) - fxy;
    Ok((v, delta, q))
}

/// The broken-symmetry term `s(x² + y² - s + 1)/(x + iy)²`.
fn breaking_factor(s: f64, x: f64, y: f64) -> Complex64 {
    let w = Complex64::new(x, y);
    (w * w).inv() * (s * (x * x + y * y - s + 1.0))
}

/// `Δψ₀ - s(x² + y² - s + 1)/(x + iy)² ψ₀` for the O(2) ground state of offset `s`.
pub fn delta_ground_residual(s: f64, x: f64, y: f64) -> Result<Complex64> {
    let (v, delta, _) = ground_delta_q(s, x, y)?;
    Ok(delta - v * breaking_factor(s, x, y))
}

/// `Qψ₀ - i s(x² + y² - s + 1)/(x + iy)² ψ₀`.
pub fn q_ground_residual(s: f64, x: f64, y: f64) -> Result<Complex64> {
    let (v, _, q) = ground_delta_q(s, x, y)?;
    Ok(q - v * breaking_factor(s, x, y) * Complex64::new(0.0, 1.0))
}

/// `Δψ₀ / ψ₀`, computed by differentiation.
pub fn delta_ground_ratio(s: f64, x: f64, y: f64) -> Result<Complex64> {
    let (v, delta, _) = ground_delta_q(s, x, y)?;
    Ok(delta / v)
}
