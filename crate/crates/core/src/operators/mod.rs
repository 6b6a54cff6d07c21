//! Ladder and symmetry operators: symbolic index action, Cartesian Fock action,
//! polar differential forms and the exact Gaussian-polynomial realization.

pub mod differential;
pub mod expr;
pub mod gauss_poly;
pub mod su2;

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::ZetaLabel;
use crate::error::{Error, Result};
use crate::states::{validate_label, GroupKind, StateLabel};

pub use differential::{apply_differential, delta_ground_residual, delta_ground_ratio, q_ground_residual};
pub use expr::OpExpr;
pub use gauss_poly::GaussPoly;
pub use su2::{commutator_residual, su2_generators, Su2Generators};

/// Which ladder operator. The parallel pair is `a³, ā³` for O(3) and `a⁰, ā⁰` for O(2,1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LadderKind {
    APlus,
    AMinus,
    AbarPlus,
    AbarMinus,
    APar,
    AbarPar,
    /// Cartesian `a^μ` or `ā^μ`; `μ = 0` is the timelike mode of O(2,1).
    Cartesian { mu: u8, bar: bool },
}

impl LadderKind {
    pub const POLAR: [LadderKind; 4] = [
        LadderKind::APlus,
        LadderKind::AMinus,
        LadderKind::AbarPlus,
        LadderKind::AbarMinus,
    ];

    pub fn is_creation(self) -> bool {
        matches!(
            self,
            LadderKind::AbarPlus | LadderKind::AbarMinus | LadderKind::AbarPar | LadderKind::Cartesian { bar: true, .. }
        )
    }

    /// Checks that the operator exists for `group`.
    pub fn validate_for(self, group: GroupKind) -> Result<()> {
        let ok = match self {
            LadderKind::APar | LadderKind::AbarPar => group.is_3d(),
            LadderKind::Cartesian { mu, .. } => match group {
                GroupKind::O2 => mu == 1 || mu == 2,
                GroupKind::O3 => (1..=3).contains(&mu),
                GroupKind::O21 => mu <= 2,
            },
            _ => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Label(format!("{self} is not defined for {group}")))
        }
    }
}

impl fmt::Display for LadderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LadderKind::APlus => f.write_str("a+"),
            LadderKind::AMinus => f.write_str("a-"),
            LadderKind::AbarPlus => f.write_str("abar+"),
            LadderKind::AbarMinus => f.write_str("abar-"),
            LadderKind::APar => f.write_str("a_par"),
            LadderKind::AbarPar => f.write_str("abar_par"),
            LadderKind::Cartesian { mu, bar: false } => write!(f, "a^{mu}"),
            LadderKind::Cartesian { mu, bar: true } => write!(f, "abar^{mu}"),
        }
    }
}

/// Phase choice for the timelike ladder action.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PhaseConvention {
    Euclidean,
    KimNoz,
    Fkr,
}

impl PhaseConvention {
    /// Phase multiplying the real coefficient of `a^μ` and `ā^μ`.
    pub fn phase(self, mu: u8) -> Complex64 {
        match (self, mu) {
            (PhaseConvention::Fkr, 0) => Complex64::new(0.0, 1.0),
            _ => Complex64::new(1.0, 0.0),
        }
    }
}

impl std::str::FromStr for PhaseConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "euclidean" => Ok(PhaseConvention::Euclidean),
            "kimnoz" | "kn" => Ok(PhaseConvention::KimNoz),
            "fkr" => Ok(PhaseConvention::Fkr),
            other => Err(Error::Label(format!("unknown phase convention '{other}'"))),
        }
    }
}

/// A ladder operator with its group context.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LadderOp {
    pub kind: LadderKind,
    pub group: GroupKind,
    pub phases: PhaseConvention,
}

impl LadderOp {
    pub fn new(kind: LadderKind, group: GroupKind) -> Result<Self> {
        Self::with_phases(kind, group, PhaseConvention::Euclidean)
    }

    pub fn with_phases(kind: LadderKind, group: GroupKind, phases: PhaseConvention) -> Result<Self> {
        kind.validate_for(group)?;
        Ok(Self { kind, group, phases })
    }
}

/// Occupation numbers of the Cartesian modes.
///
/// `timelike` stores the convention's non-negative count: `n⁰` itself under
/// Kim–Noz (`n⁰ ≥ 1`) and `k = -n⁰` under FKR.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Occupation {
    pub timelike: Option<u32>,
    pub spatial: Vec<u32>,
}

impl Occupation {
    pub fn spatial(n: &[u32]) -> Self {
        Self {
            timelike: None,
            spatial: n.to_vec(),
        }
    }

    pub fn with_timelike(count: u32, n: &[u32]) -> Self {
        Self {
            timelike: Some(count),
            spatial: n.to_vec(),
        }
    }

    /// Signed `n⁰` under `conv`.
    pub fn n0(&self, conv: PhaseConvention) -> Option<i64> {
        self.timelike.map(|c| match conv {
            PhaseConvention::Fkr => -(c as i64),
            _ => c as i64,
        })
    }

    pub fn validate(&self, conv: PhaseConvention) -> Result<()> {
        match (conv, self.timelike) {
            (PhaseConvention::Euclidean, Some(_)) => Err(Error::Label(
                "the Euclidean convention has no timelike mode".into(),
            )),
            (PhaseConvention::KimNoz, Some(0)) => Err(Error::Label(
                "Kim–Noz timelike occupation must satisfy n0 >= 1".into(),
            )),
            (PhaseConvention::KimNoz | PhaseConvention::Fkr, None) => Err(Error::Label(
                "a timelike occupation is required by this convention".into(),
            )),
            _ => Ok(()),
        }
    }

    /// Energy in units of ω: `-n⁰ + Σn + D/2` (Kim–Noz), `k + Σn + D/2` (FKR).
    pub fn energy(&self, conv: PhaseConvention) -> Result<f64> {
        self.validate(conv)?;
        let spatial: u32 = self.spatial.iter().sum();
        let d = self.spatial.len() as f64 + if self.timelike.is_some() { 1.0 } else { 0.0 };
        let t = match (conv, self.timelike) {
            (PhaseConvention::KimNoz, Some(n0)) => -(n0 as f64),
            (PhaseConvention::Fkr, Some(k)) => k as f64,
            _ => 0.0,
        };
        Ok(t + spatial as f64 + d / 2.0)
    }
}

/// Target of a ladder step.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    State(StateLabel),
    Zeta(ZetaLabel),
    Occupation(Occupation),
    /// The formal `ψ_{0,-1}`-type function outside the Fock space.
    NonFock(StateLabel),
    Zero,
}

/// Result of a ladder operator: `coeff · target`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymbolicAction {
    pub coeff: f64,
    pub target: Target,
}

impl SymbolicAction {
    fn zero() -> Self {
        Self {
            coeff: 0.0,
            target: Target::Zero,
        }
    }

    fn to(coeff: f64, target: Target) -> Self {
        if coeff == 0.0 {
            Self::zero()
        } else {
            Self { coeff, target }
        }
    }
}

/// Input of [`apply_symbolic`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Ket {
    Polar(StateLabel),
    Zeta(ZetaLabel),
}

/// Index action of a ladder operator.
///
/// O(2) states are addressed by `(n, m)`; O(3) and O(2,1) `s = 0` states by
/// the occupations `(α, β, γ)` of `ā₊, ā₋, ā∥`.
pub fn apply_symbolic(op: &LadderOp, ket: &Ket) -> Result<SymbolicAction> {
    op.kind.validate_for(op.group)?;
    match *ket {
        Ket::Polar(label) => {
            if label.group != op.group {
                return Err(Error::Basis(format!("{} acting on {label}", op.group)));
            }
            if label.group.is_3d() {
                if label.is_half() {
                    return Err(Error::Unsupported(
                        "the vector ladder does not act on the s = 1/2 states".into(),
                    ));
                }
                return Err(Error::Label(
                    "3D states are addressed through their zeta occupations".into(),
                ));
            }
            polar_action(op.kind, &label)
        }
        Ket::Zeta(z) => zeta_action(op, &z),
    }
}

fn polar_action(kind: LadderKind, label: &StateLabel) -> Result<SymbolicAction> {
    if !validate_label(label) {
        return Err(Error::Label(format!("{label} is not admissible")));
    }
    let n = label.n as f64;
    let q = label.m as f64 + label.s;
    let shifted = |dn: i64, dm: i32| StateLabel::o2(label.s, (label.n as i64 + dn) as u32, label.m + dm);
    Ok(match kind {
        LadderKind::APlus => {
            if label.n == 0 {
                SymbolicAction::zero()
            } else {
                SymbolicAction::to(n.sqrt(), Target::State(shifted(-1, 1)))
            }
        }
        LadderKind::AMinus => {
            let out = shifted(0, -1);
            let coeff = (n + q).sqrt();
            if validate_label(&out) {
                SymbolicAction::to(coeff, Target::State(out))
            } else {
                SymbolicAction::to(coeff, Target::NonFock(out))
            }
        }
        LadderKind::AbarPlus => SymbolicAction::to((n + q + 1.0).sqrt(), Target::State(shifted(0, 1))),
        LadderKind::AbarMinus => SymbolicAction::to((n + 1.0).sqrt(), Target::State(shifted(1, -1))),
        other => {
            return Err(Error::Label(format!("{other} has no index action on O(2) polar states")))
        }
    })
}

fn zeta_action(op: &LadderOp, z: &ZetaLabel) -> Result<SymbolicAction> {
    let three = op.group.is_3d();
    if three && z.s != 0.0 {
        return Err(Error::Unsupported(
            "the vector ladder does not act on the s = 1/2 states".into(),
        ));
    }
    if !three && z.gamma != 0 {
        return Err(Error::Label("O(2) zeta labels carry no parallel occupation".into()));
    }
    let (a, b, g) = (z.alpha as f64, z.beta as f64, z.gamma as f64);
    let with = |da: i64, db: i64, dg: i64| ZetaLabel {
        alpha: (z.alpha as i64 + da) as u32,
        beta: (z.beta as i64 + db) as u32,
        gamma: (z.gamma as i64 + dg) as u32,
        s: z.s,
    };
    Ok(match op.kind {
        LadderKind::AbarPlus => SymbolicAction::to((a + z.s + 1.0).sqrt(), Target::Zeta(with(1, 0, 0))),
        LadderKind::AbarMinus => SymbolicAction::to((b + 1.0).sqrt(), Target::Zeta(with(0, 1, 0))),
        LadderKind::APlus => {
            if z.beta == 0 {
                SymbolicAction::zero()
            } else {
                SymbolicAction::to(b.sqrt(), Target::Zeta(with(0, -1, 0)))
            }
        }
        LadderKind::AMinus => {
            let coeff = (a + z.s).sqrt();
            if z.alpha == 0 {
                // Lowering past α = 0 only happens for s > 0 and leaves the Fock space.
                let (label, _) = crate::algebra::zeta_to_state_2d(z);
                let out = StateLabel::o2(z.s, label.n, label.m - 1);
                SymbolicAction::to(coeff, Target::NonFock(out))
            } else {
                SymbolicAction::to(coeff, Target::Zeta(with(-1, 0, 0)))
            }
        }
        LadderKind::AbarPar => SymbolicAction::to((g + 1.0).sqrt(), Target::Zeta(with(0, 0, 1))),
        LadderKind::APar => {
            if z.gamma == 0 {
                SymbolicAction::zero()
            } else {
                // [a⁰, ā⁰] = -1 on the Lorentz patch.
                let sign = if op.group == GroupKind::O21 { -1.0 } else { 1.0 };
                SymbolicAction::to(sign * g.sqrt(), Target::Zeta(with(0, 0, -1)))
            }
        }
        LadderKind::Cartesian { .. } => {
            return Err(Error::Label("Cartesian operators act on occupations".into()))
        }
    })
}

/// Action of `a^μ` or `ā^μ` on a Cartesian occupation vector.
///
/// The coefficient is real and non-negative; the convention's phase is
/// available from [`PhaseConvention::phase`].
pub fn apply_cartesian(op: &LadderOp, occ: &Occupation) -> Result<SymbolicAction> {
    let LadderKind::Cartesian { mu, bar } = op.kind else {
        return Err(Error::Label(format!("{} is not a Cartesian operator", op.kind)));
    };
    op.kind.validate_for(op.group)?;
    if mu == 0 {
        occ.validate(op.phases)?;
        let count = occ.timelike.unwrap_or(0);
        let shifted = |c: u32| Occupation {
            timelike: Some(c),
            spatial: occ.spatial.clone(),
        };
        return Ok(match (op.phases, bar) {
            // ā⁰|n⁰⟩ = √(n⁰ - 1)|n⁰ - 1⟩, a⁰|n⁰⟩ = √n⁰|n⁰ + 1⟩
            (PhaseConvention::KimNoz, true) => {
                SymbolicAction::to(((count - 1) as f64).sqrt(), Target::Occupation(shifted(count - 1)))
            }
            (PhaseConvention::KimNoz, false) => {
                SymbolicAction::to((count as f64).sqrt(), Target::Occupation(shifted(count + 1)))
            }
            // with k = -n⁰: ā⁰ → √(1 + k), a⁰ → √k
            (PhaseConvention::Fkr, true) => {
                SymbolicAction::to(((count + 1) as f64).sqrt(), Target::Occupation(shifted(count + 1)))
            }
            (PhaseConvention::Fkr, false) => {
                if count == 0 {
                    SymbolicAction::zero()
                } else {
                    SymbolicAction::to((count as f64).sqrt(), Target::Occupation(shifted(count - 1)))
                }
            }
            (PhaseConvention::Euclidean, _) => unreachable!("rejected by validate"),
        });
    }
    if op.phases != PhaseConvention::Euclidean {
        occ.validate(op.phases)?;
    } else if occ.timelike.is_some() {
        return Err(Error::Label("the Euclidean convention has no timelike mode".into()));
    }
    let idx = (mu - 1) as usize;
    if idx >= occ.spatial.len() {
        return Err(Error::Label(format!("mode {mu} missing from occupation {:?}", occ.spatial)));
    }
    let n = occ.spatial[idx];
    let mut out = occ.clone();
    Ok(if bar {
        out.spatial[idx] = n + 1;
        SymbolicAction::to(((n + 1) as f64).sqrt(), Target::Occupation(out))
    } else if n == 0 {
        SymbolicAction::zero()
    } else {
        out.spatial[idx] = n - 1;
        SymbolicAction::to((n as f64).sqrt(), Target::Occupation(out))
    })
}

/// Raising (`+`) or lowering (`-`) of the azimuthal index on the angular factor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngularStep {
    pub coeff: Complex64,
    pub m_out: i32,
}

/// `L^±` (O(3)) or `A^±` (O(2,1)) on the angular factor of `(l, m)`.
///
/// For `s = 0` the coefficient is the usual `√((l∓m)(l±m+1))`. For `s = 1/2`
/// the operators shift the degree `m` of `P̂_m^l` or `P_m^l` with unit angular
/// constants: `L⁺ → -(l-m-1)`, `L⁻ → -(l+m)`, and `A^±` carry an extra `i`.
pub fn angular_raise_lower(group: GroupKind, s: f64, raise: bool, l: u32, m: i32) -> Result<AngularStep> {
    if group == GroupKind::O2 {
        return Err(Error::Label("O(2) has no angular raising operator".into()));
    }
    let label = StateLabel::new(group, s, 0, l, m);
    if !validate_label(&label) {
        return Err(Error::Label(format!("(l = {l}, m = {m}) is not an admissible {group} angular label")));
    }
    let (lf, mf) = (l as f64, m as f64);
    let m_out = if raise { m + 1 } else { m - 1 };
    if s == 0.0 {
        let c = if raise {
            ((lf - mf) * (lf + mf + 1.0)).sqrt()
        } else {
            ((lf + mf) * (lf - mf + 1.0)).sqrt()
        };
        return Ok(AngularStep {
            coeff: Complex64::new(c, 0.0),
            m_out,
        });
    }
    let real = if raise {
        -(lf - mf - 1.0)
    } else if m_out < l as i32 {
        // P̂_{m-1}^l vanishes once the degree drops below the order.
        0.0
    } else {
        -(lf + mf)
    };
    let coeff = match group {
        GroupKind::O21 => Complex64::new(0.0, real),
        _ => Complex64::new(real, 0.0),
    };
    Ok(AngularStep { coeff, m_out })
}
