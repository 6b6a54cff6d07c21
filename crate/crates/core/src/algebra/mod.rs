//! Fock-space bookkeeping: ζ states, multiplicities, Casimir content, blocks and tensors.

pub mod blocks;
pub mod tensor;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::ln_gamma;
use crate::states::{GroupKind, StateLabel};

pub use blocks::{delta_block, msq_block, msq_eigenvalues, DeltaBlock, OperatorBlock};
pub use tensor::{build_excited, tensor_operator, Monomial, TensorOperator};

/// Occupations `(α, β, γ)` of `(ā₊, ā₋, ā∥)` acting on the ground state of offset `s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZetaLabel {
    pub alpha: u32,
    pub beta: u32,
    #[serde(default)]
    pub gamma: u32,
    pub s: f64,
}

impl ZetaLabel {
    pub fn new(alpha: u32, beta: u32, gamma: u32, s: f64) -> Self {
        Self { alpha, beta, gamma, s }
    }

    pub fn planar(alpha: u32, beta: u32, s: f64) -> Self {
        Self::new(alpha, beta, 0, s)
    }

    pub fn key(&self) -> (u32, u32, u32) {
        (self.alpha, self.beta, self.gamma)
    }

    /// Total mode number `α + β + γ + s`.
    pub fn mode_number(&self) -> f64 {
        (self.alpha + self.beta + self.gamma) as f64 + self.s
    }

    /// Angular momentum `α - β + s`.
    pub fn angular_momentum(&self) -> f64 {
        self.alpha as f64 - self.beta as f64 + self.s
    }
}

impl fmt::Display for ZetaLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "zeta({},{},{})[s={}]", self.alpha, self.beta, self.gamma, self.s)
    }
}

/// The O(2) eigenstate a ζ state is proportional to, with the factor `N_{αβ}`.
///
/// `(ā₊)^α (ā₋)^β ψ₀ = N_{αβ} ψ_{β, α-β}` with `N_{αβ}² = β! Γ(s + α + 1) / Γ(s + 1)`.
pub fn zeta_to_state_2d(z: &ZetaLabel) -> (StateLabel, f64) {
    let label = StateLabel::o2(z.s, z.beta, z.alpha as i32 - z.beta as i32);
    let ln_n2 = ln_gamma(z.beta as f64 + 1.0) + ln_gamma(z.s + z.alpha as f64 + 1.0) - ln_gamma(z.s + 1.0);
    (label, (0.5 * ln_n2).exp())
}

/// Number of states at one mode number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Multiplicity {
    Finite(u64),
    Infinite,
}

/// Degeneracy of mode number `N`: `N - s + 1` in 2D, `(N + 1)(N + 2)/2` in 3D
/// with `s = 0`, unbounded for the 3D `s = 1/2` families.
pub fn multiplicity(group: GroupKind, n: f64, s: f64) -> Result<Multiplicity> {
    let k = n - s;
    let integral = |v: f64| v >= -1e-12 && (v - v.round()).abs() < 1e-9;
    match group {
        GroupKind::O2 => {
            if !(0.0..1.0).contains(&s) || !integral(k) {
                return Err(Error::Label(format!("mode number {n} is inconsistent with s = {s}")));
            }
            Ok(Multiplicity::Finite(k.round() as u64 + 1))
        }
        _ if s == 0.0 => {
            if !integral(n) {
                return Err(Error::Label(format!("3D mode number must be a non-negative integer, got {n}")));
            }
            let n = n.round() as u64;
            Ok(Multiplicity::Finite((n + 1) * (n + 2) / 2))
        }
        _ if s == 0.5 => Ok(Multiplicity::Infinite),
        _ => Err(Error::Label(format!("3D offset must be 0 or 1/2, got {s}"))),
    }
}

/// `l = N, N - 2, …` down to 0 or 1.
pub fn casimir_content(n: u32) -> Vec<u32> {
    (0..=n).rev().step_by(2).collect()
}
