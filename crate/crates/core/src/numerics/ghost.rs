//! Norms of timelike excitations under the indefinite metric.

use crate::error::Result;
use crate::field::Field;
use crate::numerics::{inner_product, sweep_report, NormReport, QuadratureSpec, Signature};
use crate::operators::PhaseConvention;
use crate::states::{ground_state, GroupKind};

/// Regulator `ε` in `e^{-εt²}` when the spec leaves it unset.
pub const DEFAULT_REGULATOR: f64 = 0.05;

/// Value of `[a⁰, ā⁰]` in the convention's normal ordering.
fn timelike_commutator(conv: PhaseConvention) -> i64 {
    match conv {
        PhaseConvention::Fkr => -1,
        _ => 1,
    }
}

/// `⟨n0|n0⟩` for `|n0⟩ = (ā⁰)^{n0}|0⟩ / √(n0!)`.
///
/// Commuting each `a⁰` through the creators gives
/// `⟨0|(a⁰)^k (ā⁰)^k|0⟩ = k c ⟨0|(a⁰)^{k-1} (ā⁰)^{k-1}|0⟩` with `c = [a⁰, ā⁰]`;
/// the factorials cancel exactly.
pub fn ghost_norm(conv: PhaseConvention, n0: u32) -> i64 {
    let c = timelike_commutator(conv) as i128;
    let mut norm: i128 = 1;
    for k in 1..=n0 as i128 {
        norm = k * c * norm / k;
    }
    norm as i64
}

/// Norm of `f` relative to the `s`-ground state of its patch, with a metric weight.
///
/// On O(2,1) both integrals carry the regulator `e^{-εt²}` (default
/// [`DEFAULT_REGULATOR`]) and are swept over the rapidity cutoff. The weight
/// `η` multiplies the result only under [`Signature::Indefinite`].
pub fn metric_norm(f: &dyn Field, weight: f64, spec: &QuadratureSpec) -> Result<NormReport> {
    let group = f.group();
    let ground = ground_state(group, f.offset(), 0)?;
    let spec = if group == GroupKind::O21 {
        spec.with_regulator(Some(spec.regulator.unwrap_or(DEFAULT_REGULATOR)))
    } else {
        spec.clone()
    };
    let eta = match spec.metric {
        Signature::Indefinite => weight,
        Signature::Definite => 1.0,
    };
    let ratio = |s: &QuadratureSpec| -> Result<f64> {
        let num = inner_product(f, f, s)?.re;
        let den = inner_product(&ground, &ground, s)?.re;
        Ok(eta * num / den)
    };
    if group != GroupKind::O21 {
        return Ok(NormReport {
            value: ratio(&spec)?,
            convergence_estimate: 0.0,
            divergent: false,
        });
    }
    let b = spec.beta_cutoff;
    let values = [0.5 * b, b, 2.0 * b]
        .iter()
        .map(|&bb| ratio(&spec.with_beta_cutoff(bb)))
        .collect::<Result<Vec<_>>>()?;
    let mut r = sweep_report(&values);
    r.value = values[1];
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algebraic_norms() {
        assert_eq!(ghost_norm(PhaseConvention::Fkr, 0), 1);
        assert_eq!(ghost_norm(PhaseConvention::Fkr, 1), -1);
        assert_eq!(ghost_norm(PhaseConvention::Fkr, 2), 1);
        assert_eq!(ghost_norm(PhaseConvention::KimNoz, 2), 1);
    }
}
