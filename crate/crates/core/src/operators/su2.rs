//! The SU(2) generators on fixed-N blocks and quadrature commutator checks.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::ZetaLabel;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::ComplexMatrix;
use crate::numerics::{norm_squared_unchecked, QuadratureSpec};
use crate::operators::{GaussPoly, OpExpr};
use crate::states::GroupKind;

/// `(½M, ½Δ, ½Q)` on an O(2) `s = 0` block, basis ordered by decreasing α.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Su2Generators {
    pub basis: Vec<ZetaLabel>,
    pub half_m: ComplexMatrix,
    pub half_delta: ComplexMatrix,
    pub half_q: ComplexMatrix,
}

impl Su2Generators {
    /// `(½M)² + (½Δ)² + (½Q)²`.
    pub fn casimir(&self) -> Result<ComplexMatrix> {
        let one = Complex64::new(1.0, 0.0);
        let m2 = self.half_m.mul(&self.half_m)?;
        let d2 = self.half_delta.mul(&self.half_delta)?;
        let q2 = self.half_q.mul(&self.half_q)?;
        m2.add_scaled(&d2, one)?.add_scaled(&q2, one)
    }

    /// Largest deviation from the three closure relations
    /// `[½Δ, ½Q] = i½M` and its cyclic partners.
    pub fn closure_defect(&self) -> Result<f64> {
        let i = Complex64::new(0.0, 1.0);
        let (m, d, q) = (&self.half_m, &self.half_delta, &self.half_q);
        let c1 = d.commutator(q)?.add_scaled(m, -i)?;
        let c2 = q.commutator(m)?.add_scaled(d, -i)?;
        let c3 = m.commutator(d)?.add_scaled(q, -i)?;
        Ok(c1.max_abs().max(c2.max_abs()).max(c3.max_abs()))
    }
}

/// Basis `{ζ_{αβ} : α + β = N}` with α decreasing.
pub fn su2_basis(n: u32) -> Vec<ZetaLabel> {
    (0..=n).rev().map(|a| ZetaLabel::planar(a, n - a, 0.0)).collect()
}

/// Generators on the `N` block.
pub fn su2_generators(n: u32) -> Result<Su2Generators> {
    su2_generators_on(&su2_basis(n))
}

/// Generators on an explicit basis, which must be a complete `s = 0` block.
pub fn su2_generators_on(basis: &[ZetaLabel]) -> Result<Su2Generators> {
    let Some(first) = basis.first() else {
        return Err(Error::Basis("empty basis".into()));
    };
    let n = first.alpha + first.beta;
    if basis.iter().any(|z| z.alpha + z.beta != n || z.gamma != 0) {
        return Err(Error::Basis("SU(2) blocks need a single total mode number".into()));
    }
    if basis.iter().any(|z| z.s != 0.0) {
        return Err(Error::Basis("SU(2) blocks are built on the s = 0 family".into()));
    }
    let group = GroupKind::O2;
    let half = Complex64::new(0.5, 0.0);
    Ok(Su2Generators {
        basis: basis.to_vec(),
        half_m: OpExpr::angular_m(group).matrix_on(basis)?.scale(half),
        half_delta: OpExpr::delta(group).matrix_on(basis)?.scale(half),
        half_q: OpExpr::q(group).matrix_on(basis)?.scale(half),
    })
}

/// `max_f ‖([A, B] - E) f‖ / ‖f‖` over the probes, norms by quadrature.
pub fn commutator_residual(
    a: &OpExpr,
    b: &OpExpr,
    expected: &OpExpr,
    probes: &[GaussPoly],
    spec: &QuadratureSpec,
) -> Result<f64> {
    let defect = a.commutator(b)?.sub(expected)?;
    let mut worst = 0.0f64;
    for f in probes {
        let r = defect.apply(f)?;
        if r.is_zero() {
            continue;
        }
        let den = norm_squared_unchecked(f as &dyn Field, spec)?;
        if den <= 0.0 {
            return Err(Error::Domain("probe function has zero norm".into()));
        }
        let num = norm_squared_unchecked(&r as &dyn Field, spec)?;
        worst = worst.max((num / den).sqrt());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n1_generators_are_pauli_halves() {
        let g = su2_generators(1).unwrap();
        let h = |re: f64, im: f64| Complex64::new(re, im);
        assert_eq!(g.half_m[(0, 0)], h(0.5, 0.0));
        assert_eq!(g.half_m[(1, 1)], h(-0.5, 0.0));
        assert_eq!(g.half_delta[(0, 1)], h(0.5, 0.0));
        assert_eq!(g.half_q[(1, 0)], h(0.0, 0.5));
        assert!(g.closure_defect().unwrap() < 1e-15);
    }

    #[test]
    fn mixed_blocks_are_rejected() {
        let basis = [ZetaLabel::planar(1, 0, 0.0), ZetaLabel::planar(1, 1, 0.0)];
        assert!(matches!(su2_generators_on(&basis), Err(Error::Basis(_))));
    }
}
