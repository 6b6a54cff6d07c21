//! Matrices of `M²` and `Δ` on fixed-mode-number blocks.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::ZetaLabel;
use crate::error::{Error, Result};
use crate::matrix::{real_eigenvalues, symmetric_eigenvalues, ComplexMatrix};
use crate::operators::{GaussPoly, OpExpr};
use crate::states::GroupKind;

use super::casimir_content;

/// A square operator matrix on a labelled basis; column `j` is the image of `basis[j]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorBlock {
    pub basis: Vec<ZetaLabel>,
    #[serde(flatten)]
    pub matrix: ComplexMatrix,
}

impl OperatorBlock {
    pub fn new(basis: Vec<ZetaLabel>, matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() || matrix.rows() != basis.len() {
            return Err(Error::Basis(format!(
                "{}x{} matrix on a basis of {} labels",
                matrix.rows(),
                matrix.cols(),
                basis.len()
            )));
        }
        Ok(Self { basis, matrix })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Sorted eigenvalues, when the matrix is real with a real spectrum.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let re = self
            .matrix
            .real_part(1e-12)
            .ok_or_else(|| Error::Unsupported("block has complex entries".into()))?;
        if (&re - re.transpose()).amax() < 1e-12 {
            return Ok(symmetric_eigenvalues(&re));
        }
        real_eigenvalues(&re, 1e-9).ok_or_else(|| Error::Unsupported("block has a complex spectrum".into()))
    }
}

/// Basis `{ζ_{αβγ} : α + β + γ = N, α - β = m}` ordered by `(γ, α)`.
pub fn msq_basis(n: u32, m: i32) -> Vec<ZetaLabel> {
    let mut out = Vec::new();
    for gamma in 0..=n {
        let rest = (n - gamma) as i32;
        if (rest + m) % 2 != 0 || m.abs() > rest {
            continue;
        }
        let alpha = ((rest + m) / 2) as u32;
        let beta = ((rest - m) / 2) as u32;
        out.push(ZetaLabel::new(alpha, beta, gamma, 0.0));
    }
    out
}

fn three_d(group: GroupKind) -> Result<()> {
    if group.is_3d() {
        Ok(())
    } else {
        Err(Error::Label(format!("the quadratic Casimir block needs O(3) or O(2,1), got {group}")))
    }
}

/// Matrix of `M²` on the `(N, m)` block from the closed-form action
///
/// `M² ζ_{αβγ} = [N(N+1) - 4αβ - γ(γ-1)] ζ_{αβγ}
///   ∓ 2√(αβ(γ+1)(γ+2)) ζ_{α-1,β-1,γ+2} ∓ 2√((α+1)(β+1)γ(γ-1)) ζ_{α+1,β+1,γ-2}`,
///
/// with the upper sign for O(3) and the lower for O(2,1).
pub fn msq_block(group: GroupKind, n: u32, m: i32) -> Result<OperatorBlock> {
    three_d(group)?;
    let basis = msq_basis(n, m);
    if basis.is_empty() {
        return Err(Error::Label(format!("no s = 0 states with N = {n}, m = {m}")));
    }
    let sign = if group == GroupKind::O3 { -1.0 } else { 1.0 };
    let nf = n as f64;
    let mut mat = ComplexMatrix::zeros(basis.len(), basis.len());
    for (j, z) in basis.iter().enumerate() {
        let (a, b, g) = (z.alpha as f64, z.beta as f64, z.gamma as f64);
        mat[(j, j)] = Complex64::new(nf * (nf + 1.0) - 4.0 * a * b - g * (g - 1.0), 0.0);
        // γ grows by 2 from column j to column j + 1.
        if j + 1 < basis.len() {
            let v = sign * 2.0 * (a * b * (g + 1.0) * (g + 2.0)).sqrt();
            mat[(j + 1, j)] = Complex64::new(v, 0.0);
            mat[(j, j + 1)] = Complex64::new(v, 0.0);
        }
    }
    OperatorBlock::new(basis, mat)
}

/// The same block assembled by composing the symbolic ladder actions of
/// `N² + N - (ā·ā)(a·a)`.
pub fn msq_block_from_ladders(group: GroupKind, n: u32, m: i32) -> Result<OperatorBlock> {
    three_d(group)?;
    let basis = msq_basis(n, m);
    let mat = OpExpr::casimir_sq(group)?.matrix_on(&basis)?;
    OperatorBlock::new(basis, mat)
}

/// `{l(l + 1) : l ∈ casimir_content(N), l ≥ |m|}`, ascending.
pub fn msq_eigenvalues(n: u32, m: i32) -> Vec<f64> {
    let mut ev: Vec<f64> = casimir_content(n)
        .into_iter()
        .filter(|&l| l as i32 >= m.abs())
        .map(|l| (l * (l + 1)) as f64)
        .collect();
    ev.sort_by(|a, b| a.total_cmp(b));
    ev
}

/// Matrix of `Δ` on an O(2) block, with the ground-state obstruction flag.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeltaBlock {
    pub block: OperatorBlock,
    /// `Δψ₀ ≠ 0`, which adds `(ā₊)^α (ā₋)^β Δψ₀` to every column.
    pub ground_obstructed: bool,
}

/// Block of `Δ` on `{ζ_{αβ} : α + β = N - s}` with α decreasing.
///
/// Commuting the annihilators through the creators gives
/// `Δζ_{αβ} = √(β(s+α+1)) ζ_{α+1,β-1} + α√((β+1)/(s+α)) ζ_{α-1,β+1}` plus the
/// ground-state term, which vanishes only for `s = 0`.
pub fn delta_block(mode_number: f64, s: f64) -> Result<DeltaBlock> {
    let k = mode_number - s;
    if !(0.0..1.0).contains(&s) || k < -1e-12 || (k - k.round()).abs() > 1e-9 {
        return Err(Error::Label(format!("mode number {mode_number} is inconsistent with s = {s}")));
    }
    let k = k.round() as u32;
    let basis: Vec<ZetaLabel> = (0..=k).rev().map(|a| ZetaLabel::planar(a, k - a, s)).collect();
    let mut mat = ComplexMatrix::zeros(basis.len(), basis.len());
    // Row index of ζ_{α,k-α} is k - α.
    for (j, z) in basis.iter().enumerate() {
        let (a, b) = (z.alpha as f64, z.beta as f64);
        if z.beta > 0 {
            mat[(j - 1, j)] = Complex64::new((b * (s + a + 1.0)).sqrt(), 0.0);
        }
        if z.alpha > 0 {
            mat[(j + 1, j)] = Complex64::new(a * ((b + 1.0) / (s + a)).sqrt(), 0.0);
        }
    }
    let ground = GaussPoly::ground(GroupKind::O2, s)?;
    let ground_obstructed = !OpExpr::delta(GroupKind::O2).apply(&ground)?.is_zero();
    Ok(DeltaBlock {
        block: OperatorBlock::new(basis, mat)?,
        ground_obstructed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn n2_m0_block() {
        let b = msq_block(GroupKind::O3, 2, 0).unwrap();
        assert_eq!(b.basis[0].key(), (1, 1, 0));
        assert_eq!(b.basis[1].key(), (0, 0, 2));
        let r = 2.0 * 2f64.sqrt();
        assert_relative_eq!(b.matrix[(0, 0)].re, 2.0);
        assert_relative_eq!(b.matrix[(0, 1)].re, -r, epsilon = 1e-15);
        assert_relative_eq!(b.matrix[(1, 0)].re, -r, epsilon = 1e-15);
        assert_relative_eq!(b.matrix[(1, 1)].re, 4.0);
        let ev = b.eigenvalues().unwrap();
        assert!((ev[0] - 0.0).abs() < 1e-12 && (ev[1] - 6.0).abs() < 1e-12);
    }

    #[test]
    fn delta_n1_and_flag() {
        let d = delta_block(1.0, 0.0).unwrap();
        assert!(!d.ground_obstructed);
        let ev = d.block.eigenvalues().unwrap();
        assert!((ev[0] + 1.0).abs() < 1e-14 && (ev[1] - 1.0).abs() < 1e-14);
        assert!(delta_block(1.5, 0.5).unwrap().ground_obstructed);
        assert!(delta_block(1.0, 0.5).is_err());
    }

    #[test]
    fn block_json_shape() {
        let b = msq_block(GroupKind::O3, 1, 0).unwrap();
        let v: serde_json::Value = serde_json::to_value(&b).unwrap();
        assert!(v["basis"].is_array() && v["re"].is_array() && v["im"].is_array());
        let back: OperatorBlock = serde_json::from_value(v).unwrap();
        assert_eq!(back, b);
    }
}
