//! Irreducible tensor creation operators built by Clebsch–Gordan coupling.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::{GaussPoly, LadderKind, OpExpr};
use crate::specfun::{clebsch_gordan, CGIndex};
use crate::states::{GroupKind, OscillatorState};

/// `coeff · (ā₊)^plus (ā₋)^minus (ā∥)^par`; the creators commute.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Monomial {
    pub coeff: f64,
    pub plus: u32,
    pub minus: u32,
    pub par: u32,
}

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.plus + self.minus + self.par
    }

    fn word(&self) -> Vec<LadderKind> {
        let mut w = vec![LadderKind::AbarPlus; self.plus as usize];
        w.extend(std::iter::repeat_n(LadderKind::AbarMinus, self.minus as usize));
        w.extend(std::iter::repeat_n(LadderKind::AbarPar, self.par as usize));
        w
    }
}

/// Component `m` of the rank-`j` tensor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TensorOperator {
    pub j: u32,
    pub m: i32,
    pub terms: Vec<Monomial>,
}

type Poly = BTreeMap<(u32, u32, u32), f64>;

/// The vector `(ā₋, ā∥, -ā₊)` indexed by `m = -1, 0, 1`.
fn fundamental(m: i32) -> Poly {
    let mut p = Poly::new();
    match m {
        -1 => p.insert((0, 1, 0), 1.0),
        0 => p.insert((0, 0, 1), 1.0),
        _ => p.insert((1, 0, 0), -1.0),
    };
    p
}

fn product(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (&(p1, m1, z1), &c1) in a {
        for (&(p2, m2, z2), &c2) in b {
            *out.entry((p1 + p2, m1 + m2, z1 + z2)).or_default() += c1 * c2;
        }
    }
    out
}

/// `Σ_{m1 + m2 = M} ⟨j1 m1 1 m2 | J M⟩ T^{(j1)}_{m1} V_{m2}`.
fn couple(lower: &[Poly], j1: u32, j: u32, m: i32) -> Poly {
    let mut out = Poly::new();
    for m2 in -1..=1 {
        let m1 = m - m2;
        if m1.abs() > j1 as i32 {
            continue;
        }
        let cg = clebsch_gordan(&CGIndex::integral(j1 as i32, m1, 1, m2, j as i32, m));
        if cg == 0.0 {
            continue;
        }
        let t = &lower[(m1 + j1 as i32) as usize];
        for (k, v) in product(t, &fundamental(m2)) {
            *out.entry(k).or_default() += cg * v;
        }
    }
    out.retain(|_, v| v.abs() > 1e-15);
    out
}

/// All components of rank `j`, from `m = -j` to `j`, by the stretched recursion.
fn multiplet(j: u32) -> Vec<Poly> {
    let mut cur: Vec<Poly> = (-1..=1).map(fundamental).collect();
    for rank in 2..=j {
        cur = (-(rank as i32)..=rank as i32)
            .map(|m| couple(&cur, rank - 1, rank, m))
            .collect();
    }
    cur
}

/// Rank `j`, component `m`; `j = 0` is the singlet from `1 ⊗ 1`.
pub fn tensor_operator(j: u32, m: i32) -> Result<TensorOperator> {
    if m.unsigned_abs() > j {
        return Err(Error::Label(format!("component m = {m} exceeds rank {j}")));
    }
    let poly = if j == 0 {
        couple(&multiplet(1), 1, 0, 0)
    } else {
        multiplet(j)[(m + j as i32) as usize].clone()
    };
    let terms = poly
        .into_iter()
        .map(|((plus, minus, par), coeff)| Monomial {
            coeff,
            plus,
            minus,
            par,
        })
        .collect();
    Ok(TensorOperator { j, m, terms })
}

impl TensorOperator {
    pub fn coefficient(&self, plus: u32, minus: u32, par: u32) -> f64 {
        self.terms
            .iter()
            .find(|t| (t.plus, t.minus, t.par) == (plus, minus, par))
            .map_or(0.0, |t| t.coeff)
    }

    pub fn to_expr(&self, group: GroupKind) -> Result<OpExpr> {
        let mut e = OpExpr::zero(group);
        for t in &self.terms {
            e = e.add(&OpExpr::word(group, Complex64::new(t.coeff, 0.0), &t.word())?)?;
        }
        Ok(e)
    }
}

/// Applies the tensor to an `s = 0` ground state of O(3) or O(2,1).
pub fn build_excited(tensor: &TensorOperator, ground: &OscillatorState) -> Result<GaussPoly> {
    let label = ground.label;
    if !label.group.is_3d() {
        return Err(Error::Label("tensor operators here are three-dimensional".into()));
    }
    if !label.is_ground() {
        return Err(Error::Label(format!("{label} is not a ground state")));
    }
    if label.s != 0.0 {
        return Err(Error::Unsupported(
            "the vector ladder fails immediately on the s = 1/2 ground states".into(),
        ));
    }
    let base = GaussPoly::constant(label.group, 0.0, Complex64::new(ground.norm_const, 0.0));
    tensor.to_expr(label.group)?.apply(&base)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_two_components() {
        let top = tensor_operator(2, 2).unwrap();
        assert_eq!(top.terms.len(), 1);
        assert!((top.coefficient(2, 0, 0) - 1.0).abs() < 1e-15);
        let mid = tensor_operator(2, 0).unwrap();
        let c = 2.0 / 6f64.sqrt();
        assert!((mid.coefficient(1, 1, 0) + c).abs() < 1e-15);
        assert!((mid.coefficient(0, 0, 2) - c).abs() < 1e-15);
    }

    #[test]
    fn singlet() {
        let s = tensor_operator(0, 0).unwrap();
        let c = 1.0 / 3f64.sqrt();
        assert!((s.coefficient(1, 1, 0) + 2.0 * c).abs() < 1e-15);
        assert!((s.coefficient(0, 0, 2) + c).abs() < 1e-15);
    }

    #[test]
    fn out_of_range_component() {
        assert!(tensor_operator(1, 2).is_err());
    }
}
