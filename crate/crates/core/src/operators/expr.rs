//! Linear combinations of ladder-operator words.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::algebra::ZetaLabel;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::operators::{apply_symbolic, GaussPoly, Ket, LadderKind, LadderOp, Target};
use crate::states::GroupKind;

use LadderKind::{AMinus, APar, APlus, AbarMinus, AbarPar, AbarPlus};

/// `Σ c_k W_k` where each word `W_k` is applied rightmost first.
#[derive(Debug, Clone, PartialEq)]
pub struct OpExpr {
    group: GroupKind,
    terms: Vec<(Complex64, Vec<LadderKind>)>,
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

impl OpExpr {
    pub fn zero(group: GroupKind) -> Self {
        Self { group, terms: vec![] }
    }

    pub fn identity(group: GroupKind) -> Self {
        Self::scalar(group, re(1.0))
    }

    pub fn scalar(group: GroupKind, c: Complex64) -> Self {
        Self {
            group,
            terms: vec![(c, vec![])],
        }
    }

    pub fn word(group: GroupKind, c: Complex64, word: &[LadderKind]) -> Result<Self> {
        for k in word {
            k.validate_for(group)?;
        }
        Ok(Self {
            group,
            terms: vec![(c, word.to_vec())],
        })
    }

    pub fn single(group: GroupKind, kind: LadderKind) -> Result<Self> {
        Self::word(group, re(1.0), &[kind])
    }

    fn from_terms(group: GroupKind, terms: &[(f64, &[LadderKind])]) -> Self {
        Self {
            group,
            terms: terms.iter().map(|(c, w)| (re(*c), w.to_vec())).collect(),
        }
    }

    pub fn group(&self) -> GroupKind {
        self.group
    }

    pub fn terms(&self) -> &[(Complex64, Vec<LadderKind>)] {
        &self.terms
    }

    /// Total mode number.
    pub fn number(group: GroupKind) -> Self {
        let mut e = Self::from_terms(group, &[(1.0, &[AbarPlus, AMinus]), (1.0, &[AbarMinus, APlus])]);
        match group {
            GroupKind::O2 => {}
            GroupKind::O3 => e.terms.push((re(1.0), vec![AbarPar, APar])),
            GroupKind::O21 => e.terms.push((re(-1.0), vec![AbarPar, APar])),
        }
        e
    }

    /// Angular momentum about the symmetry axis.
    pub fn angular_m(group: GroupKind) -> Self {
        Self::from_terms(group, &[(1.0, &[AbarPlus, AMinus]), (-1.0, &[AbarMinus, APlus])])
    }

    /// `Δ = N¹ - N²`.
    pub fn delta(group: GroupKind) -> Self {
        Self::from_terms(group, &[(1.0, &[AbarPlus, APlus]), (1.0, &[AbarMinus, AMinus])])
    }

    /// `Q = -i(ā₊a₊ - ā₋a₋)`.
    pub fn q(group: GroupKind) -> Self {
        Self {
            group,
            terms: vec![
                (Complex64::new(0.0, -1.0), vec![AbarPlus, APlus]),
                (Complex64::new(0.0, 1.0), vec![AbarMinus, AMinus]),
            ],
        }
    }

    /// `ā·ā` and `a·a` contracted with the group metric.
    fn dot(group: GroupKind, bar: bool) -> Result<Self> {
        let (p, m, z) = if bar {
            (AbarPlus, AbarMinus, AbarPar)
        } else {
            (APlus, AMinus, APar)
        };
        let sign = match group {
            GroupKind::O3 => 1.0,
            GroupKind::O21 => -1.0,
            GroupKind::O2 => return Err(Error::Label("the quadratic Casimir here is three-dimensional".into())),
        };
        Ok(Self::from_terms(group, &[(2.0, &[p, m]), (sign, &[z, z])]))
    }

    /// Quadratic Casimir `N² + N - (ā·ā)(a·a)` of O(3) or O(2,1).
    pub fn casimir_sq(group: GroupKind) -> Result<Self> {
        let n = Self::number(group);
        let pair = Self::dot(group, true)?.mul(&Self::dot(group, false)?)?;
        n.mul(&n)?.add(&n)?.sub(&pair)
    }

    fn same_group(&self, other: &Self) -> Result<()> {
        if self.group != other.group {
            return Err(Error::Basis(format!(
                "operators on {} and {} do not compose",
                self.group, other.group
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Ok(Self {
            group: self.group,
            terms,
        })
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            group: self.group,
            terms: self.terms.iter().map(|(a, w)| (a * c, w.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(re(-1.0)))
    }

    /// Operator product `self · other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, wa) in &self.terms {
            for (b, wb) in &other.terms {
                let mut w = wa.clone();
                w.extend_from_slice(wb);
                terms.push((a * b, w));
            }
        }
        Ok(Self {
            group: self.group,
            terms,
        })
    }

    /// `[self, other]`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// Exact action on a Gaussian-polynomial function.
    pub fn apply(&self, f: &GaussPoly) -> Result<GaussPoly> {
        if f.group() != self.group {
            return Err(Error::Basis(format!("{} operator on a {} function", self.group, f.group())));
        }
        let mut out = GaussPoly::zero(f.group(), f.s());
        for (c, w) in &self.terms {
            out = out.axpy(*c, &f.apply_word(w)?)?;
        }
        Ok(out)
    }

    /// Matrix on a ζ basis, assembled from the symbolic index actions.
    ///
    /// Column `j` holds the image of `basis[j]`; an image leaving the span
    /// (including the non-Fock function) is a basis error.
    pub fn matrix_on(&self, basis: &[ZetaLabel]) -> Result<ComplexMatrix> {
        let index: BTreeMap<(u32, u32, u32), usize> =
            basis.iter().enumerate().map(|(i, z)| (z.key(), i)).collect();
        let mut m = ComplexMatrix::zeros(basis.len(), basis.len());
        for (j, z) in basis.iter().enumerate() {
            for (c, word) in &self.terms {
                let Some((coeff, out)) = self.symbolic_word(word, z)? else {
                    continue;
                };
                let &i = index.get(&out.key()).ok_or_else(|| {
                    Error::Basis(format!("{} maps {z} outside the basis", self.describe_word(word)))
                })?;
                m[(i, j)] += c * coeff;
            }
        }
        Ok(m)
    }

    fn symbolic_word(&self, word: &[LadderKind], z: &ZetaLabel) -> Result<Option<(f64, ZetaLabel)>> {
        let mut cur = *z;
        let mut coeff = 1.0;
        for &k in word.iter().rev() {
            let op = LadderOp::new(k, self.group)?;
            let r = apply_symbolic(&op, &Ket::Zeta(cur))?;
            match r.target {
                Target::Zeta(next) => {
                    coeff *= r.coeff;
                    cur = next;
                }
                Target::Zero => return Ok(None),
                other => {
                    return Err(Error::NonFock(format!(
                        "{} leaves the zeta basis at {other:?}",
                        self.describe_word(word)
                    )))
                }
            }
        }
        Ok(Some((coeff, cur)))
    }

    fn describe_word(&self, word: &[LadderKind]) -> String {
        word.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(" ")
    }
}

impl fmt::Display for OpExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(c, w)| format!("({c}) {}", self.describe_word(w)))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_counts_quanta() {
        for group in [GroupKind::O2, GroupKind::O3, GroupKind::O21] {
            let g = GaussPoly::ground(group, 0.0).unwrap();
            let mut f = g.apply(AbarPlus).unwrap().apply(AbarMinus).unwrap();
            if group.is_3d() {
                f = f.apply(AbarPar).unwrap();
            }
            let n = if group.is_3d() { 3.0 } else { 2.0 };
            let image = OpExpr::number(group).apply(&f).unwrap();
            assert!(image.axpy(re(-n), &f).unwrap().is_zero(), "{group}");
        }
    }

    #[test]
    fn casimir_on_top_state() {
        let g = GaussPoly::ground(GroupKind::O3, 0.0).unwrap();
        let f = g.apply_word(&[AbarPlus, AbarPlus, AbarPlus]).unwrap();
        let image = OpExpr::casimir_sq(GroupKind::O3).unwrap().apply(&f).unwrap();
        assert!(image.axpy(re(-12.0), &f).unwrap().is_zero());
    }

    #[test]
    fn groups_must_match() {
        let a = OpExpr::number(GroupKind::O2);
        let b = OpExpr::number(GroupKind::O3);
        assert!(matches!(a.mul(&b), Err(Error::Basis(_))));
    }
}
