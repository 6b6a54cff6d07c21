//! Casimir blocks, multiplicities, ζ states and tensor operators.

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use osc_core::algebra::{
    build_excited, casimir_content, delta_block, msq_block, msq_eigenvalues, multiplicity, tensor_operator,
    zeta_to_state_2d, Multiplicity, ZetaLabel,
};
use osc_core::algebra::blocks::msq_block_from_ladders;
use osc_core::field::Field;
use osc_core::numerics::{inner_product, QuadratureSpec};
use osc_core::operators::{GaussPoly, LadderKind, OpExpr};
use osc_core::states::{energy, ground_state, CoordPoint, GroupKind, OscillatorState, StateLabel};
use osc_core::Error;

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

fn zeta_poly(group: GroupKind, z: &ZetaLabel) -> GaussPoly {
    let mut word = vec![LadderKind::AbarPlus; z.alpha as usize];
    word.extend(vec![LadderKind::AbarMinus; z.beta as usize]);
    word.extend(vec![LadderKind::AbarPar; z.gamma as usize]);
    GaussPoly::ground(group, z.s).unwrap().apply_word(&word).unwrap()
}

#[test]
fn casimir_blocks_have_the_predicted_spectrum() {
    for group in [GroupKind::O3, GroupKind::O21] {
        for n in 0..=6u32 {
            for m in -(n as i32)..=n as i32 {
                let closed = msq_block(group, n, m).unwrap();
                let ladders = msq_block_from_ladders(group, n, m).unwrap();
                assert_eq!(closed.basis, ladders.basis);
                assert!(closed.matrix.max_abs_diff(&ladders.matrix) < 1e-12, "{group} N={n} m={m}");
                let want = msq_eigenvalues(n, m);
                assert_eq!(want.len(), closed.dim());
                for ev in [closed.eigenvalues().unwrap(), ladders.eigenvalues().unwrap()] {
                    for (a, b) in ev.iter().zip(&want) {
                        assert!((a - b).abs() < 1e-10, "{group} N={n} m={m}: {ev:?} vs {want:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn casimir_block_examples() {
    let b = msq_block(GroupKind::O3, 2, 0).unwrap();
    let r = 2.0 * 2f64.sqrt();
    let want = [[2.0, -r], [-r, 4.0]];
    for i in 0..2 {
        for j in 0..2 {
            assert!((b.matrix[(i, j)] - Complex64::new(want[i][j], 0.0)).norm() < 1e-14);
        }
    }
    let ev = b.eigenvalues().unwrap();
    assert!((ev[0] - 0.0).abs() < 1e-12 && (ev[1] - 6.0).abs() < 1e-12);

    let one = msq_block(GroupKind::O3, 1, 0).unwrap();
    assert_eq!(one.dim(), 1);
    assert_eq!(one.matrix[(0, 0)], Complex64::new(2.0, 0.0));
    for n in 0..=6u32 {
        let top = msq_block(GroupKind::O3, n, n as i32).unwrap();
        assert_eq!(top.matrix[(0, 0)].re, (n * (n + 1)) as f64);
    }
    assert!(matches!(msq_block(GroupKind::O3, 2, 3), Err(Error::Label(_))));
    assert!(msq_block(GroupKind::O2, 2, 0).is_err());
}

#[test]
fn casimir_eigenvectors_are_the_eigenstates() {
    // Each eigenvector of the block, read as a combination of normalized ζ
    // states, is the O(3) eigenstate with n = (N - l)/2 up to a sign.
    let spec = QuadratureSpec {
        radial_nodes: 24,
        azimuthal_nodes: 16,
        polar_nodes: 16,
        ..QuadratureSpec::default()
    };
    for n in 0..=4u32 {
        for m in -(n as i32)..=n as i32 {
            let block = msq_block(GroupKind::O3, n, m).unwrap();
            let re = DMatrix::from_fn(block.dim(), block.dim(), |i, j| block.matrix[(i, j)].re);
            let eig = SymmetricEigen::new(re);
            for k in 0..block.dim() {
                let lam = eig.eigenvalues[k];
                let l = ((-1.0 + (1.0 + 4.0 * lam).sqrt()) / 2.0).round() as u32;
                let mut f = GaussPoly::zero(GroupKind::O3, 0.0);
                for (i, z) in block.basis.iter().enumerate() {
                    let norm = (factorial(z.alpha) * factorial(z.beta) * factorial(z.gamma)).sqrt();
                    let c = Complex64::new(eig.eigenvectors[(i, k)] / norm, 0.0);
                    f = f.axpy(c, &zeta_poly(GroupKind::O3, z)).unwrap();
                }
                let psi = OscillatorState::new(StateLabel::new(GroupKind::O3, 0.0, (n - l) / 2, l, m)).unwrap();
                let overlap = inner_product(&psi, &f, &spec).unwrap();
                assert!((overlap.norm() - 1.0).abs() < 1e-8, "N={n} m={m} l={l}: {overlap}");
            }
        }
    }
}

#[test]
fn degeneracy_totals() {
    for n in 0..=12u32 {
        let total: u64 = casimir_content(n).iter().map(|&l| 2 * l as u64 + 1).sum();
        assert_eq!(multiplicity(GroupKind::O3, n as f64, 0.0).unwrap(), Multiplicity::Finite(total));
        assert_eq!(total, ((n + 1) * (n + 2) / 2) as u64);
        let labels = osc_core::states::enumerate_labels(GroupKind::O3, 0.0, n / 2, n, n)
            .into_iter()
            .filter(|l| 2 * l.n + l.l == n)
            .count();
        assert_eq!(labels as u64, total);
    }
    assert_eq!(multiplicity(GroupKind::O3, 2.0, 0.0).unwrap(), Multiplicity::Finite(6));
    assert_eq!(multiplicity(GroupKind::O3, 3.0, 0.0).unwrap(), Multiplicity::Finite(10));
    assert_eq!(multiplicity(GroupKind::O2, 3.5, 0.5).unwrap(), Multiplicity::Finite(4));
    assert_eq!(multiplicity(GroupKind::O21, 1.0, 0.5).unwrap(), Multiplicity::Infinite);
    assert!(multiplicity(GroupKind::O2, 3.2, 0.5).is_err());
    assert_eq!(casimir_content(4), vec![4, 2, 0]);
    assert_eq!(casimir_content(2), vec![2, 0]);
    assert_eq!(casimir_content(1), vec![1]);
}

#[test]
fn mode_number_reconciles_with_the_spectrum() {
    for n_total in 0..=12u32 {
        let mut pairs: Vec<(u32, u32)> = casimir_content(n_total).iter().map(|&l| ((n_total - l) / 2, l)).collect();
        pairs.sort();
        let mut direct: Vec<(u32, u32)> = (0..=n_total)
            .filter(|l| (n_total - l) % 2 == 0)
            .map(|l| ((n_total - l) / 2, l))
            .collect();
        direct.sort();
        assert_eq!(pairs, direct);
        for (n, l) in pairs {
            let e = energy(&StateLabel::new(GroupKind::O3, 0.0, n, l, 0)).unwrap();
            assert_eq!(e, n_total as f64 + 1.5);
        }
    }
}

#[test]
fn zeta_states_are_scaled_eigenstates() {
    let pts = [CoordPoint::planar(0.5, 0.3), CoordPoint::planar(1.4, 2.8), CoordPoint::planar(2.3, 5.9)];
    for s in [0.0, 0.25, 0.5] {
        for alpha in 0..=4u32 {
            for beta in 0..=4u32 {
                let z = ZetaLabel::planar(alpha, beta, s);
                let (label, norm) = zeta_to_state_2d(&z);
                assert_eq!(z.mode_number(), 2.0 * label.n as f64 + label.m as f64 + s);
                let st = OscillatorState::new(label).unwrap();
                let poly = zeta_poly(GroupKind::O2, &z);
                for p in &pts {
                    let want = st.value_at(p) * norm;
                    assert!((poly.value(p) - want).norm() < 1e-11 * want.norm().max(1.0), "{z}");
                }
                if s == 0.0 {
                    assert!((norm * norm - factorial(alpha) * factorial(beta)).abs() < 1e-9 * norm * norm);
                }
            }
        }
    }
    let (l, n) = zeta_to_state_2d(&ZetaLabel::planar(2, 1, 0.0));
    assert_eq!((l.n, l.m), (1, 1));
    assert!((n - 2f64.sqrt()).abs() < 1e-14);
}

#[test]
fn delta_block_spectra_and_flag() {
    for n in 0..=6u32 {
        let d = delta_block(n as f64, 0.0).unwrap();
        assert!(!d.ground_obstructed);
        let ev = d.block.eigenvalues().unwrap();
        let want: Vec<f64> = (0..=n).map(|k| 2.0 * k as f64 - n as f64).collect();
        for (a, b) in ev.iter().zip(&want) {
            assert!((a - b).abs() < 1e-10, "N={n}: {ev:?}");
        }
    }
    for s in [0.1, 0.25, 0.5, 0.75] {
        for k in 0..=4u32 {
            assert!(delta_block(k as f64 + s, s).unwrap().ground_obstructed, "s={s}");
        }
    }
    assert!(delta_block(1.2, 0.5).is_err());
}

#[test]
fn tensor_components_carry_their_charge() {
    for group in [GroupKind::O3, GroupKind::O21] {
        let ground = GaussPoly::ground(group, 0.0).unwrap();
        let m_op = OpExpr::angular_m(group);
        let n_op = OpExpr::number(group);
        for j in 0..=4u32 {
            for m in -(j as i32)..=j as i32 {
                if j == 0 && m != 0 {
                    continue;
                }
                let t = tensor_operator(j, m).unwrap();
                let degree = if j == 0 { 2 } else { j };
                assert!(t.terms.iter().all(|x| x.degree() == degree));
                let f = t.to_expr(group).unwrap().apply(&ground).unwrap();
                let mf = m_op.apply(&f).unwrap();
                assert!(mf.axpy(Complex64::new(-(m as f64), 0.0), &f).unwrap().is_zero(), "{group} j={j} m={m}");
                let nf = n_op.apply(&f).unwrap();
                assert!(nf.axpy(Complex64::new(-(degree as f64), 0.0), &f).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn tensor_components_are_casimir_eigenvectors() {
    // M² T_m ψ₀ = j(j+1) T_m ψ₀ on the polynomial realization.
    for group in [GroupKind::O3, GroupKind::O21] {
        let ground = GaussPoly::ground(group, 0.0).unwrap();
        let c = OpExpr::casimir_sq(group).unwrap();
        for j in 0..=4u32 {
            for m in -(j as i32)..=j as i32 {
                if j == 0 && m != 0 {
                    continue;
                }
                let f = tensor_operator(j, m).unwrap().to_expr(group).unwrap().apply(&ground).unwrap();
                let cf = c.apply(&f).unwrap();
                let lam = (j * (j + 1)) as f64;
                let exact = cf.axpy(Complex64::new(-lam, 0.0), &f).unwrap().is_zero();
                // The coupling uses the Euclidean fundamental, so on O(2,1) only
                // components without a pair of timelike quanta stay eigenvectors.
                let timelike_pairs = tensor_operator(j, m).unwrap().terms.iter().any(|t| t.par >= 2);
                let expect = group == GroupKind::O3 || !timelike_pairs;
                assert_eq!(exact, expect, "{group} j={j} m={m}");
            }
        }
    }
}

#[test]
fn vector_multiplets_match_closed_forms() {
    let a0 = PI.powf(-0.75);
    for group in [GroupKind::O3, GroupKind::O21] {
        let g = ground_state(group, 0.0, 0).unwrap();
        for (rho, phi, aux) in [(0.4, 0.2, 0.3), (1.1, 1.7, 1.2), (2.5, 3.9, 2.6), (1.8, 5.5, 0.9)] {
            let aux: f64 = aux;
            let p = CoordPoint::new(rho, phi, if group == GroupKind::O21 { aux - 1.4 } else { aux });
            let (c, s) = match group {
                GroupKind::O3 => (p.aux.sin(), p.aux.cos()),
                _ => (p.aux.cosh(), p.aux.sinh()),
            };
            let e = Complex64::from_polar(1.0, phi);
            let shape = [e.conj() * c, Complex64::new(2f64.sqrt() * s, 0.0), -e * c];
            for (k, m) in (-1..=1).enumerate() {
                let f = build_excited(&tensor_operator(1, m).unwrap(), &g).unwrap();
                let want = shape[k] * a0 * rho * (-0.5 * rho * rho).exp();
                assert!((f.value(&p) - want).norm() < 1e-10, "{group} m={m}");
            }
        }
    }
}

#[test]
fn rank_two_tensors_build_normalized_eigenstates() {
    let spec = QuadratureSpec::default();
    let g = ground_state(GroupKind::O3, 0.0, 0).unwrap();
    for m in -2..=2 {
        let f = build_excited(&tensor_operator(2, m).unwrap(), &g).unwrap();
        let psi = OscillatorState::new(StateLabel::new(GroupKind::O3, 0.0, 0, 2, m)).unwrap();
        let overlap = inner_product(&psi, &f, &spec).unwrap();
        let norm = inner_product(&f, &f, &spec).unwrap().re;
        assert!((norm - f.exact_norm_squared().unwrap()).abs() < 1e-10 * norm);
        let cosine = overlap / norm.sqrt();
        assert!((cosine - Complex64::new(1.0, 0.0)).norm() < 1e-8, "m={m}: {cosine}");
    }
}

#[test]
fn singlet_and_rank_two_coefficients() {
    let s = tensor_operator(0, 0).unwrap();
    let c = 1.0 / 3f64.sqrt();
    assert!((s.coefficient(1, 1, 0) + 2.0 * c).abs() < 1e-15);
    assert!((s.coefficient(0, 0, 2) + c).abs() < 1e-15);
    assert_eq!(s.terms.len(), 2);

    let top = tensor_operator(2, 2).unwrap();
    assert_eq!(top.terms.len(), 1);
    assert!((top.coefficient(2, 0, 0) - 1.0).abs() < 1e-15);
    let mid = tensor_operator(2, 0).unwrap();
    let k = 2.0 / 6f64.sqrt();
    assert!((mid.coefficient(1, 1, 0) + k).abs() < 1e-15);
    assert!((mid.coefficient(0, 0, 2) - k).abs() < 1e-15);
    // T^{(2)}_{±1} = ∓√2 ā_± ā∥ with the fundamental (ā₋, ā∥, -ā₊).
    assert!((tensor_operator(2, 1).unwrap().coefficient(1, 0, 1) + 2f64.sqrt()).abs() < 1e-15);
    assert!((tensor_operator(2, -1).unwrap().coefficient(0, 1, 1) - 2f64.sqrt()).abs() < 1e-15);
    assert!((tensor_operator(2, -2).unwrap().coefficient(0, 2, 0) - 1.0).abs() < 1e-15);
    assert!(matches!(tensor_operator(1, 2), Err(Error::Label(_))));
}

#[test]
fn half_ground_states_refuse_the_vector_ladder() {
    for group in [GroupKind::O3, GroupKind::O21] {
        let g = ground_state(group, 0.5, 1).unwrap();
        let e = build_excited(&tensor_operator(1, 0).unwrap(), &g).unwrap_err();
        assert!(matches!(&e, Error::Unsupported(msg) if msg.contains("fails immediately")));
    }
    let o2 = ground_state(GroupKind::O2, 0.0, 0).unwrap();
    assert!(matches!(build_excited(&tensor_operator(1, 0).unwrap(), &o2), Err(Error::Label(_))));
    let excited = OscillatorState::new(StateLabel::new(GroupKind::O3, 0.0, 1, 0, 0)).unwrap();
    assert!(build_excited(&tensor_operator(1, 0).unwrap(), &excited).is_err());
}

#[test]
fn blocks_serialize_with_their_basis() {
    let b = msq_block(GroupKind::O3, 2, 0).unwrap();
    let v = serde_json::to_value(&b).unwrap();
    assert_eq!(v["basis"].as_array().unwrap().len(), 2);
    let back: osc_core::algebra::OperatorBlock = serde_json::from_value(v).unwrap();
    assert_eq!(back, b);
    let t = serde_json::to_value(tensor_operator(2, 0).unwrap()).unwrap();
    assert_eq!(t["j"], 2);
}
