//! The six subcommands. Each builds its tables; `main` writes them.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use osc_core::algebra::{casimir_content, delta_block, msq_block, multiplicity, tensor_operator, Multiplicity};
use osc_core::matrix::ComplexMatrix;
use osc_core::numerics::{ghost_norm, norm_report, orthonormality_matrix, schrodinger_residual_at};
use osc_core::operators::{commutator_residual, GaussPoly, LadderKind, OpExpr, Occupation};
use osc_core::states::{enumerate_labels, grid_rows, CoordPoint, GroupKind, OscillatorState, StateLabel};
use rayon::prelude::*;
use serde_json::json;

use crate::config::{Convention, RunConfig};
use crate::output::{Cell, Document, Table};
use crate::CliError;

fn degeneracy(m: Multiplicity) -> Cell {
    match m {
        Multiplicity::Finite(k) => Cell::Int(k as i64),
        Multiplicity::Infinite => Cell::Str("infinite".into()),
    }
}

/// `2n + m` (O2) or `2n + l` (3D); the mode number is this plus `s` in 2D.
fn level(label: &StateLabel) -> i64 {
    let twice_n = 2 * label.n as i64;
    match label.group {
        GroupKind::O2 => twice_n + label.m as i64,
        _ => twice_n + label.l as i64,
    }
}

fn labels(cfg: &RunConfig) -> Vec<StateLabel> {
    match cfg.mode {
        // In 2D negative m lets n reach the level itself.
        Some(k) => enumerate_labels(cfg.group, cfg.s, if cfg.group.is_3d() { k / 2 } else { k }, k, cfg.mmax.max(k))
            .into_iter()
            .filter(|l| level(l) <= k as i64)
            .filter(|l| cfg.group == GroupKind::O2 || l.m.unsigned_abs() <= cfg.mmax.max(k))
            .collect(),
        None => enumerate_labels(cfg.group, cfg.s, cfg.nmax, cfg.lmax, cfg.mmax),
    }
}

pub fn spectrum(cfg: &RunConfig) -> Result<Document<'_>, CliError> {
    let mut ls = labels(cfg);
    ls.sort_by_key(|l| (level(l), l.n, l.l, l.m));
    let mut t = Table::new("spectrum", &["group", "s", "n", "l", "m", "mode", "energy", "degeneracy"]);
    for label in ls {
        let st = OscillatorState::new(label)?;
        let mode = match label.group {
            GroupKind::O2 => level(&label) as f64 + cfg.s,
            _ => level(&label) as f64,
        };
        t.push(vec![
            label.group.name().into(),
            cfg.s.into(),
            label.n.into(),
            label.l.into(),
            label.m.into(),
            mode.into(),
            st.energy.into(),
            degeneracy(multiplicity(label.group, mode, cfg.s)?),
        ]);
    }
    Ok(Document {
        command: "spectrum",
        config: cfg,
        summary: vec![("count", json!(t.rows.len()))],
        tables: vec![t],
    })
}

fn identity_defect(g: &ComplexMatrix) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..g.rows() {
        for j in 0..g.cols() {
            let want = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((g[(i, j)] - Complex64::new(want, 0.0)).norm());
        }
    }
    worst
}

struct Check {
    check: &'static str,
    target: String,
    value: f64,
    status: &'static str,
}

impl Check {
    fn against(check: &'static str, target: String, value: f64, tol: f64) -> Self {
        let status = if value < tol { "pass" } else { "fail" };
        Self {
            check,
            target,
            value,
            status,
        }
    }
}

fn ladder_kinds(group: GroupKind) -> Vec<LadderKind> {
    let mut k = LadderKind::POLAR.to_vec();
    if group.is_3d() {
        k.extend([LadderKind::APar, LadderKind::AbarPar]);
    }
    k
}

fn commutator_checks(cfg: &RunConfig) -> Result<Vec<Check>, CliError> {
    let group = cfg.group;
    let spec = match group {
        GroupKind::O21 => cfg.quadrature.with_regulator(cfg.quadrature.regulator.or(Some(0.05))),
        _ => cfg.quadrature.clone(),
    };
    let ground = GaussPoly::ground(group, cfg.s)?;
    let mut words = vec![vec![], vec![LadderKind::AbarPlus], vec![LadderKind::AbarMinus]];
    if group.is_3d() {
        words.push(vec![LadderKind::AbarPar]);
    }
    let probes = words.iter().map(|w| ground.apply_word(w)).collect::<Result<Vec<_>, _>>()?;
    let timelike = if group == GroupKind::O21 { -1.0 } else { 1.0 };
    let kinds = ladder_kinds(group);
    let mut pairs = Vec::new();
    for &a in &kinds {
        for &b in &kinds {
            let c = match (a, b) {
                (LadderKind::APlus, LadderKind::AbarMinus) | (LadderKind::AMinus, LadderKind::AbarPlus) => 1.0,
                (LadderKind::AbarMinus, LadderKind::APlus) | (LadderKind::AbarPlus, LadderKind::AMinus) => -1.0,
                (LadderKind::APar, LadderKind::AbarPar) => timelike,
                (LadderKind::AbarPar, LadderKind::APar) => -timelike,
                _ => 0.0,
            };
            pairs.push((a, b, c));
        }
    }
    pairs
        .par_iter()
        .map(|&(a, b, c)| {
            let r = commutator_residual(
                &OpExpr::single(group, a)?,
                &OpExpr::single(group, b)?,
                &OpExpr::scalar(group, Complex64::new(c, 0.0)),
                &probes,
                &spec,
            )?;
            Ok(Check::against("commutator", format!("[{a}, {b}] = {c}"), r, cfg.tol))
        })
        .collect()
}

/// Returns the report and whether every check passed.
pub fn verify(cfg: &RunConfig) -> Result<(Document<'_>, bool), CliError> {
    let ls = labels(cfg);
    let spec = &cfg.quadrature;
    let mut checks: Vec<Check> = ls
        .par_iter()
        .map(|&label| {
            let st = OscillatorState::new(label)?;
            let r = schrodinger_residual_at(&st, 2.0 * st.energy + cfg.perturb, spec)?;
            Ok(Check::against("schrodinger", label.to_string(), r, cfg.tol))
        })
        .collect::<Result<_, CliError>>()?;

    let half_3d = cfg.group.is_3d() && cfg.s == 0.5;
    if (cfg.group == GroupKind::O2 || (cfg.group == GroupKind::O3 && cfg.s == 0.0)) && !ls.is_empty() {
        let d = identity_defect(&orthonormality_matrix(&ls, spec)?);
        checks.push(Check::against("orthonormality", format!("{} labels", ls.len()), d, cfg.tol));
    }
    if half_3d {
        for &label in &ls {
            let r = norm_report(&OscillatorState::new(label)?, spec)?;
            let status = if r.divergent {
                "divergent"
            } else if r.value > 0.0 && r.value.is_finite() {
                "pass"
            } else {
                "fail"
            };
            checks.push(Check {
                check: "norm",
                target: label.to_string(),
                value: r.value,
                status,
            });
        }
    } else {
        checks.extend(commutator_checks(cfg)?);
    }

    let mut t = Table::new("checks", &["check", "target", "value", "tol", "status"]);
    let mut failed = 0;
    for c in &checks {
        failed += usize::from(c.status == "fail");
        t.push(vec![c.check.into(), c.target.clone().into(), c.value.into(), cfg.tol.into(), c.status.into()]);
    }
    let passed = failed == 0;
    let doc = Document {
        command: "verify",
        config: cfg,
        summary: vec![("passed", json!(passed)), ("failures", json!(failed)), ("count", json!(checks.len()))],
        tables: vec![t],
    };
    Ok((doc, passed))
}

fn levels(cfg: &RunConfig) -> Vec<u32> {
    match cfg.mode {
        Some(k) => vec![k],
        None => (0..=cfg.nmax).collect(),
    }
}

/// Drops rounding noise around zero from exact-valued block output.
fn tidy(v: f64) -> f64 {
    if v.abs() < 1e-12 {
        0.0
    } else {
        v
    }
}

fn push_matrix(t: &mut Table, prefix: &[Cell], m: &ComplexMatrix) {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let z = m[(i, j)];
            let mut row = prefix.to_vec();
            row.extend([(i as u32).into(), (j as u32).into(), tidy(z.re).into(), tidy(z.im).into()]);
            t.push(row);
        }
    }
}

pub fn blocks(cfg: &RunConfig) -> Result<Document<'_>, CliError> {
    let mut tables = Vec::new();
    if cfg.group.is_3d() {
        let mut mat = Table::new("msq_blocks", &["N", "m", "row", "col", "re", "im"]);
        let mut ev = Table::new("msq_eigenvalues", &["N", "m", "index", "eigenvalue"]);
        let mut lc = Table::new("l_content", &["N", "l", "states"]);
        for n in levels(cfg) {
            let mm = n.min(cfg.mmax) as i32;
            let ms: Vec<i32> = match cfg.m {
                Some(m) if m.unsigned_abs() <= n => vec![m],
                Some(_) => vec![],
                None => (-mm..=mm).collect(),
            };
            for m in ms {
                let b = msq_block(cfg.group, n, m)?;
                push_matrix(&mut mat, &[n.into(), m.into()], &b.matrix);
                let mut vals = b.eigenvalues()?;
                vals.sort_by(|a, b| b.total_cmp(a));
                for (i, v) in vals.into_iter().enumerate() {
                    ev.push(vec![n.into(), m.into(), (i as u32).into(), tidy(v).into()]);
                }
            }
            for l in casimir_content(n) {
                lc.push(vec![n.into(), l.into(), (2 * l + 1).into()]);
            }
        }
        tables.extend([mat, ev, lc]);
    } else {
        let mut mat = Table::new("delta_blocks", &["N", "row", "col", "re", "im"]);
        let mut ev = Table::new("delta_eigenvalues", &["N", "index", "eigenvalue", "ground_obstructed"]);
        for k in levels(cfg) {
            let n = k as f64 + cfg.s;
            let d = delta_block(n, cfg.s)?;
            push_matrix(&mut mat, &[n.into()], &d.block.matrix);
            let mut vals = d.block.eigenvalues()?;
            vals.sort_by(|a, b| b.total_cmp(a));
            for (i, v) in vals.into_iter().enumerate() {
                ev.push(vec![n.into(), (i as u32).into(), tidy(v).into(), d.ground_obstructed.into()]);
            }
        }
        tables.extend([mat, ev]);
    }
    Ok(Document {
        command: "blocks",
        config: cfg,
        summary: vec![],
        tables,
    })
}

const GHOST_LEVELS: u32 = 4;

pub fn ghost(cfg: &RunConfig) -> Result<Document<'_>, CliError> {
    let conventions = match cfg.convention {
        Some(c) => vec![c],
        None => vec![Convention::KimNoz, Convention::Fkr],
    };
    let mut t = Table::new("ghost", &["convention", "n0", "norm", "energy", "timelike_energy"]);
    for conv in conventions {
        let phases = conv.phases();
        // The Kim–Noz timelike count starts at 1.
        let first = u32::from(conv == Convention::KimNoz);
        for n0 in first..=GHOST_LEVELS {
            let occ = Occupation::with_timelike(n0, &[0, 0]);
            let e = occ.energy(phases)?;
            t.push(vec![
                conv.to_string().into(),
                n0.into(),
                ghost_norm(phases, n0).into(),
                e.into(),
                (e - 1.5).into(),
            ]);
        }
    }
    Ok(Document {
        command: "ghost",
        config: cfg,
        summary: vec![],
        tables: vec![t],
    })
}

pub fn eval(cfg: &RunConfig) -> Result<Document<'_>, CliError> {
    let l = if cfg.group.is_3d() { cfg.l } else { 0 };
    let label = StateLabel::new(cfg.group, cfg.s, cfg.n, l, cfg.m.unwrap_or(0));
    let st = OscillatorState::new(label)?;
    let k = cfg.points as usize;
    let rhos: Vec<f64> = (1..=k).map(|i| cfg.rho_max * i as f64 / k as f64).collect();
    let phis: Vec<f64> = (0..k).map(|i| TAU * i as f64 / k as f64).collect();
    let auxs: Vec<f64> = match cfg.group {
        GroupKind::O2 => vec![0.0],
        GroupKind::O3 => (0..k).map(|i| PI * (i as f64 + 0.5) / k as f64).collect(),
        GroupKind::O21 => (0..k).map(|i| -2.0 + 4.0 * (i as f64 + 0.5) / k as f64).collect(),
    };
    let mut points = Vec::with_capacity(rhos.len() * phis.len() * auxs.len());
    for &rho in &rhos {
        for &aux in &auxs {
            for &phi in &phis {
                points.push(CoordPoint::new(rho, phi, aux));
            }
        }
    }
    let rows = points
        .par_chunks(256)
        .map(|c| grid_rows(&label, c))
        .collect::<Result<Vec<_>, _>>()?;
    let mut t = Table::new("values", &["rho", "aux", "phi", "re", "im"]);
    for r in rows.into_iter().flatten() {
        t.push(vec![r.rho.into(), r.aux.into(), r.phi.into(), r.re.into(), r.im.into()]);
    }
    Ok(Document {
        command: "eval",
        config: cfg,
        summary: vec![("label", json!(label.to_string())), ("energy", json!(st.energy))],
        tables: vec![t],
    })
}

pub fn tensor(cfg: &RunConfig) -> Result<Document<'_>, CliError> {
    if !cfg.group.is_3d() {
        return Err(CliError::Config("tensor operators need --group o3 or o21".into()));
    }
    let j = cfg.j;
    let ms: Vec<i32> = match cfg.m {
        Some(m) => vec![m],
        None => (-(j as i32)..=j as i32).collect(),
    };
    let ground = GaussPoly::ground(cfg.group, 0.0)?;
    let casimir = OpExpr::casimir_sq(cfg.group)?;
    let lambda = (j * (j + 1)) as f64;
    let mut t = Table::new(
        "terms",
        &["j", "m", "plus", "minus", "par", "coefficient", "casimir_eigenvector"],
    );
    for m in ms {
        let op = tensor_operator(j, m).map_err(|e| CliError::Config(e.to_string()))?;
        let f = op.to_expr(cfg.group)?.apply(&ground)?;
        let eigen = casimir.apply(&f)?.axpy(Complex64::new(-lambda, 0.0), &f)?.is_zero();
        for term in &op.terms {
            t.push(vec![
                j.into(),
                m.into(),
                term.plus.into(),
                term.minus.into(),
                term.par.into(),
                term.coeff.into(),
                eigen.into(),
            ]);
        }
    }
    Ok(Document {
        command: "tensor",
        config: cfg,
        summary: vec![],
        tables: vec![t],
    })
}
