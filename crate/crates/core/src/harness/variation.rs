//! Actions, first variations by Richardson-extrapolated central differences, and EL residuals.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::grid::{GridSection, Prepared};
use super::quadrature::QuadratureRule;
use crate::error::Result;
use crate::lagrangian::{constraint_residuals, lagrangian, ConstraintLabel, LagrangianKind, ProblemKind};

/// Step sizes of the central-difference schedule.
pub const EPSILONS: [f64; 2] = [1e-3, 5e-4];
/// Jet order used for action densities: second derivatives of e enter the curvature.
pub const DENSITY_ORDER: usize = 2;
/// Constraint residuals above this are reported as warnings.
pub const CONSTRAINT_TOLERANCE: f64 = 1e-8;

pub fn problem_of(kind: LagrangianKind) -> ProblemKind {
    match kind {
        LagrangianKind::Palatini => ProblemKind::Palatini,
        _ => ProblemKind::CsAdmissible,
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ActionEvaluation {
    pub value: f64,
    pub constraints: Vec<(ConstraintLabel, f64)>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Variation {
    pub name: String,
    pub value: f64,
    pub err: f64,
}

fn action_at(p: &Prepared<'_>, kind: LagrangianKind, shifts: &[(usize, f64)]) -> Result<f64> {
    let sig = p.section().signature().clone();
    p.integrate(shifts, |am| Ok(lagrangian(kind, am, &sig)?.density().value()))
}

/// max over nodes of every constraint residual of the problem of `kind`.
pub fn constraint_maxima(p: &Prepared<'_>, kind: LagrangianKind) -> Result<Vec<(ConstraintLabel, f64)>> {
    let sig = p.section().signature();
    let per_node: Vec<Vec<(ConstraintLabel, f64)>> = p
        .nodes()
        .par_iter()
        .map(|n| Ok(constraint_residuals(&p.am_section(n, &[])?, problem_of(kind), sig, None)?.maxima()))
        .collect::<Result<_>>()?;
    let mut out: Vec<(ConstraintLabel, f64)> = Vec::new();
    for row in per_node {
        for (label, v) in row {
            match out.iter_mut().find(|(l, _)| *l == label) {
                Some(e) => e.1 = e.1.max(v),
                None => out.push((label, v)),
            }
        }
    }
    Ok(out)
}

/// S[s] = ∫ s*L by tensor quadrature of the top coefficient.
pub fn action_eval(kind: LagrangianKind, s: &GridSection, q: &QuadratureRule) -> Result<ActionEvaluation> {
    super::parallel::run(|| {
        let p = s.prepare(q, DENSITY_ORDER)?;
        let value = action_at(&p, kind, &[])?;
        let constraints = constraint_maxima(&p, kind)?;
        let warnings = constraints
            .iter()
            .filter(|(_, v)| !(*v <= CONSTRAINT_TOLERANCE))
            .map(|(l, v)| format!("constraint {l:?} violated: max residual {v:e}"))
            .collect();
        Ok(ActionEvaluation { value, constraints, warnings })
    })
}

/// Richardson-extrapolated central difference of ε ↦ S(s + ε Σ c_k δ_k).
pub(crate) fn variation_prepared(
    p: &Prepared<'_>,
    kind: LagrangianKind,
    combo: &[(usize, f64)],
    name: String,
) -> Result<Variation> {
    let s0 = action_at(p, kind, &[])?;
    let diffs: Vec<f64> = EPSILONS
        .iter()
        .map(|&eps| {
            let plus: Vec<(usize, f64)> = combo.iter().map(|&(k, c)| (k, c * eps)).collect();
            let minus: Vec<(usize, f64)> = combo.iter().map(|&(k, c)| (k, -c * eps)).collect();
            Ok((action_at(p, kind, &plus)? - action_at(p, kind, &minus)?) / (2.0 * eps))
        })
        .collect::<Result<_>>()?;
    let (d1, d2) = (diffs[0], diffs[1]);
    let value = (4.0 * d2 - d1) / 3.0;
    let roundoff = 8.0 * f64::EPSILON * s0.abs().max(1e-300) / EPSILONS[1];
    Ok(Variation { name, value, err: (d2 - d1).abs() / 3.0 + roundoff })
}

/// δS along an admissible linear combination of perturbation directions.
pub fn first_variation_combo(
    kind: LagrangianKind,
    s: &GridSection,
    combo: &[(&str, f64)],
    q: &QuadratureRule,
) -> Result<Variation> {
    let idx: Vec<(usize, f64)> =
        combo.iter().map(|&(n, c)| Ok((s.check_admissible(kind, n)?, c))).collect::<Result<_>>()?;
    let name = combo.iter().map(|(n, c)| format!("{c}*{n}")).collect::<Vec<_>>().join("+");
    super::parallel::run(|| {
        let p = s.prepare(q, DENSITY_ORDER)?;
        variation_prepared(&p, kind, &idx, name)
    })
}

/// δS along one named perturbation direction.
pub fn first_variation(kind: LagrangianKind, s: &GridSection, direction: &str, q: &QuadratureRule) -> Result<Variation> {
    let k = s.check_admissible(kind, direction)?;
    super::parallel::run(|| {
        let p = s.prepare(q, DENSITY_ORDER)?;
        variation_prepared(&p, kind, &[(k, 1.0)], direction.to_string())
    })
}

/// δS along every admissible direction of the basis.
pub fn all_variations(kind: LagrangianKind, s: &GridSection, q: &QuadratureRule) -> Result<Vec<Variation>> {
    super::parallel::run(|| {
        let p = s.prepare(q, DENSITY_ORDER)?;
        all_variations_prepared(&p, kind)
    })
}

pub(crate) fn all_variations_prepared(p: &Prepared<'_>, kind: LagrangianKind) -> Result<Vec<Variation>> {
    let s = p.section();
    let admissible: Vec<usize> = s
        .perturbations()
        .iter()
        .filter_map(|d| s.check_admissible(kind, &d.name).ok())
        .collect();
    admissible
        .par_iter()
        .map(|&k| variation_prepared(p, kind, &[(k, 1.0)], s.perturbations()[k].name.clone()))
        .collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ElResidual {
    /// max_k |δ_k S| / ‖δ_k‖.
    pub residual: f64,
    pub variations: Vec<Variation>,
}

/// Stationarity measure over the admissible perturbation basis.
pub fn el_residual(kind: LagrangianKind, s: &GridSection, q: &QuadratureRule) -> Result<ElResidual> {
    let variations = all_variations(kind, s, q)?;
    let mut residual: f64 = 0.0;
    for v in &variations {
        let k = s.perturbation_index(&v.name)?;
        residual = residual.max(v.value.abs() / s.profile_norm(k, q));
    }
    Ok(ElResidual { residual, variations })
}
