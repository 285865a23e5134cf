//! Extremal-correspondence and gauge-shift test drivers.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::grid::{GridSection, Prepared};
use super::quadrature::QuadratureRule;
use super::report::{ActionReport, ReportMeta, Verdict};
use super::variation::{all_variations_prepared, constraint_maxima, variation_prepared, ActionEvaluation, Variation, DENSITY_ORDER};
use crate::error::{Error, Result};
use crate::forms::algebra;
use crate::forms::{adjoint_inverse_form, maurer_cartan, GroupKind, GroupMap, Jet, Pairing, ValuedForm};
use crate::lagrangian::{cs_lagrangian, lagrangian, wz_term, AmSection, LagrangianKind};
use crate::lie::Signature;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorrespondenceTolerances {
    pub action: f64,
    pub variation_relative: f64,
    pub constraint: f64,
}

impl Default for CorrespondenceTolerances {
    fn default() -> Self {
        CorrespondenceTolerances { action: 1e-8, variation_relative: 1e-6, constraint: 1e-8 }
    }
}

impl CorrespondenceTolerances {
    pub fn scaled(self, f: f64) -> Self {
        CorrespondenceTolerances {
            action: self.action * f,
            variation_relative: self.variation_relative * f,
            constraint: self.constraint * f,
        }
    }
}

/// First variations of two problems along the same direction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatchedVariation {
    pub name: String,
    pub left: f64,
    pub right: f64,
    pub err: f64,
    pub relative_deviation: f64,
    pub agree: bool,
}

fn relative(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

fn match_variations(left: &[Variation], right: &[Variation], tol: f64) -> Vec<MatchedVariation> {
    left.iter()
        .zip(right)
        .map(|(l, r)| {
            let err = l.err + r.err;
            let agree = (l.value - r.value).abs() <= tol * l.value.abs().max(r.value.abs()) + err;
            MatchedVariation {
                name: l.name.clone(),
                left: l.value,
                right: r.value,
                err,
                relative_deviation: relative(l.value, r.value),
                agree,
            }
        })
        .collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorrespondenceReport {
    pub verdict: Verdict,
    pub chern_simons: ActionReport,
    pub palatini: ActionReport,
    pub action_deviation: f64,
    pub variations: Vec<MatchedVariation>,
    pub notes: Vec<String>,
}

fn meta(s: &GridSection, q: &QuadratureRule, seed: Option<u64>, tol: &[(&str, f64)]) -> ReportMeta {
    ReportMeta {
        seed,
        resolution: s.resolution(),
        quadrature: *q,
        tolerances: tol.iter().map(|(k, v)| (k.to_string(), *v)).collect::<BTreeMap<_, _>>(),
    }
}

fn evaluation(p: &Prepared<'_>, kind: LagrangianKind) -> Result<ActionEvaluation> {
    let sig = p.section().signature().clone();
    let value = p.integrate(&[], |am| Ok(lagrangian(kind, am, &sig)?.density().value()))?;
    Ok(ActionEvaluation { value, constraints: constraint_maxima(p, kind)?, warnings: Vec::new() })
}

/// Compares the Chern–Simons problem on σ = j∘s with the Palatini problem on s.
pub fn correspondence_test(
    s: &GridSection,
    q: &QuadratureRule,
    tol: CorrespondenceTolerances,
    seed: Option<u64>,
) -> Result<CorrespondenceReport> {
    super::parallel::run(|| {
        let p = s.prepare(q, DENSITY_ORDER)?;
        let pg = evaluation(&p, LagrangianKind::Palatini)?;
        let cs = evaluation(&p, LagrangianKind::CsDef)?;
        let worst = pg.constraints.iter().chain(&cs.constraints).fold(0.0_f64, |m, (_, v)| m.max(*v));
        let mut notes = Vec::new();
        let tolerances = [
            ("action", tol.action),
            ("variation_relative", tol.variation_relative),
            ("constraint", tol.constraint),
        ];
        let m = meta(s, q, seed, &tolerances);
        if !(worst <= tol.constraint) {
            notes.push(format!("section violates its constraints (max residual {worst:e}); comparison skipped"));
            return Ok(CorrespondenceReport {
                verdict: Verdict::Inconclusive,
                chern_simons: ActionReport::new(LagrangianKind::CsDef, &cs, Vec::new(), m.clone()),
                palatini: ActionReport::new(LagrangianKind::Palatini, &pg, Vec::new(), m),
                action_deviation: (cs.value - pg.value).abs(),
                variations: Vec::new(),
                notes,
            });
        }
        let dcs = all_variations_prepared(&p, LagrangianKind::CsDef)?;
        let dpg = all_variations_prepared(&p, LagrangianKind::Palatini)?;
        let variations = match_variations(&dcs, &dpg, tol.variation_relative);
        let action_deviation = (cs.value - pg.value).abs();
        let actions_agree = action_deviation <= tol.action;
        let variations_agree = variations.iter().all(|v| v.agree);
        if !actions_agree {
            notes.push(format!("|S_CS − S_PG| = {action_deviation:e} exceeds {:e}", tol.action));
        }
        if let Some(v) = variations.iter().filter(|v| !v.agree).max_by(|a, b| a.relative_deviation.total_cmp(&b.relative_deviation)) {
            notes.push(format!("variation `{}` disagrees: relative deviation {:e}", v.name, v.relative_deviation));
        }
        let verdict = if actions_agree && variations_agree { Verdict::Pass } else { Verdict::Fail };
        Ok(CorrespondenceReport {
            verdict,
            chern_simons: ActionReport::new(LagrangianKind::CsDef, &cs, dcs, m.clone()),
            palatini: ActionReport::new(LagrangianKind::Palatini, &pg, dpg, m),
            action_deviation,
            variations,
            notes,
        })
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaugeShiftTolerances {
    pub pointwise: f64,
    pub closedness: f64,
    pub variation_relative: f64,
}

impl Default for GaugeShiftTolerances {
    fn default() -> Self {
        GaugeShiftTolerances { pointwise: 1e-8, closedness: 1e-8, variation_relative: 1e-6 }
    }
}

impl GaugeShiftTolerances {
    pub fn scaled(self, f: f64) -> Self {
        GaugeShiftTolerances {
            pointwise: self.pointwise * f,
            closedness: self.closedness * f,
            variation_relative: self.variation_relative * f,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GaugeShiftReport {
    pub verdict: Verdict,
    pub pointwise_max: f64,
    pub witness: Vec<f64>,
    pub closedness_max: f64,
    /// Present when g is the identity to first order on the boundary.
    pub variations: Option<Vec<MatchedVariation>>,
    pub notes: Vec<String>,
}

/// s̄*L − s*L − d⟨Ad_{g⁻¹}(s*θ) ∧ g*λ⟩ + (1/6)⟨g*λ∧[g*λ∧g*λ]⟩ for jets of s and g at a point.
pub fn gauge_shift_residual(s: &AmSection<Jet>, a: &[Jet], xi: &[Jet], sig: &Signature) -> Result<ValuedForm<Jet>> {
    let m = s.dim();
    let pairing = Pairing::Affine(sig.clone());
    let (a_inv, _) = algebra::inverse(a, m);
    let lambda = maurer_cartan(a, &a_inv, xi, m, m, GroupKind::Aff);
    let moved = s.act(a, xi)?;
    let conj = adjoint_inverse_form(a, &a_inv, xi, &s.connection())?;
    let cross = conj.wedge_pair(&lambda, &pairing)?.exterior_derivative();
    let l_bar = cs_lagrangian(&moved, sig)?.form;
    let l = cs_lagrangian(s, sig)?.form;
    Ok(l_bar.sub(&l).sub(&cross).add(&wz_term(&lambda, &pairing)?.scale(1.0 / 6.0)))
}

/// max over points of |d⟨g*λ∧[g*λ∧g*λ]⟩|; vanishes identically on charts of dimension 3.
pub fn wz_closedness(g: &GroupMap, points: &[Vec<f64>], sig: &Signature) -> Result<f64> {
    if g.kind() != GroupKind::Aff || g.n() != 3 {
        return Err(Error::ValueSpaceMismatch("closedness check needs an A(3)-valued map".into()));
    }
    let pairing = Pairing::Affine(sig.clone());
    let vals: Vec<f64> = points
        .par_iter()
        .map(|x| {
            let (a, xi) = g.jets(x, 2);
            let (a_inv, _) = algebra::inverse(&a, 3);
            let lambda = maurer_cartan(&a, &a_inv, &xi, g.dim(), 3, GroupKind::Aff);
            Ok(wz_term(&lambda, &pairing)?.exterior_derivative().max_abs_value())
        })
        .collect::<Result<_>>()?;
    Ok(vals.into_iter().fold(0.0, f64::max))
}

fn boundary_points(s: &GridSection) -> Vec<Vec<f64>> {
    let c = s.chart();
    let m = c.dim();
    let mut out = Vec::new();
    for (k, mut p) in c.sample_points(12 * m, 0xb0d).into_iter().enumerate() {
        let mu = k % m;
        p[mu] = if (k / m) % 2 == 0 { c.lo[mu] } else { c.hi[mu] };
        out.push(p);
    }
    out
}

fn identity_on_boundary(g: &GroupMap, s: &GridSection) -> bool {
    let m = g.n();
    let id = crate::lie::AffElement::identity(m);
    boundary_points(s).iter().all(|x| {
        let near = g.value(x).map(|v| v.distance(&id) < 1e-12).unwrap_or(false);
        let lambda = g.maurer_cartan_pullback().values_at(x);
        near && lambda.iter().all(|c| c.abs() < 1e-12)
    })
}

/// Verifies the gauge-shift relation pointwise, WZ closedness, and, for g trivial on ∂U,
/// that δ∫(s·g)*L = δ∫s*L along every admissible direction.
pub fn gauge_shift_test(s: &GridSection, g: &GroupMap, q: &QuadratureRule, tol: GaugeShiftTolerances) -> Result<GaugeShiftReport> {
    if g.kind() != GroupKind::Aff || g.n() != s.dim() || g.dim() != s.dim() {
        return Err(Error::InvalidInput("gauge map must be A(m)-valued on the section's chart".into()));
    }
    let sig = s.signature().clone();
    super::parallel::run(|| {
        let p = s.prepare(q, DENSITY_ORDER)?;
        let mut witness = Vec::new();
        let mut pointwise_max: f64 = 0.0;
        let vals: Vec<(f64, Vec<f64>)> = p
            .nodes()
            .par_iter()
            .map(|n| {
                let (a, xi) = g.jets(&n.x, DENSITY_ORDER);
                let r = gauge_shift_residual(&p.am_section(n, &[])?, &a, &xi, &sig)?;
                Ok((r.max_abs_value(), n.x.clone()))
            })
            .collect::<Result<_>>()?;
        for (v, x) in vals {
            if v > pointwise_max || v.is_nan() || witness.is_empty() {
                pointwise_max = if v.is_nan() { f64::INFINITY } else { v.max(pointwise_max) };
                witness = x;
            }
        }
        let pts: Vec<Vec<f64>> = p.nodes().iter().map(|n| n.x.clone()).collect();
        let closedness_max = wz_closedness(g, &pts, &sig)?;
        let mut notes = Vec::new();
        let variations = if identity_on_boundary(g, s) {
            let moved = p.clone().with_gauge(g, DENSITY_ORDER)?;
            let kind = LagrangianKind::CsDef;
            let admissible: Vec<usize> = s
                .perturbations()
                .iter()
                .filter_map(|d| s.check_admissible(kind, &d.name).ok())
                .collect();
            let pairs: Vec<(Variation, Variation)> = admissible
                .par_iter()
                .map(|&k| {
                    let name = s.perturbations()[k].name.clone();
                    Ok((
                        variation_prepared(&moved, kind, &[(k, 1.0)], name.clone())?,
                        variation_prepared(&p, kind, &[(k, 1.0)], name)?,
                    ))
                })
                .collect::<Result<_>>()?;
            let (l, r): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
            Some(match_variations(&l, &r, tol.variation_relative))
        } else {
            notes.push("g is not the identity on the boundary; variation comparison skipped".into());
            None
        };
        let mut pass = pointwise_max <= tol.pointwise && closedness_max <= tol.closedness;
        if let Some(v) = &variations {
            pass &= v.iter().all(|m| m.agree);
        }
        if pointwise_max > tol.pointwise {
            notes.push(format!("pointwise residual {pointwise_max:e} at {witness:?}"));
        }
        Ok(GaugeShiftReport {
            verdict: if pass { Verdict::Pass } else { Verdict::Fail },
            pointwise_max,
            witness,
            closedness_max,
            variations,
            notes,
        })
    })
}
