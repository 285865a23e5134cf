//! Constraint residuals of the gravity and Chern–Simons variational problems.

use serde::{Deserialize, Serialize};

use super::section::AmSection;
use crate::error::Result;
use crate::forms::coeff::{mul, sum, Coeff};
use crate::forms::Jet;
use crate::lie::Signature;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstraintLabel {
    MetricityPPart,
    AdmissibleJForm,
    KappaIdentity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProblemKind {
    Palatini,
    CsAdmissible,
    Wise,
}

#[derive(Debug, Clone)]
pub struct Constraint<C> {
    pub label: ConstraintLabel,
    pub values: Vec<C>,
}

/// Labeled residuals; a section is admissible iff all vanish.
#[derive(Debug, Clone)]
pub struct ConstraintSet<C> {
    pub residuals: Vec<Constraint<C>>,
}

impl ConstraintSet<Jet> {
    /// (label, max |value|) per constraint.
    pub fn maxima(&self) -> Vec<(ConstraintLabel, f64)> {
        self.residuals
            .iter()
            .map(|c| (c.label, c.values.iter().fold(0.0_f64, |m, v| m.max(v.value().abs()))))
            .collect()
    }

    pub fn max_residual(&self) -> f64 {
        self.maxima().into_iter().fold(0.0, |m, (_, v)| m.max(v))
    }
}

/// ½(X + η Xᵀ η) for every dx^β block of the matrix part of A_σ.
fn p_part<C: Coeff>(s: &AmSection<C>, sig: &Signature) -> Vec<C> {
    let m = s.dim();
    let a = s.connection();
    let mut out = Vec::with_capacity(m * m * m);
    for b in 0..m {
        let blk = a.block(1 << b);
        for i in 0..m {
            for j in 0..m {
                let t = blk[j * m + i].scale(sig.eta(i) * sig.eta(j));
                out.push((blk[i * m + j].clone() + t).scale(0.5));
            }
        }
    }
    out
}

/// (v, vjet + δ).
fn j_form<C: Coeff>(s: &AmSection<C>) -> Vec<C> {
    let m = s.dim();
    let mut out = s.origin().to_vec();
    out.extend(s.origin_jet().iter().enumerate().map(|(k, c)| {
        if k / m == k % m {
            c.clone() + C::one()
        } else {
            c.clone()
        }
    }));
    out
}

/// κ^i_j − κ₀^i_j with κ^i_j = e^i_α σ^α_β e^β_j and σ = −(vjet − e^i_γ ejet^α_{iβ} v^γ).
fn kappa<C: Coeff>(s: &AmSection<C>, kappa0: &[f64]) -> Vec<C> {
    let m = s.dim();
    let (e, v, ejet, vjet) = (s.frame(), s.origin(), s.frame_jet(), s.origin_jet());
    let einv = s.coframe();
    let sigma: Vec<C> = (0..m * m)
        .map(|k| {
            let (a, b) = (k / m, k % m);
            let drift = sum((0..m).flat_map(|i| (0..m).map(move |g| (i, g))).map(|(i, g)| {
                mul(&mul(&einv[i * m + g], &ejet[(a * m + i) * m + b]), &v[g])
            }));
            drift - vjet[k].clone()
        })
        .collect();
    let se = crate::forms::algebra::mat_mul(&sigma, e, m);
    crate::forms::algebra::mat_mul(&einv, &se, m)
        .into_iter()
        .zip(kappa0)
        .map(|(c, k0)| c - C::from_f64(*k0))
        .collect()
}

/// Residuals of the constraint system of `kind`; κ₀ defaults to the identity.
pub fn constraint_residuals<C: Coeff>(
    s: &AmSection<C>,
    kind: ProblemKind,
    sig: &Signature,
    kappa0: Option<&[f64]>,
) -> Result<ConstraintSet<C>> {
    let m = s.dim();
    sig.require_dim(m)?;
    let identity: Vec<f64> = (0..m * m).map(|k| if k / m == k % m { 1.0 } else { 0.0 }).collect();
    let metric = Constraint { label: ConstraintLabel::MetricityPPart, values: p_part(s, sig) };
    let residuals = match kind {
        ProblemKind::Palatini => vec![metric],
        ProblemKind::CsAdmissible => {
            vec![metric, Constraint { label: ConstraintLabel::AdmissibleJForm, values: j_form(s) }]
        }
        ProblemKind::Wise => vec![
            metric,
            Constraint { label: ConstraintLabel::KappaIdentity, values: kappa(s, kappa0.unwrap_or(&identity)) },
        ],
    };
    Ok(ConstraintSet { residuals })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::samples::{random_frame, random_gl_spin, random_lorentz_spin};
    use crate::cartan::{FrameField, SpinConnectionField};
    use crate::forms::{ChartBox, Evaluator};
    use crate::lagrangian::LmSection;
    use crate::lie::{split_gl, GlElement};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn jets(e: &FrameField, w: &SpinConnectionField, x: &[f64]) -> LmSection<Jet> {
        LmSection::from_fields(e, w).unwrap().eval_with(&mut Evaluator::new(x, 1))
    }

    #[test]
    fn flat_orthonormal_data_is_admissible() {
        let chart = ChartBox::unit(3);
        let sig = Signature::default();
        let s = jets(&FrameField::identity(chart.clone()), &SpinConnectionField::zero(chart), &[0.5; 3]).through_j();
        for kind in [ProblemKind::Palatini, ProblemKind::CsAdmissible, ProblemKind::Wise] {
            assert_eq!(constraint_residuals(&s, kind, &sig, None).unwrap().max_residual(), 0.0);
        }
    }

    #[test]
    fn metric_sections_through_j_pass() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let chart = ChartBox::unit(3);
        let sig = Signature::default();
        let e = random_frame(&mut rng, &chart, 2, 0.3).unwrap();
        let w = random_lorentz_spin(&mut rng, &chart, &sig, 2, 0.5).unwrap();
        let s = jets(&e, &w, &[0.1, 0.9, 0.4]).through_j();
        assert!(constraint_residuals(&s, ProblemKind::CsAdmissible, &sig, None).unwrap().max_residual() < 1e-13);
        assert!(constraint_residuals(&s, ProblemKind::Wise, &sig, None).unwrap().max_residual() < 1e-13);
    }

    #[test]
    fn non_metric_residual_is_the_p_part() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let chart = ChartBox::unit(3);
        let sig = Signature::default();
        let e = random_frame(&mut rng, &chart, 2, 0.3).unwrap();
        let w = random_gl_spin(&mut rng, &chart, 2, 0.5).unwrap();
        let x = [0.6, 0.3, 0.2];
        let s = jets(&e, &w, &x).through_j();
        let set = constraint_residuals(&s, ProblemKind::Palatini, &sig, None).unwrap();
        let res = &set.residuals[0].values;
        let wv: Vec<f64> = w.entries().iter().map(|f| f.value(&x)).collect();
        for b in 0..3 {
            let blk = GlElement::from_row_major(3, &(0..9).map(|k| wv[(k / 3 * 3 + k % 3) * 3 + b]).collect::<Vec<_>>());
            let (_, p) = split_gl(&blk, &sig).unwrap();
            for k in 0..9 {
                assert!((res[b * 9 + k].value() - p.0[(k / 3, k % 3)]).abs() < 1e-12);
            }
        }
        assert!(set.max_residual() > 1e-3);
    }
}
