//! Chern forms, transgressions and the Chern–Simons and Palatini Lagrangians.

use serde::{Deserialize, Serialize};

use super::section::{AmSection, LmSection};
use crate::error::{Error, Result};
use crate::forms::coeff::{mul, sum, Coeff};
use crate::forms::{curvature, sparkling_form, Pairing, ValueSpace, ValuedForm};
use crate::lie::{levi_civita, Signature};

/// Which construction produced a Lagrangian form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LagrangianKind {
    CsDef,
    CsReduced,
    CsLocal,
    Palatini,
}

impl LagrangianKind {
    pub fn name(self) -> &'static str {
        match self {
            LagrangianKind::CsDef => "cs_def",
            LagrangianKind::CsReduced => "cs_reduced",
            LagrangianKind::CsLocal => "cs_local",
            LagrangianKind::Palatini => "palatini",
        }
    }
}

/// A scalar top-degree form tagged with its construction.
#[derive(Debug, Clone)]
pub struct LagrangianForm<C> {
    pub kind: LagrangianKind,
    pub form: ValuedForm<C>,
}

impl<C: Coeff> LagrangianForm<C> {
    fn new(kind: LagrangianKind, form: ValuedForm<C>) -> Self {
        debug_assert_eq!(form.space(), ValueSpace::Scalar);
        LagrangianForm { kind, form }
    }

    /// The coefficient of dx^0 ∧ … ∧ dx^{m−1}.
    pub fn density(&self) -> &C {
        self.form.top_coefficient()
    }
}

/// Structure group of a local gauge potential.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GaugeGroup {
    KSemidirect,
    Aff,
}

fn require_m3(m: usize, sig: &Signature) -> Result<()> {
    if m != 3 {
        return Err(Error::UnsupportedDimension { found: m, supported: "3" });
    }
    sig.require_dim(3)
}

/// q(F) = ⟨F∧F⟩ for F the curvature of a 1-form.
pub fn chern_form<C: Coeff>(a: &ValuedForm<C>, pairing: &Pairing) -> Result<ValuedForm<C>> {
    let f = curvature(a)?;
    f.wedge_pair(&f, pairing)
}

/// Tq(A) = ⟨A∧F⟩ − (1/6)⟨A∧[A∧A]⟩.
pub fn transgression<C: Coeff>(a: &ValuedForm<C>, pairing: &Pairing) -> Result<ValuedForm<C>> {
    let f = curvature(a)?;
    let cubic = a.wedge_pair(&a.wedge_bracket(a)?, pairing)?;
    Ok(a.wedge_pair(&f, pairing)?.sub(&cubic.scale(1.0 / 6.0)))
}

/// ⟨λ∧[λ∧λ]⟩ for a Maurer–Cartan form λ.
pub fn wz_term<C: Coeff>(mc: &ValuedForm<C>, pairing: &Pairing) -> Result<ValuedForm<C>> {
    mc.wedge_pair(&mc.wedge_bracket(mc)?, pairing)
}

/// Transgression of the pulled-back canonical connection of an affine jet section.
pub fn cs_lagrangian<C: Coeff>(s: &AmSection<C>, sig: &Signature) -> Result<LagrangianForm<C>> {
    require_m3(s.dim(), sig)?;
    let form = transgression(&s.connection(), &Pairing::Affine(sig.clone()))?;
    Ok(LagrangianForm::new(LagrangianKind::CsDef, form))
}

/// d⟨ω∧φ⟩ for ω and φ the matrix and translation parts of A_σ.
pub fn cs_exact_term<C: Coeff>(s: &AmSection<C>, sig: &Signature) -> Result<ValuedForm<C>> {
    require_m3(s.dim(), sig)?;
    let a = s.connection();
    let w = ValuedForm::affine_from_parts(&a.gl_part(), &ValuedForm::zero(3, 1, ValueSpace::Vector(3)));
    let phi = ValuedForm::affine_from_parts(&ValuedForm::zero(3, 1, ValueSpace::Gl(3)), &a.vector_part());
    Ok(w.wedge_pair(&phi, &Pairing::Affine(sig.clone()))?.exterior_derivative())
}

/// ⟨e∧O⟩: the translation part of A_σ paired with the matrix part of its curvature.
pub fn cs_reduced<C: Coeff>(s: &AmSection<C>, sig: &Signature) -> Result<LagrangianForm<C>> {
    require_m3(s.dim(), sig)?;
    let a = s.connection();
    let o = curvature(&a)?.gl_part();
    let translation = ValuedForm::affine_from_parts(&ValuedForm::zero(3, 1, ValueSpace::Gl(3)), &a.vector_part());
    let matrix = ValuedForm::affine_from_parts(&o, &ValuedForm::zero(3, 2, ValueSpace::Vector(3)));
    let form = translation.wedge_pair(&matrix, &Pairing::Affine(sig.clone()))?;
    Ok(LagrangianForm::new(LagrangianKind::CsReduced, form))
}

/// ε_{jkl} η^{kp} ψ^j ∧ O^l_p with ψ^j = v^ν_β e^j_ν dx^β.
pub fn cs_local<C: Coeff>(s: &AmSection<C>, sig: &Signature) -> Result<LagrangianForm<C>> {
    require_m3(s.dim(), sig)?;
    let m = 3;
    let einv = s.coframe();
    let vjet = s.origin_jet();
    let psi = ValuedForm::one_form(
        m,
        ValueSpace::Vector(m),
        (0..m)
            .map(|b| (0..m).map(|j| sum((0..m).map(|nu| mul(&vjet[nu * m + b], &einv[j * m + nu])))).collect())
            .collect(),
    );
    let o = curvature(&s.connection())?.gl_part();
    let form = psi.wedge_with(&o, ValueSpace::Scalar, |x, y| vec![sparkling_contraction(x, y, sig)]);
    Ok(LagrangianForm::new(LagrangianKind::CsLocal, form))
}

fn sparkling_contraction<C: Coeff>(x: &[C], y: &[C], sig: &Signature) -> C {
    let eps = levi_civita(3);
    let mut terms = Vec::new();
    for j in 0..3 {
        for p in 0..3 {
            for l in 0..3 {
                let s = eps.get3(j, p, l) * sig.eta(p);
                if s != 0.0 {
                    terms.push(mul(&x[j], &y[l * 3 + p]).scale(s));
                }
            }
        }
    }
    sum(terms)
}

/// tr(φ♯ ∧ Ω) with Ω the curvature of s*θ; m = 3 or 4.
pub fn palatini_lagrangian<C: Coeff>(s: &LmSection<C>, sig: &Signature) -> Result<LagrangianForm<C>> {
    sig.require_dim(s.dim())?;
    let sharp = sparkling_form(&s.solder(), sig)?;
    let omega = curvature(&s.connection())?;
    let form = sharp.wedge_pair(&omega, &Pairing::Trace)?;
    Ok(LagrangianForm::new(LagrangianKind::Palatini, form))
}

/// S_U integrand: the transgression of local data; the pairing restricts to 𝔨⋉R³.
pub fn wise_local_action_integrand<C: Coeff>(
    a: &ValuedForm<C>,
    group: GaugeGroup,
    sig: &Signature,
) -> Result<ValuedForm<C>> {
    if a.space() != ValueSpace::Aff(3) || a.degree() != 1 {
        return Err(Error::ValueSpaceMismatch(format!(
            "{group:?} local potential must be an aff(3)-valued 1-form, got {:?}",
            a.space()
        )));
    }
    transgression(a, &Pairing::Affine(sig.clone()))
}

/// Lagrangians as a selector usable by drivers.
pub fn lagrangian<C: Coeff>(kind: LagrangianKind, s: &AmSection<C>, sig: &Signature) -> Result<LagrangianForm<C>> {
    match kind {
        LagrangianKind::CsDef => cs_lagrangian(s, sig),
        LagrangianKind::CsReduced => cs_reduced(s, sig),
        LagrangianKind::CsLocal => cs_local(s, sig),
        LagrangianKind::Palatini => palatini_lagrangian(&s.linear_part(), sig),
    }
}
