//! Curvature and pointwise group actions on Lie-algebra-valued forms.

use super::algebra;
use super::coeff::Coeff;
use super::form::{ValueSpace, ValuedForm};
use crate::error::{Error, Result};

/// F = dA + ½[A∧A].
pub fn curvature<C: Coeff>(a: &ValuedForm<C>) -> Result<ValuedForm<C>> {
    if a.degree() != 1 {
        return Err(Error::InvalidInput(format!("curvature of a {}-form", a.degree())));
    }
    if a.space() == ValueSpace::Scalar {
        return Ok(a.exterior_derivative());
    }
    Ok(a.exterior_derivative().add(&a.wedge_bracket(a)?.scale(0.5)))
}

/// Pointwise Ad_g on an 𝔞(n)- or 𝔤𝔩(n)-valued form, with g = (a, ξ) given by entries and a⁻¹.
pub fn adjoint_form<C: Coeff>(
    a: &[C],
    a_inv: &[C],
    xi: &[C],
    form: &ValuedForm<C>,
) -> Result<ValuedForm<C>> {
    match form.space() {
        ValueSpace::Aff(n) => Ok(form.map_values(form.space(), |v| algebra::ad_aff(a, a_inv, xi, v, n))),
        ValueSpace::Gl(n) => Ok(form.map_values(form.space(), |v| algebra::ad_gl(a, a_inv, v, n))),
        s => Err(Error::ValueSpaceMismatch(format!("adjoint action on {s:?}"))),
    }
}

/// Ad_{g⁻¹} for g = (a, ξ): (b, ζ) ↦ (a⁻¹ b a, a⁻¹(ζ + b ξ)).
pub fn adjoint_inverse_form<C: Coeff>(
    a: &[C],
    a_inv: &[C],
    xi: &[C],
    form: &ValuedForm<C>,
) -> Result<ValuedForm<C>> {
    match form.space() {
        ValueSpace::Aff(n) => {
            let neg_xi: Vec<C> = algebra::mat_vec(a_inv, xi, n).into_iter().map(|c| -c).collect();
            adjoint_form(a_inv, a, &neg_xi, form)
        }
        ValueSpace::Gl(_) => adjoint_form(a_inv, a, xi, form),
        s => Err(Error::ValueSpaceMismatch(format!("adjoint action on {s:?}"))),
    }
}
