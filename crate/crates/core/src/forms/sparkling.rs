//! The η-dualized powers of a coframe entering the Palatini Lagrangian.

use super::coeff::{sum, Coeff};
use super::form::{ValueSpace, ValuedForm};
use crate::error::{Error, Result};
use crate::lie::{levi_civita, Signature};

/// From the solder 1-form e^i: for m = 3 the 1-form (φ♯)^p_l = ε_{ilk} η^{kp} e^i, for m = 4
/// the 2-form (φ♯)^p_l = ε_{ijkl} η^{kp} e^i ∧ e^j. Entry (row p, column l).
pub fn sparkling_form<C: Coeff>(solder: &ValuedForm<C>, sig: &Signature) -> Result<ValuedForm<C>> {
    let m = sig.dim();
    if solder.space() != ValueSpace::Vector(m) || solder.degree() != 1 {
        return Err(Error::ValueSpaceMismatch(format!(
            "sparkling form needs an R^{m}-valued 1-form, got {:?} of degree {}",
            solder.space(),
            solder.degree()
        )));
    }
    match m {
        3 => {
            let eps = levi_civita(3);
            Ok(solder.map_values(ValueSpace::Gl(3), |e| {
                let mut out = Vec::with_capacity(9);
                for p in 0..3 {
                    for l in 0..3 {
                        out.push(sum((0..3).filter_map(|i| {
                            let s = eps.get3(i, l, p) * sig.eta(p);
                            (s != 0.0).then(|| e[i].scale(s))
                        })));
                    }
                }
                out
            }))
        }
        4 => {
            let eps = levi_civita(4);
            Ok(solder.wedge_with(solder, ValueSpace::Gl(4), |a, b| {
                let mut out = Vec::with_capacity(16);
                for p in 0..4 {
                    for l in 0..4 {
                        out.push(sum((0..4).flat_map(|i| (0..4).map(move |j| (i, j))).filter_map(
                            |(i, j)| {
                                let s = eps.get4(i, j, p, l) * sig.eta(p);
                                (s != 0.0).then(|| super::coeff::mul(&a[i], &b[j]).scale(s))
                            },
                        )));
                    }
                }
                out
            }))
        }
        _ => Err(Error::UnsupportedDimension { found: m, supported: "3 or 4" }),
    }
}
