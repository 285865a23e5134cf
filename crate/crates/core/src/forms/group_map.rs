//! Maps from a chart into GL(n) or A(n), and their Maurer–Cartan pullbacks.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::algebra;
use super::coeff::Coeff;
use super::field::{Evaluator, Field};
use super::form::{ValueSpace, ValuedForm};
use super::jet::Jet;
use super::ops;
use super::polynomial::Polynomial;
use crate::error::{Error, Result};
use crate::lie::{AffElement, GlElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupKind {
    Gl,
    Aff,
}

/// x ↦ (a(x), ξ(x)) with symbolic entries; ξ is empty for GL-valued maps.
#[derive(Debug, Clone)]
pub struct GroupMap {
    dim: usize,
    n: usize,
    kind: GroupKind,
    a: Vec<Field>,
    xi: Vec<Field>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupMapRepr {
    dim: usize,
    n: usize,
    kind: GroupKind,
    a: Vec<Polynomial>,
    #[serde(default)]
    xi: Vec<Polynomial>,
}

impl Serialize for GroupMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let polys = |fs: &[Field]| -> std::result::Result<Vec<Polynomial>, S::Error> {
            fs.iter()
                .map(|f| {
                    f.to_polynomial(self.dim).ok_or_else(|| {
                        serde::ser::Error::custom("group map has non-polynomial entries")
                    })
                })
                .collect()
        };
        GroupMapRepr { dim: self.dim, n: self.n, kind: self.kind, a: polys(&self.a)?, xi: polys(&self.xi)? }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GroupMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = GroupMapRepr::deserialize(d)?;
        let a = r.a.into_iter().map(Field::poly).collect();
        let xi = r.xi.into_iter().map(Field::poly).collect();
        GroupMap::new(r.dim, r.n, r.kind, a, xi).map_err(serde::de::Error::custom)
    }
}

impl GroupMap {
    pub fn new(dim: usize, n: usize, kind: GroupKind, a: Vec<Field>, xi: Vec<Field>) -> Result<Self> {
        if a.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, found: a.len() });
        }
        let want_xi = if kind == GroupKind::Aff { n } else { 0 };
        if xi.len() != want_xi {
            return Err(Error::DimensionMismatch { expected: want_xi, found: xi.len() });
        }
        Ok(GroupMap { dim, n, kind, a, xi })
    }

    pub fn identity(dim: usize, n: usize, kind: GroupKind) -> Self {
        Self::constant_aff(dim, &AffElement::identity(n), kind)
    }

    fn constant_aff(dim: usize, g: &AffElement, kind: GroupKind) -> Self {
        let n = g.dim();
        let a = g.a.to_row_major().into_iter().map(Field::constant).collect();
        let xi = match kind {
            GroupKind::Aff => g.xi.iter().map(|&v| Field::constant(v)).collect(),
            GroupKind::Gl => Vec::new(),
        };
        GroupMap { dim, n, kind, a, xi }
    }

    pub fn constant(dim: usize, g: &AffElement) -> Self {
        Self::constant_aff(dim, g, GroupKind::Aff)
    }

    pub fn constant_gl(dim: usize, a: &GlElement) -> Self {
        let n = a.dim();
        Self::constant_aff(dim, &AffElement { a: a.clone(), xi: DVector::zeros(n) }, GroupKind::Gl)
    }

    /// x ↦ (I, w(x)).
    pub fn translation(dim: usize, w: Vec<Field>) -> Self {
        let n = w.len();
        let a = (0..n * n).map(|k| Field::constant(if k % (n + 1) == 0 { 1.0 } else { 0.0 })).collect();
        GroupMap { dim, n, kind: GroupKind::Aff, a, xi: w }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn linear_entries(&self) -> &[Field] {
        &self.a
    }

    pub fn translation_entries(&self) -> &[Field] {
        &self.xi
    }

    /// Translation entries, zero for GL-valued maps.
    fn xi_or_zero(&self) -> Vec<Field> {
        if self.kind == GroupKind::Aff {
            self.xi.clone()
        } else {
            vec![Field::zero(); self.n]
        }
    }

    pub fn value(&self, x: &[f64]) -> Result<AffElement> {
        let mut ev = Evaluator::new(x, 0);
        let a: Vec<f64> = self.a.iter().map(|f| ev.eval(f).value()).collect();
        let xi: Vec<f64> = self.xi_or_zero().iter().map(|f| ev.eval(f).value()).collect();
        AffElement::new(GlElement::from_row_major(self.n, &a), DVector::from_vec(xi))
    }

    /// Entries (a, ξ) expanded to the given order at x.
    pub fn jets(&self, x: &[f64], order: usize) -> (Vec<Jet>, Vec<Jet>) {
        let mut ev = Evaluator::new(x, order);
        let a = self.a.iter().map(|f| ev.eval(f)).collect();
        let xi = self.xi_or_zero().iter().map(|f| ev.eval(f)).collect();
        (a, xi)
    }

    /// Checks invertibility at the given points and reports the first failure.
    pub fn check_invertible(&self, points: &[Vec<f64>]) -> Result<()> {
        for p in points {
            self.value(p)?;
        }
        Ok(())
    }

    /// Pointwise product x ↦ self(x)·other(x).
    pub fn compose(&self, other: &GroupMap) -> Result<GroupMap> {
        if self.n != other.n || self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        let n = self.n;
        let a = algebra::mat_mul(&self.a, &other.a, n);
        let kind = if self.kind == GroupKind::Aff || other.kind == GroupKind::Aff {
            GroupKind::Aff
        } else {
            GroupKind::Gl
        };
        let xi = match kind {
            GroupKind::Aff => {
                let ax = algebra::mat_vec(&self.a, &other.xi_or_zero(), n);
                ax.into_iter().zip(self.xi_or_zero()).map(|(u, v)| u + v).collect()
            }
            GroupKind::Gl => Vec::new(),
        };
        Ok(GroupMap { dim: self.dim, n, kind, a, xi })
    }

    /// Pointwise inverse x ↦ self(x)⁻¹, built symbolically.
    pub fn inverse(&self) -> GroupMap {
        let n = self.n;
        let (a_inv, _) = algebra::inverse(&self.a, n);
        let xi = match self.kind {
            GroupKind::Aff => algebra::mat_vec(&a_inv, &self.xi, n).into_iter().map(|c| -c).collect(),
            GroupKind::Gl => Vec::new(),
        };
        GroupMap { dim: self.dim, n, kind: self.kind, a: a_inv, xi }
    }

    /// g*λ = g⁻¹ dg, as an 𝔞(n)- or 𝔤𝔩(n)-valued 1-form.
    pub fn maurer_cartan_pullback(&self) -> ValuedForm<Field> {
        let (a_inv, _) = algebra::inverse(&self.a, self.n);
        maurer_cartan(&self.a, &a_inv, &self.xi_or_zero(), self.dim, self.n, self.kind)
    }

    /// Max over sample points of ‖self(x) − other(x)‖_max.
    pub fn max_deviation(&self, other: &GroupMap, points: &[Vec<f64>]) -> Result<(f64, Vec<f64>)> {
        let mut worst = (0.0, Vec::new());
        for p in points {
            let d = self.value(p)?.distance(&other.value(p)?);
            if d > worst.0 || worst.1.is_empty() {
                worst = (d, p.clone());
            }
        }
        Ok(worst)
    }

    pub fn to_block_matrix(&self, x: &[f64]) -> Result<DMatrix<f64>> {
        Ok(self.value(x)?.block_matrix())
    }
}

/// g⁻¹ dg from entries of a and ξ and a⁻¹: components (a⁻¹ ∂_μ a, a⁻¹ ∂_μ ξ).
pub fn maurer_cartan<C: Coeff>(
    a: &[C],
    a_inv: &[C],
    xi: &[C],
    dim: usize,
    n: usize,
    kind: GroupKind,
) -> ValuedForm<C> {
    let space = match kind {
        GroupKind::Aff => ValueSpace::Aff(n),
        GroupKind::Gl => ValueSpace::Gl(n),
    };
    let per_dir = (0..dim)
        .map(|mu| {
            let da: Vec<C> = a.iter().map(|c| c.partial(mu)).collect();
            let mut v = algebra::mat_mul(a_inv, &da, n);
            if kind == GroupKind::Aff {
                let dxi: Vec<C> = xi.iter().map(|c| c.partial(mu)).collect();
                v.extend(algebra::mat_vec(a_inv, &dxi, n));
            }
            v
        })
        .collect();
    ValuedForm::one_form(dim, space, per_dir)
}

/// A ↦ Ad_{t⁻¹} A + t*λ, pointwise over generic coefficients.
pub fn gauge_transform_generic<C: Coeff>(
    form: &ValuedForm<C>,
    a: &[C],
    xi: &[C],
    kind: GroupKind,
) -> Result<ValuedForm<C>> {
    let n = match form.space() {
        ValueSpace::Aff(n) | ValueSpace::Gl(n) => n,
        s => return Err(Error::ValueSpaceMismatch(format!("gauge transform of {s:?}"))),
    };
    let (a_inv, _) = algebra::inverse(a, n);
    let form_kind = if matches!(form.space(), ValueSpace::Aff(_)) { GroupKind::Aff } else { GroupKind::Gl };
    if form_kind == GroupKind::Gl && kind == GroupKind::Aff {
        return Err(Error::ValueSpaceMismatch("affine gauge on a gl-valued form".into()));
    }
    let mc = maurer_cartan(a, &a_inv, xi, form.dim(), n, form_kind);
    Ok(ops::adjoint_inverse_form(a, &a_inv, xi, form)?.add(&mc))
}

/// A ↦ Ad_{t⁻¹} A + t*λ for symbolic data.
pub fn gauge_transform_local(form: &ValuedForm<Field>, t: &GroupMap) -> Result<ValuedForm<Field>> {
    if form.dim() != t.dim() {
        return Err(Error::DimensionMismatch { expected: form.dim(), found: t.dim() });
    }
    gauge_transform_generic(form, &t.a, &t.xi_or_zero(), t.kind)
}
