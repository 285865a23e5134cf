//! Differential forms on a chart with values in R, R^n, 𝔤𝔩(n) or 𝔞(n).

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::algebra;
use super::coeff::{sum, Coeff};
use super::field::{Evaluator, Field};
use super::jet::{Jet, MAX_VARS};
use crate::error::{Error, Result};
use crate::lie::Signature;

/// Target space of a form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "n", rename_all = "snake_case")]
pub enum ValueSpace {
    Scalar,
    Vector(usize),
    Gl(usize),
    Aff(usize),
}

impl ValueSpace {
    pub fn len(&self) -> usize {
        match *self {
            ValueSpace::Scalar => 1,
            ValueSpace::Vector(n) => n,
            ValueSpace::Gl(n) => n * n,
            ValueSpace::Aff(n) => n * n + n,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The Lie bracket; R and R^n are abelian.
    pub fn bracket<C: Coeff>(&self, x: &[C], y: &[C]) -> Vec<C> {
        match *self {
            ValueSpace::Scalar | ValueSpace::Vector(_) => vec![C::zero(); self.len()],
            ValueSpace::Gl(n) => algebra::commutator(x, y, n),
            ValueSpace::Aff(n) => algebra::aff_bracket(x, y, n),
        }
    }
}

/// Bilinear pairings used in wedge products.
#[derive(Debug, Clone, PartialEq)]
pub enum Pairing {
    /// Product of scalars.
    Scalar,
    /// tr(a b) on 𝔤𝔩(n).
    Trace,
    /// The pairing on 𝔞(3) through the 𝔨 ≃ R³ identification.
    Affine(Signature),
}

impl Pairing {
    fn check(&self, a: ValueSpace, b: ValueSpace) -> Result<()> {
        let ok = match self {
            Pairing::Scalar => a == ValueSpace::Scalar && b == ValueSpace::Scalar,
            Pairing::Trace => matches!((a, b), (ValueSpace::Gl(n), ValueSpace::Gl(k)) if n == k),
            Pairing::Affine(sig) => {
                a == ValueSpace::Aff(3) && b == ValueSpace::Aff(3) && sig.dim() == 3
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::ValueSpaceMismatch(format!("{self:?} cannot pair {a:?} with {b:?}")))
        }
    }

    fn apply<C: Coeff>(&self, space: ValueSpace, x: &[C], y: &[C]) -> C {
        match (self, space) {
            (Pairing::Scalar, _) => super::coeff::mul(&x[0], &y[0]),
            (Pairing::Trace, ValueSpace::Gl(n)) => algebra::trace_pair(x, y, n),
            (Pairing::Affine(sig), _) => algebra::affine_pair(x, y, sig),
            _ => unreachable!("pairing checked before use"),
        }
    }
}

struct MultiIndexTables {
    /// bases[dim][deg] = masks of the strictly increasing multi-indices, lexicographic.
    bases: Vec<Vec<Vec<u8>>>,
    /// position[dim][mask] = index of the mask within its degree.
    position: Vec<Vec<usize>>,
}

fn tables() -> &'static MultiIndexTables {
    static T: OnceLock<MultiIndexTables> = OnceLock::new();
    T.get_or_init(|| {
        let mut bases = Vec::new();
        let mut position = Vec::new();
        for dim in 0..=MAX_VARS {
            let mut by_deg: Vec<Vec<u8>> = vec![Vec::new(); dim + 1];
            let mut masks: Vec<u8> = (0..(1u16 << dim)).map(|m| m as u8).collect();
            masks.sort_by_key(|&m| indices_of(m));
            for m in masks {
                by_deg[m.count_ones() as usize].push(m);
            }
            let mut pos = vec![0; 1 << dim];
            for list in &by_deg {
                for (k, &m) in list.iter().enumerate() {
                    pos[m as usize] = k;
                }
            }
            bases.push(by_deg);
            position.push(pos);
        }
        MultiIndexTables { bases, position }
    })
}

/// The increasing index list of a mask.
pub fn indices_of(mask: u8) -> Vec<usize> {
    (0..8).filter(|b| mask & (1 << b) != 0).collect()
}

pub fn mask_of(indices: &[usize]) -> u8 {
    indices.iter().fold(0u8, |m, &i| m | (1 << i))
}

/// Strictly increasing multi-indices of the given degree.
pub fn multi_indices(dim: usize, degree: usize) -> &'static [u8] {
    if degree > dim {
        return &[];
    }
    &tables().bases[dim][degree]
}

fn position(dim: usize, mask: u8) -> usize {
    tables().position[dim][mask as usize]
}

/// Sign of dx^I ∧ dx^J = ± dx^{I∪J} for disjoint I, J.
pub fn wedge_sign(i: u8, j: u8) -> f64 {
    let mut inversions = 0;
    for a in indices_of(i) {
        inversions += indices_of(j).into_iter().filter(|&b| b < a).count();
    }
    if inversions % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// A degree-p form Σ_I c_I dx^I with values in `space`, stored on increasing multi-indices.
#[derive(Debug, Clone)]
pub struct ValuedForm<C> {
    dim: usize,
    degree: usize,
    space: ValueSpace,
    coeffs: Vec<C>,
}

pub type SymbolicForm = ValuedForm<Field>;
pub type JetForm = ValuedForm<Jet>;

impl<C: Coeff> ValuedForm<C> {
    pub fn zero(dim: usize, degree: usize, space: ValueSpace) -> Self {
        assert!(dim <= MAX_VARS, "charts of dimension ≤ {MAX_VARS}");
        let blocks = binomial(dim, degree);
        ValuedForm { dim, degree, space, coeffs: vec![C::zero(); blocks * space.len()] }
    }

    /// Builds a form from a function of (multi-index mask, component).
    pub fn from_fn(
        dim: usize,
        degree: usize,
        space: ValueSpace,
        mut f: impl FnMut(u8, usize) -> C,
    ) -> Self {
        let mut out = ValuedForm::zero(dim, degree, space);
        let n = space.len();
        for (p, &mask) in multi_indices(dim, degree).iter().enumerate() {
            for c in 0..n {
                out.coeffs[p * n + c] = f(mask, c);
            }
        }
        out
    }

    /// A 1-form Σ_μ v_μ dx^μ from per-direction values.
    pub fn one_form(dim: usize, space: ValueSpace, per_dir: Vec<Vec<C>>) -> Self {
        assert_eq!(per_dir.len(), dim);
        let mut out = ValuedForm::zero(dim, 1, space);
        for (mu, vals) in per_dir.into_iter().enumerate() {
            assert_eq!(vals.len(), space.len());
            out.block_mut(1 << mu).clone_from_slice(&vals);
        }
        out
    }

    /// A 0-form.
    pub fn function(dim: usize, space: ValueSpace, vals: Vec<C>) -> Self {
        assert_eq!(vals.len(), space.len());
        ValuedForm { dim, degree: 0, space, coeffs: vals }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn space(&self) -> ValueSpace {
        self.space
    }

    pub fn coefficients(&self) -> &[C] {
        &self.coeffs
    }

    pub fn multi_indices(&self) -> &'static [u8] {
        multi_indices(self.dim, self.degree)
    }

    pub fn block(&self, mask: u8) -> &[C] {
        debug_assert_eq!(mask.count_ones() as usize, self.degree);
        let n = self.space.len();
        let p = position(self.dim, mask);
        &self.coeffs[p * n..(p + 1) * n]
    }

    pub fn block_mut(&mut self, mask: u8) -> &mut [C] {
        let n = self.space.len();
        let p = position(self.dim, mask);
        &mut self.coeffs[p * n..(p + 1) * n]
    }

    pub fn coeff(&self, mask: u8, comp: usize) -> &C {
        &self.block(mask)[comp]
    }

    /// The single coefficient of a scalar top-degree form.
    pub fn top_coefficient(&self) -> &C {
        assert_eq!(self.degree, self.dim);
        assert_eq!(self.space, ValueSpace::Scalar);
        &self.coeffs[0]
    }

    fn check_same_shape(&self, o: &Self) {
        assert_eq!(
            (self.dim, self.degree, self.space),
            (o.dim, o.degree, o.space),
            "forms of different shape"
        );
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check_same_shape(o);
        self.zip_with(o, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check_same_shape(o);
        self.zip_with(o, |a, b| a.clone() - b.clone())
    }

    fn zip_with(&self, o: &Self, f: impl Fn(&C, &C) -> C) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&o.coeffs)
            .map(|(a, b)| {
                if b.is_zero() {
                    a.clone()
                } else if a.is_zero() {
                    f(&C::zero(), b)
                } else {
                    f(a, b)
                }
            })
            .collect();
        self.with_coeffs(coeffs)
    }

    fn with_coeffs(&self, coeffs: Vec<C>) -> Self {
        ValuedForm { dim: self.dim, degree: self.degree, space: self.space, coeffs }
    }

    pub fn scale(&self, s: f64) -> Self {
        self.with_coeffs(self.coeffs.iter().map(|c| c.scale(s)).collect())
    }

    /// Multiplies every coefficient by a scalar function.
    pub fn mul_function(&self, f: &C) -> Self {
        self.with_coeffs(self.coeffs.iter().map(|c| super::coeff::mul(c, f)).collect())
    }

    /// Applies a pointwise map of values to every multi-index block.
    pub fn map_values(&self, out: ValueSpace, f: impl Fn(&[C]) -> Vec<C>) -> Self {
        let mut res = ValuedForm::zero(self.dim, self.degree, out);
        let n = self.space.len();
        let k = out.len();
        for p in 0..self.coeffs.len() / n.max(1) {
            let v = f(&self.coeffs[p * n..(p + 1) * n]);
            assert_eq!(v.len(), k);
            res.coeffs[p * k..(p + 1) * k].clone_from_slice(&v);
        }
        res
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> ValuedForm<D> {
        ValuedForm {
            dim: self.dim,
            degree: self.degree,
            space: self.space,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// (dω)_{μ₀…μ_p} = Σ_k (−1)^k ∂_{μ_k} ω_{μ₀…μ̂_k…μ_p}.
    pub fn exterior_derivative(&self) -> Self {
        if self.degree >= self.dim {
            return ValuedForm::zero(self.dim, self.degree + 1, self.space);
        }
        let n = self.space.len();
        let mut out = ValuedForm::zero(self.dim, self.degree + 1, self.space);
        for &mask in multi_indices(self.dim, self.degree + 1) {
            let idx = indices_of(mask);
            let block: Vec<C> = (0..n)
                .map(|c| {
                    sum(idx.iter().enumerate().map(|(k, &mu)| {
                        let d = self.coeff(mask & !(1 << mu), c).partial(mu);
                        if k % 2 == 0 {
                            d
                        } else {
                            -d
                        }
                    }))
                })
                .collect();
            out.block_mut(mask).clone_from_slice(&block);
        }
        out
    }

    /// Σ_{I,J} sign(I,J) f(ω_I, σ_J) dx^{I∪J}: the wedge product through a bilinear map.
    pub fn wedge_with(
        &self,
        other: &ValuedForm<C>,
        out_space: ValueSpace,
        f: impl Fn(&[C], &[C]) -> Vec<C>,
    ) -> ValuedForm<C> {
        assert_eq!(self.dim, other.dim, "forms on different charts");
        let deg = self.degree + other.degree;
        if deg > self.dim {
            return ValuedForm::zero(self.dim, deg, out_space);
        }
        let k = out_space.len();
        let mut acc: Vec<C> = vec![C::zero(); binomial(self.dim, deg) * k];
        for &i in self.multi_indices() {
            let a = self.block(i);
            if a.iter().all(|c| c.is_zero()) {
                continue;
            }
            for &j in other.multi_indices() {
                if i & j != 0 {
                    continue;
                }
                let b = other.block(j);
                if b.iter().all(|c| c.is_zero()) {
                    continue;
                }
                let sign = wedge_sign(i, j);
                let p = position(self.dim, i | j);
                for (c, v) in f(a, b).into_iter().enumerate() {
                    if !v.is_zero() {
                        acc[p * k + c].add_signed(v, sign);
                    }
                }
            }
        }
        ValuedForm { dim: self.dim, degree: deg, space: out_space, coeffs: acc }
    }

    /// ⟨ω ∧ σ⟩ through a pairing; scalar valued.
    pub fn wedge_pair(&self, other: &ValuedForm<C>, pairing: &Pairing) -> Result<ValuedForm<C>> {
        pairing.check(self.space, other.space)?;
        let space = self.space;
        Ok(self.wedge_with(other, ValueSpace::Scalar, |a, b| vec![pairing.apply(space, a, b)]))
    }

    /// [ω ∧ σ] through the Lie bracket of the common value space.
    pub fn wedge_bracket(&self, other: &ValuedForm<C>) -> Result<ValuedForm<C>> {
        if self.space != other.space {
            return Err(Error::ValueSpaceMismatch(format!(
                "bracket of {:?} with {:?}",
                self.space, other.space
            )));
        }
        let space = self.space;
        Ok(self.wedge_with(other, space, |a, b| space.bracket(a, b)))
    }

    /// Wedge of a 𝔤𝔩(n)-valued form acting on an R^n-valued form: (a ∧ v)^i = a^i_j ∧ v^j.
    pub fn wedge_act(&self, other: &ValuedForm<C>) -> Result<ValuedForm<C>> {
        match (self.space, other.space) {
            (ValueSpace::Gl(n), ValueSpace::Vector(k)) if n == k => {
                Ok(self.wedge_with(other, ValueSpace::Vector(n), |a, b| algebra::mat_vec(a, b, n)))
            }
            (a, b) => Err(Error::ValueSpaceMismatch(format!("{a:?} cannot act on {b:?}"))),
        }
    }

    /// Matrix product of 𝔤𝔩(n)-valued forms: (a ∧ b)^i_k = a^i_j ∧ b^j_k.
    pub fn wedge_matmul(&self, other: &ValuedForm<C>) -> Result<ValuedForm<C>> {
        match (self.space, other.space) {
            (ValueSpace::Gl(n), ValueSpace::Gl(k)) if n == k => {
                Ok(self.wedge_with(other, ValueSpace::Gl(n), |a, b| algebra::mat_mul(a, b, n)))
            }
            (a, b) => Err(Error::ValueSpaceMismatch(format!("{a:?} times {b:?}"))),
        }
    }

    /// Matrix part of an 𝔞(n)-valued form.
    pub fn gl_part(&self) -> ValuedForm<C> {
        let ValueSpace::Aff(n) = self.space else { panic!("gl_part of a non-affine form") };
        self.map_values(ValueSpace::Gl(n), |v| v[..n * n].to_vec())
    }

    /// Vector part of an 𝔞(n)-valued form.
    pub fn vector_part(&self) -> ValuedForm<C> {
        let ValueSpace::Aff(n) = self.space else { panic!("vector_part of a non-affine form") };
        self.map_values(ValueSpace::Vector(n), |v| v[n * n..].to_vec())
    }

    /// Reassembles an 𝔞(n)-valued form from matrix and vector parts.
    pub fn affine_from_parts(gl: &ValuedForm<C>, vec: &ValuedForm<C>) -> ValuedForm<C> {
        let ValueSpace::Gl(n) = gl.space else { panic!("matrix part must be gl-valued") };
        assert_eq!(vec.space, ValueSpace::Vector(n));
        assert_eq!((gl.dim, gl.degree), (vec.dim, vec.degree));
        ValuedForm::from_fn(gl.dim, gl.degree, ValueSpace::Aff(n), |mask, c| {
            if c < n * n {
                gl.coeff(mask, c).clone()
            } else {
                vec.coeff(mask, c - n * n).clone()
            }
        })
    }

    /// Evaluates a 1-form on a tangent vector: Σ_μ X^μ ω_μ.
    pub fn contract_vector(&self, x: &[f64]) -> Vec<C> {
        assert_eq!(self.degree, 1);
        let n = self.space.len();
        (0..n)
            .map(|c| sum((0..self.dim).map(|mu| self.coeff(1 << mu, c).scale(x[mu]))))
            .collect()
    }

    /// Evaluates a 2-form on a pair of tangent vectors.
    pub fn contract_pair(&self, x: &[f64], y: &[f64]) -> Vec<C> {
        assert_eq!(self.degree, 2);
        let n = self.space.len();
        (0..n)
            .map(|c| {
                sum(self.multi_indices().iter().map(|&mask| {
                    let ix = indices_of(mask);
                    let (mu, nu) = (ix[0], ix[1]);
                    self.coeff(mask, c).scale(x[mu] * y[nu] - x[nu] * y[mu])
                }))
            })
            .collect()
    }
}

impl ValuedForm<Field> {
    /// Taylor expansion of every coefficient at `x`.
    pub fn eval(&self, x: &[f64], order: usize) -> ValuedForm<Jet> {
        let mut ev = Evaluator::new(x, order);
        self.eval_with(&mut ev)
    }

    pub fn eval_with(&self, ev: &mut Evaluator) -> ValuedForm<Jet> {
        ValuedForm {
            dim: self.dim,
            degree: self.degree,
            space: self.space,
            coeffs: self.coeffs.iter().map(|c| ev.eval(c)).collect(),
        }
    }

    /// Coefficient values at `x`.
    pub fn values_at(&self, x: &[f64]) -> Vec<f64> {
        self.eval(x, 0).values()
    }
}

impl ValuedForm<Jet> {
    pub fn values(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.value()).collect()
    }

    /// max over coefficients of |value|.
    pub fn max_abs_value(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.value().abs()))
    }
}

/// max_I |a_I − b_I| over coefficient values.
pub fn max_value_deviation(a: &ValuedForm<Jet>, b: &ValuedForm<Jet>) -> f64 {
    a.sub(b).max_abs_value()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::polynomial::Polynomial;

    fn coord(n: usize, i: usize) -> Field {
        Field::coordinate(n, i)
    }

    #[test]
    fn multi_index_order() {
        assert_eq!(multi_indices(3, 2), &[0b011, 0b101, 0b110]);
        assert_eq!(multi_indices(4, 0), &[0]);
        assert_eq!(wedge_sign(0b010, 0b001), -1.0);
        assert_eq!(wedge_sign(0b001, 0b110), 1.0);
        assert_eq!(wedge_sign(0b100, 0b011), 1.0);
        assert_eq!(wedge_sign(0b010, 0b101), -1.0);
    }

    #[test]
    fn derivative_of_coordinate_function() {
        let f = ValuedForm::function(3, ValueSpace::Scalar, vec![coord(3, 1)]);
        let d = f.exterior_derivative();
        assert_eq!(d.coeff(0b010, 0).as_constant(), Some(1.0));
        assert!(d.coeff(0b001, 0).is_zero());
        let c = ValuedForm::function(3, ValueSpace::Scalar, vec![Field::constant(2.5)]);
        assert!(c.exterior_derivative().coefficients().iter().all(|x| x.is_zero()));
    }

    #[test]
    fn x1_dx2() {
        let mut w = ValuedForm::<Field>::zero(3, 1, ValueSpace::Scalar);
        w.block_mut(0b100)[0] = coord(3, 1);
        let d = w.exterior_derivative();
        assert_eq!(d.coeff(0b110, 0).as_constant(), Some(1.0));
        assert!(d.coeff(0b011, 0).is_zero() && d.coeff(0b101, 0).is_zero());
    }

    #[test]
    fn d_squared_vanishes() {
        let p = |a: f64| {
            Field::poly(Polynomial::from_terms(
                3,
                vec![
                    crate::forms::polynomial::Term { coeff: a, exponents: vec![2, 1, 0] },
                    crate::forms::polynomial::Term { coeff: 1.0 - a, exponents: vec![0, 2, 3] },
                ],
            ))
        };
        let w = ValuedForm::from_fn(3, 1, ValueSpace::Gl(2), |m, c| p(m as f64 + c as f64 * 0.3).exp());
        let dd = w.exterior_derivative().exterior_derivative();
        assert!(dd.eval(&[0.2, 0.5, -0.3], 0).max_abs_value() < 1e-12);
    }

    #[test]
    fn rank_one_pairing() {
        let n = 2;
        let mut a = ValuedForm::<Field>::zero(3, 1, ValueSpace::Gl(n));
        let mut b = ValuedForm::<Field>::zero(3, 1, ValueSpace::Gl(n));
        a.block_mut(0b010)[1] = Field::constant(1.0);
        b.block_mut(0b100)[2] = Field::constant(1.0);
        let w = a.wedge_pair(&b, &Pairing::Trace).unwrap();
        assert_eq!(w.coeff(0b110, 0).as_constant(), Some(1.0));
        assert!(w.coeff(0b011, 0).is_zero());
    }

    #[test]
    fn bracket_of_constant_single_direction_vanishes() {
        let mut a = ValuedForm::<Field>::zero(3, 1, ValueSpace::Gl(2));
        for (c, v) in [0.3, -1.0, 2.0, 0.5].into_iter().enumerate() {
            a.block_mut(0b001)[c] = Field::constant(v);
        }
        let b = a.wedge_bracket(&a).unwrap();
        assert!(b.coefficients().iter().all(|c| c.is_zero()));
    }
}
