//! Symbolic scalar fields on a chart as a shared expression DAG.
//!
//! Partial derivatives are symbolic (and memoized per node); evaluation
//! expands every node as a `Jet`, so derivatives requested from the
//! evaluated value are exact as well.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use super::jet::{Jet, MAX_VARS};
use super::polynomial::Polynomial;

const FOLD_LIMIT: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Exp,
    Sin,
    Cos,
    Sinh,
    Cosh,
    Sqrt,
}

enum Kind {
    Const(f64),
    Poly(Polynomial),
    Add(Field, Field),
    Sub(Field, Field),
    Mul(Field, Field),
    Div(Field, Field),
    Scale(f64, Field),
    Func(Func, Field),
}

struct Node {
    kind: Kind,
    partials: [OnceLock<Field>; MAX_VARS],
}

/// A differentiable scalar field.
#[derive(Clone)]
pub struct Field(Arc<Node>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.kind {
            Kind::Const(c) => write!(f, "{c}"),
            Kind::Poly(p) => write!(f, "poly[{} terms]", p.terms().len()),
            Kind::Add(a, b) => write!(f, "({a:?} + {b:?})"),
            Kind::Sub(a, b) => write!(f, "({a:?} - {b:?})"),
            Kind::Mul(a, b) => write!(f, "({a:?} * {b:?})"),
            Kind::Div(a, b) => write!(f, "({a:?} / {b:?})"),
            Kind::Scale(s, a) => write!(f, "{s}*{a:?}"),
            Kind::Func(g, a) => write!(f, "{g:?}({a:?})"),
        }
    }
}

impl Field {
    fn node(kind: Kind) -> Field {
        Field(Arc::new(Node { kind, partials: Default::default() }))
    }

    pub fn constant(c: f64) -> Field {
        Field::node(Kind::Const(c))
    }

    pub fn zero() -> Field {
        Field::constant(0.0)
    }

    pub fn poly(p: Polynomial) -> Field {
        match p.as_constant() {
            Some(c) => Field::constant(c),
            None => Field::node(Kind::Poly(p)),
        }
    }

    /// The coordinate function x_i on an n-dimensional chart.
    pub fn coordinate(nvars: usize, i: usize) -> Field {
        Field::poly(Polynomial::variable(nvars, i))
    }

    pub fn as_constant(&self) -> Option<f64> {
        match &self.0.kind {
            Kind::Const(c) => Some(*c),
            _ => None,
        }
    }

    pub fn as_polynomial(&self) -> Option<Polynomial> {
        match &self.0.kind {
            Kind::Poly(p) => Some(p.clone()),
            _ => None,
        }
    }

    /// The polynomial this field represents, if it is one, in `nvars` variables.
    pub fn to_polynomial(&self, nvars: usize) -> Option<Polynomial> {
        match &self.0.kind {
            Kind::Const(c) => Some(Polynomial::constant(nvars, *c)),
            Kind::Poly(p) if p.nvars() == nvars => Some(p.clone()),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0.kind, Kind::Const(c) if c == 0.0)
    }

    fn poly_view(&self) -> Option<&Polynomial> {
        match &self.0.kind {
            Kind::Poly(p) => Some(p),
            _ => None,
        }
    }

    pub fn scale(&self, s: f64) -> Field {
        if s == 0.0 {
            return Field::zero();
        }
        if s == 1.0 {
            return self.clone();
        }
        match &self.0.kind {
            Kind::Const(c) => Field::constant(c * s),
            Kind::Poly(p) => Field::poly(p.scale(s)),
            Kind::Scale(t, a) => a.scale(s * t),
            _ => Field::node(Kind::Scale(s, self.clone())),
        }
    }

    fn add_impl(&self, o: &Field, sign: f64) -> Field {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.scale(sign);
        }
        if let (Some(a), Some(b)) = (self.as_constant(), o.as_constant()) {
            return Field::constant(a + sign * b);
        }
        let small = |f: &Field| match &f.0.kind {
            Kind::Const(_) => Some(0),
            Kind::Poly(p) => Some(p.terms().len()),
            _ => None,
        };
        if let (Some(na), Some(nb)) = (small(self), small(o)) {
            if na + nb <= FOLD_LIMIT {
                let n = self.poly_view().or(o.poly_view()).unwrap().nvars();
                let pa = self.to_polynomial(n).unwrap();
                let pb = o.to_polynomial(n).unwrap();
                return Field::poly(pa.add(&pb.scale(sign)));
            }
        }
        if sign > 0.0 {
            Field::node(Kind::Add(self.clone(), o.clone()))
        } else {
            Field::node(Kind::Sub(self.clone(), o.clone()))
        }
    }

    fn mul_impl(&self, o: &Field) -> Field {
        if self.is_zero() || o.is_zero() {
            return Field::zero();
        }
        if let Some(c) = self.as_constant() {
            return o.scale(c);
        }
        if let Some(c) = o.as_constant() {
            return self.scale(c);
        }
        if let (Some(a), Some(b)) = (self.poly_view(), o.poly_view()) {
            if a.terms().len() * b.terms().len() <= FOLD_LIMIT {
                return Field::poly(a.mul(b));
            }
        }
        Field::node(Kind::Mul(self.clone(), o.clone()))
    }

    fn div_impl(&self, o: &Field) -> Field {
        if self.is_zero() {
            return Field::zero();
        }
        if let Some(c) = o.as_constant() {
            return self.scale(1.0 / c);
        }
        Field::node(Kind::Div(self.clone(), o.clone()))
    }

    pub fn apply(&self, g: Func) -> Field {
        if let Some(c) = self.as_constant() {
            return Field::constant(match g {
                Func::Exp => c.exp(),
                Func::Sin => c.sin(),
                Func::Cos => c.cos(),
                Func::Sinh => c.sinh(),
                Func::Cosh => c.cosh(),
                Func::Sqrt => c.sqrt(),
            });
        }
        Field::node(Kind::Func(g, self.clone()))
    }

    pub fn exp(&self) -> Field {
        self.apply(Func::Exp)
    }
    pub fn sin(&self) -> Field {
        self.apply(Func::Sin)
    }
    pub fn cos(&self) -> Field {
        self.apply(Func::Cos)
    }
    pub fn sinh(&self) -> Field {
        self.apply(Func::Sinh)
    }
    pub fn cosh(&self) -> Field {
        self.apply(Func::Cosh)
    }
    pub fn sqrt(&self) -> Field {
        self.apply(Func::Sqrt)
    }

    /// Symbolic ∂/∂x^μ.
    pub fn partial(&self, mu: usize) -> Field {
        assert!(mu < MAX_VARS, "partial index out of range");
        self.0.partials[mu].get_or_init(|| self.derive(mu)).clone()
    }

    fn derive(&self, mu: usize) -> Field {
        match &self.0.kind {
            Kind::Const(_) => Field::zero(),
            Kind::Poly(p) => Field::poly(p.partial(mu)),
            Kind::Add(a, b) => a.partial(mu) + b.partial(mu),
            Kind::Sub(a, b) => a.partial(mu) - b.partial(mu),
            Kind::Scale(s, a) => a.partial(mu).scale(*s),
            Kind::Mul(a, b) => &a.partial(mu) * b + a * &b.partial(mu),
            Kind::Div(a, b) => &(a.partial(mu) - self * &b.partial(mu)) / b,
            Kind::Func(g, a) => {
                let da = a.partial(mu);
                if da.is_zero() {
                    return Field::zero();
                }
                let outer = match g {
                    Func::Exp => self.clone(),
                    Func::Sin => a.cos(),
                    Func::Cos => -a.sin(),
                    Func::Sinh => a.cosh(),
                    Func::Cosh => a.sinh(),
                    Func::Sqrt => return &da / &self.scale(2.0),
                };
                &outer * &da
            }
        }
    }

    pub fn value(&self, x: &[f64]) -> f64 {
        Evaluator::new(x, 0).eval(self).value()
    }

    pub fn jet(&self, x: &[f64], order: usize) -> Jet {
        Evaluator::new(x, order).eval(self)
    }

    /// Number of distinct DAG nodes.
    pub fn node_count(&self) -> usize {
        fn walk(f: &Field, seen: &mut std::collections::HashSet<usize>) {
            if !seen.insert(Arc::as_ptr(&f.0) as usize) {
                return;
            }
            match &f.0.kind {
                Kind::Add(a, b) | Kind::Sub(a, b) | Kind::Mul(a, b) | Kind::Div(a, b) => {
                    walk(a, seen);
                    walk(b, seen);
                }
                Kind::Scale(_, a) | Kind::Func(_, a) => walk(a, seen),
                _ => {}
            }
        }
        let mut seen = std::collections::HashSet::new();
        walk(self, &mut seen);
        seen.len()
    }
}

/// Evaluates fields at one point and order, sharing work across common subexpressions.
pub struct Evaluator {
    x: Vec<f64>,
    order: usize,
    cache: HashMap<usize, Jet>,
    roots: Vec<Field>,
}

impl Evaluator {
    pub fn new(x: &[f64], order: usize) -> Self {
        Evaluator { x: x.to_vec(), order, cache: HashMap::new(), roots: Vec::new() }
    }

    pub fn point(&self) -> &[f64] {
        &self.x
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Evaluates `f`; the evaluator keeps `f` alive so cached entries stay valid.
    pub fn eval(&mut self, f: &Field) -> Jet {
        if !self.cache.contains_key(&(Arc::as_ptr(&f.0) as usize)) {
            self.roots.push(f.clone());
        }
        self.eval_node(f)
    }

    fn eval_node(&mut self, f: &Field) -> Jet {
        let key = Arc::as_ptr(&f.0) as usize;
        if let Some(j) = self.cache.get(&key) {
            return *j;
        }
        let out = match &f.0.kind {
            Kind::Const(c) => Jet::constant(*c),
            Kind::Poly(p) => p.jet(&self.x, self.order),
            Kind::Add(a, b) => self.eval_node(a) + self.eval_node(b),
            Kind::Sub(a, b) => self.eval_node(a) - self.eval_node(b),
            Kind::Mul(a, b) => self.eval_node(a) * self.eval_node(b),
            Kind::Div(a, b) => self.eval_node(a) / self.eval_node(b),
            Kind::Scale(s, a) => self.eval_node(a).scale(*s),
            Kind::Func(g, a) => {
                let v = self.eval_node(a);
                match g {
                    Func::Exp => v.exp(),
                    Func::Sin => v.sin(),
                    Func::Cos => v.cos(),
                    Func::Sinh => v.sinh(),
                    Func::Cosh => v.cosh(),
                    Func::Sqrt => v.sqrt(),
                }
            }
        };
        self.cache.insert(key, out);
        out
    }
}

macro_rules! field_binop {
    ($tr:ident, $method:ident, $imp:expr) => {
        impl $tr<&Field> for &Field {
            type Output = Field;
            fn $method(self, o: &Field) -> Field {
                $imp(self, o)
            }
        }
        impl $tr<Field> for Field {
            type Output = Field;
            fn $method(self, o: Field) -> Field {
                $imp(&self, &o)
            }
        }
    };
}

field_binop!(Add, add, |a: &Field, b: &Field| a.add_impl(b, 1.0));
field_binop!(Sub, sub, |a: &Field, b: &Field| a.add_impl(b, -1.0));
field_binop!(Mul, mul, |a: &Field, b: &Field| a.mul_impl(b));
field_binop!(Div, div, |a: &Field, b: &Field| a.div_impl(b));

impl Neg for &Field {
    type Output = Field;
    fn neg(self) -> Field {
        self.scale(-1.0)
    }
}

impl Neg for Field {
    type Output = Field;
    fn neg(self) -> Field {
        self.scale(-1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Field {
        Field::coordinate(3, i)
    }

    #[test]
    fn polynomial_folding() {
        let f = &(&x(0) * &x(1)) + &x(2).scale(2.0);
        assert!(f.as_polynomial().is_some());
        assert_eq!(f.value(&[2.0, 3.0, 0.5]), 7.0);
        assert!((&f - &f).is_zero());
    }

    #[test]
    fn symbolic_partials_match_jets() {
        let r = &(&x(0) * &x(0)) + &(&x(1) * &x(1));
        let f = &(&r.sqrt() * &x(2).exp()) / &(&x(0) + &Field::constant(2.0));
        let g = (&f * &x(1)).cosh();
        let p = [0.3, -0.8, 0.5];
        let j = g.jet(&p, 2);
        for alpha in [[1, 0, 0], [0, 1, 1], [2, 0, 0], [0, 0, 2]] {
            let mut s = g.clone();
            for (mu, &k) in alpha.iter().enumerate() {
                for _ in 0..k {
                    s = s.partial(mu);
                }
            }
            let a = s.value(&p);
            let b = j.derivative(&alpha);
            assert!((a - b).abs() < 1e-10 * (1.0 + b.abs()), "{alpha:?}: {a} vs {b}");
        }
    }

    #[test]
    fn partials_commute() {
        let f = (&x(0) * &x(1)).sin() / (&x(2) * &x(2) + Field::constant(1.0));
        let p = [0.4, 0.9, -0.2];
        let a = f.partial(0).partial(2).value(&p);
        let b = f.partial(2).partial(0).value(&p);
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn partial_is_memoized() {
        let f = (&x(0) * &x(1)).exp();
        let a = f.partial(0);
        let b = f.partial(0);
        assert!(Arc::ptr_eq(&a.0, &b.0));
    }
}
