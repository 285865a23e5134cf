//! The scalar ring interface shared by symbolic fields and pointwise jets.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::field::Field;
use super::jet::Jet;

/// A commutative ring of differentiable scalars over a chart.
pub trait Coeff:
    Clone
    + Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_f64(c: f64) -> Self;

    fn zero() -> Self {
        Self::from_f64(0.0)
    }

    fn one() -> Self {
        Self::from_f64(1.0)
    }

    fn scale(&self, s: f64) -> Self;

    /// ∂/∂x^μ.
    fn partial(&self, mu: usize) -> Self;

    /// Structural zero test; may return false for values that happen to vanish.
    fn is_zero(&self) -> bool;

    fn sqrt(&self) -> Self;

    /// self += sign · v.
    fn add_signed(&mut self, v: Self, sign: f64) {
        let v = if sign > 0.0 { v } else { -v };
        *self = if self.is_zero() { v } else { self.clone() + v };
    }

    /// Σ items.
    fn sum_of(items: impl IntoIterator<Item = Self>) -> Self {
        let mut layer: Vec<Self> = items.into_iter().filter(|c| !c.is_zero()).collect();
        if layer.is_empty() {
            return Self::zero();
        }
        while layer.len() > 1 {
            let mut next = Vec::with_capacity(layer.len().div_ceil(2));
            let mut it = layer.into_iter();
            while let Some(a) = it.next() {
                match it.next() {
                    Some(b) => next.push(a + b),
                    None => next.push(a),
                }
            }
            layer = next;
        }
        layer.pop().unwrap()
    }
}

impl Coeff for Jet {
    fn from_f64(c: f64) -> Self {
        Jet::constant(c)
    }
    fn scale(&self, s: f64) -> Self {
        Jet::scale(self, s)
    }
    fn partial(&self, mu: usize) -> Self {
        Jet::partial(self, mu)
    }
    fn is_zero(&self) -> bool {
        self.is_exact_zero()
    }
    fn sqrt(&self) -> Self {
        Jet::sqrt(self)
    }
    fn add_signed(&mut self, v: Self, sign: f64) {
        self.axpy(sign, &v);
    }
    fn sum_of(items: impl IntoIterator<Item = Self>) -> Self {
        let mut it = items.into_iter();
        let Some(mut acc) = it.next() else { return Jet::constant(0.0) };
        for v in it {
            acc.axpy(1.0, &v);
        }
        acc
    }
}

impl Coeff for Field {
    fn from_f64(c: f64) -> Self {
        Field::constant(c)
    }
    fn scale(&self, s: f64) -> Self {
        Field::scale(self, s)
    }
    fn partial(&self, mu: usize) -> Self {
        Field::partial(self, mu)
    }
    fn is_zero(&self) -> bool {
        Field::is_zero(self)
    }
    fn sqrt(&self) -> Self {
        Field::sqrt(self)
    }
}

/// Sum that skips structural zeros.
pub fn sum<C: Coeff>(items: impl IntoIterator<Item = C>) -> C {
    C::sum_of(items)
}

/// a · b, short-circuiting structural zeros.
#[inline]
pub fn mul<C: Coeff>(a: &C, b: &C) -> C {
    if a.is_zero() || b.is_zero() {
        C::zero()
    } else {
        a.clone() * b.clone()
    }
}
