//! Exact multivariate polynomials with real coefficients.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::jet::Jet;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub coeff: f64,
    pub exponents: Vec<u32>,
}

/// A polynomial in `nvars` variables, kept with sorted distinct monomials and no zero terms.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    nvars: usize,
    terms: Vec<Term>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolynomialRepr {
    variables: Vec<String>,
    terms: Vec<Term>,
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolynomialRepr {
            variables: (0..self.nvars).map(|i| format!("x{i}")).collect(),
            terms: self.terms.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = PolynomialRepr::deserialize(d)?;
        for t in &repr.terms {
            if t.exponents.len() != repr.variables.len() {
                return Err(serde::de::Error::custom(format!(
                    "term has {} exponents for {} variables",
                    t.exponents.len(),
                    repr.variables.len()
                )));
            }
            if !t.coeff.is_finite() {
                return Err(serde::de::Error::custom("non-finite coefficient"));
            }
        }
        Ok(Polynomial::from_terms(repr.variables.len(), repr.terms))
    }
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: f64) -> Self {
        Polynomial::from_terms(nvars, vec![Term { coeff: c, exponents: vec![0; nvars] }])
    }

    /// The coordinate function x_i.
    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Polynomial { nvars, terms: vec![Term { coeff: 1.0, exponents: e }] }
    }

    pub fn monomial(coeff: f64, exponents: Vec<u32>) -> Self {
        let n = exponents.len();
        Polynomial::from_terms(n, vec![Term { coeff, exponents }])
    }

    pub fn from_terms(nvars: usize, terms: Vec<Term>) -> Self {
        let mut acc: BTreeMap<Vec<u32>, f64> = BTreeMap::new();
        for t in terms {
            assert_eq!(t.exponents.len(), nvars, "exponent length mismatch");
            *acc.entry(t.exponents).or_insert(0.0) += t.coeff;
        }
        Polynomial {
            nvars,
            terms: acc
                .into_iter()
                .filter(|(_, c)| *c != 0.0)
                .map(|(exponents, coeff)| Term { coeff, exponents })
                .collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value if the polynomial has no non-constant term.
    pub fn as_constant(&self) -> Option<f64> {
        match self.terms.as_slice() {
            [] => Some(0.0),
            [t] if t.exponents.iter().all(|&e| e == 0) => Some(t.coeff),
            _ => None,
        }
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|t| t.exponents.iter().sum::<u32>()).max().unwrap_or(0)
    }

    pub fn add(&self, o: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, o.nvars);
        Polynomial::from_terms(self.nvars, self.terms.iter().chain(&o.terms).cloned().collect())
    }

    pub fn sub(&self, o: &Polynomial) -> Polynomial {
        self.add(&o.scale(-1.0))
    }

    pub fn scale(&self, s: f64) -> Polynomial {
        Polynomial::from_terms(
            self.nvars,
            self.terms.iter().map(|t| Term { coeff: t.coeff * s, exponents: t.exponents.clone() }).collect(),
        )
    }

    pub fn mul(&self, o: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, o.nvars);
        let mut out = Vec::with_capacity(self.terms.len() * o.terms.len());
        for a in &self.terms {
            for b in &o.terms {
                out.push(Term {
                    coeff: a.coeff * b.coeff,
                    exponents: a.exponents.iter().zip(&b.exponents).map(|(x, y)| x + y).collect(),
                });
            }
        }
        Polynomial::from_terms(self.nvars, out)
    }

    pub fn partial(&self, mu: usize) -> Polynomial {
        Polynomial::from_terms(
            self.nvars,
            self.terms
                .iter()
                .filter(|t| t.exponents[mu] > 0)
                .map(|t| {
                    let mut e = t.exponents.clone();
                    e[mu] -= 1;
                    Term { coeff: t.coeff * t.exponents[mu] as f64, exponents: e }
                })
                .collect(),
        )
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|t| {
                t.exponents.iter().zip(x).fold(t.coeff, |acc, (&e, &xi)| acc * xi.powi(e as i32))
            })
            .sum()
    }

    /// Taylor expansion at x to the given order.
    pub fn jet(&self, x: &[f64], order: usize) -> Jet {
        if let Some(c) = self.as_constant() {
            return Jet::constant(c);
        }
        let n = self.nvars;
        let falling = |e: u32, a: u8, xv: f64| -> f64 {
            let a = a as u32;
            if a > e {
                return 0.0;
            }
            let binom = (0..a).fold(1.0, |acc, k| acc * (e - k) as f64 / (k + 1) as f64);
            binom * xv.powi((e - a) as i32)
        };
        Jet::from_coefficients(n, order, |alpha| {
            self.terms
                .iter()
                .map(|t| {
                    t.exponents.iter().zip(alpha).zip(x).fold(t.coeff, |acc, ((&e, &a), &xv)| acc * falling(e, a, xv))
                })
                .sum()
        })
    }

    /// Exact integral over the box ∏ [lo_i, hi_i].
    pub fn integrate_box(&self, lo: &[f64], hi: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|t| {
                t.exponents.iter().enumerate().fold(t.coeff, |acc, (v, &e)| {
                    let p = e as i32 + 1;
                    acc * (hi[v].powi(p) - lo[v].powi(p)) / p as f64
                })
            })
            .sum()
    }

    /// Π_μ (x^μ − lo^μ)(hi^μ − x^μ), vanishing on every face of the box.
    pub fn box_bump(lo: &[f64], hi: &[f64]) -> Polynomial {
        let n = lo.len();
        let mut out = Polynomial::constant(n, 1.0);
        for v in 0..n {
            let x = Polynomial::variable(n, v);
            let left = x.sub(&Polynomial::constant(n, lo[v]));
            let right = Polynomial::constant(n, hi[v]).sub(&x);
            out = out.mul(&left.mul(&right));
        }
        out
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.iter().fold(0.0, |m, t| m.max(t.coeff.abs()))
    }

    pub fn check_nvars(&self, n: usize) -> Result<()> {
        if self.nvars == n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: n, found: self.nvars })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Polynomial {
        Polynomial::from_terms(
            3,
            vec![
                Term { coeff: 2.0, exponents: vec![2, 0, 1] },
                Term { coeff: -1.5, exponents: vec![0, 1, 0] },
                Term { coeff: 0.25, exponents: vec![0, 0, 0] },
            ],
        )
    }

    #[test]
    fn arithmetic_and_eval() {
        let p = sample();
        let x = [0.3, -0.7, 1.2];
        let q = p.mul(&p).sub(&p.scale(2.0));
        let v = p.eval(&x);
        assert!((q.eval(&x) - (v * v - 2.0 * v)).abs() < 1e-14);
        assert_eq!(p.partial(0).eval(&x), 4.0 * 0.3 * 1.2);
        assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn jet_matches_symbolic_partials() {
        let p = sample().mul(&sample());
        let x = [0.3, -0.7, 1.2];
        let j = p.jet(&x, 2);
        assert!((j.value() - p.eval(&x)).abs() < 1e-14);
        assert!((j.derivative(&[1, 0, 1]) - p.partial(0).partial(2).eval(&x)).abs() < 1e-12);
        assert!((j.derivative(&[0, 2, 0]) - p.partial(1).partial(1).eval(&x)).abs() < 1e-12);
    }

    #[test]
    fn box_integration_and_bump() {
        assert!((Polynomial::constant(3, 1.0).integrate_box(&[0.0; 3], &[1.0; 3]) - 1.0).abs() < 1e-15);
        let p = Polynomial::monomial(1.0, vec![2, 1]);
        assert!((p.integrate_box(&[0.0, -1.0], &[1.0, 2.0]) - 0.5).abs() < 1e-15);
        let b = Polynomial::box_bump(&[0.0, 0.0], &[1.0, 2.0]);
        assert_eq!(b.eval(&[0.0, 0.7]), 0.0);
        assert_eq!(b.eval(&[0.4, 2.0]), 0.0);
        assert!(b.eval(&[0.5, 1.0]) > 0.0);
    }

    #[test]
    fn json_schema() {
        let p = sample();
        let txt = serde_json::to_string(&p).unwrap();
        assert!(txt.starts_with(r#"{"variables":["x0","x1","x2"],"terms":[{"coeff""#));
        let back: Polynomial = serde_json::from_str(&txt).unwrap();
        assert_eq!(back, p);
        let bad = r#"{"variables":["x0"],"terms":[{"coeff":1.0,"exponents":[1,2]}]}"#;
        assert!(serde_json::from_str::<Polynomial>(bad).is_err());
        let extra = r#"{"variables":[],"terms":[],"extra":1}"#;
        assert!(serde_json::from_str::<Polynomial>(extra).is_err());
    }
}
