//! Seeded generators for random polynomial data.

use rand::Rng;

use super::field::Field;
use super::form::{ValueSpace, ValuedForm};
use super::polynomial::{Polynomial, Term};

/// All exponent vectors in `nvars` variables of total degree ≤ `degree`.
pub fn monomials(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
    fn rec(var: usize, nvars: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if var == nvars {
            out.push(cur.clone());
            return;
        }
        for p in 0..=left {
            cur.push(p);
            rec(var + 1, nvars, left - p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, nvars, degree, &mut Vec::new(), &mut out);
    out
}

/// A polynomial with every monomial of degree ≤ `degree` and coefficients uniform in [−scale, scale].
pub fn random_polynomial<R: Rng>(rng: &mut R, nvars: usize, degree: u32, scale: f64) -> Polynomial {
    let terms = monomials(nvars, degree)
        .into_iter()
        .map(|exponents| Term { coeff: rng.gen_range(-scale..scale), exponents })
        .collect();
    Polynomial::from_terms(nvars, terms)
}

/// A form whose coefficients are independent random polynomials.
pub fn random_form<R: Rng>(
    rng: &mut R,
    dim: usize,
    degree: usize,
    space: ValueSpace,
    poly_degree: u32,
    scale: f64,
) -> ValuedForm<Field> {
    ValuedForm::from_fn(dim, degree, space, |_, _| {
        Field::poly(random_polynomial(rng, dim, poly_degree, scale))
    })
}

/// A uniform sample in [−scale, scale].
pub fn uniform<R: Rng>(rng: &mut R, scale: f64) -> f64 {
    rng.gen_range(-scale..scale)
}
