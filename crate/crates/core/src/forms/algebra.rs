//! Pointwise algebra on component slices, generic over the scalar ring.
//!
//! Matrices are row-major; an 𝔞(n) element stores its n² matrix entries
//! followed by n vector entries.

use super::coeff::{mul, sum, Coeff};
use crate::lie::{levi_civita, Signature};

pub fn mat_mul<C: Coeff>(a: &[C], b: &[C], n: usize) -> Vec<C> {
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            out.push(sum((0..n).map(|k| mul(&a[i * n + k], &b[k * n + j]))));
        }
    }
    out
}

pub fn mat_vec<C: Coeff>(a: &[C], v: &[C], n: usize) -> Vec<C> {
    (0..n).map(|i| sum((0..n).map(|k| mul(&a[i * n + k], &v[k])))).collect()
}

pub fn commutator<C: Coeff>(a: &[C], b: &[C], n: usize) -> Vec<C> {
    let ab = mat_mul(a, b, n);
    let ba = mat_mul(b, a, n);
    ab.into_iter().zip(ba).map(|(x, y)| x - y).collect()
}

/// ([b, b'], b ζ' − b' ζ).
pub fn aff_bracket<C: Coeff>(x: &[C], y: &[C], n: usize) -> Vec<C> {
    let nn = n * n;
    let mut out = commutator(&x[..nn], &y[..nn], n);
    let bz = mat_vec(&x[..nn], &y[nn..], n);
    let bpz = mat_vec(&y[..nn], &x[nn..], n);
    out.extend(bz.into_iter().zip(bpz).map(|(u, v)| u - v));
    out
}

/// tr(a b).
pub fn trace_pair<C: Coeff>(a: &[C], b: &[C], n: usize) -> C {
    sum((0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| mul(&a[i * n + j], &b[j * n + i])))
}

/// The 𝔨 ≃ R³ identification, (row j, column i) = η^{jj} ε_{ijl} ξ^l.
pub fn vector_iso<C: Coeff>(xi: &[C], sig: &Signature) -> Vec<C> {
    let eps = levi_civita(3);
    let mut out = Vec::with_capacity(9);
    for j in 0..3 {
        for i in 0..3 {
            out.push(sum((0..3).filter_map(|l| {
                let s = sig.eta(j) * eps.get3(i, j, l);
                (s != 0.0).then(|| xi[l].scale(s))
            })));
        }
    }
    out
}

/// ⟨(a, ξ), (b, ζ)⟩ = tr(a ι(ζ)) + tr(b ι(ξ)).
pub fn affine_pair<C: Coeff>(x: &[C], y: &[C], sig: &Signature) -> C {
    let left = trace_pair(&x[..9], &vector_iso(&y[9..12], sig), 3);
    let right = trace_pair(&y[..9], &vector_iso(&x[9..12], sig), 3);
    left + right
}

pub fn determinant<C: Coeff>(a: &[C], n: usize) -> C {
    match n {
        0 => C::one(),
        1 => a[0].clone(),
        2 => mul(&a[0], &a[3]) - mul(&a[1], &a[2]),
        _ => sum((0..n).map(|j| {
            let c = mul(&a[j], &cofactor(a, n, 0, j));
            c
        })),
    }
}

/// (−1)^{i+j} times the minor with row i and column j removed.
pub fn cofactor<C: Coeff>(a: &[C], n: usize, i: usize, j: usize) -> C {
    let mut minor = Vec::with_capacity((n - 1) * (n - 1));
    for r in (0..n).filter(|&r| r != i) {
        for c in (0..n).filter(|&c| c != j) {
            minor.push(a[r * n + c].clone());
        }
    }
    let d = determinant(&minor, n - 1);
    if (i + j) % 2 == 0 {
        d
    } else {
        -d
    }
}

/// Inverse via the adjugate; returns (inverse, determinant).
pub fn inverse<C: Coeff>(a: &[C], n: usize) -> (Vec<C>, C) {
    let det = determinant(a, n);
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            out.push(cofactor(a, n, j, i) / det.clone());
        }
    }
    (out, det)
}

pub fn transpose<C: Coeff>(a: &[C], n: usize) -> Vec<C> {
    (0..n * n).map(|k| a[(k % n) * n + k / n].clone()).collect()
}

/// Ad_{(a,ξ)}(b, ζ) = (a b a⁻¹, a ζ − (a b a⁻¹) ξ), with a⁻¹ supplied.
pub fn ad_aff<C: Coeff>(a: &[C], a_inv: &[C], xi: &[C], x: &[C], n: usize) -> Vec<C> {
    let nn = n * n;
    let ad_b = mat_mul(&mat_mul(a, &x[..nn], n), a_inv, n);
    let az = mat_vec(a, &x[nn..], n);
    let bxi = mat_vec(&ad_b, xi, n);
    let mut out = ad_b;
    out.extend(az.into_iter().zip(bxi).map(|(u, v)| u - v));
    out
}

/// Ad_a b = a b a⁻¹ on 𝔤𝔩(n).
pub fn ad_gl<C: Coeff>(a: &[C], a_inv: &[C], b: &[C], n: usize) -> Vec<C> {
    mat_mul(&mat_mul(a, b, n), a_inv, n)
}
