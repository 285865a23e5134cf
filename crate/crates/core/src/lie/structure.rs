//! Lorentz splitting 𝔤𝔩(m) = 𝔨 ⊕ 𝔭, the 𝔨 ≃ R³ identification and the invariant pairings.

use nalgebra::{DMatrix, DVector};

use super::group::{AffAlgElement, GlElement};
use super::levi_civita::levi_civita;
use super::signature::Signature;
use crate::error::{Error, Result};

pub const LORENTZ_TOLERANCE: f64 = 1e-10;

/// Splits b into (k_part, p_part) with k_part = (b − η bᵀ η)/2 and p_part = (b + η bᵀ η)/2.
pub fn split_gl(b: &GlElement, sig: &Signature) -> Result<(GlElement, GlElement)> {
    sig.require_dim(b.dim())?;
    let eta = sig.matrix();
    let reflected = &eta * b.0.transpose() * &eta;
    Ok((GlElement((&b.0 - &reflected) * 0.5), GlElement((&b.0 + &reflected) * 0.5)))
}

/// a η + η aᵀ, which vanishes exactly on 𝔨.
pub fn k_defect(a: &GlElement, sig: &Signature) -> DMatrix<f64> {
    let eta = sig.matrix();
    &a.0 * &eta + &eta * a.0.transpose()
}

/// a η − η aᵀ, which vanishes exactly on 𝔭.
pub fn p_defect(a: &GlElement, sig: &Signature) -> DMatrix<f64> {
    let eta = sig.matrix();
    &a.0 * &eta - &eta * a.0.transpose()
}

/// ⟨a, b⟩ = tr(a b).
pub fn gl_pairing(a: &GlElement, b: &GlElement) -> f64 {
    a.0.component_mul(&b.0.transpose()).sum()
}

/// The isomorphism R³ → 𝔨 with components a^j_i = η^{jk} ε_{ikl} ξ^l.
pub fn so21_vector_iso(xi: &DVector<f64>, sig: &Signature) -> Result<GlElement> {
    if sig.dim() != 3 {
        return Err(Error::UnsupportedDimension { found: sig.dim(), supported: "3" });
    }
    if xi.len() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, found: xi.len() });
    }
    let eps = levi_civita(3);
    Ok(GlElement(DMatrix::from_fn(3, 3, |j, i| {
        (0..3).map(|l| sig.eta(j) * eps.get3(i, j, l) * xi[l]).sum()
    })))
}

/// ⟨(a, ξ), (b, ζ)⟩ = ⟨a, ι(ζ)⟩ + ⟨b, ι(ξ)⟩ with ι = so21_vector_iso.
pub fn aff_pairing(x: &AffAlgElement, y: &AffAlgElement, sig: &Signature) -> Result<f64> {
    if x.dim() != 3 || y.dim() != 3 {
        return Err(Error::UnsupportedDimension { found: x.dim().max(y.dim()), supported: "3" });
    }
    Ok(gl_pairing(&x.b, &so21_vector_iso(&y.zeta, sig)?)
        + gl_pairing(&y.b, &so21_vector_iso(&x.zeta, sig)?))
}

/// Keeps the 𝔭-part of the matrix component and drops the vector.
pub fn project_p(x: &AffAlgElement, sig: &Signature) -> Result<AffAlgElement> {
    let (_, p) = split_gl(&x.b, sig)?;
    Ok(AffAlgElement { b: p, zeta: DVector::zeros(x.dim()) })
}

/// Keeps the 𝔨-part of the matrix component together with the full vector.
pub fn project_k_r3(x: &AffAlgElement, sig: &Signature) -> Result<AffAlgElement> {
    let (k, _) = split_gl(&x.b, sig)?;
    Ok(AffAlgElement { b: k, zeta: x.zeta.clone() })
}

/// True iff ‖A η Aᵀ − η‖_max ≤ tol.
pub fn is_lorentz_with(a: &GlElement, sig: &Signature, tol: f64) -> bool {
    if sig.dim() != a.dim() {
        return false;
    }
    let eta = sig.matrix();
    (&a.0 * &eta * a.0.transpose() - &eta).amax() <= tol
}

pub fn is_lorentz(a: &GlElement, sig: &Signature) -> bool {
    is_lorentz_with(a, sig, LORENTZ_TOLERANCE)
}

/// A basis of 𝔨 indexed by pairs i < j: E_{ij} η_j − E_{ji} η_i in matrix units.
pub fn lorentz_basis(sig: &Signature) -> Vec<GlElement> {
    let m = sig.dim();
    let mut out = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let mut b = DMatrix::zeros(m, m);
            b[(i, j)] = sig.eta(j);
            b[(j, i)] = -sig.eta(i);
            out.push(GlElement(b));
        }
    }
    out
}

/// Boost of rapidity t in the (0, axis) plane.
pub fn boost(m: usize, axis: usize, t: f64) -> GlElement {
    let mut b = DMatrix::identity(m, m);
    b[(0, 0)] = t.cosh();
    b[(axis, axis)] = t.cosh();
    b[(0, axis)] = t.sinh();
    b[(axis, 0)] = t.sinh();
    GlElement(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Signature {
        Signature::default()
    }

    fn sample_b() -> GlElement {
        GlElement::from_rows(&[vec![0.3, -1.2, 0.5], vec![2.0, 0.1, -0.7], vec![0.4, 0.9, -0.2]])
    }

    #[test]
    fn split_relations() {
        let (k, p) = split_gl(&sample_b(), &sig()).unwrap();
        assert!(k_defect(&k, &sig()).amax() < 1e-14);
        assert!(p_defect(&p, &sig()).amax() < 1e-14);
        assert!((k.add(&p).0 - sample_b().0).amax() < 1e-15);
        let (k0, p0) = split_gl(&GlElement::identity(3), &sig()).unwrap();
        assert_eq!(k0.max_abs(), 0.0);
        assert_eq!(p0, GlElement::identity(3));
    }

    #[test]
    fn trace_pairing_values() {
        assert_eq!(gl_pairing(&GlElement::identity(3), &GlElement::identity(3)), 3.0);
        assert_eq!(gl_pairing(&GlElement::basis(3, 1, 2), &GlElement::basis(3, 2, 1)), 1.0);
    }

    #[test]
    fn vector_iso_on_e3() {
        let xi = DVector::from_vec(vec![0.0, 0.0, 1.0]);
        let a = so21_vector_iso(&xi, &sig()).unwrap();
        let eps = levi_civita(3);
        for j in 0..3 {
            for i in 0..3 {
                assert_eq!(a.0[(j, i)], sig().eta(j) * eps.get3(i, j, 2));
            }
        }
        assert!(k_defect(&a, &sig()).amax() < 1e-15);
        assert!(so21_vector_iso(&DVector::zeros(4), &Signature::lorentzian(4)).is_err());
    }

    #[test]
    fn iso_gram_matrix_nondegenerate() {
        let basis: Vec<GlElement> = (0..3)
            .map(|l| {
                let mut v = DVector::zeros(3);
                v[l] = 1.0;
                so21_vector_iso(&v, &sig()).unwrap()
            })
            .collect();
        let gram = DMatrix::from_fn(3, 3, |a, b| gl_pairing(&basis[a], &basis[b]));
        assert_eq!(gram.rank(1e-12), 3);
    }

    #[test]
    fn aff_pairing_orthogonality() {
        let z = DVector::zeros(3);
        let x = AffAlgElement::new(sample_b(), z.clone()).unwrap();
        let y = AffAlgElement::new(sample_b().transpose(), z).unwrap();
        assert_eq!(aff_pairing(&x, &y, &sig()).unwrap(), 0.0);
        let u = AffAlgElement::new(GlElement::zeros(3), DVector::from_vec(vec![1.0, 2.0, 3.0]))
            .unwrap();
        let w = AffAlgElement::new(GlElement::zeros(3), DVector::from_vec(vec![-1.0, 0.5, 2.0]))
            .unwrap();
        assert_eq!(aff_pairing(&u, &w, &sig()).unwrap(), 0.0);
    }

    #[test]
    fn projections_resolve_identity() {
        let x = AffAlgElement::new(sample_b(), DVector::from_vec(vec![1.0, -1.0, 2.0])).unwrap();
        let p = project_p(&x, &sig()).unwrap();
        let k = project_k_r3(&x, &sig()).unwrap();
        assert!(p.add(&k).sub(&x).max_abs() < 1e-14);
        let v = AffAlgElement::new(GlElement::zeros(3), x.zeta.clone()).unwrap();
        assert_eq!(project_p(&v, &sig()).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn lorentz_examples() {
        assert!(is_lorentz(&GlElement::identity(3), &sig()));
        let d = GlElement::from_rows(&[vec![2.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]]);
        assert!(!is_lorentz(&d, &sig()));
        assert!(is_lorentz(&boost(3, 1, 0.7), &sig()));
        for k in lorentz_basis(&sig()) {
            assert!(k_defect(&k, &sig()).amax() == 0.0);
        }
    }
}
