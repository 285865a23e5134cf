//! Connection forms on the principal bundle built from local data.

use nalgebra::{DMatrix, DVector};

use super::local_data::CartanLocalData;
use crate::error::Result;
use crate::lie::{adjoint_aff, aff_inverse, AffAlgElement, AffElement, GlElement};

/// ω̃ at the fiber point (e, v) over x, as a linear map of (δx, δe, δv).
#[derive(Debug, Clone)]
pub struct ConnectionFormAt {
    gamma: Vec<DMatrix<f64>>,
    sigma: Vec<DVector<f64>>,
    point: AffElement,
    point_inv: AffElement,
}

/// ω̃ = Ad_{(e,v)⁻¹}(Γ_β dx^β, σ_β dx^β) + (e⁻¹ de, e⁻¹ dv): matrix part
/// e^j_α(de^α_i + e^γ_i Γ^α_{γβ} dx^β), vector part e^i_α(dv^α + (Γ^α_{γβ} v^γ + σ^α_β) dx^β).
pub fn connection_form_at(a: &CartanLocalData, x: &[f64], e: &DMatrix<f64>, v: &DVector<f64>) -> Result<ConnectionFormAt> {
    let point = AffElement::new(GlElement(e.clone()), v.clone())?;
    let point_inv = aff_inverse(&point)?;
    Ok(ConnectionFormAt { gamma: a.gamma_at(x), sigma: a.sigma_at(x), point, point_inv })
}

impl ConnectionFormAt {
    pub fn apply(&self, dx: &DVector<f64>, de: &DMatrix<f64>, dv: &DVector<f64>) -> AffAlgElement {
        let m = dx.len();
        let mut base = AffAlgElement::zero(m);
        for b in 0..m {
            base.b.0 += &self.gamma[b] * dx[b];
            base.zeta += &self.sigma[b] * dx[b];
        }
        let e = &self.point.a.0;
        let v = &self.point.xi;
        let einv = &self.point_inv.a.0;
        let horiz_b = de + &base.b.0 * e;
        let horiz_v = dv + &base.b.0 * v + &base.zeta;
        AffAlgElement { b: GlElement(einv * horiz_b), zeta: einv * horiz_v }
    }

    /// The same value through the adjoint action, used as an independent evaluation.
    pub fn apply_via_adjoint(&self, dx: &DVector<f64>, de: &DMatrix<f64>, dv: &DVector<f64>) -> Result<AffAlgElement> {
        let m = dx.len();
        let mut base = AffAlgElement::zero(m);
        for b in 0..m {
            base.b.0 += &self.gamma[b] * dx[b];
            base.zeta += &self.sigma[b] * dx[b];
        }
        let ad = adjoint_aff(&self.point_inv, &base)?;
        let einv = &self.point_inv.a.0;
        Ok(ad.add(&AffAlgElement { b: GlElement(einv * de), zeta: einv * dv }))
    }
}

/// Ã|_{[u,g]}(X, ζ) = ζ + Ad_{g⁻¹} A(X) for a connection A at u given on a tangent basis.
#[derive(Debug, Clone)]
pub struct PrincipalExtension {
    images: Vec<AffAlgElement>,
    g_inv: AffElement,
}

pub fn extend_to_principal(a_on_basis: Vec<AffAlgElement>, g: &AffElement) -> Result<PrincipalExtension> {
    Ok(PrincipalExtension { images: a_on_basis, g_inv: aff_inverse(g)? })
}

impl PrincipalExtension {
    /// Evaluates on (X, ζ) with X in the basis coordinates and ζ the left-trivialized vertical part.
    pub fn apply(&self, x: &[f64], zeta: &AffAlgElement) -> Result<AffAlgElement> {
        let m = zeta.dim();
        let mut ax = AffAlgElement::zero(m);
        for (c, img) in x.iter().zip(&self.images) {
            ax = ax.add(&img.scale(*c));
        }
        Ok(zeta.add(&adjoint_aff(&self.g_inv, &ax)?))
    }
}

/// An affine frame: linear part u·h and origin u(v).
#[derive(Debug, Clone, PartialEq)]
pub struct AffineFrame {
    pub linear: DMatrix<f64>,
    pub translation: DVector<f64>,
}

/// a(w) = (u∘h)(w) + u(v).
pub fn affine_frame_compose(u: &DMatrix<f64>, h: &GlElement, v: &DVector<f64>) -> Result<AffineFrame> {
    GlElement::group(u.clone())?;
    GlElement::group(h.0.clone())?;
    Ok(AffineFrame { linear: u * &h.0, translation: u * v })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::samples::random_metric_configuration;
    use crate::forms::ChartBox;
    use crate::lie::Signature;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rand_mat<R: Rng>(rng: &mut R, m: usize, s: f64) -> DMatrix<f64> {
        DMatrix::from_fn(m, m, |_, _| rng.gen_range(-s..s))
    }

    fn rand_vec<R: Rng>(rng: &mut R, m: usize, s: f64) -> DVector<f64> {
        DVector::from_fn(m, |_, _| rng.gen_range(-s..s))
    }

    #[test]
    fn flat_data_reproduces_fiber_terms() {
        let a = CartanLocalData::flat(ChartBox::unit(3));
        let w = connection_form_at(&a, &[0.5; 3], &DMatrix::identity(3, 3), &DVector::zeros(3)).unwrap();
        let de = DMatrix::from_fn(3, 3, |i, j| (i + 2 * j) as f64);
        let dv = DVector::from_vec(vec![1.0, -2.0, 0.5]);
        let out = w.apply(&DVector::from_vec(vec![0.3, 0.1, 0.0]), &de, &dv);
        assert_eq!(out.b.0, de);
        assert_eq!(out.zeta, dv);
    }

    #[test]
    fn matches_adjoint_evaluation_and_is_equivariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let chart = ChartBox::unit(3);
        let cfg = random_metric_configuration(&mut rng, &chart, &Signature::default(), 2, 0.4).unwrap();
        let x = [0.2, 0.5, 0.8];
        let e = DMatrix::identity(3, 3) + rand_mat(&mut rng, 3, 0.3);
        let v = rand_vec(&mut rng, 3, 1.0);
        let (dx, de, dv) = (rand_vec(&mut rng, 3, 1.0), rand_mat(&mut rng, 3, 1.0), rand_vec(&mut rng, 3, 1.0));
        let w = connection_form_at(&cfg.data, &x, &e, &v).unwrap();
        let direct = w.apply(&dx, &de, &dv);
        assert!(direct.sub(&w.apply_via_adjoint(&dx, &de, &dv).unwrap()).max_abs() < 1e-12);

        let h = GlElement(DMatrix::identity(3, 3) + rand_mat(&mut rng, 3, 0.3));
        let g = AffElement::new(h.clone(), rand_vec(&mut rng, 3, 1.0)).unwrap();
        let w2 = connection_form_at(&cfg.data, &x, &(&e * &h.0), &(&e * &g.xi + &v)).unwrap();
        let moved = w2.apply(&dx, &(&de * &h.0), &(&de * &g.xi + &dv));
        let expected = adjoint_aff(&aff_inverse(&g).unwrap(), &direct).unwrap();
        assert!(moved.sub(&expected).max_abs() < 1e-12);
    }

    #[test]
    fn principal_extension_basics() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let imgs: Vec<AffAlgElement> = (0..3)
            .map(|_| AffAlgElement { b: GlElement(rand_mat(&mut rng, 3, 1.0)), zeta: rand_vec(&mut rng, 3, 1.0) })
            .collect();
        let id = extend_to_principal(imgs.clone(), &AffElement::identity(3)).unwrap();
        let out = id.apply(&[0.0, 1.0, 0.0], &AffAlgElement::zero(3)).unwrap();
        assert!(out.sub(&imgs[1]).max_abs() < 1e-15);
        let g = AffElement::new(GlElement(DMatrix::identity(3, 3) + rand_mat(&mut rng, 3, 0.3)), rand_vec(&mut rng, 3, 1.0)).unwrap();
        let zeta = AffAlgElement { b: GlElement(rand_mat(&mut rng, 3, 1.0)), zeta: rand_vec(&mut rng, 3, 1.0) };
        let ext = extend_to_principal(imgs, &g).unwrap();
        assert!(ext.apply(&[0.0; 3], &zeta).unwrap().sub(&zeta).max_abs() < 1e-15);
    }

    #[test]
    fn affine_frames_respect_quotient() {
        let u = DMatrix::from_row_slice(3, 3, &[1.0, 0.2, 0.0, 0.0, 1.5, 0.1, 0.3, 0.0, 0.8]);
        let h = GlElement(DMatrix::from_row_slice(3, 3, &[0.9, 0.0, 0.1, 0.2, 1.1, 0.0, 0.0, -0.3, 1.0]));
        let v = DVector::from_vec(vec![0.5, -1.0, 2.0]);
        let k = crate::lie::boost(3, 2, 0.4).0;
        let kinv = k.clone().try_inverse().unwrap();
        let a = affine_frame_compose(&u, &h, &v).unwrap();
        let b = affine_frame_compose(&(&u * &k), &GlElement(&kinv * &h.0), &(&kinv * &v)).unwrap();
        assert!((a.linear - b.linear).amax() < 1e-12);
        assert!((a.translation - b.translation).amax() < 1e-12);
        let plain = affine_frame_compose(&u, &GlElement::identity(3), &DVector::zeros(3)).unwrap();
        assert_eq!(plain.linear, u);
    }
}
