//! GL(m), A(m) = GL(m) ⋉ R^m and their Lie algebras.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Relative determinant threshold below which a matrix is treated as singular.
const SINGULAR_RELATIVE: f64 = 1e-13;

/// An m×m real matrix, used both for GL(m) elements and for 𝔤𝔩(m) elements.
///
/// Matrix entry (row i, column j) holds the component a^i_j.
#[derive(Debug, Clone, PartialEq)]
pub struct GlElement(pub DMatrix<f64>);

impl GlElement {
    pub fn new(a: DMatrix<f64>) -> Self {
        assert!(a.is_square(), "GlElement must be square");
        GlElement(a)
    }

    /// Validates invertibility, for use as a group element.
    pub fn group(a: DMatrix<f64>) -> Result<Self> {
        check_invertible(&a)?;
        Ok(GlElement(a))
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let m = rows.len();
        GlElement(DMatrix::from_fn(m, m, |i, j| rows[i][j]))
    }

    pub fn identity(m: usize) -> Self {
        GlElement(DMatrix::identity(m, m))
    }

    pub fn zeros(m: usize) -> Self {
        GlElement(DMatrix::zeros(m, m))
    }

    /// The basis element E^a_b, whose only nonzero entry sits at (row b, column a).
    pub fn basis(m: usize, a: usize, b: usize) -> Self {
        let mut out = DMatrix::zeros(m, m);
        out[(b, a)] = 1.0;
        GlElement(out)
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn det(&self) -> f64 {
        self.0.determinant()
    }

    pub fn inverse(&self) -> Result<GlElement> {
        check_invertible(&self.0)?;
        self.0
            .clone()
            .try_inverse()
            .map(GlElement)
            .ok_or(Error::SingularElement { det: self.det() })
    }

    pub fn mul(&self, other: &GlElement) -> GlElement {
        GlElement(&self.0 * &other.0)
    }

    pub fn commutator(&self, other: &GlElement) -> GlElement {
        GlElement(&self.0 * &other.0 - &other.0 * &self.0)
    }

    pub fn add(&self, other: &GlElement) -> GlElement {
        GlElement(&self.0 + &other.0)
    }

    pub fn sub(&self, other: &GlElement) -> GlElement {
        GlElement(&self.0 - &other.0)
    }

    pub fn scale(&self, s: f64) -> GlElement {
        GlElement(&self.0 * s)
    }

    pub fn transpose(&self) -> GlElement {
        GlElement(self.0.transpose())
    }

    pub fn trace(&self) -> f64 {
        self.0.trace()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.amax()
    }

    /// Row-major entries.
    pub fn to_row_major(&self) -> Vec<f64> {
        let m = self.dim();
        (0..m * m).map(|k| self.0[(k / m, k % m)]).collect()
    }

    pub fn from_row_major(m: usize, entries: &[f64]) -> Self {
        GlElement(DMatrix::from_fn(m, m, |i, j| entries[i * m + j]))
    }
}

fn check_invertible(a: &DMatrix<f64>) -> Result<()> {
    if a.iter().any(|x| !x.is_finite()) {
        return Err(Error::SingularElement { det: f64::NAN });
    }
    let det = a.determinant();
    let scale = a.amax().max(f64::MIN_POSITIVE).powi(a.nrows() as i32);
    if det == 0.0 || det.abs() <= SINGULAR_RELATIVE * scale {
        return Err(Error::SingularElement { det });
    }
    Ok(())
}

/// Ad_a b = a b a⁻¹ on 𝔤𝔩(m).
pub fn adjoint_gl(a: &GlElement, b: &GlElement) -> Result<GlElement> {
    let inv = a.inverse()?;
    Ok(a.mul(b).mul(&inv))
}

/// An element (a, ξ) of A(m), acting on R^m by x ↦ a x + ξ.
#[derive(Debug, Clone, PartialEq)]
pub struct AffElement {
    pub a: GlElement,
    pub xi: DVector<f64>,
}

impl AffElement {
    pub fn new(a: GlElement, xi: DVector<f64>) -> Result<Self> {
        if xi.len() != a.dim() {
            return Err(Error::DimensionMismatch { expected: a.dim(), found: xi.len() });
        }
        check_invertible(&a.0)?;
        Ok(AffElement { a, xi })
    }

    pub fn identity(m: usize) -> Self {
        AffElement { a: GlElement::identity(m), xi: DVector::zeros(m) }
    }

    pub fn translation(w: DVector<f64>) -> Self {
        AffElement { a: GlElement::identity(w.len()), xi: w }
    }

    pub fn linear(a: GlElement) -> Result<Self> {
        let m = a.dim();
        AffElement::new(a, DVector::zeros(m))
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    /// (a, ξ)(a', ξ') = (a a', a ξ' + ξ).
    pub fn compose(&self, other: &AffElement) -> AffElement {
        AffElement { a: self.a.mul(&other.a), xi: &self.a.0 * &other.xi + &self.xi }
    }

    /// The (m+1)×(m+1) matrix [[a, ξ], [0, 1]].
    pub fn block_matrix(&self) -> DMatrix<f64> {
        let m = self.dim();
        let mut out = DMatrix::zeros(m + 1, m + 1);
        out.view_mut((0, 0), (m, m)).copy_from(&self.a.0);
        out.view_mut((0, m), (m, 1)).copy_from(&self.xi);
        out[(m, m)] = 1.0;
        out
    }

    pub fn from_block_matrix(block: &DMatrix<f64>) -> Result<Self> {
        let m = block.nrows() - 1;
        let a = GlElement(block.view((0, 0), (m, m)).into_owned());
        let xi = block.view((0, m), (m, 1)).column(0).into_owned();
        AffElement::new(a, xi)
    }

    pub fn distance(&self, other: &AffElement) -> f64 {
        (&self.a.0 - &other.a.0).amax().max((&self.xi - &other.xi).amax())
    }
}

/// (a, ξ)⁻¹ = (a⁻¹, −a⁻¹ ξ).
pub fn aff_inverse(g: &AffElement) -> Result<AffElement> {
    let inv = g.a.inverse()?;
    let xi = -(&inv.0 * &g.xi);
    Ok(AffElement { a: inv, xi })
}

/// An element (b, ζ) of 𝔞(m) = 𝔤𝔩(m) ⊕ R^m.
#[derive(Debug, Clone, PartialEq)]
pub struct AffAlgElement {
    pub b: GlElement,
    pub zeta: DVector<f64>,
}

impl AffAlgElement {
    pub fn new(b: GlElement, zeta: DVector<f64>) -> Result<Self> {
        if zeta.len() != b.dim() {
            return Err(Error::DimensionMismatch { expected: b.dim(), found: zeta.len() });
        }
        Ok(AffAlgElement { b, zeta })
    }

    pub fn zero(m: usize) -> Self {
        AffAlgElement { b: GlElement::zeros(m), zeta: DVector::zeros(m) }
    }

    pub fn dim(&self) -> usize {
        self.b.dim()
    }

    /// [(b, ζ), (b', ζ')] = ([b, b'], b ζ' − b' ζ).
    pub fn bracket(&self, other: &AffAlgElement) -> AffAlgElement {
        AffAlgElement {
            b: self.b.commutator(&other.b),
            zeta: &self.b.0 * &other.zeta - &other.b.0 * &self.zeta,
        }
    }

    pub fn add(&self, other: &AffAlgElement) -> AffAlgElement {
        AffAlgElement { b: self.b.add(&other.b), zeta: &self.zeta + &other.zeta }
    }

    pub fn sub(&self, other: &AffAlgElement) -> AffAlgElement {
        AffAlgElement { b: self.b.sub(&other.b), zeta: &self.zeta - &other.zeta }
    }

    pub fn scale(&self, s: f64) -> AffAlgElement {
        AffAlgElement { b: self.b.scale(s), zeta: &self.zeta * s }
    }

    /// The (m+1)×(m+1) matrix [[b, ζ], [0, 0]].
    pub fn block_matrix(&self) -> DMatrix<f64> {
        let m = self.dim();
        let mut out = DMatrix::zeros(m + 1, m + 1);
        out.view_mut((0, 0), (m, m)).copy_from(&self.b.0);
        out.view_mut((0, m), (m, 1)).copy_from(&self.zeta);
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.b.max_abs().max(self.zeta.amax())
    }

    /// Row-major gl entries followed by the vector entries.
    pub fn to_components(&self) -> Vec<f64> {
        let mut out = self.b.to_row_major();
        out.extend(self.zeta.iter());
        out
    }

    pub fn from_components(m: usize, comps: &[f64]) -> Self {
        AffAlgElement {
            b: GlElement::from_row_major(m, &comps[..m * m]),
            zeta: DVector::from_column_slice(&comps[m * m..m * m + m]),
        }
    }
}

/// Ad_{(a,ξ)}(b, ζ) = (a b a⁻¹, a ζ − (a b a⁻¹) ξ).
pub fn adjoint_aff(g: &AffElement, x: &AffAlgElement) -> Result<AffAlgElement> {
    let ad_b = adjoint_gl(&g.a, &x.b)?;
    let zeta = &g.a.0 * &x.zeta - &ad_b.0 * &g.xi;
    Ok(AffAlgElement { b: ad_b, zeta })
}
