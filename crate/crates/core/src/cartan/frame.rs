//! Frames, spin connections and metrics on a chart.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::algebra;
use crate::forms::field::Evaluator;
use crate::forms::{ChartBox, Field, Polynomial, ValueSpace, ValuedForm};
use crate::lie::Signature;

/// Frames whose condition number exceeds this are rejected.
pub const MAX_FRAME_CONDITION: f64 = 1e8;
/// Sample points used to validate fields on construction.
pub const VALIDATION_SAMPLES: usize = 50;
pub const VALIDATION_SEED: u64 = 0x5eed;

/// Flat index of a three-index array of side m.
#[inline]
pub fn idx3(m: usize, a: usize, b: usize, c: usize) -> usize {
    (a * m + b) * m + c
}

pub(crate) fn validation_points(chart: &ChartBox) -> Vec<Vec<f64>> {
    let mut pts = chart.sample_points(VALIDATION_SAMPLES, VALIDATION_SEED);
    pts.push(chart.center());
    pts
}

pub(crate) fn polys_to_fields(chart: &ChartBox, p: Vec<Polynomial>) -> Result<Vec<Field>> {
    p.into_iter()
        .map(|q| {
            q.check_nvars(chart.dim())?;
            Ok(Field::poly(q))
        })
        .collect()
}

pub(crate) fn fields_to_polys(dim: usize, f: &[Field], what: &str) -> Result<Vec<Polynomial>> {
    f.iter()
        .map(|x| x.to_polynomial(dim).ok_or_else(|| Error::NotPolynomial(what.into())))
        .collect()
}

pub(crate) fn values(f: &[Field], x: &[f64]) -> Vec<f64> {
    let mut ev = Evaluator::new(x, 0);
    f.iter().map(|c| ev.eval(c).value()).collect()
}

/// A local frame e_i = e^μ_i ∂_μ; entry (row μ, column i) holds e^μ_i.
#[derive(Debug, Clone)]
pub struct FrameField {
    chart: ChartBox,
    e: Vec<Field>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FrameRepr {
    chart: ChartBox,
    e: Vec<Polynomial>,
}

impl FrameField {
    /// Validates invertibility and conditioning at the chart's sample points.
    pub fn new(chart: ChartBox, e: Vec<Field>) -> Result<Self> {
        chart.validate()?;
        let m = chart.dim();
        if e.len() != m * m {
            return Err(Error::DimensionMismatch { expected: m * m, found: e.len() });
        }
        let f = FrameField { chart, e };
        for p in validation_points(&f.chart) {
            f.check_at(&p)?;
        }
        Ok(f)
    }

    pub fn from_polynomials(chart: ChartBox, e: Vec<Polynomial>) -> Result<Self> {
        let fields = polys_to_fields(&chart, e)?;
        FrameField::new(chart, fields)
    }

    pub fn identity(chart: ChartBox) -> Self {
        let m = chart.dim();
        let e = (0..m * m).map(|k| Field::constant(if k % (m + 1) == 0 { 1.0 } else { 0.0 })).collect();
        FrameField { chart, e }
    }

    pub fn scaled(&self, c: f64) -> Result<Self> {
        FrameField::new(self.chart.clone(), self.e.iter().map(|f| f.scale(c)).collect())
    }

    fn check_at(&self, x: &[f64]) -> Result<()> {
        let m = self.dim();
        let v = values(&self.e, x);
        let mat = DMatrix::from_row_slice(m, m, &v);
        let sv = mat.singular_values();
        let (hi, lo) = (sv.max(), sv.min());
        if !(lo > 0.0) || hi / lo > MAX_FRAME_CONDITION || !hi.is_finite() {
            return Err(Error::DegenerateFrame {
                point: x.to_vec(),
                reason: format!("condition number {:e}", hi / lo),
            });
        }
        Ok(())
    }

    pub fn chart(&self) -> &ChartBox {
        &self.chart
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    /// e^μ_i, row-major in (μ, i).
    pub fn entries(&self) -> &[Field] {
        &self.e
    }

    /// The coframe e^i_μ, row-major in (i, μ).
    pub fn coframe(&self) -> Vec<Field> {
        algebra::inverse(&self.e, self.dim()).0
    }

    pub fn matrix_at(&self, x: &[f64]) -> DMatrix<f64> {
        let m = self.dim();
        DMatrix::from_row_slice(m, m, &values(&self.e, x))
    }

    /// g^{μν} = η^{ij} e^μ_i e^ν_j.
    pub fn inverse_metric(&self, sig: &Signature) -> Vec<Field> {
        frame_inverse_metric(&self.e, self.dim(), sig)
    }

    /// φ = e^i_μ dx^μ ⊗ e_i.
    pub fn solder_form(&self) -> ValuedForm<Field> {
        solder_from_coframe(&self.coframe(), self.dim())
    }

    pub fn to_polynomials(&self) -> Result<Vec<Polynomial>> {
        fields_to_polys(self.dim(), &self.e, "frame")
    }
}

pub fn frame_inverse_metric<C: crate::forms::Coeff>(e: &[C], m: usize, sig: &Signature) -> Vec<C> {
    let mut g = Vec::with_capacity(m * m);
    for mu in 0..m {
        for nu in 0..m {
            g.push(crate::forms::coeff::sum(
                (0..m).map(|i| crate::forms::coeff::mul(&e[mu * m + i], &e[nu * m + i]).scale(sig.eta(i))),
            ));
        }
    }
    g
}

pub fn solder_from_coframe<C: crate::forms::Coeff>(einv: &[C], m: usize) -> ValuedForm<C> {
    ValuedForm::one_form(
        m,
        ValueSpace::Vector(m),
        (0..m).map(|mu| (0..m).map(|i| einv[i * m + mu].clone()).collect()).collect(),
    )
}

impl Serialize for FrameField {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let e = self.to_polynomials().map_err(serde::ser::Error::custom)?;
        FrameRepr { chart: self.chart.clone(), e }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FrameField {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = FrameRepr::deserialize(d)?;
        FrameField::from_polynomials(r.chart, r.e).map_err(serde::de::Error::custom)
    }
}

/// Spin connection ω^i_j = ω^i_{jσ} dx^σ; `omega` is indexed [i][j][σ].
#[derive(Debug, Clone)]
pub struct SpinConnectionField {
    chart: ChartBox,
    omega: Vec<Field>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpinRepr {
    chart: ChartBox,
    omega: Vec<Polynomial>,
}

impl SpinConnectionField {
    pub fn new(chart: ChartBox, omega: Vec<Field>) -> Result<Self> {
        chart.validate()?;
        let m = chart.dim();
        if omega.len() != m * m * m {
            return Err(Error::DimensionMismatch { expected: m * m * m, found: omega.len() });
        }
        Ok(SpinConnectionField { chart, omega })
    }

    pub fn from_polynomials(chart: ChartBox, omega: Vec<Polynomial>) -> Result<Self> {
        let f = polys_to_fields(&chart, omega)?;
        SpinConnectionField::new(chart, f)
    }

    pub fn zero(chart: ChartBox) -> Self {
        let m = chart.dim();
        SpinConnectionField { chart, omega: vec![Field::zero(); m * m * m] }
    }

    pub fn chart(&self) -> &ChartBox {
        &self.chart
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn entries(&self) -> &[Field] {
        &self.omega
    }

    /// The 𝔤𝔩(m)-valued 1-form with (row i, column j) of the dx^σ block equal to ω^i_{jσ}.
    pub fn as_form(&self) -> ValuedForm<Field> {
        let m = self.dim();
        ValuedForm::one_form(
            m,
            ValueSpace::Gl(m),
            (0..m)
                .map(|s| {
                    (0..m * m).map(|k| self.omega[idx3(m, k / m, k % m, s)].clone()).collect()
                })
                .collect(),
        )
    }

    pub fn to_polynomials(&self) -> Result<Vec<Polynomial>> {
        fields_to_polys(self.dim(), &self.omega, "spin connection")
    }
}

impl Serialize for SpinConnectionField {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let omega = self.to_polynomials().map_err(serde::ser::Error::custom)?;
        SpinRepr { chart: self.chart.clone(), omega }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SpinConnectionField {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = SpinRepr::deserialize(d)?;
        SpinConnectionField::from_polynomials(r.chart, r.omega).map_err(serde::de::Error::custom)
    }
}

/// A metric ζ with covariant components g_{μν}.
#[derive(Debug, Clone)]
pub struct MetricField {
    chart: ChartBox,
    g: Vec<Field>,
}

impl MetricField {
    pub fn new(chart: ChartBox, g: Vec<Field>) -> Result<Self> {
        chart.validate()?;
        let m = chart.dim();
        if g.len() != m * m {
            return Err(Error::DimensionMismatch { expected: m * m, found: g.len() });
        }
        Ok(MetricField { chart, g })
    }

    /// g_{μν} = η_{ij} e^i_μ e^j_ν for the coframe of a frame.
    pub fn from_frame(frame: &FrameField, sig: &Signature) -> Self {
        let m = frame.dim();
        let einv = frame.coframe();
        let et = algebra::transpose(&einv, m);
        let g = frame_inverse_metric(&et, m, sig);
        MetricField { chart: frame.chart().clone(), g }
    }

    pub fn chart(&self) -> &ChartBox {
        &self.chart
    }

    pub fn entries(&self) -> &[Field] {
        &self.g
    }

    /// An η-orthonormal frame by Gram–Schmidt on the coordinate basis, timelike pivot first.
    pub fn orthonormal_frame(&self, sig: &Signature) -> Result<FrameField> {
        let m = self.chart.dim();
        sig.require_dim(m)?;
        let center = values(&self.g, &self.chart.center());
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&a, &b| center[a * m + a].partial_cmp(&center[b * m + b]).unwrap());
        let mut negative: Vec<usize> = (0..m).filter(|&i| sig.eta(i) < 0.0).collect();
        let mut positive: Vec<usize> = (0..m).filter(|&i| sig.eta(i) > 0.0).collect();
        let ip = |u: &[Field], v: &[Field]| -> Field {
            crate::forms::coeff::sum((0..m).flat_map(|a| (0..m).map(move |b| (a, b))).map(|(a, b)| {
                crate::forms::coeff::mul(&self.g[a * m + b], &crate::forms::coeff::mul(&u[a], &v[b]))
            }))
        };
        let mut columns: Vec<Option<Vec<Field>>> = vec![None; m];
        let mut done: Vec<(Vec<Field>, f64)> = Vec::new();
        for &mu in &order {
            let mut v: Vec<Field> =
                (0..m).map(|a| Field::constant(if a == mu { 1.0 } else { 0.0 })).collect();
            for (u, s) in &done {
                let c = ip(&v, u).scale(*s);
                v = v.iter().zip(u).map(|(vi, ui)| vi - &(&c * ui)).collect();
            }
            let norm2 = ip(&v, &v);
            let n2c = norm2.value(&self.chart.center());
            let target = if n2c < 0.0 { negative.pop() } else { positive.pop() };
            let Some(slot) = target else {
                return Err(Error::InvalidSignature("metric signature differs from η".into()));
            };
            let s = sig.eta(slot);
            let norm = norm2.scale(s).sqrt();
            let u: Vec<Field> = v.iter().map(|vi| vi / &norm).collect();
            done.push((u.clone(), s));
            columns[slot] = Some(u);
        }
        let mut e = vec![Field::zero(); m * m];
        for (i, col) in columns.into_iter().enumerate() {
            let col = col.expect("every slot filled");
            for mu in 0..m {
                e[mu * m + i] = col[mu].clone();
            }
        }
        FrameField::new(self.chart.clone(), e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::is_lorentz_with;

    fn chart() -> ChartBox {
        ChartBox::unit(3)
    }

    fn x(i: usize) -> Field {
        Field::coordinate(3, i)
    }

    fn sample_frame() -> FrameField {
        let c = Field::constant;
        FrameField::new(
            chart(),
            vec![
                &c(1.0) + &x(0).scale(0.2),
                x(1).scale(0.1),
                c(0.0),
                c(0.05),
                &c(1.1) + &(&x(2) * &x(0)).scale(0.3),
                x(0).scale(-0.1),
                x(2).scale(0.2),
                c(0.0),
                &c(0.9) + &x(1).scale(0.2),
            ],
        )
        .unwrap()
    }

    #[test]
    fn coframe_inverts_frame() {
        let f = sample_frame();
        let p = [0.3, 0.7, 0.2];
        let e = f.matrix_at(&p);
        let einv = DMatrix::from_row_slice(3, 3, &values(&f.coframe(), &p));
        assert!((einv * e - DMatrix::identity(3, 3)).amax() < 1e-12);
    }

    #[test]
    fn degenerate_frame_rejected() {
        let e = vec![Field::coordinate(3, 0); 9];
        assert!(matches!(FrameField::new(chart(), e), Err(Error::DegenerateFrame { .. })));
    }

    #[test]
    fn gram_schmidt_orthonormal() {
        let sig = Signature::default();
        let f = sample_frame();
        let g = MetricField::from_frame(&f, &sig);
        let o = g.orthonormal_frame(&sig).unwrap();
        for p in chart().sample_points(10, 3) {
            let e = o.matrix_at(&p);
            let gm = DMatrix::from_row_slice(3, 3, &values(g.entries(), &p));
            let eta = e.transpose() * gm * &e;
            assert!((eta - sig.matrix()).amax() < 1e-12);
            let rel = f.matrix_at(&p).try_inverse().unwrap() * e;
            assert!(is_lorentz_with(&crate::lie::GlElement(rel), &sig, 1e-10));
        }
    }

    #[test]
    fn serialization_round_trip() {
        let f = sample_frame();
        let txt = serde_json::to_string(&f).unwrap();
        let back: FrameField = serde_json::from_str(&txt).unwrap();
        assert_eq!(back.matrix_at(&[0.1, 0.2, 0.3]), f.matrix_at(&[0.1, 0.2, 0.3]));
    }
}
