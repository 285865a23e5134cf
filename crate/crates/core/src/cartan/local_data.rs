use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::frame::{fields_to_polys, idx3, polys_to_fields, values};
use crate::error::{Error, Result};
use crate::forms::{ChartBox, Field, Polynomial, ValueSpace, ValuedForm};

/// Which structure group the local data is known to take values in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Structure {
    /// 𝔞(m) = 𝔤𝔩(m) ⊕ R^m.
    Affine,
    /// 𝔨 ⋉ R^m in an orthonormal gauge.
    Reduced,
}

/// Local Cartan connection data: A = (Γ^α_{γβ} dx^β ⊗ E^γ_α, σ^α_β dx^β ⊗ e_α).
///
/// `gamma` is indexed [α][γ][β] and `sigma` [α][β].
#[derive(Debug, Clone)]
pub struct CartanLocalData {
    chart: ChartBox,
    gamma: Vec<Field>,
    sigma: Vec<Field>,
    structure: Structure,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LocalDataRepr {
    chart: ChartBox,
    #[serde(default = "default_structure")]
    structure: Structure,
    gamma: Vec<Polynomial>,
    sigma: Vec<Polynomial>,
}

fn default_structure() -> Structure {
    Structure::Affine
}

impl CartanLocalData {
    pub fn new(chart: ChartBox, gamma: Vec<Field>, sigma: Vec<Field>) -> Result<Self> {
        chart.validate()?;
        let m = chart.dim();
        if gamma.len() != m * m * m {
            return Err(Error::DimensionMismatch { expected: m * m * m, found: gamma.len() });
        }
        if sigma.len() != m * m {
            return Err(Error::DimensionMismatch { expected: m * m, found: sigma.len() });
        }
        Ok(CartanLocalData { chart, gamma, sigma, structure: Structure::Affine })
    }

    pub fn from_polynomials(chart: ChartBox, gamma: Vec<Polynomial>, sigma: Vec<Polynomial>) -> Result<Self> {
        let g = polys_to_fields(&chart, gamma)?;
        let s = polys_to_fields(&chart, sigma)?;
        CartanLocalData::new(chart, g, s)
    }

    /// Γ = 0, σ = 0.
    pub fn flat(chart: ChartBox) -> Self {
        let m = chart.dim();
        CartanLocalData {
            chart,
            gamma: vec![Field::zero(); m * m * m],
            sigma: vec![Field::zero(); m * m],
            structure: Structure::Affine,
        }
    }

    pub fn with_structure(mut self, s: Structure) -> Self {
        self.structure = s;
        self
    }

    pub fn structure(&self) -> Structure {
        self.structure
    }

    pub fn chart(&self) -> &ChartBox {
        &self.chart
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn gamma(&self) -> &[Field] {
        &self.gamma
    }

    pub fn sigma(&self) -> &[Field] {
        &self.sigma
    }

    /// The 𝔞(m)-valued 1-form; the dx^β block has matrix entry (α, γ) = Γ^α_{γβ} and vector entry α = σ^α_β.
    pub fn to_form(&self) -> ValuedForm<Field> {
        let m = self.dim();
        ValuedForm::one_form(
            m,
            ValueSpace::Aff(m),
            (0..m)
                .map(|b| {
                    let mut v: Vec<Field> =
                        (0..m * m).map(|k| self.gamma[idx3(m, k / m, k % m, b)].clone()).collect();
                    v.extend((0..m).map(|a| self.sigma[a * m + b].clone()));
                    v
                })
                .collect(),
        )
    }

    pub fn from_form(chart: ChartBox, form: &ValuedForm<Field>) -> Result<Self> {
        let m = chart.dim();
        if form.space() != ValueSpace::Aff(m) || form.degree() != 1 || form.dim() != m {
            return Err(Error::ValueSpaceMismatch("local data needs an 𝔞(m)-valued 1-form".into()));
        }
        let mut gamma = vec![Field::zero(); m * m * m];
        let mut sigma = vec![Field::zero(); m * m];
        for b in 0..m {
            let block = form.block(1 << b);
            for a in 0..m {
                for g in 0..m {
                    gamma[idx3(m, a, g, b)] = block[a * m + g].clone();
                }
                sigma[a * m + b] = block[m * m + a].clone();
            }
        }
        CartanLocalData::new(chart, gamma, sigma)
    }

    /// Matrices Γ_β with entry (α, γ) = Γ^α_{γβ}.
    pub fn gamma_at(&self, x: &[f64]) -> Vec<DMatrix<f64>> {
        let m = self.dim();
        let v = values(&self.gamma, x);
        (0..m).map(|b| DMatrix::from_fn(m, m, |a, g| v[idx3(m, a, g, b)])).collect()
    }

    /// Vectors σ_β with entry α = σ^α_β.
    pub fn sigma_at(&self, x: &[f64]) -> Vec<DVector<f64>> {
        let m = self.dim();
        let v = values(&self.sigma, x);
        (0..m).map(|b| DVector::from_fn(m, |a, _| v[a * m + b])).collect()
    }

    /// max over points of the coefficientwise deviation from another data set.
    pub fn max_deviation(&self, other: &CartanLocalData, points: &[Vec<f64>]) -> f64 {
        let mut worst: f64 = 0.0;
        for p in points {
            let a = values(&self.gamma, p).into_iter().chain(values(&self.sigma, p));
            let b = values(&other.gamma, p).into_iter().chain(values(&other.sigma, p));
            for (u, v) in a.zip(b) {
                worst = worst.max((u - v).abs());
            }
        }
        worst
    }

    pub fn to_polynomials(&self) -> Result<(Vec<Polynomial>, Vec<Polynomial>)> {
        Ok((
            fields_to_polys(self.dim(), &self.gamma, "gamma")?,
            fields_to_polys(self.dim(), &self.sigma, "sigma")?,
        ))
    }
}

impl Serialize for CartanLocalData {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (gamma, sigma) = self.to_polynomials().map_err(serde::ser::Error::custom)?;
        LocalDataRepr { chart: self.chart.clone(), structure: self.structure, gamma, sigma }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CartanLocalData {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = LocalDataRepr::deserialize(d)?;
        CartanLocalData::from_polynomials(r.chart, r.gamma, r.sigma)
            .map(|c| c.with_structure(r.structure))
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn form_round_trip() {
        let chart = ChartBox::unit(3);
        let gamma: Vec<Field> = (0..27).map(|k| Field::coordinate(3, k % 3).scale(k as f64)).collect();
        let sigma: Vec<Field> = (0..9).map(|k| Field::constant(k as f64 - 4.0)).collect();
        let d = CartanLocalData::new(chart.clone(), gamma, sigma).unwrap();
        let back = CartanLocalData::from_form(chart.clone(), &d.to_form()).unwrap();
        assert_eq!(d.max_deviation(&back, &chart.sample_points(5, 1)), 0.0);
        let txt = serde_json::to_string(&d).unwrap();
        let parsed: CartanLocalData = serde_json::from_str(&txt).unwrap();
        assert_eq!(d.max_deviation(&parsed, &chart.sample_points(5, 2)), 0.0);
        let g = d.gamma_at(&[0.5, 0.5, 0.5]);
        assert_eq!(g[1][(2, 0)], 0.5 * 19.0);
    }
}
