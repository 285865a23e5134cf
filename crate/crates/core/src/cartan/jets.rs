//! Points of the first jet bundles of LM and AM and the maps between them.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::frame::idx3;
use crate::error::{Error, Result};
use crate::lie::{AffAlgElement, AffElement, GlElement};

fn inverse_frame(e: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    GlElement::group(e.clone()).and_then(|g| g.inverse()).map(|g| g.0)
}

/// (x^μ, e^ν_i, e^σ_{kρ}); `ejet` is indexed [σ][k][ρ].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JetPointLM {
    pub x: Vec<f64>,
    /// Row-major (μ, i).
    pub e: Vec<f64>,
    pub ejet: Vec<f64>,
}

/// (x^α, e^β_i, v^α, e^β_{iγ}, v^α_β); `ejet` is [β][i][γ], `vjet` is [α][β].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JetPointAM {
    pub x: Vec<f64>,
    pub e: Vec<f64>,
    pub v: Vec<f64>,
    pub ejet: Vec<f64>,
    pub vjet: Vec<f64>,
}

/// Tangent coordinates (δx^α, δe^β_i, δv^α) at a jet point's base.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentIncrement {
    pub dx: DVector<f64>,
    pub de: DMatrix<f64>,
    pub dv: DVector<f64>,
}

impl TangentIncrement {
    pub fn zero(m: usize) -> Self {
        TangentIncrement { dx: DVector::zeros(m), de: DMatrix::zeros(m, m), dv: DVector::zeros(m) }
    }
}

fn check_len(found: usize, expected: usize) -> Result<()> {
    if found == expected {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

impl JetPointLM {
    pub fn new(x: Vec<f64>, e: Vec<f64>, ejet: Vec<f64>) -> Result<Self> {
        let m = x.len();
        check_len(e.len(), m * m)?;
        check_len(ejet.len(), m * m * m)?;
        let p = JetPointLM { x, e, ejet };
        inverse_frame(&p.frame())?;
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    pub fn frame(&self) -> DMatrix<f64> {
        let m = self.dim();
        DMatrix::from_row_slice(m, m, &self.e)
    }

    pub fn ejet_at(&self, s: usize, k: usize, r: usize) -> f64 {
        self.ejet[idx3(self.dim(), s, k, r)]
    }
}

impl JetPointAM {
    pub fn new(x: Vec<f64>, e: Vec<f64>, v: Vec<f64>, ejet: Vec<f64>, vjet: Vec<f64>) -> Result<Self> {
        let m = x.len();
        check_len(e.len(), m * m)?;
        check_len(v.len(), m)?;
        check_len(ejet.len(), m * m * m)?;
        check_len(vjet.len(), m * m)?;
        let p = JetPointAM { x, e, v, ejet, vjet };
        inverse_frame(&p.frame())?;
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    pub fn frame(&self) -> DMatrix<f64> {
        let m = self.dim();
        DMatrix::from_row_slice(m, m, &self.e)
    }

    pub fn ejet_at(&self, b: usize, i: usize, g: usize) -> f64 {
        self.ejet[idx3(self.dim(), b, i, g)]
    }

    /// Lifted right action (x, e, v, ejet, vjet)·(a, w) = (x, e a, v + e w, ejet a, vjet + ejet w).
    pub fn act(&self, g: &AffElement) -> JetPointAM {
        let m = self.dim();
        let e = self.frame();
        let ea = &e * &g.a.0;
        let v = DVector::from_column_slice(&self.v) + &e * &g.xi;
        let mut ejet = vec![0.0; m * m * m];
        let mut vjet = self.vjet.clone();
        for b in 0..m {
            for c in 0..m {
                for i in 0..m {
                    ejet[idx3(m, b, i, c)] =
                        (0..m).map(|k| self.ejet_at(b, k, c) * g.a.0[(k, i)]).sum();
                }
                vjet[b * m + c] += (0..m).map(|k| self.ejet_at(b, k, c) * g.xi[k]).sum::<f64>();
            }
        }
        JetPointAM {
            x: self.x.clone(),
            e: ea.transpose().as_slice().to_vec(),
            v: v.as_slice().to_vec(),
            ejet,
            vjet,
        }
    }
}

/// θ_AM at a jet point, as a linear map of tangent increments.
#[derive(Debug, Clone)]
pub struct CanonicalConnectionAm {
    point: JetPointAM,
    einv: DMatrix<f64>,
}

/// θ = e^j_β(de^β_i − e^β_{iα}dx^α) ⊗ E^i_j + e^i_β(dv^β − v^β_α dx^α) ⊗ e_i.
pub fn canonical_connection_am(j: &JetPointAM) -> Result<CanonicalConnectionAm> {
    Ok(CanonicalConnectionAm { einv: inverse_frame(&j.frame())?, point: j.clone() })
}

impl CanonicalConnectionAm {
    pub fn apply(&self, t: &TangentIncrement) -> AffAlgElement {
        let p = &self.point;
        let m = p.dim();
        let horiz = DMatrix::from_fn(m, m, |b, i| {
            t.de[(b, i)] - (0..m).map(|a| p.ejet_at(b, i, a) * t.dx[a]).sum::<f64>()
        });
        let vh = DVector::from_fn(m, |b, _| {
            t.dv[b] - (0..m).map(|a| p.vjet[b * m + a] * t.dx[a]).sum::<f64>()
        });
        AffAlgElement { b: GlElement(&self.einv * horiz), zeta: &self.einv * vh }
    }
}

/// θ_LM at a jet point.
#[derive(Debug, Clone)]
pub struct CanonicalConnectionLm {
    point: JetPointLM,
    einv: DMatrix<f64>,
}

/// θ = e^i_μ(de^μ_j − e^μ_{jρ}dx^ρ) ⊗ E^j_i.
pub fn canonical_connection_lm(j: &JetPointLM) -> Result<CanonicalConnectionLm> {
    Ok(CanonicalConnectionLm { einv: inverse_frame(&j.frame())?, point: j.clone() })
}

impl CanonicalConnectionLm {
    pub fn apply(&self, dx: &DVector<f64>, de: &DMatrix<f64>) -> GlElement {
        let p = &self.point;
        let m = p.dim();
        let horiz = DMatrix::from_fn(m, m, |mu, j| {
            de[(mu, j)] - (0..m).map(|r| p.ejet_at(mu, j, r) * dx[r]).sum::<f64>()
        });
        GlElement(&self.einv * horiz)
    }
}

/// φ(δx) = e^i_μ δx^μ for the frame e (row-major (μ, i)).
pub fn solder_at(e: &[f64], dx: &DVector<f64>) -> Result<DVector<f64>> {
    let m = dx.len();
    check_len(e.len(), m * m)?;
    Ok(inverse_frame(&DMatrix::from_row_slice(m, m, e))? * dx)
}

/// j(x, e, ejet) = (x, e, 0, ejet, −e^α_i e^i_β).
pub fn j_map(j: &JetPointLM) -> Result<JetPointAM> {
    let m = j.dim();
    let e = j.frame();
    let prod = &e * inverse_frame(&e)?;
    let vjet = (0..m * m).map(|k| -prod[(k / m, k % m)]).collect();
    Ok(JetPointAM { x: j.x.clone(), e: j.e.clone(), v: vec![0.0; m], ejet: j.ejet.clone(), vjet })
}

/// σ^α_β = −(v^α_β − e^i_γ e^α_{iβ} v^γ), the translation part of the induced local data.
pub fn induced_translation(j: &JetPointAM) -> Result<DMatrix<f64>> {
    let m = j.dim();
    let einv = inverse_frame(&j.frame())?;
    Ok(DMatrix::from_fn(m, m, |a, b| {
        let corr: f64 = (0..m)
            .flat_map(|i| (0..m).map(move |g| (i, g)))
            .map(|(i, g)| einv[(i, g)] * j.ejet_at(a, i, b) * j.v[g])
            .sum();
        -(j.vjet[a * m + b] - corr)
    }))
}

/// κ^i_j = e^i_α e^β_j σ^α_β.
pub fn kappa_map(j: &JetPointAM) -> Result<DMatrix<f64>> {
    let e = j.frame();
    let einv = inverse_frame(&e)?;
    Ok(einv * induced_translation(j)? * e)
}

/// Coordinates of a point of the connection bundle C(AM).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConnectionCoords {
    pub x: Vec<f64>,
    /// e^j_γ e^α_{jβ}, indexed [α][γ][β].
    pub linear: Vec<f64>,
    /// v^α_β − e^i_γ e^α_{iβ} v^γ, indexed [α][β].
    pub translation: Vec<f64>,
}

/// p(x, e, v, ejet, vjet) = (x, e^j_γ e^α_{jβ}, v^α_β − e^i_γ e^α_{iβ} v^γ).
pub fn jet_projection_cam(j: &JetPointAM) -> Result<ConnectionCoords> {
    let m = j.dim();
    let einv = inverse_frame(&j.frame())?;
    let mut linear = vec![0.0; m * m * m];
    for a in 0..m {
        for g in 0..m {
            for b in 0..m {
                linear[idx3(m, a, g, b)] = (0..m).map(|k| einv[(k, g)] * j.ejet_at(a, k, b)).sum();
            }
        }
    }
    let sigma = induced_translation(j)?;
    let translation = (0..m * m).map(|k| -sigma[(k / m, k % m)]).collect();
    Ok(ConnectionCoords { x: j.x.clone(), linear, translation })
}

/// Γ^μ_{νσ} = −e^k_ν e^μ_{kσ}, indexed [μ][ν][σ].
pub fn jet_to_christoffel(j: &JetPointLM) -> Result<Vec<f64>> {
    let m = j.dim();
    let einv = inverse_frame(&j.frame())?;
    let mut out = vec![0.0; m * m * m];
    for mu in 0..m {
        for nu in 0..m {
            for s in 0..m {
                out[idx3(m, mu, nu, s)] = -(0..m).map(|k| einv[(k, nu)] * j.ejet_at(mu, k, s)).sum::<f64>();
            }
        }
    }
    Ok(out)
}
