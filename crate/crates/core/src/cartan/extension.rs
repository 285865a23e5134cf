//! Extension of Cartan data from orthonormal frames to all frames, and reduction back.


use super::frame::{idx3, validation_points, values, FrameField, MetricField, SpinConnectionField};
use super::jets::{JetPointAM, JetPointLM};
use super::local_data::{CartanLocalData, Structure};
use super::vielbein::{christoffel_to_spin, holonomic_jet, max_abs_over, metricity_residual};
use crate::error::{Error, Result};
use crate::lie::{GlElement, Signature};

/// Default reducibility tolerance, relative to the magnitude of Γ.
pub const REDUCE_TOLERANCE: f64 = 1e-8;

/// Cartan data evaluated as an equivariant jet section over every frame.
#[derive(Debug, Clone)]
pub struct ExtendedCartan {
    data: CartanLocalData,
}

pub fn extend_cartan(a: &CartanLocalData) -> ExtendedCartan {
    ExtendedCartan { data: a.clone().with_structure(Structure::Affine) }
}

impl ExtendedCartan {
    pub fn data(&self) -> &CartanLocalData {
        &self.data
    }

    /// ejet^α_{jμ} = −e^γ_j Γ^α_{γμ} and vjet^α_μ = −(Γ^α_{γμ} v^γ + σ^α_μ) at (x, e, v).
    pub fn section_at(&self, x: &[f64], e: &[f64], v: &[f64]) -> Result<JetPointAM> {
        let m = self.data.dim();
        let gamma = values(self.data.gamma(), x);
        let sigma = values(self.data.sigma(), x);
        let mut ejet = vec![0.0; m * m * m];
        let mut vjet = vec![0.0; m * m];
        for a in 0..m {
            for mu in 0..m {
                for j in 0..m {
                    ejet[idx3(m, a, j, mu)] =
                        -(0..m).map(|g| e[g * m + j] * gamma[idx3(m, a, g, mu)]).sum::<f64>();
                }
                vjet[a * m + mu] =
                    -((0..m).map(|g| gamma[idx3(m, a, g, mu)] * v[g]).sum::<f64>() + sigma[a * m + mu]);
            }
        }
        JetPointAM::new(x.to_vec(), e.to_vec(), v.to_vec(), ejet, vjet)
    }

    /// The linear part of the section, a point of J¹(LM).
    pub fn section_lm_at(&self, x: &[f64], e: &[f64]) -> Result<JetPointLM> {
        let m = self.data.dim();
        let p = self.section_at(x, e, &vec![0.0; m])?;
        JetPointLM::new(p.x, p.e, p.ejet)
    }
}

/// Data reduced to the orthonormal frames of a metric.
#[derive(Debug, Clone)]
pub struct ReducedCartan {
    data: CartanLocalData,
    frame: FrameField,
    spin: SpinConnectionField,
    residual: f64,
}

impl ReducedCartan {
    pub fn data(&self) -> &CartanLocalData {
        &self.data
    }

    pub fn orthonormal_frame(&self) -> &FrameField {
        &self.frame
    }

    /// The 𝔨-valued spin connection in the orthonormal gauge.
    pub fn spin_connection(&self) -> &SpinConnectionField {
        &self.spin
    }

    pub fn metricity_residual(&self) -> f64 {
        self.residual
    }

    /// The jet section at the orthonormal frame e_ζ(x)·k, computed from the spin connection.
    pub fn section_at(&self, x: &[f64], k: &GlElement, v: &[f64]) -> Result<JetPointAM> {
        let m = self.data.dim();
        let ejet0 = values(&holonomic_jet(&self.frame, &self.spin), x);
        let e0 = self.frame.matrix_at(x);
        let e = &e0 * &k.0;
        let mut ejet = vec![0.0; m * m * m];
        for a in 0..m {
            for i in 0..m {
                for mu in 0..m {
                    ejet[idx3(m, a, i, mu)] =
                        (0..m).map(|l| ejet0[idx3(m, a, l, mu)] * k.0[(l, i)]).sum();
                }
            }
        }
        let gamma = values(self.data.gamma(), x);
        let sigma = values(self.data.sigma(), x);
        let mut vjet = vec![0.0; m * m];
        for a in 0..m {
            for mu in 0..m {
                vjet[a * m + mu] =
                    -((0..m).map(|g| gamma[idx3(m, a, g, mu)] * v[g]).sum::<f64>() + sigma[a * m + mu]);
            }
        }
        let e_rows: Vec<f64> = (0..m * m).map(|t| e[(t / m, t % m)]).collect();
        JetPointAM::new(x.to_vec(), e_rows, v.to_vec(), ejet, vjet)
    }
}

/// Reduces to the orthonormal frames of ζ iff the metricity residual of Γ is ≤ tol·max(1, |Γ|).
pub fn reduce_cartan(
    b: &ExtendedCartan,
    zeta: &MetricField,
    sig: &Signature,
    tol: f64,
) -> Result<ReducedCartan> {
    let frame = zeta.orthonormal_frame(sig)?;
    let gamma = b.data.gamma();
    let points = validation_points(b.data.chart());
    let residual = metricity_residual(&frame, gamma, sig)?;
    let (worst, witness) = max_abs_over(&residual, &points);
    let (scale, _) = max_abs_over(gamma, &points);
    if !(worst <= tol * scale.max(1.0)) {
        return Err(Error::NotReducible { residual: worst, witness });
    }
    let spin = christoffel_to_spin(&frame, gamma)?;
    Ok(ReducedCartan {
        data: b.data.clone().with_structure(Structure::Reduced),
        frame,
        spin,
        residual: worst,
    })
}

/// max |a − b| over corresponding jet coordinates.
pub fn jet_distance(a: &JetPointAM, b: &JetPointAM) -> f64 {
    let pairs = a
        .e
        .iter()
        .zip(&b.e)
        .chain(a.v.iter().zip(&b.v))
        .chain(a.ejet.iter().zip(&b.ejet))
        .chain(a.vjet.iter().zip(&b.vjet));
    pairs.fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::samples::{random_frame, random_gl_spin, random_metric_configuration};
    use crate::cartan::vielbein_to_christoffel;
    use crate::forms::ChartBox;
    use crate::lie::AffElement;
    use nalgebra::{DMatrix, DVector};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn flat_extension_is_coordinate_horizontal() {
        let chart = ChartBox::unit(3);
        let ext = extend_cartan(&CartanLocalData::flat(chart));
        let e = [1.0, 0.2, 0.0, 0.0, 1.5, 0.1, 0.3, 0.0, 0.8];
        let p = ext.section_at(&[0.5, 0.5, 0.5], &e, &[0.1, 0.2, 0.3]).unwrap();
        assert!(p.ejet.iter().chain(&p.vjet).all(|c| *c == 0.0));
    }

    #[test]
    fn section_is_equivariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let chart = ChartBox::unit(3);
        let sig = Signature::default();
        let cfg = random_metric_configuration(&mut rng, &chart, &sig, 2, 0.3).unwrap();
        let ext = extend_cartan(&cfg.data);
        let x = [0.3, 0.6, 0.2];
        let e = cfg.frame.matrix_at(&x);
        let e_rows: Vec<f64> = (0..9).map(|t| e[(t / 3, t % 3)]).collect();
        let v = [0.4, -0.2, 0.7];
        let p = ext.section_at(&x, &e_rows, &v).unwrap();
        let a = GlElement(DMatrix::from_row_slice(3, 3, &[1.1, 0.2, 0.0, -0.3, 0.9, 0.4, 0.1, 0.0, 1.3]));
        let g = AffElement::new(a, DVector::from_vec(vec![0.3, -0.5, 0.2])).unwrap();
        let moved = p.act(&g);
        let direct = ext.section_at(&x, &moved.e, &moved.v).unwrap();
        assert!(jet_distance(&moved, &direct) < 1e-12);
    }

    #[test]
    fn reduce_extend_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let chart = ChartBox::unit(3);
        let sig = Signature::default();
        let cfg = random_metric_configuration(&mut rng, &chart, &sig, 2, 0.3).unwrap();
        let zeta = MetricField::from_frame(&cfg.frame, &sig);
        let ext = extend_cartan(&cfg.data);
        let red = reduce_cartan(&ext, &zeta, &sig, REDUCE_TOLERANCE).unwrap();
        let pts = validation_points(&chart);
        assert!(red.data().max_deviation(&cfg.data, &pts) < 1e-12);
        assert_eq!(red.data().structure(), Structure::Reduced);
        let x = [0.7, 0.1, 0.4];
        let k = GlElement(crate::lie::boost(3, 1, 0.3).0);
        let via_spin = red.section_at(&x, &k, &[0.1, 0.0, -0.2]).unwrap();
        let e = red.orthonormal_frame().matrix_at(&x) * &k.0;
        let e_rows: Vec<f64> = (0..9).map(|t| e[(t / 3, t % 3)]).collect();
        let via_ext = ext.section_at(&x, &e_rows, &[0.1, 0.0, -0.2]).unwrap();
        assert!(jet_distance(&via_spin, &via_ext) < 1e-10);
    }

    #[test]
    fn non_metric_data_is_rejected() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let chart = ChartBox::unit(3);
        let sig = Signature::default();
        let frame = random_frame(&mut rng, &chart, 2, 0.3).unwrap();
        let spin = random_gl_spin(&mut rng, &chart, 2, 0.5).unwrap();
        let gamma = vielbein_to_christoffel(&frame, &spin).unwrap();
        let data = CartanLocalData::new(chart.clone(), gamma, vec![crate::forms::Field::zero(); 9]).unwrap();
        let zeta = MetricField::from_frame(&frame, &sig);
        match reduce_cartan(&extend_cartan(&data), &zeta, &sig, REDUCE_TOLERANCE) {
            Err(Error::NotReducible { residual, witness }) => {
                assert!(residual > 1e-4);
                assert!(chart.contains(&witness));
            }
            other => panic!("expected a reducibility failure, got {other:?}"),
        }
    }
}
