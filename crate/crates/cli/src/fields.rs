//! Construction of frames, spin connections, sections and gauges from a [`RunConfig`].

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cartan_forge::cartan::{
    random_affine_gauge, random_frame, random_gl_spin, random_lorentz_gauge, random_lorentz_spin, random_translation,
    vielbein_to_christoffel, CartanLocalData, FrameField, SpinConnectionField,
};
use cartan_forge::forms::{Field, GroupKind, GroupMap};
use cartan_forge::harness::GridSection;
use cartan_forge::Result;

use crate::config::{FieldSource, GaugeKind, RunConfig, SpinKind};

/// A frame, its spin connection and the translation part σ of the Cartan data.
pub struct Geometry {
    pub frame: FrameField,
    pub spin: SpinConnectionField,
    pub sigma: Vec<Field>,
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

pub fn geometry(cfg: &RunConfig, cli_seed: Option<u64>) -> Result<Geometry> {
    let chart = cfg.chart();
    let m = chart.dim();
    let zeros = || vec![Field::zero(); m * m];
    match &cfg.fields {
        FieldSource::Flat {} => Ok(Geometry {
            frame: FrameField::identity(chart.clone()),
            spin: SpinConnectionField::zero(chart),
            sigma: zeros(),
        }),
        FieldSource::Boost { rapidity, axis } => {
            let (c, s) = (rapidity.cosh(), rapidity.sinh());
            let e = (0..m * m)
                .map(|k| {
                    let (r, col) = (k / m, k % m);
                    let v = match (r, col) {
                        _ if r == col && (r == 0 || r == *axis) => c,
                        _ if r == col => 1.0,
                        (0, a) | (a, 0) if a == *axis => s,
                        _ => 0.0,
                    };
                    Field::constant(v)
                })
                .collect();
            Ok(Geometry {
                frame: FrameField::new(chart.clone(), e)?,
                spin: SpinConnectionField::zero(chart),
                sigma: zeros(),
                })
        }
        FieldSource::Polynomial { frame, spin } => {
            Ok(Geometry {
                frame: FrameField::from_polynomials(chart.clone(), frame.clone())?,
                spin: SpinConnectionField::from_polynomials(chart, spin.clone())?,
                sigma: zeros(),
            })
        }
        FieldSource::Random { seed, degree, frame_degree, spin, frame_scale, spin_scale } => {
            let mut rng = rng_for(seed.or(cli_seed).or(cfg.seed).unwrap_or(0), 0);
            let frame = random_frame(&mut rng, &chart, frame_degree.unwrap_or(*degree), *frame_scale)?;
            let w = match spin {
                SpinKind::Lorentz => random_lorentz_spin(&mut rng, &chart, &cfg.signature, *degree, *spin_scale)?,
                SpinKind::Gl => random_gl_spin(&mut rng, &chart, *degree, *spin_scale)?,
            };
            let sigma = random_translation(&mut rng, &chart, *degree, *frame_scale);
            Ok(Geometry { frame, spin: w, sigma })
        }
    }
}

/// The Cartan data (Γ, σ) determined by the configured frame and spin connection.
pub fn cartan_data(g: &Geometry) -> Result<CartanLocalData> {
    let gamma = vielbein_to_christoffel(&g.frame, &g.spin)?;
    CartanLocalData::new(g.frame.chart().clone(), gamma, g.sigma.clone())
}

pub fn grid_section(cfg: &RunConfig, g: &Geometry) -> Result<GridSection> {
    let mut s = GridSection::holonomic(g.frame.clone(), g.spin.clone(), cfg.signature.clone(), cfg.resolution)?;
    s.add_default_perturbations()?;
    Ok(s)
}

pub fn gauge(cfg: &RunConfig, cli_seed: Option<u64>) -> Result<GroupMap> {
    let chart = cfg.chart();
    let setup = &cfg.gauge;
    let mut rng = rng_for(setup.seed.or(cli_seed).or(cfg.seed).unwrap_or(0), 1);
    match setup.kind {
        GaugeKind::Identity => Ok(GroupMap::identity(chart.dim(), chart.dim(), GroupKind::Aff)),
        GaugeKind::Lorentz => random_lorentz_gauge(&mut rng, &chart, &cfg.signature, setup.degree, setup.scale, setup.cutoff),
        GaugeKind::Affine => random_affine_gauge(&mut rng, &chart, chart.dim(), setup.degree, setup.scale),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use cartan_forge::cartan::{lorentz_condition_residual, max_abs_over};

    fn cfg(json: &str) -> RunConfig {
        let c: RunConfig = serde_json::from_str(json).unwrap();
        c.validate().unwrap();
        c
    }

    #[test]
    fn boost_frame_is_orthonormal() {
        let c = cfg(r#"{"fields": {"generator": "boost", "rapidity": 0.7, "axis": 2}}"#);
        let g = geometry(&c, None).unwrap();
        let e = g.frame.matrix_at(&[0.5, 0.5, 0.5]);
        let eta = c.signature.matrix();
        let metric = &e * &eta * e.transpose();
        assert!((metric - eta).amax() < 1e-12);
    }

    #[test]
    fn random_spin_kinds() {
        let pts = c_points();
        let lorentz = geometry(&cfg(r#"{"fields": {"generator": "random", "seed": 1}}"#), None).unwrap();
        let gl = geometry(&cfg(r#"{"fields": {"generator": "random", "seed": 1, "spin": "gl"}}"#), None).unwrap();
        let sig = cartan_forge::lie::Signature::default();
        assert!(max_abs_over(&lorentz_condition_residual(&lorentz.spin, &sig).unwrap(), &pts).0 < 1e-12);
        assert!(max_abs_over(&lorentz_condition_residual(&gl.spin, &sig).unwrap(), &pts).0 > 1e-3);
    }

    #[test]
    fn seeds_are_reproducible() {
        let c = cfg(r#"{"fields": {"generator": "random", "degree": 1}}"#);
        let a = cartan_data(&geometry(&c, Some(5)).unwrap()).unwrap();
        let b = cartan_data(&geometry(&c, Some(5)).unwrap()).unwrap();
        let d = cartan_data(&geometry(&c, Some(6)).unwrap()).unwrap();
        let pts = c_points();
        assert_eq!(a.max_deviation(&b, &pts), 0.0);
        assert!(a.max_deviation(&d, &pts) > 0.0);
    }

    fn c_points() -> Vec<Vec<f64>> {
        cartan_forge::forms::ChartBox::unit(3).sample_points(6, 2)
    }
}
