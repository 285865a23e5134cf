//! Seeded generators for frames, spin connections and Cartan data on a chart.

use rand::Rng;

use super::frame::{idx3, FrameField, SpinConnectionField};
use super::local_data::CartanLocalData;
use super::vielbein::vielbein_to_christoffel;
use crate::error::Result;
use crate::forms::random::random_polynomial;
use crate::forms::algebra;
use crate::forms::{ChartBox, Field, GroupKind, GroupMap, Polynomial};
use crate::lie::{lorentz_basis, Signature};

const MAX_ATTEMPTS: usize = 32;

fn scaled_poly<R: Rng>(rng: &mut R, chart: &ChartBox, degree: u32, scale: f64) -> Field {
    let m = chart.dim();
    let count = crate::forms::random::monomials(m, degree).len() as f64;
    Field::poly(random_polynomial(rng, m, degree, scale / count.sqrt()))
}

/// e = I + δe with random polynomial δe; redrawn until the frame is well conditioned.
pub fn random_frame<R: Rng>(rng: &mut R, chart: &ChartBox, degree: u32, scale: f64) -> Result<FrameField> {
    let m = chart.dim();
    let mut last = None;
    for _ in 0..MAX_ATTEMPTS {
        let e = (0..m * m)
            .map(|k| {
                let p = scaled_poly(rng, chart, degree, scale);
                if k / m == k % m {
                    &Field::constant(1.0) + &p
                } else {
                    p
                }
            })
            .collect();
        match FrameField::new(chart.clone(), e) {
            Ok(f) => return Ok(f),
            Err(err) => last = Some(err),
        }
    }
    Err(last.expect("at least one attempt"))
}

/// ω valued in the Lorentz algebra of `sig`, with random polynomial coefficients on a basis.
pub fn random_lorentz_spin<R: Rng>(
    rng: &mut R,
    chart: &ChartBox,
    sig: &Signature,
    degree: u32,
    scale: f64,
) -> Result<SpinConnectionField> {
    let m = chart.dim();
    sig.require_dim(m)?;
    let basis = lorentz_basis(sig);
    let mut omega = vec![Field::zero(); m * m * m];
    for s in 0..m {
        for k in &basis {
            let c = scaled_poly(rng, chart, degree, scale);
            for i in 0..m {
                for j in 0..m {
                    let entry = k.0[(i, j)];
                    if entry != 0.0 {
                        let slot = &mut omega[idx3(m, i, j, s)];
                        *slot = &*slot + &c.scale(entry);
                    }
                }
            }
        }
    }
    SpinConnectionField::new(chart.clone(), omega)
}

/// ω with unconstrained random polynomial entries.
pub fn random_gl_spin<R: Rng>(rng: &mut R, chart: &ChartBox, degree: u32, scale: f64) -> Result<SpinConnectionField> {
    let m = chart.dim();
    let omega = (0..m * m * m).map(|_| scaled_poly(rng, chart, degree, scale)).collect();
    SpinConnectionField::new(chart.clone(), omega)
}

/// Random σ^α_β entries.
pub fn random_translation<R: Rng>(rng: &mut R, chart: &ChartBox, degree: u32, scale: f64) -> Vec<Field> {
    let m = chart.dim();
    (0..m * m).map(|_| scaled_poly(rng, chart, degree, scale)).collect()
}

/// A frame, a Lorentz spin connection and the metric Cartan data (Γ, σ) they determine.
#[derive(Debug, Clone)]
pub struct MetricConfiguration {
    pub frame: FrameField,
    pub spin: SpinConnectionField,
    pub data: CartanLocalData,
}

pub fn random_metric_configuration<R: Rng>(
    rng: &mut R,
    chart: &ChartBox,
    sig: &Signature,
    degree: u32,
    scale: f64,
) -> Result<MetricConfiguration> {
    let frame = random_frame(rng, chart, degree, scale)?;
    let spin = random_lorentz_spin(rng, chart, sig, degree, scale)?;
    let gamma = vielbein_to_christoffel(&frame, &spin)?;
    let sigma = random_translation(rng, chart, degree, scale);
    let data = CartanLocalData::new(chart.clone(), gamma, sigma)?;
    Ok(MetricConfiguration { frame, spin, data })
}

/// x ↦ (I + δa(x), ξ(x)) in A(n) with random polynomial δa and ξ.
pub fn random_affine_gauge<R: Rng>(rng: &mut R, chart: &ChartBox, n: usize, degree: u32, scale: f64) -> Result<GroupMap> {
    let mut last = None;
    for _ in 0..MAX_ATTEMPTS {
        let a: Vec<Field> = (0..n * n)
            .map(|k| {
                let p = scaled_poly(rng, chart, degree, scale);
                if k / n == k % n {
                    &Field::constant(1.0) + &p
                } else {
                    p
                }
            })
            .collect();
        let xi = (0..n).map(|_| scaled_poly(rng, chart, degree, scale)).collect();
        let g = GroupMap::new(chart.dim(), n, GroupKind::Aff, a, xi)?;
        match g.check_invertible(&chart.sample_points(64, 0x9a)) {
            Ok(()) => return Ok(g),
            Err(err) => last = Some(err),
        }
    }
    Err(last.expect("at least one attempt"))
}

/// x ↦ ((I − X)⁻¹(I + X), ξ) with X(x) in the Lorentz algebra, so the linear part is a
/// Lorentz transformation of `sig`. With `cutoff`, X and ξ carry the square of the box bump, so g and
/// its first derivatives are trivial on the boundary.
pub fn random_lorentz_gauge<R: Rng>(
    rng: &mut R,
    chart: &ChartBox,
    sig: &Signature,
    degree: u32,
    scale: f64,
    cutoff: bool,
) -> Result<GroupMap> {
    let m = sig.dim();
    let envelope = if cutoff {
        let b = Polynomial::box_bump(&chart.lo, &chart.hi);
        Field::poly(b.mul(&b))
    } else {
        Field::constant(1.0)
    };
    let mut x = vec![Field::zero(); m * m];
    for k in lorentz_basis(sig) {
        let c = &scaled_poly(rng, chart, degree, scale) * &envelope;
        for (slot, &entry) in x.iter_mut().zip(k.0.transpose().iter()) {
            if entry != 0.0 {
                *slot = &*slot + &c.scale(entry);
            }
        }
    }
    let id = |k: usize| Field::constant(if k / m == k % m { 1.0 } else { 0.0 });
    let minus: Vec<Field> = (0..m * m).map(|k| &id(k) - &x[k]).collect();
    let plus: Vec<Field> = (0..m * m).map(|k| &id(k) + &x[k]).collect();
    let (inv, _) = algebra::inverse(&minus, m);
    let a = algebra::mat_mul(&inv, &plus, m);
    let xi = (0..m).map(|_| &scaled_poly(rng, chart, degree, scale) * &envelope).collect();
    GroupMap::new(chart.dim(), m, GroupKind::Aff, a, xi)
}
