//! The vielbein postulate and the three forms of the metricity condition.

use super::frame::{idx3, FrameField, SpinConnectionField};
use crate::error::{Error, Result};
use crate::forms::coeff::{mul, sum};
use crate::forms::Field;
use crate::lie::Signature;

fn same_chart(e: &FrameField, m: usize) -> Result<()> {
    if e.dim() == m {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected: e.dim(), found: m })
    }
}

/// Γ^μ_{νσ} = (e^μ_i ω^i_{jσ} − ∂_σ e^μ_j) e^j_ν, indexed [μ][ν][σ].
pub fn vielbein_to_christoffel(e: &FrameField, omega: &SpinConnectionField) -> Result<Vec<Field>> {
    let m = e.dim();
    same_chart(e, omega.dim())?;
    let ef = e.entries();
    let einv = e.coframe();
    let w = omega.entries();
    let mut out = Vec::with_capacity(m * m * m);
    for mu in 0..m {
        for nu in 0..m {
            for s in 0..m {
                out.push(sum((0..m).map(|j| {
                    let rotated = sum((0..m).map(|i| mul(&ef[mu * m + i], &w[idx3(m, i, j, s)])));
                    mul(&(rotated - ef[mu * m + j].partial(s)), &einv[j * m + nu])
                })));
            }
        }
    }
    Ok(out)
}

/// ω^i_{jσ} = e^i_μ (e^ν_j Γ^μ_{νσ} + ∂_σ e^μ_j), indexed [i][j][σ].
pub fn christoffel_to_spin(e: &FrameField, gamma: &[Field]) -> Result<SpinConnectionField> {
    let m = e.dim();
    if gamma.len() != m * m * m {
        return Err(Error::DimensionMismatch { expected: m * m * m, found: gamma.len() });
    }
    let ef = e.entries();
    let einv = e.coframe();
    let mut out = Vec::with_capacity(m * m * m);
    for i in 0..m {
        for j in 0..m {
            for s in 0..m {
                out.push(sum((0..m).map(|mu| {
                    let inner = sum((0..m).map(|nu| mul(&ef[nu * m + j], &gamma[idx3(m, mu, nu, s)])))
                        + ef[mu * m + j].partial(s);
                    mul(&einv[i * m + mu], &inner)
                })));
            }
        }
    }
    SpinConnectionField::new(e.chart().clone(), out)
}

/// ∂_σ g^{μν} + g^{μρ} Γ^ν_{ρσ} + g^{νρ} Γ^μ_{ρσ}, indexed [μ][ν][σ].
pub fn metricity_residual(e: &FrameField, gamma: &[Field], sig: &Signature) -> Result<Vec<Field>> {
    let m = e.dim();
    sig.require_dim(m)?;
    if gamma.len() != m * m * m {
        return Err(Error::DimensionMismatch { expected: m * m * m, found: gamma.len() });
    }
    let g = e.inverse_metric(sig);
    let mut out = Vec::with_capacity(m * m * m);
    for mu in 0..m {
        for nu in 0..m {
            for s in 0..m {
                let a = sum((0..m).map(|r| mul(&g[mu * m + r], &gamma[idx3(m, nu, r, s)])));
                let b = sum((0..m).map(|r| mul(&g[nu * m + r], &gamma[idx3(m, mu, r, s)])));
                out.push(g[mu * m + nu].partial(s) + a + b);
            }
        }
    }
    Ok(out)
}

/// (η^{kj} e^i_μ + η^{ij} e^k_μ)(−e^μ_{jσ} + ∂_σ e^μ_j), indexed [i][k][σ]; `ejet` is [μ][j][σ].
pub fn jet_metricity_residual(e: &FrameField, ejet: &[Field], sig: &Signature) -> Result<Vec<Field>> {
    let m = e.dim();
    sig.require_dim(m)?;
    if ejet.len() != m * m * m {
        return Err(Error::DimensionMismatch { expected: m * m * m, found: ejet.len() });
    }
    let ef = e.entries();
    let einv = e.coframe();
    let mut out = Vec::with_capacity(m * m * m);
    for i in 0..m {
        for k in 0..m {
            for s in 0..m {
                out.push(sum((0..m).map(|mu| {
                    let dk = ef[mu * m + k].partial(s) - ejet[idx3(m, mu, k, s)].clone();
                    let di = ef[mu * m + i].partial(s) - ejet[idx3(m, mu, i, s)].clone();
                    mul(&einv[i * m + mu], &dk).scale(sig.eta(k)) + mul(&einv[k * m + mu], &di).scale(sig.eta(i))
                })));
            }
        }
    }
    Ok(out)
}

/// η^{ij} ω^k_j + η^{kj} ω^i_j, indexed [i][k][σ].
pub fn lorentz_condition_residual(omega: &SpinConnectionField, sig: &Signature) -> Result<Vec<Field>> {
    let m = omega.dim();
    sig.require_dim(m)?;
    let w = omega.entries();
    let mut out = Vec::with_capacity(m * m * m);
    for i in 0..m {
        for k in 0..m {
            for s in 0..m {
                out.push(w[idx3(m, k, i, s)].scale(sig.eta(i)) + w[idx3(m, i, k, s)].scale(sig.eta(k)));
            }
        }
    }
    Ok(out)
}

/// e^μ_{jσ} = ∂_σ e^μ_j − e^μ_i ω^i_{jσ}: the jet of a frame section horizontal for ω.
pub fn holonomic_jet(e: &FrameField, omega: &SpinConnectionField) -> Vec<Field> {
    let m = e.dim();
    let ef = e.entries();
    let w = omega.entries();
    let mut out = Vec::with_capacity(m * m * m);
    for mu in 0..m {
        for j in 0..m {
            for s in 0..m {
                out.push(ef[mu * m + j].partial(s) - sum((0..m).map(|i| mul(&ef[mu * m + i], &w[idx3(m, i, j, s)]))));
            }
        }
    }
    out
}

/// max over points and entries of |f|.
pub fn max_abs_over(fields: &[Field], points: &[Vec<f64>]) -> (f64, Vec<f64>) {
    let mut worst = (0.0, points.first().cloned().unwrap_or_default());
    for p in points {
        let mut ev = crate::forms::Evaluator::new(p, 0);
        for f in fields {
            let v = ev.eval(f).value().abs();
            if v > worst.0 || v.is_nan() {
                worst = (v, p.clone());
            }
        }
    }
    worst
}
