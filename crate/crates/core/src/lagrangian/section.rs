//! Jet sections over a chart and the connection forms they pull back.

use crate::cartan::{idx3, FrameField, SpinConnectionField};
use crate::error::{Error, Result};
use crate::forms::algebra;
use crate::forms::coeff::{mul, sum, Coeff};
use crate::forms::field::Evaluator;
use crate::forms::{Field, Jet, ValueSpace, ValuedForm};

fn check_len<C>(v: &[C], n: usize) -> Result<()> {
    if v.len() == n {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected: n, found: v.len() })
    }
}

/// x ↦ (e^μ_i(x), e^μ_{iσ}(x)), a section of J¹(LM) over a chart.
#[derive(Debug, Clone)]
pub struct LmSection<C> {
    m: usize,
    e: Vec<C>,
    ejet: Vec<C>,
}

/// x ↦ (e, v, ejet, vjet), a section of J¹(AM) over a chart.
#[derive(Debug, Clone)]
pub struct AmSection<C> {
    m: usize,
    e: Vec<C>,
    v: Vec<C>,
    ejet: Vec<C>,
    vjet: Vec<C>,
}

impl<C: Coeff> LmSection<C> {
    pub fn new(m: usize, e: Vec<C>, ejet: Vec<C>) -> Result<Self> {
        check_len(&e, m * m)?;
        check_len(&ejet, m * m * m)?;
        Ok(LmSection { m, e, ejet })
    }

    /// The section determined by a frame and a connection through e^μ_{jσ} = ∂_σ e^μ_j − e^μ_i ω^i_{jσ}.
    pub fn holonomic(m: usize, e: Vec<C>, omega: &[C]) -> Result<Self> {
        check_len(&e, m * m)?;
        check_len(omega, m * m * m)?;
        let mut ejet = Vec::with_capacity(m * m * m);
        for mu in 0..m {
            for j in 0..m {
                for s in 0..m {
                    let rot = sum((0..m).map(|i| mul(&e[mu * m + i], &omega[idx3(m, i, j, s)])));
                    ejet.push(e[mu * m + j].partial(s) - rot);
                }
            }
        }
        Ok(LmSection { m, e, ejet })
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn frame(&self) -> &[C] {
        &self.e
    }

    pub fn jet(&self) -> &[C] {
        &self.ejet
    }

    /// e^i_μ, row i.
    pub fn coframe(&self) -> Vec<C> {
        algebra::inverse(&self.e, self.m).0
    }

    /// φ = e^i_μ dx^μ ⊗ e_i.
    pub fn solder(&self) -> ValuedForm<C> {
        crate::cartan::frame::solder_from_coframe(&self.coframe(), self.m)
    }

    /// s*θ: the dx^α block has entry (j, i) equal to e^j_β(∂_α e^β_i − e^β_{iα}).
    pub fn connection(&self) -> ValuedForm<C> {
        let m = self.m;
        let einv = self.coframe();
        let per_dir = (0..m)
            .map(|a| {
                let diff: Vec<C> = (0..m * m)
                    .map(|k| self.e[k].partial(a) - self.ejet[idx3(m, k / m, k % m, a)].clone())
                    .collect();
                algebra::mat_mul(&einv, &diff, m)
            })
            .collect();
        ValuedForm::one_form(m, ValueSpace::Gl(m), per_dir)
    }

    /// The image under j: v = 0 and v^α_β = −e^α_i e^i_β = −δ^α_β.
    pub fn through_j(&self) -> AmSection<C> {
        let m = self.m;
        let vjet = (0..m * m).map(|k| if k / m == k % m { C::from_f64(-1.0) } else { C::zero() }).collect();
        AmSection { m, e: self.e.clone(), v: vec![C::zero(); m], ejet: self.ejet.clone(), vjet }
    }
}

impl<C: Coeff> AmSection<C> {
    pub fn new(m: usize, e: Vec<C>, v: Vec<C>, ejet: Vec<C>, vjet: Vec<C>) -> Result<Self> {
        check_len(&e, m * m)?;
        check_len(&v, m)?;
        check_len(&ejet, m * m * m)?;
        check_len(&vjet, m * m)?;
        Ok(AmSection { m, e, v, ejet, vjet })
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn frame(&self) -> &[C] {
        &self.e
    }

    pub fn origin(&self) -> &[C] {
        &self.v
    }

    pub fn frame_jet(&self) -> &[C] {
        &self.ejet
    }

    pub fn origin_jet(&self) -> &[C] {
        &self.vjet
    }

    pub fn coframe(&self) -> Vec<C> {
        algebra::inverse(&self.e, self.m).0
    }

    pub fn linear_part(&self) -> LmSection<C> {
        LmSection { m: self.m, e: self.e.clone(), ejet: self.ejet.clone() }
    }

    /// A_σ = σ*θ: gl part e⁻¹(∂_α e − ejet_α), vector part e^i_β(∂_α v^β − v^β_α).
    pub fn connection(&self) -> ValuedForm<C> {
        let m = self.m;
        let einv = self.coframe();
        let per_dir = (0..m)
            .map(|a| {
                let diff: Vec<C> = (0..m * m)
                    .map(|k| self.e[k].partial(a) - self.ejet[idx3(m, k / m, k % m, a)].clone())
                    .collect();
                let mut block = algebra::mat_mul(&einv, &diff, m);
                let dv: Vec<C> =
                    (0..m).map(|b| self.v[b].partial(a) - self.vjet[b * m + a].clone()).collect();
                block.extend(algebra::mat_vec(&einv, &dv, m));
                block
            })
            .collect();
        ValuedForm::one_form(m, ValueSpace::Aff(m), per_dir)
    }

    /// Pointwise right action of g(x) = (a, w): (e a, v + e w, ejet·a, vjet + ejet·w).
    pub fn act(&self, a: &[C], w: &[C]) -> Result<AmSection<C>> {
        let m = self.m;
        check_len(a, m * m)?;
        check_len(w, m)?;
        let e = algebra::mat_mul(&self.e, a, m);
        let v = self.v.iter().zip(algebra::mat_vec(&self.e, w, m)).map(|(x, y)| x.clone() + y).collect();
        let mut ejet = vec![C::zero(); m * m * m];
        let mut vjet = self.vjet.clone();
        for b in 0..m {
            for g in 0..m {
                for i in 0..m {
                    ejet[idx3(m, b, i, g)] = sum((0..m).map(|l| mul(&self.ejet[idx3(m, b, l, g)], &a[l * m + i])));
                }
                let shift = sum((0..m).map(|l| mul(&self.ejet[idx3(m, b, l, g)], &w[l])));
                vjet[b * m + g] = vjet[b * m + g].clone() + shift;
            }
        }
        Ok(AmSection { m, e, v, ejet, vjet })
    }
}

impl LmSection<Field> {
    /// The holonomic section of a frame and spin connection.
    pub fn from_fields(e: &FrameField, omega: &SpinConnectionField) -> Result<Self> {
        if e.dim() != omega.dim() {
            return Err(Error::DimensionMismatch { expected: e.dim(), found: omega.dim() });
        }
        LmSection::holonomic(e.dim(), e.entries().to_vec(), omega.entries())
    }

    pub fn eval_with(&self, ev: &mut Evaluator) -> LmSection<Jet> {
        let f = |v: &[Field], ev: &mut Evaluator| v.iter().map(|c| ev.eval(c)).collect();
        LmSection { m: self.m, e: f(&self.e, ev), ejet: f(&self.ejet, ev) }
    }
}

impl AmSection<Field> {
    pub fn eval_with(&self, ev: &mut Evaluator) -> AmSection<Jet> {
        let f = |v: &[Field], ev: &mut Evaluator| v.iter().map(|c| ev.eval(c)).collect();
        AmSection {
            m: self.m,
            e: f(&self.e, ev),
            v: f(&self.v, ev),
            ejet: f(&self.ejet, ev),
            vjet: f(&self.vjet, ev),
        }
    }
}
