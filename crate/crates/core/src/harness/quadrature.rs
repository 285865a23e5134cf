//! Tensor-product Gauss–Legendre quadrature on chart boxes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::ChartBox;

pub const MAX_ORDER: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadratureKind {
    TensorGaussLegendre,
}

/// Tensor Gauss–Legendre with `order` nodes per axis; exact to degree 2·order − 1 per axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureRule {
    pub kind: QuadratureKind,
    pub order: usize,
}

impl Default for QuadratureRule {
    fn default() -> Self {
        QuadratureRule { kind: QuadratureKind::TensorGaussLegendre, order: 6 }
    }
}

/// Nodes and weights on [−1, 1], by Newton iteration on P_n.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for k in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for j in 2..=n {
                let p2 = ((2 * j - 1) as f64 * x * p1 - (j - 1) as f64 * p0) / j as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let step = p1 / dp;
            x -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[k] = -x;
        nodes[n - 1 - k] = x;
        weights[k] = w;
        weights[n - 1 - k] = w;
    }
    (nodes, weights)
}

impl QuadratureRule {
    pub fn new(order: usize) -> Result<Self> {
        let q = QuadratureRule { kind: QuadratureKind::TensorGaussLegendre, order };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        if self.order == 0 || self.order > MAX_ORDER {
            return Err(Error::InvalidInput(format!("quadrature order {} outside 1..={MAX_ORDER}", self.order)));
        }
        Ok(())
    }

    /// Nodes and weights on a box, with weights including the volume factor.
    pub fn nodes(&self, chart: &ChartBox) -> Vec<(Vec<f64>, f64)> {
        let (t, w) = gauss_legendre(self.order);
        let m = chart.dim();
        let total = self.order.pow(m as u32);
        let mut out = Vec::with_capacity(total);
        for flat in 0..total {
            let mut rest = flat;
            let mut x = Vec::with_capacity(m);
            let mut weight = 1.0;
            for mu in 0..m {
                let k = rest % self.order;
                rest /= self.order;
                let half = 0.5 * (chart.hi[mu] - chart.lo[mu]);
                x.push(chart.lo[mu] + half * (t[k] + 1.0));
                weight *= half * w[k];
            }
            out.push((x, weight));
        }
        out
    }

    pub fn integrate(&self, chart: &ChartBox, f: impl Fn(&[f64]) -> f64) -> f64 {
        self.nodes(chart).iter().map(|(x, w)| w * f(x)).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::Polynomial;

    #[test]
    fn weights_sum_to_two_and_nodes_are_symmetric() {
        for n in 1..12 {
            let (x, w) = gauss_legendre(n);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-13, "n = {n}");
            for k in 0..n {
                assert!((x[k] + x[n - 1 - k]).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn exact_for_degree_2n_minus_1() {
        let chart = ChartBox::new("U", vec![0.0, -1.0, 0.5], vec![1.0, 2.0, 1.5]).unwrap();
        let q = QuadratureRule::new(4).unwrap();
        let p = Polynomial::monomial(1.3, vec![7, 3, 5]);
        let exact = p.integrate_box(&chart.lo, &chart.hi);
        assert!((q.integrate(&chart, |x| p.eval(x)) - exact).abs() < 1e-12 * exact.abs().max(1.0));
        assert!((q.integrate(&ChartBox::unit(3), |_| 1.0) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn orders_are_validated() {
        assert!(QuadratureRule::new(0).is_err());
        assert!(QuadratureRule::new(MAX_ORDER + 1).is_err());
    }
}
