use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::jet::MAX_VARS;
use crate::error::{Error, Result};

/// Fraction of each side kept clear of the boundary when sampling.
const SAMPLE_MARGIN: f64 = 0.02;

/// An open coordinate box ∏ (lo_i, hi_i).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartBox {
    #[serde(default = "default_label")]
    pub label: String,
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

fn default_label() -> String {
    "U".into()
}

impl ChartBox {
    pub fn new(label: impl Into<String>, lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        let c = ChartBox { label: label.into(), lo, hi };
        c.validate()?;
        Ok(c)
    }

    pub fn unit(m: usize) -> Self {
        ChartBox { label: default_label(), lo: vec![0.0; m], hi: vec![1.0; m] }
    }

    pub fn validate(&self) -> Result<()> {
        if self.lo.len() != self.hi.len() || self.lo.is_empty() {
            return Err(Error::InvalidChart("lo and hi must be nonempty and of equal length".into()));
        }
        if self.lo.len() > MAX_VARS {
            return Err(Error::UnsupportedDimension { found: self.lo.len(), supported: "1..=4" });
        }
        if self.lo.iter().zip(&self.hi).any(|(a, b)| !(a < b) || !a.is_finite() || !b.is_finite()) {
            return Err(Error::InvalidChart(format!("{}: need lo < hi componentwise", self.label)));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn center(&self) -> Vec<f64> {
        self.lo.iter().zip(&self.hi).map(|(a, b)| 0.5 * (a + b)).collect()
    }

    pub fn volume(&self) -> f64 {
        self.lo.iter().zip(&self.hi).map(|(a, b)| b - a).product()
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim() && x.iter().zip(self.lo.iter().zip(&self.hi)).all(|(v, (a, b))| a < v && v < b)
    }

    /// Intersection with another box, if nonempty.
    pub fn intersect(&self, o: &ChartBox) -> Option<ChartBox> {
        if self.dim() != o.dim() {
            return None;
        }
        let lo: Vec<f64> = self.lo.iter().zip(&o.lo).map(|(a, b)| a.max(*b)).collect();
        let hi: Vec<f64> = self.hi.iter().zip(&o.hi).map(|(a, b)| a.min(*b)).collect();
        lo.iter()
            .zip(&hi)
            .all(|(a, b)| a < b)
            .then(|| ChartBox { label: format!("{}∩{}", self.label, o.label), lo, hi })
    }

    /// Deterministic uniform samples strictly inside the box.
    pub fn sample_points(&self, count: usize, seed: u64) -> Vec<Vec<f64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count)
            .map(|_| {
                self.lo
                    .iter()
                    .zip(&self.hi)
                    .map(|(a, b)| {
                        let u: f64 = rng.gen_range(SAMPLE_MARGIN..1.0 - SAMPLE_MARGIN);
                        a + (b - a) * u
                    })
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_are_interior_and_reproducible() {
        let c = ChartBox::new("V", vec![-1.0, 0.0, 2.0], vec![1.0, 0.5, 3.0]).unwrap();
        let a = c.sample_points(50, 7);
        assert!(a.iter().all(|x| c.contains(x)));
        assert_eq!(a, c.sample_points(50, 7));
        assert_ne!(a, c.sample_points(50, 8));
    }

    #[test]
    fn rejects_empty_box() {
        assert!(ChartBox::new("U", vec![0.0, 1.0], vec![1.0, 1.0]).is_err());
    }

    #[test]
    fn intersection() {
        let a = ChartBox::unit(2);
        let b = ChartBox::new("V", vec![0.5, -1.0], vec![2.0, 0.5]).unwrap();
        let c = a.intersect(&b).unwrap();
        assert_eq!((c.lo, c.hi), (vec![0.5, 0.0], vec![1.0, 0.5]));
        let far = ChartBox::new("W", vec![5.0, 5.0], vec![6.0, 6.0]).unwrap();
        assert!(a.intersect(&far).is_none());
    }
}
