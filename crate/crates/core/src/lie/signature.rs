use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Diagonal metric signature η on R^m.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SignatureRepr", into = "SignatureRepr")]
pub struct Signature {
    eta: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SignatureRepr {
    m: usize,
    eta: Vec<i32>,
}

impl TryFrom<SignatureRepr> for Signature {
    type Error = Error;
    fn try_from(r: SignatureRepr) -> Result<Self> {
        if r.eta.len() != r.m {
            return Err(Error::InvalidSignature(format!(
                "m = {} but eta has {} entries",
                r.m,
                r.eta.len()
            )));
        }
        Signature::new(r.eta.iter().map(|&s| s as f64).collect())
    }
}

impl From<Signature> for SignatureRepr {
    fn from(s: Signature) -> Self {
        SignatureRepr { m: s.dim(), eta: s.eta.iter().map(|&x| x as i32).collect() }
    }
}

impl Default for Signature {
    fn default() -> Self {
        Signature::lorentzian(3)
    }
}

impl Signature {
    pub fn new(eta: Vec<f64>) -> Result<Self> {
        if eta.is_empty() {
            return Err(Error::InvalidSignature("empty signature".into()));
        }
        if let Some(bad) = eta.iter().find(|&&s| s != 1.0 && s != -1.0) {
            return Err(Error::InvalidSignature(format!("entry {bad} is not ±1")));
        }
        Ok(Signature { eta })
    }

    /// diag(−1, 1, …, 1) on R^m.
    pub fn lorentzian(m: usize) -> Self {
        let mut eta = vec![1.0; m];
        eta[0] = -1.0;
        Signature { eta }
    }

    pub fn dim(&self) -> usize {
        self.eta.len()
    }

    /// η_{ii} (equal to η^{ii}).
    #[inline]
    pub fn eta(&self, i: usize) -> f64 {
        self.eta[i]
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.eta
    }

    pub fn matrix(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(&self.eta))
    }

    pub fn require_dim(&self, m: usize) -> Result<()> {
        if self.dim() == m {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: m, found: self.dim() })
        }
    }
}
