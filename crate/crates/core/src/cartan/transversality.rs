//! Transversality of subspace pairs through the sum of squared maximal minors.

use nalgebra::DMatrix;

/// Normalized threshold on F_k / ∏‖rows‖².
pub const TRANSVERSALITY_TOLERANCE: f64 = 1e-12;

/// Result of a transversality check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transversality {
    pub transverse: bool,
    /// Σ over all k×k minors of the stacked basis matrix of minor².
    pub minor_sum: f64,
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n - (k - cur.len()) {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// F_k = Σ (k×k minors of [V₁; V₂])², with k = dim V₁ + dim V₂; transverse iff F_k is positive
/// beyond roundoff relative to the row norms.
pub fn transversality_check(v1: &[Vec<f64>], v2: &[Vec<f64>], ambient_dim: usize) -> Transversality {
    let rows: Vec<&Vec<f64>> = v1.iter().chain(v2).collect();
    let k = rows.len();
    if k > ambient_dim {
        return Transversality { transverse: false, minor_sum: 0.0 };
    }
    if k == 0 {
        return Transversality { transverse: true, minor_sum: 1.0 };
    }
    let mut total = 0.0;
    for cols in combinations(ambient_dim, k) {
        let sub = DMatrix::from_fn(k, k, |r, c| rows[r][cols[c]]);
        let d = sub.determinant();
        total += d * d;
    }
    let norms: f64 = rows.iter().map(|r| r.iter().map(|x| x * x).sum::<f64>()).product();
    let transverse = norms > 0.0 && total / norms > TRANSVERSALITY_TOLERANCE;
    Transversality { transverse, minor_sum: total }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinate_axes() {
        let t = transversality_check(&[vec![1.0, 0.0, 0.0]], &[vec![0.0, 1.0, 0.0]], 3);
        assert!(t.transverse);
        assert_eq!(t.minor_sum, 1.0);
        let f = transversality_check(&[vec![1.0, 0.0, 0.0]], &[vec![1.0, 0.0, 0.0]], 3);
        assert!(!f.transverse);
        assert_eq!(f.minor_sum, 0.0);
    }

    #[test]
    fn too_many_vectors() {
        let e = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        assert!(!transversality_check(&e, &[vec![1.0, 1.0]], 2).transverse);
    }

    #[test]
    fn combination_count() {
        assert_eq!(combinations(12, 6).len(), 924);
        assert_eq!(combinations(4, 4).len(), 1);
    }
}
