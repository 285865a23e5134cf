//! Fully tabulated Levi-Civita symbols, ε_{01…(m−1)} = +1.

use std::sync::OnceLock;

pub const MAX_LEVI_CIVITA_DIM: usize = 4;

/// Dense ε table with m^m entries.
#[derive(Debug)]
pub struct LeviCivita {
    m: usize,
    table: Vec<i8>,
}

impl LeviCivita {
    fn build(m: usize) -> Self {
        let size = m.pow(m as u32);
        let mut table = vec![0i8; size];
        for (flat, slot) in table.iter_mut().enumerate() {
            let idx = unflatten(flat, m);
            *slot = permutation_sign(&idx);
        }
        LeviCivita { m, table }
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn get(&self, idx: &[usize]) -> f64 {
        debug_assert_eq!(idx.len(), self.m);
        let mut flat = 0;
        for &i in idx {
            flat = flat * self.m + i;
        }
        self.table[flat] as f64
    }

    #[inline]
    pub fn get3(&self, i: usize, j: usize, k: usize) -> f64 {
        self.table[(i * self.m + j) * self.m + k] as f64
    }

    #[inline]
    pub fn get4(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        self.table[((i * self.m + j) * self.m + k) * self.m + l] as f64
    }
}

fn unflatten(mut flat: usize, m: usize) -> Vec<usize> {
    let mut idx = vec![0; m];
    for slot in idx.iter_mut().rev() {
        *slot = flat % m;
        flat /= m;
    }
    idx
}

/// Sign of a permutation of 0..n, or 0 when entries repeat.
pub fn permutation_sign(idx: &[usize]) -> i8 {
    let mut sign = 1i8;
    for a in 0..idx.len() {
        for b in a + 1..idx.len() {
            if idx[a] == idx[b] {
                return 0;
            }
            if idx[a] > idx[b] {
                sign = -sign;
            }
        }
    }
    sign
}

/// The tabulated symbol for 1 ≤ m ≤ 4.
pub fn levi_civita(m: usize) -> &'static LeviCivita {
    static TABLES: OnceLock<Vec<LeviCivita>> = OnceLock::new();
    assert!(
        (1..=MAX_LEVI_CIVITA_DIM).contains(&m),
        "Levi-Civita symbol tabulated for m ≤ {MAX_LEVI_CIVITA_DIM}"
    );
    &TABLES.get_or_init(|| (1..=MAX_LEVI_CIVITA_DIM).map(LeviCivita::build).collect())[m - 1]
}
