//! Truncated multivariate Taylor expansions (higher-order dual numbers).
//!
//! A `Jet` over n variables of order k stores the coefficients c_α of
//! f(x + h) = Σ_{|α| ≤ k} c_α h^α. Products, quotients and elementary
//! functions are exact up to truncation, so every partial derivative of
//! order ≤ k is exact to roundoff.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::OnceLock;

pub const MAX_VARS: usize = 4;
pub const MAX_ORDER: usize = 2;
/// C(MAX_VARS + MAX_ORDER, MAX_ORDER).
pub const CAPACITY: usize = 15;

const CONSTANT_ORDER: u8 = u8::MAX;

type Exponent = [u8; MAX_VARS];

struct Layout {
    exps: Vec<Exponent>,
    /// counts[k] = number of monomials of degree ≤ k.
    counts: [usize; MAX_ORDER + 1],
    /// (i, j, k) with α_i + α_j = α_k, sorted by |α_k|.
    mul: Vec<(u8, u8, u8)>,
    mul_counts: [usize; MAX_ORDER + 1],
    /// Per variable: (src, dst, factor) with α_dst = α_src − e_μ, sorted by |α_src|.
    deriv: Vec<Vec<(u8, u8, f64)>>,
    deriv_counts: Vec<[usize; MAX_ORDER + 1]>,
    unit: [u8; MAX_VARS],
}

fn degree(e: &Exponent) -> usize {
    e.iter().map(|&x| x as usize).sum()
}

impl Layout {
    fn build(n: usize) -> Layout {
        let mut exps: Vec<Exponent> = Vec::new();
        let mut cur = [0u8; MAX_VARS];
        fn rec(var: usize, n: usize, left: usize, cur: &mut Exponent, out: &mut Vec<Exponent>) {
            if var == n {
                out.push(*cur);
                return;
            }
            for p in 0..=left {
                cur[var] = p as u8;
                rec(var + 1, n, left - p, cur, out);
            }
            cur[var] = 0;
        }
        rec(0, n, MAX_ORDER, &mut cur, &mut exps);
        exps.sort_by(|a, b| degree(a).cmp(&degree(b)).then_with(|| b.cmp(a)));
        let mut counts = [0; MAX_ORDER + 1];
        for (k, c) in counts.iter_mut().enumerate() {
            *c = exps.iter().filter(|e| degree(e) <= k).count();
        }
        let find = |e: &Exponent| exps.iter().position(|x| x == e);
        let mut mul = Vec::new();
        for (i, a) in exps.iter().enumerate() {
            for (j, b) in exps.iter().enumerate() {
                if degree(a) + degree(b) > MAX_ORDER {
                    continue;
                }
                let mut s = [0u8; MAX_VARS];
                for v in 0..MAX_VARS {
                    s[v] = a[v] + b[v];
                }
                let k = find(&s).expect("sum exponent present");
                mul.push((i as u8, j as u8, k as u8));
            }
        }
        mul.sort_by_key(|&(_, _, k)| degree(&exps[k as usize]));
        let mut mul_counts = [0; MAX_ORDER + 1];
        for (d, c) in mul_counts.iter_mut().enumerate() {
            *c = mul.iter().filter(|t| degree(&exps[t.2 as usize]) <= d).count();
        }
        let mut deriv = Vec::new();
        let mut deriv_counts = Vec::new();
        let mut unit = [0u8; MAX_VARS];
        for mu in 0..n {
            let mut e = [0u8; MAX_VARS];
            e[mu] = 1;
            unit[mu] = find(&e).unwrap() as u8;
            let mut table: Vec<(u8, u8, f64)> = Vec::new();
            for (src, a) in exps.iter().enumerate() {
                if a[mu] == 0 {
                    continue;
                }
                let mut d = *a;
                d[mu] -= 1;
                table.push((src as u8, find(&d).unwrap() as u8, a[mu] as f64));
            }
            table.sort_by_key(|&(s, _, _)| degree(&exps[s as usize]));
            let mut cnt = [0; MAX_ORDER + 1];
            for (k, c) in cnt.iter_mut().enumerate() {
                *c = table.iter().filter(|t| degree(&exps[t.0 as usize]) <= k).count();
            }
            deriv.push(table);
            deriv_counts.push(cnt);
        }
        Layout { exps, counts, mul, mul_counts, deriv, deriv_counts, unit }
    }
}

fn layout(n: usize) -> &'static Layout {
    static LAYOUTS: OnceLock<Vec<Layout>> = OnceLock::new();
    &LAYOUTS.get_or_init(|| (0..=MAX_VARS).map(Layout::build).collect())[n]
}

/// Number of Taylor coefficients for n variables at order k.
pub fn jet_len(n: usize, k: usize) -> usize {
    layout(n).counts[k]
}

#[derive(Clone, Copy)]
pub struct Jet {
    nvars: u8,
    order: u8,
    c: [f64; CAPACITY],
}

impl fmt::Debug for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_constant() {
            write!(f, "Jet(const {})", self.c[0])
        } else {
            write!(f, "Jet(n={}, k={}, {:?})", self.nvars, self.order, &self.c[..self.len()])
        }
    }
}

impl Jet {
    /// A constant, compatible with jets of any shape.
    pub fn constant(v: f64) -> Jet {
        let mut c = [0.0; CAPACITY];
        c[0] = v;
        Jet { nvars: 0, order: CONSTANT_ORDER, c }
    }

    /// The coordinate function x_i expanded at `value`.
    pub fn variable(nvars: usize, order: usize, i: usize, value: f64) -> Jet {
        assert!(nvars <= MAX_VARS && order <= MAX_ORDER && i < nvars);
        let mut c = [0.0; CAPACITY];
        c[0] = value;
        if order > 0 {
            c[layout(nvars).unit[i] as usize] = 1.0;
        }
        Jet { nvars: nvars as u8, order: order as u8, c }
    }

    /// A jet with the given value and every higher coefficient zero.
    pub fn lifted(nvars: usize, order: usize, value: f64) -> Jet {
        let mut c = [0.0; CAPACITY];
        c[0] = value;
        Jet { nvars: nvars as u8, order: order as u8, c }
    }

    /// A jet whose coefficient at each multi-index α (|α| ≤ order) is `coeff(α)`.
    pub fn from_coefficients(nvars: usize, order: usize, mut coeff: impl FnMut(&[u8]) -> f64) -> Jet {
        assert!(nvars <= MAX_VARS && order <= MAX_ORDER);
        let lay = layout(nvars);
        let mut c = [0.0; CAPACITY];
        for (slot, e) in c.iter_mut().zip(&lay.exps[..lay.counts[order]]) {
            *slot = coeff(&e[..nvars]);
        }
        Jet { nvars: nvars as u8, order: order as u8, c }
    }

    pub fn is_constant(&self) -> bool {
        self.order == CONSTANT_ORDER
    }

    pub fn nvars(&self) -> usize {
        self.nvars as usize
    }

    /// Truncation order; constants report `None`.
    pub fn order(&self) -> Option<usize> {
        (!self.is_constant()).then_some(self.order as usize)
    }

    fn len(&self) -> usize {
        if self.is_constant() {
            1
        } else {
            layout(self.nvars as usize).counts[self.order as usize]
        }
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// Taylor coefficients in graded order.
    pub fn coefficients(&self) -> &[f64] {
        &self.c[..self.len()]
    }

    /// The exact partial derivative ∂^α f at the expansion point.
    pub fn derivative(&self, alpha: &[usize]) -> f64 {
        let total: usize = alpha.iter().sum();
        if self.is_constant() {
            return if total == 0 { self.c[0] } else { 0.0 };
        }
        assert!(total <= self.order as usize, "derivative exceeds jet order");
        let mut e = [0u8; MAX_VARS];
        let mut factorial = 1.0;
        for (v, &a) in alpha.iter().enumerate() {
            e[v] = a as u8;
            for t in 1..=a {
                factorial *= t as f64;
            }
        }
        let lay = layout(self.nvars as usize);
        let idx = lay.exps.iter().position(|x| *x == e).unwrap();
        self.c[idx] * factorial
    }

    pub fn first_partial(&self, mu: usize) -> f64 {
        if self.is_constant() {
            return 0.0;
        }
        assert!(self.order >= 1);
        self.c[layout(self.nvars as usize).unit[mu] as usize]
    }

    /// Reduces the truncation order.
    pub fn truncate(&self, order: usize) -> Jet {
        if self.is_constant() || order >= self.order as usize {
            return *self;
        }
        let mut out = *self;
        out.order = order as u8;
        let start = out.len();
        for x in &mut out.c[start..self.len()] {
            *x = 0.0;
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.coefficients().iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn is_exact_zero(&self) -> bool {
        self.coefficients().iter().all(|&x| x == 0.0)
    }

    fn shape(a: &Jet, b: &Jet) -> (u8, u8) {
        match (a.is_constant(), b.is_constant()) {
            (true, true) => (0, CONSTANT_ORDER),
            (true, false) => (b.nvars, b.order),
            (false, true) => (a.nvars, a.order),
            (false, false) => {
                assert_eq!(a.nvars, b.nvars, "jets over different variable counts");
                (a.nvars, a.order.min(b.order))
            }
        }
    }

    fn linear(a: &Jet, b: &Jet, sa: f64, sb: f64) -> Jet {
        let (nvars, order) = Jet::shape(a, b);
        let mut out = Jet { nvars, order, c: [0.0; CAPACITY] };
        let n = out.len();
        let la = a.len().min(n);
        let lb = b.len().min(n);
        for i in 0..la {
            out.c[i] += sa * a.c[i];
        }
        for i in 0..lb {
            out.c[i] += sb * b.c[i];
        }
        out
    }

    /// self += s · o, keeping the lower truncation order.
    pub fn axpy(&mut self, s: f64, o: &Jet) {
        if self.is_constant() && !o.is_constant() {
            let mut out = o.scale(s);
            out.c[0] += self.c[0];
            *self = out;
            return;
        }
        if !o.is_constant() && o.order < self.order {
            self.order = o.order;
        }
        let n = self.len().min(o.len());
        for (x, y) in self.c[..n].iter_mut().zip(&o.c[..n]) {
            *x += s * y;
        }
    }

    pub fn scale(&self, s: f64) -> Jet {
        let mut out = *self;
        let n = out.len();
        for x in &mut out.c[..n] {
            *x *= s;
        }
        out
    }

    fn product(a: &Jet, b: &Jet) -> Jet {
        if a.is_constant() {
            return b.scale(a.c[0]);
        }
        if b.is_constant() {
            return a.scale(b.c[0]);
        }
        let (nvars, order) = Jet::shape(a, b);
        let lay = layout(nvars as usize);
        let mut c = [0.0; CAPACITY];
        for &(i, j, k) in &lay.mul[..lay.mul_counts[order as usize]] {
            c[k as usize] += a.c[i as usize] * b.c[j as usize];
        }
        Jet { nvars, order, c }
    }

    /// f(self) from the Taylor coefficients t_n = f^{(n)}(a₀)/n! of f at a₀ = value.
    fn compose(&self, taylor: &[f64]) -> Jet {
        if self.is_constant() || self.order == 0 {
            let mut out = *self;
            out.c[0] = taylor[0];
            return out;
        }
        let k = self.order as usize;
        let mut h = *self;
        h.c[0] = 0.0;
        let mut r = Jet::lifted(self.nvars as usize, k, taylor[k]);
        for n in (0..k).rev() {
            r = Jet::product(&r, &h);
            r.c[0] += taylor[n];
        }
        r
    }

    fn taylor_len(&self) -> usize {
        if self.is_constant() {
            1
        } else {
            self.order as usize + 1
        }
    }

    pub fn recip(&self) -> Jet {
        let a0 = self.c[0];
        let t: Vec<f64> = (0..self.taylor_len())
            .map(|n| if n % 2 == 0 { 1.0 } else { -1.0 } / a0.powi(n as i32 + 1))
            .collect();
        self.compose(&t)
    }

    pub fn sqrt(&self) -> Jet {
        let a0 = self.c[0];
        let mut t = Vec::with_capacity(self.taylor_len());
        let mut binom = 1.0;
        for n in 0..self.taylor_len() {
            t.push(binom * a0.powf(0.5 - n as f64));
            binom *= (0.5 - n as f64) / (n as f64 + 1.0);
        }
        self.compose(&t)
    }

    pub fn exp(&self) -> Jet {
        let e = self.c[0].exp();
        let mut t = Vec::new();
        let mut fact = 1.0;
        for n in 0..self.taylor_len() {
            if n > 0 {
                fact *= n as f64;
            }
            t.push(e / fact);
        }
        self.compose(&t)
    }

    fn cyclic(&self, derivs: [f64; 4]) -> Jet {
        let mut t = Vec::new();
        let mut fact = 1.0;
        for n in 0..self.taylor_len() {
            if n > 0 {
                fact *= n as f64;
            }
            t.push(derivs[n % 4] / fact);
        }
        self.compose(&t)
    }

    pub fn sin(&self) -> Jet {
        let (s, c) = self.c[0].sin_cos();
        self.cyclic([s, c, -s, -c])
    }

    pub fn cos(&self) -> Jet {
        let (s, c) = self.c[0].sin_cos();
        self.cyclic([c, -s, -c, s])
    }

    pub fn sinh(&self) -> Jet {
        let (s, c) = (self.c[0].sinh(), self.c[0].cosh());
        self.cyclic([s, c, s, c])
    }

    pub fn cosh(&self) -> Jet {
        let (s, c) = (self.c[0].sinh(), self.c[0].cosh());
        self.cyclic([c, s, c, s])
    }

    /// ∂_μ, lowering the order by one.
    pub fn partial(&self, mu: usize) -> Jet {
        if self.is_constant() {
            return Jet::constant(0.0);
        }
        assert!(mu < self.nvars as usize, "partial index out of range");
        assert!(self.order > 0, "partial of an order-0 jet");
        let lay = layout(self.nvars as usize);
        let k = self.order as usize;
        let mut c = [0.0; CAPACITY];
        for &(src, dst, f) in &lay.deriv[mu][..lay.deriv_counts[mu][k]] {
            c[dst as usize] = f * self.c[src as usize];
        }
        Jet { nvars: self.nvars, order: self.order - 1, c }
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        Jet::linear(&self, &o, 1.0, 1.0)
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        Jet::linear(&self, &o, 1.0, -1.0)
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        Jet::product(&self, &o)
    }
}

impl Div for Jet {
    type Output = Jet;
    fn div(self, o: Jet) -> Jet {
        if o.is_constant() {
            return self.scale(1.0 / o.c[0]);
        }
        Jet::product(&self, &o.recip())
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}
