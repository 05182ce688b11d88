//! Reference computations that share no code with the library.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

type Q = BigRational;

fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// `Σ c·e^{s·z}` with rational slopes and constant coefficients.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct LinExp(pub BTreeMap<Q, Q>);

impl LinExp {
    pub fn term(c: (i64, i64), s: (i64, i64)) -> Self {
        let mut m = BTreeMap::new();
        m.insert(q(s.0, s.1), q(c.0, c.1));
        Self(m).clean()
    }

    pub fn constant(c: i64) -> Self {
        Self::term((c, 1), (0, 1))
    }

    fn clean(mut self) -> Self {
        self.0.retain(|_, c| *c != q(0, 1));
        self
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut m = self.0.clone();
        for (s, c) in &o.0 {
            let e = m.entry(s.clone()).or_insert_with(|| q(0, 1));
            *e += c;
        }
        Self(m).clean()
    }

    pub fn scale(&self, k: i64) -> Self {
        Self(self.0.iter().map(|(s, c)| (s.clone(), c * q(k, 1))).collect()).clean()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::default();
        for (s1, c1) in &self.0 {
            for (s2, c2) in &o.0 {
                let mut m = BTreeMap::new();
                m.insert(s1 + s2, c1 * c2);
                out = out.add(&Self(m));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(1), |acc, _| acc.mul(self))
    }

    pub fn deriv(&self) -> Self {
        Self(self.0.iter().map(|(s, c)| (s.clone(), c * s)).collect()).clean()
    }

    /// Entries as `(slope, coefficient)` in increasing slope order.
    pub fn entries(&self) -> Vec<(Q, Q)> {
        self.0.iter().map(|(s, c)| (s.clone(), c.clone())).collect()
    }
}

/// Determinant by the permutation (Leibniz) formula.
pub fn det_permutations(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut idx: Vec<usize> = (0..n).collect();
    let mut total = q(0, 1);
    permute(&mut idx, 0, &mut |p| {
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        let mut prod = q(1, 1);
        for (r, &c) in p.iter().enumerate() {
            prod *= &m[r][c];
        }
        if inversions % 2 == 0 {
            total += prod;
        } else {
            total -= prod;
        }
    });
    total
}

fn permute(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, f);
        v.swap(k, i);
    }
}

/// Rows `t = 0..k` of `d^t/dz^t Σ p_i e^{s_i z}` for constant `p_i`:
/// entry `(t, i) = p_i·s_i^t`.
pub fn linear_rows(p: &[Q], s: &[Q]) -> Vec<Vec<Q>> {
    let k = p.len();
    (0..k).map(|t| p.iter().zip(s).map(|(pi, si)| pi * num_traits::pow(si.clone(), t)).collect()).collect()
}

/// Double-precision `e^w`, to compare with the fixed-point routine.
pub fn exp_f64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im).exp()
}
