//! Differential polynomials in `f` with rational-function coefficients.

use std::cmp::Ordering;
use std::collections::btree_map::{BTreeMap, Entry};

use crate::algebra::RationalFunction;
use crate::exppoly::ExpPolynomial;

/// `a_λ · Π (f^{(i)})^{λ_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffMonomial {
    pub coeff: RationalFunction,
    /// `λ_i` is the power of the `i`-th derivative; trailing zeros trimmed.
    pub exponents: Vec<u32>,
}

impl DiffMonomial {
    pub fn new(coeff: RationalFunction, mut exponents: Vec<u32>) -> Self {
        trim(&mut exponents);
        Self { coeff, exponents }
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }
}

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Sum of monomials with pairwise distinct exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DiffPolynomial {
    monomials: BTreeMap<Vec<u32>, RationalFunction>,
}

impl DiffPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_monomials(ms: impl IntoIterator<Item = DiffMonomial>) -> Self {
        let mut out = Self::zero();
        for m in ms {
            out.add_monomial(m);
        }
        out
    }

    /// Adds a monomial, merging with an existing one of the same shape.
    pub fn add_monomial(&mut self, m: DiffMonomial) {
        let DiffMonomial { coeff, mut exponents } = m;
        trim(&mut exponents);
        if coeff.is_zero() {
            return;
        }
        match self.monomials.entry(exponents) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn coeff(&self, exponents: &[u32]) -> Option<&RationalFunction> {
        self.monomials.get(exponents)
    }

    /// Monomials in printing order: higher degree first, then higher
    /// derivatives first.
    pub fn monomials(&self) -> Vec<DiffMonomial> {
        let mut out: Vec<DiffMonomial> =
            self.monomials.iter().map(|(e, c)| DiffMonomial { coeff: c.clone(), exponents: e.clone() }).collect();
        out.sort_by(|a, b| print_order(b, a));
        out
    }

    /// Total degree; `-1` for the zero polynomial so that every upper bound
    /// on the degree holds for it.
    ///
    /// ```
    /// use expsol::algebra::RationalFunction;
    /// use expsol::diffpoly::{DiffMonomial, DiffPolynomial};
    ///
    /// assert_eq!(DiffPolynomial::zero().degree(), -1);
    /// let p = DiffPolynomial::from_monomials([DiffMonomial::new(RationalFunction::one(), vec![0, 1])]);
    /// assert_eq!(p.degree(), 1);
    /// ```
    pub fn degree(&self) -> i64 {
        self.monomials.keys().map(|e| e.iter().map(|&x| i64::from(x)).sum()).max().unwrap_or(-1)
    }

    /// Highest derivative order that appears, if any.
    pub fn max_order(&self) -> Option<usize> {
        self.monomials.keys().filter(|e| !e.is_empty()).map(|e| e.len() - 1).max()
    }

    /// Substitutes `f`. Each derivative of `f` is computed once.
    pub fn evaluate(&self, f: &ExpPolynomial) -> ExpPolynomial {
        let mut derivs = vec![f.clone()];
        for _ in 0..self.max_order().unwrap_or(0) {
            let next = derivs.last().expect("nonempty").derivative();
            derivs.push(next);
        }
        let mut out = ExpPolynomial::zero();
        for (e, c) in &self.monomials {
            let mut term = ExpPolynomial::rational(c.clone());
            for (i, &p) in e.iter().enumerate() {
                if p > 0 {
                    term = &term * &derivs[i].pow(p);
                }
            }
            out = out + term;
        }
        out
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for m in other.monomials() {
            out.add_monomial(m);
        }
        out
    }
}

fn print_order(a: &DiffMonomial, b: &DiffMonomial) -> Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| a.exponents.len().cmp(&b.exponents.len()))
        .then_with(|| a.exponents.iter().rev().cmp(b.exponents.iter().rev()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat, Polynomial};

    fn m(c: i64, e: &[u32]) -> DiffMonomial {
        DiffMonomial::new(RationalFunction::constant(int(c)), e.to_vec())
    }

    fn exp_lin(c: Rational) -> ExpPolynomial {
        ExpPolynomial::term(RationalFunction::one(), Polynomial::monomial(c, 1))
    }

    use crate::algebra::Rational;

    #[test]
    fn degrees() {
        assert_eq!(DiffPolynomial::from_monomials([m(1, &[0, 1])]).degree(), 1);
        let zp1 = Polynomial::from_ints(&[1, 1]);
        let c = |k: i64, e: u32| RationalFunction::from(zp1.pow(e).scale(&int(k)));
        let p = DiffPolynomial::from_monomials([
            DiffMonomial::new(c(-6, 2), vec![0, 0, 2]),
            DiffMonomial::new(c(-3, 3), vec![0, 0, 1]),
            DiffMonomial::new(c(-1, 3), vec![1]),
        ]);
        assert_eq!(p.degree(), 2);
        assert_eq!(DiffPolynomial::zero().degree(), -1);
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        let p = DiffPolynomial::from_monomials([m(2, &[1, 0, 0]), m(3, &[1])]);
        assert_eq!(p.len(), 1);
        assert_eq!(p.coeff(&[1]), Some(&RationalFunction::constant(int(5))));
    }

    #[test]
    fn evaluate_mixed_polynomial() {
        let p = DiffPolynomial::from_monomials([m(10, &[1, 1]), m(5, &[0, 1]), m(1, &[])]);
        let f = exp_lin(int(1)) - ExpPolynomial::one();
        let expect = exp_lin(int(2)).scale(&int(10)) - exp_lin(int(1)).scale(&int(5)) + ExpPolynomial::one();
        assert_eq!(p.evaluate(&f), expect);
    }

    #[test]
    fn evaluate_second_derivative() {
        let p = DiffPolynomial::from_monomials([m(1, &[0, 0, 1])]);
        let f = exp_lin(rat(2, 7));
        assert_eq!(p.evaluate(&f), f.scale(&rat(4, 49)));
        assert!(DiffPolynomial::zero().evaluate(&f).is_zero());
    }

    #[test]
    fn printing_order() {
        let p = DiffPolynomial::from_monomials([m(-1, &[1]), m(1, &[0, 1]), m(4, &[1, 1])]);
        let shapes: Vec<_> = p.monomials().into_iter().map(|m| m.exponents).collect();
        assert_eq!(shapes, vec![vec![1, 1], vec![0, 1], vec![1]]);
    }
}
