//! Exponential polynomials `Σ c_g(z)·e^{g(z)}` over the coefficient ring
//! ℚ(z)[e^c].
//!
//! Every stored exponent has zero constant term; constants are folded into
//! the `e^c` units of the coefficient. Two distinct stored exponents then
//! differ by a nonconstant polynomial, so the family `e^g` is linearly
//! independent over the coefficients and the zero test is termwise.

use std::collections::btree_map::{BTreeMap, Entry};
use std::fmt;

use num_traits::Zero;

use crate::algebra::{CoefficientSum, Polynomial, Rational, RationalFunction};
use crate::numeric::{self, GaussianRational, HpComplex, NumericError};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ExpPolynomial {
    terms: BTreeMap<Polynomial, CoefficientSum>,
}

impl ExpPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::rational(RationalFunction::one())
    }

    /// `r·e^g`, with the constant term of `g` moved into the unit.
    ///
    /// ```
    /// use expsol::algebra::{int, Polynomial, RationalFunction};
    /// use expsol::exppoly::ExpPolynomial;
    ///
    /// let x = ExpPolynomial::term(RationalFunction::one(), Polynomial::from_ints(&[2, 0, 1]));
    /// let (g, c) = x.single_term().unwrap();
    /// assert_eq!(g, &Polynomial::from_ints(&[0, 0, 1]));
    /// assert_eq!(c.get(&int(2)), Some(&RationalFunction::one()));
    /// ```
    pub fn term(r: RationalFunction, g: Polynomial) -> Self {
        Self::with_coeff(CoefficientSum::rational(r), g)
    }

    /// `c·e^g` for an arbitrary coefficient sum.
    pub fn with_coeff(c: CoefficientSum, g: Polynomial) -> Self {
        let mut out = Self::zero();
        out.add_term(g, c);
        out
    }

    /// A term with exponent zero.
    pub fn rational(r: RationalFunction) -> Self {
        Self::term(r, Polynomial::zero())
    }

    pub fn constant(c: Rational) -> Self {
        Self::rational(RationalFunction::constant(c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Exponents in increasing order with their coefficients.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Polynomial, &CoefficientSum)> {
        self.terms.iter()
    }

    pub fn get(&self, g: &Polynomial) -> Option<&CoefficientSum> {
        self.terms.get(g)
    }

    pub fn exponents(&self) -> impl Iterator<Item = &Polynomial> {
        self.terms.keys()
    }

    pub fn single_term(&self) -> Option<(&Polynomial, &CoefficientSum)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// The coefficient of `e^0` when that is the only term.
    pub fn as_coefficient(&self) -> Option<&CoefficientSum> {
        self.single_term().filter(|(g, _)| g.is_zero()).map(|(_, c)| c)
    }

    /// Checks the storage invariants; always true for values built through
    /// this API.
    pub fn is_canonical(&self) -> bool {
        self.terms.iter().all(|(g, c)| g.constant_term().is_zero() && !c.is_zero())
    }

    pub(crate) fn add_term(&mut self, g: Polynomial, c: CoefficientSum) {
        let shift = g.constant_term();
        let (g, c) = if shift.is_zero() { (g, c) } else { (g.without_constant(), c.shift_unit(&shift)) };
        if c.is_zero() {
            return;
        }
        match self.terms.entry(g) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.mul_coeff(&CoefficientSum::rational(RationalFunction::constant(c.clone())))
    }

    pub fn mul_rational(&self, r: &RationalFunction) -> Self {
        self.mul_coeff(&CoefficientSum::rational(r.clone()))
    }

    pub fn mul_coeff(&self, k: &CoefficientSum) -> Self {
        let mut out = Self::zero();
        for (g, c) in &self.terms {
            out.add_term(g.clone(), c * k);
        }
        out
    }

    /// Binary powering; `x^0 = 1`.
    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `(c·e^g)' = (c' + c·g')·e^g`, termwise.
    pub fn derivative(&self) -> Self {
        let mut out = Self::zero();
        for (g, c) in &self.terms {
            let dg = RationalFunction::from(g.derivative());
            out.add_term(g.clone(), c.derivative() + c.mul_rational(&dg));
        }
        out
    }

    /// `k`-th derivative.
    pub fn derivative_n(&self, k: usize) -> Self {
        (0..k).fold(self.clone(), |x, _| x.derivative())
    }

    /// Numeric value at a Gaussian-rational point with `bits` fractional
    /// bits. Refuses points within [`numeric::POLE_EXCLUSION_RADIUS`] of a
    /// coefficient pole.
    pub fn eval_numeric(&self, z0: &GaussianRational, bits: u32) -> Result<HpComplex, NumericError> {
        if bits < 64 {
            return Err(NumericError::PrecisionTooLow(bits));
        }
        let work = bits + 32;
        let mut acc = HpComplex::zero(work);
        for (g, c) in &self.terms {
            let gz = numeric::eval_poly(g, z0);
            for (u, r) in c.terms() {
                if numeric::near_root(r.den(), z0) {
                    return Err(NumericError::PoleAtSample {
                        point: z0.clone(),
                        radius: numeric::POLE_EXCLUSION_RADIUS,
                    });
                }
                let rz = numeric::eval_rational_function(r, z0).expect("pole excluded above");
                let w = gz.add(&GaussianRational::real(u.clone()));
                let term = HpComplex::from_gaussian(&rz, work).mul(&numeric::exp(&w, work));
                acc = acc.add(&term);
            }
        }
        Ok(acc.truncate_to(bits))
    }

    fn add_impl(a: &Self, b: &Self) -> Self {
        let mut out = a.clone();
        for (g, c) in &b.terms {
            out.add_term(g.clone(), c.clone());
        }
        out
    }

    fn sub_impl(a: &Self, b: &Self) -> Self {
        Self::add_impl(a, &Self::neg_impl(b))
    }

    fn mul_impl(a: &Self, b: &Self) -> Self {
        let mut out = Self::zero();
        for (g1, c1) in &a.terms {
            for (g2, c2) in &b.terms {
                out.add_term(g1 + g2, c1 * c2);
            }
        }
        out
    }

    fn neg_impl(a: &Self) -> Self {
        Self { terms: a.terms.iter().map(|(g, c)| (g.clone(), -c)).collect() }
    }
}

crate::algebra::forward_ring_ops!(
    ExpPolynomial,
    ExpPolynomial::add_impl,
    ExpPolynomial::sub_impl,
    ExpPolynomial::mul_impl,
    ExpPolynomial::neg_impl
);

crate::algebra::serialize_display!(ExpPolynomial);

impl From<RationalFunction> for ExpPolynomial {
    fn from(r: RationalFunction) -> Self {
        Self::rational(r)
    }
}

impl From<CoefficientSum> for ExpPolynomial {
    fn from(c: CoefficientSum) -> Self {
        Self::with_coeff(c, Polynomial::zero())
    }
}

impl fmt::Display for ExpPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::frontend::print_function(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn z() -> Polynomial {
        Polynomial::z()
    }

    fn e(g: Polynomial) -> ExpPolynomial {
        ExpPolynomial::term(RationalFunction::one(), g)
    }

    fn k(c: i64) -> ExpPolynomial {
        ExpPolynomial::constant(int(c))
    }

    #[test]
    fn term_folds_constant_into_unit() {
        let r = RationalFunction::new(Polynomial::z(), Polynomial::from_ints(&[1, 1])).unwrap();
        let x = ExpPolynomial::term(r.clone(), Polynomial::from_ints(&[2, 0, 1]));
        assert_eq!(x.get(&Polynomial::from_ints(&[0, 0, 1])), Some(&CoefficientSum::term(r, int(2))));
        assert!(x.is_canonical());
    }

    #[test]
    fn trivial_terms() {
        assert_eq!(ExpPolynomial::term(RationalFunction::one(), Polynomial::zero()), ExpPolynomial::one());
        assert!(ExpPolynomial::term(RationalFunction::zero(), z().pow(3)).is_zero());
    }

    #[test]
    fn cube_of_binomial() {
        let x = (e(z()) + k(1)).pow(3);
        let expect = e(z().scale(&int(3))) + e(z().scale(&int(2))).scale(&int(3)) + e(z()).scale(&int(3)) + k(1);
        assert_eq!(x, expect);
    }

    #[test]
    fn pow_edge_cases() {
        let x = e(z()) - k(1);
        assert_eq!(x.pow(1), x);
        assert_eq!(x.pow(0), ExpPolynomial::one());
        assert_eq!(&x * &(e(z()) + k(1)), e(z().scale(&int(2))) - k(1));
    }

    #[test]
    fn derivative_of_rational_times_gaussian() {
        let r = RationalFunction::new(Polynomial::z(), Polynomial::from_ints(&[1, 1])).unwrap();
        let g = Polynomial::from_ints(&[2, 0, 1]);
        let d = ExpPolynomial::term(r, g.clone()).derivative();
        let expect =
            RationalFunction::new(Polynomial::from_ints(&[1, 0, 2, 2]), Polynomial::from_ints(&[1, 2, 1])).unwrap();
        assert_eq!(d, ExpPolynomial::term(expect, g));
    }

    #[test]
    fn derivative_scales_linear_exponent() {
        let g = z().scale(&rat(2, 3));
        assert_eq!(e(g.clone()).derivative(), e(g).scale(&rat(2, 3)));
        assert!(k(1).derivative().is_zero());
    }

    #[test]
    fn zero_test_after_constant_folding() {
        let x = e(z().scale(&int(2)));
        assert!((&x - &x).is_zero());
        let shifted = e(Polynomial::from_ints(&[1, 2])).mul_coeff(&CoefficientSum::unit(int(-1)));
        assert!((&x - &shifted).is_zero());
        assert!(!(x - e(z())).is_zero());
    }

    #[test]
    fn numeric_value_at_origin() {
        let x = e(z()) + k(1);
        let v = x.eval_numeric(&GaussianRational::zero(), 128).unwrap();
        assert!(v.sub(&HpComplex::one(128).add(&HpComplex::one(128))).norm_f64() < 1e-30);
        // Different exponents can still agree at a single point.
        let y = e(z().scale(&int(2))) - e(z());
        assert!(y.eval_numeric(&GaussianRational::zero(), 128).unwrap().norm_f64() < 1e-30);
    }

    #[test]
    fn numeric_refuses_poles() {
        let r = RationalFunction::new(Polynomial::one(), Polynomial::from_ints(&[1, 1])).unwrap();
        let x = ExpPolynomial::term(r, z());
        let err = x.eval_numeric(&GaussianRational::real(int(-1)), 128).unwrap_err();
        assert!(matches!(err, NumericError::PoleAtSample { .. }));
    }
}
