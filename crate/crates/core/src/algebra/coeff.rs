use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::ratfunc::RationalFunction;
use super::rational::{fmt_rational, Rational};

/// The constant `e^c` for rational `c`. Multiplication adds exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct UnitExponent(pub Rational);

impl UnitExponent {
    pub fn one() -> Self {
        Self(Rational::zero())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_zero()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self(&self.0 + &other.0)
    }
}

/// Finite formal sum `Σ r_j(z)·e^{c_j}` with distinct rational `c_j`.
///
/// The units `e^c` are linearly independent over ℚ(z), so a sum is zero
/// exactly when every stored coefficient is; zero coefficients are never
/// stored and the zero sum is the empty map.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct CoefficientSum {
    terms: BTreeMap<Rational, RationalFunction>,
}

impl CoefficientSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::rational(RationalFunction::one())
    }

    /// `r·e^c`.
    pub fn term(r: RationalFunction, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(c, r);
        }
        Self { terms }
    }

    /// `r·e^0`.
    pub fn rational(r: RationalFunction) -> Self {
        Self::term(r, Rational::zero())
    }

    /// `1·e^c`.
    pub fn unit(c: Rational) -> Self {
        Self::term(RationalFunction::one(), c)
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

    pub fn terms(&self) -> impl Iterator<Item = (&Rational, &RationalFunction)> {
        self.terms.iter()
    }

    pub fn get(&self, c: &Rational) -> Option<&RationalFunction> {
        self.terms.get(c)
    }

    pub fn single_term(&self) -> Option<(&Rational, &RationalFunction)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// The coefficient as an element of ℚ(z), if it carries no unit other
    /// than `e^0`.
    pub fn as_rational(&self) -> Option<RationalFunction> {
        match self.terms.len() {
            0 => Some(RationalFunction::zero()),
            1 => self.terms.get(&Rational::zero()).cloned(),
            _ => None,
        }
    }

    /// Multiplies by `e^c`.
    pub fn shift_unit(&self, c: &Rational) -> Self {
        Self { terms: self.terms.iter().map(|(k, r)| (k + c, r.clone())).collect() }
    }

    pub fn mul_rational(&self, r: &RationalFunction) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(k, x)| (k.clone(), x * r)).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.mul_rational(&RationalFunction::constant(c.clone()))
    }

    /// Formal `d/dz`; the units are constants.
    pub fn derivative(&self) -> Self {
        let mut out = Self::zero();
        for (c, r) in &self.terms {
            out.add_term(c.clone(), r.derivative());
        }
        out
    }

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

    pub(crate) fn add_term(&mut self, c: Rational, r: RationalFunction) {
        if r.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(c) {
            Entry::Vacant(v) => {
                v.insert(r);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &r;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn add_impl(a: &Self, b: &Self) -> Self {
        let mut out = a.clone();
        for (c, r) in &b.terms {
            out.add_term(c.clone(), r.clone());
        }
        out
    }

    fn sub_impl(a: &Self, b: &Self) -> Self {
        Self::add_impl(a, &Self::neg_impl(b))
    }

    fn mul_impl(a: &Self, b: &Self) -> Self {
        let mut out = Self::zero();
        for (c1, r1) in &a.terms {
            for (c2, r2) in &b.terms {
                out.add_term(c1 + c2, r1 * r2);
            }
        }
        out
    }

    fn neg_impl(a: &Self) -> Self {
        Self { terms: a.terms.iter().map(|(c, r)| (c.clone(), -r)).collect() }
    }
}

super::forward_ring_ops!(
    CoefficientSum,
    CoefficientSum::add_impl,
    CoefficientSum::sub_impl,
    CoefficientSum::mul_impl,
    CoefficientSum::neg_impl
);

impl From<RationalFunction> for CoefficientSum {
    fn from(r: RationalFunction) -> Self {
        Self::rational(r)
    }
}

impl fmt::Display for CoefficientSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (c, r)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if c.is_zero() {
                write!(f, "{}", r.to_dsl_factor())?;
            } else {
                write!(f, "{}*exp({})", r.to_dsl_factor(), fmt_rational(c))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, Polynomial};

    #[test]
    fn identity_multiplication() {
        let x = CoefficientSum::term(RationalFunction::constant(int(7)), int(0)) + CoefficientSum::unit(int(3));
        assert_eq!(&x * &CoefficientSum::one(), x);
    }

    #[test]
    fn units_multiply_by_adding_exponents() {
        let x = CoefficientSum::unit(int(2)) * CoefficientSum::unit(int(-2));
        assert_eq!(x, CoefficientSum::one());
        assert_eq!(UnitExponent(int(2)).mul(&UnitExponent(int(-2))), UnitExponent::one());
    }

    #[test]
    fn constant_derivative_vanishes() {
        let x = CoefficientSum::term(RationalFunction::constant(int(5)), int(3));
        assert!(x.derivative().is_zero());
    }

    #[test]
    fn cancellation_removes_terms() {
        let a = CoefficientSum::term(RationalFunction::z(), int(1));
        assert!((&a - &a).is_zero());
        let b = &a + &CoefficientSum::one();
        assert_eq!(b.len(), 2);
        assert_eq!(b.as_rational(), None);
        assert_eq!(CoefficientSum::one().as_rational(), Some(RationalFunction::one()));
        assert_eq!(
            CoefficientSum::rational(RationalFunction::from(Polynomial::z())).derivative(),
            CoefficientSum::one()
        );
    }
}
