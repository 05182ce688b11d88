use std::fmt;

use num_traits::{One, Signed, Zero};

use super::poly::Polynomial;
use super::rational::{fmt_rational, Rational};
use super::AlgebraError;

/// Quotient of two polynomials in lowest terms.
///
/// Canonical form: `gcd(num, den) = 1`, `den` monic, and zero is `0/1`. Two
/// rational functions are equal exactly when their canonical forms are.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides"))
            }
        };
        let lc = den.leading_coeff().expect("nonzero denominator").clone();
        if lc.is_one() {
            Self { num, den }
        } else {
            let inv = lc.recip();
            Self { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn zero() -> Self {
        Self { num: Polynomial::zero(), den: Polynomial::one() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self { num: Polynomial::constant(c), den: Polynomial::one() }
    }

    pub fn z() -> Self {
        Self::from(Polynomial::z())
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The value when this is a constant (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        (self.den.is_one() && self.num.is_constant()).then(|| self.num.constant_term())
    }

    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, AlgebraError> {
        if other.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::normalize(&self.num * &other.den, &self.den * &other.num))
    }

    pub fn recip(&self) -> Result<Self, AlgebraError> {
        Self::one().checked_div(self)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { num: self.num.scale(c), den: self.den.clone() }
    }

    /// `(n/d)' = (n'd − nd')/d²`.
    pub fn derivative(&self) -> Self {
        if self.den.is_one() {
            return Self::from(self.num.derivative());
        }
        let top = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::normalize(top, &self.den * &self.den)
    }

    pub fn pow(&self, e: u32) -> Self {
        // Powers of coprime polynomials stay coprime.
        Self { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// `None` at a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }

    /// Sign of the numerator's leading coefficient; used by printers.
    pub fn is_negative(&self) -> bool {
        self.num.leading_coeff().is_some_and(Signed::is_negative)
    }

    /// DSL rendering as a standalone factor, parenthesized when it is not a
    /// single atom. Never carries a leading minus unless it is a constant.
    pub fn to_dsl_factor(&self) -> String {
        if let Some(c) = self.as_constant() {
            return fmt_rational(&c);
        }
        if self.den.is_one() {
            return poly_atom(&self.num);
        }
        format!("({}/{})", poly_atom(&self.num), poly_atom(&self.den))
    }

    fn add_impl(a: &Self, b: &Self) -> Self {
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        if a.den == b.den {
            return Self::normalize(&a.num + &b.num, a.den.clone());
        }
        Self::normalize(&(&a.num * &b.den) + &(&b.num * &a.den), &a.den * &b.den)
    }

    fn sub_impl(a: &Self, b: &Self) -> Self {
        Self::add_impl(a, &Self::neg_impl(b))
    }

    fn mul_impl(a: &Self, b: &Self) -> Self {
        if a.is_zero() || b.is_zero() {
            return Self::zero();
        }
        if a.den.is_one() && b.den.is_one() {
            return Self { num: &a.num * &b.num, den: Polynomial::one() };
        }
        Self::normalize(&a.num * &b.num, &a.den * &b.den)
    }

    fn neg_impl(a: &Self) -> Self {
        Self { num: -&a.num, den: a.den.clone() }
    }
}

/// A lone monomial with a positive integral coefficient (`z`, `3z^2`, `5`)
/// is printed bare; anything else gets parentheses.
fn poly_atom(p: &Polynomial) -> String {
    let lc = p.leading_coeff().cloned().unwrap_or_else(Rational::zero);
    if p.term_count() == 1 && lc.is_positive() && lc.denom().is_one() {
        p.to_dsl(false)
    } else {
        format!("({})", p.to_dsl(false))
    }
}

super::forward_ring_ops!(
    RationalFunction,
    RationalFunction::add_impl,
    RationalFunction::sub_impl,
    RationalFunction::mul_impl,
    RationalFunction::neg_impl
);

impl std::ops::Div<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    /// Panics on division by zero; see [`RationalFunction::checked_div`].
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_div(rhs).expect("division by the zero rational function")
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        Self { num: p, den: Polynomial::one() }
    }
}

impl From<Rational> for RationalFunction {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num.to_dsl(false))
        } else {
            write!(f, "{}/{}", poly_atom(&self.num), poly_atom(&self.den))
        }
    }
}
