use super::{CoefficientSum, Polynomial, RationalFunction};

/// Commutative ring with an exact zero test. Determinants and ranks are
/// written against this so the same code runs over ℚ(z) and over
/// exponential polynomials.
pub trait Ring: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
}

macro_rules! impl_ring {
    ($ty:ty) => {
        impl Ring for $ty {
            fn zero() -> Self {
                <$ty>::zero()
            }
            fn one() -> Self {
                <$ty>::one()
            }
            fn is_zero(&self) -> bool {
                <$ty>::is_zero(self)
            }
            fn add(&self, other: &Self) -> Self {
                self + other
            }
            fn sub(&self, other: &Self) -> Self {
                self - other
            }
            fn mul(&self, other: &Self) -> Self {
                self * other
            }
            fn neg(&self) -> Self {
                -self
            }
        }
    };
}

impl_ring!(Polynomial);
impl_ring!(RationalFunction);
impl_ring!(CoefficientSum);
impl_ring!(crate::exppoly::ExpPolynomial);
