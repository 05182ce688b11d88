//! Helpers over arbitrary-precision rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational constant. Always stored in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Builds `num/den`. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact `n`-th root in ℚ, when one exists.
///
/// Negative inputs have a root only for odd `n`; the root is then negative.
pub fn rational_nth_root(x: &Rational, n: u32) -> Option<Rational> {
    assert!(n >= 1, "root index must be positive");
    if x.is_zero() {
        return Some(Rational::zero());
    }
    if x.is_negative() && n.is_multiple_of(2) {
        return None;
    }
    let num = integer_nth_root(&x.numer().abs(), n)?;
    let den = integer_nth_root(x.denom(), n)?;
    let root = Rational::new(num, den);
    Some(if x.is_negative() { -root } else { root })
}

fn integer_nth_root(x: &BigInt, n: u32) -> Option<BigInt> {
    let r = x.nth_root(n);
    (num_traits::pow(r.clone(), n as usize) == *x).then_some(r)
}

/// `7/2`, `-3`, `0`.
pub fn fmt_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Lossy conversion for reporting and root estimates only.
pub fn to_f64(x: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}
