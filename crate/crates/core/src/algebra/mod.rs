//! Exact arithmetic kernel: rationals, dense univariate polynomials over ℚ,
//! rational functions, and the coefficient ring ℚ(z)[e^c : c ∈ ℚ].

/// Implements `Add`/`Sub`/`Mul` for every owned/borrowed combination by
/// forwarding to a `fn(&T, &T) -> T`.
macro_rules! forward_binop {
    ($ty:ty, $tr:ident, $method:ident, $imp:path) => {
        impl std::ops::$tr<&$ty> for &$ty {
            type Output = $ty;
            fn $method(self, rhs: &$ty) -> $ty {
                $imp(self, rhs)
            }
        }
        impl std::ops::$tr<$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                $imp(&self, &rhs)
            }
        }
        impl std::ops::$tr<&$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: &$ty) -> $ty {
                $imp(&self, rhs)
            }
        }
        impl std::ops::$tr<$ty> for &$ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                $imp(self, &rhs)
            }
        }
    };
}

macro_rules! forward_ring_ops {
    ($ty:ty, $add:path, $sub:path, $mul:path, $neg:path) => {
        $crate::algebra::forward_binop!($ty, Add, add, $add);
        $crate::algebra::forward_binop!($ty, Sub, sub, $sub);
        $crate::algebra::forward_binop!($ty, Mul, mul, $mul);
        impl std::ops::Neg for $ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                $neg(&self)
            }
        }
        impl std::ops::Neg for &$ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                $neg(self)
            }
        }
    };
}

/// Serializes through `Display`, so reports carry the DSL text.
macro_rules! serialize_display {
    ($($ty:ty),*) => {
        $(impl serde::Serialize for $ty {
            fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                s.collect_str(self)
            }
        })*
    };
}

pub(crate) use forward_binop;
pub(crate) use forward_ring_ops;
pub(crate) use serialize_display;

serialize_display!(CoefficientSum, Polynomial, RationalFunction);

/// `serialize_with` helper for [`Rational`] fields.
pub fn serialize_rational<S: serde::Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(x))
}

mod coeff;
mod poly;
mod ratfunc;
mod rational;
mod ring;
mod root;

pub use coeff::{CoefficientSum, UnitExponent};
pub use poly::Polynomial;
pub use ratfunc::RationalFunction;
pub use rational::{fmt_rational, int, rat, rational_nth_root, to_f64, Rational};
pub use ring::Ring;
pub use root::{nth_root, squarefree_decomposition, PowerObstruction, RootError};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by the zero rational function")]
    DivisionByZero,
}
