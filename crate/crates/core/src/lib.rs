//! Exact solver for `f^n + a·f^{n-2}·f' + P_d(z, f) = Σ p_i(z)·e^{α_i(z)}`
//! over exponential polynomials with rational-function coefficients.

// Error values carry the offending rational functions for diagnostics.
#![allow(clippy::result_large_err)]

pub mod algebra;
pub mod diffpoly;
pub mod elimination;
pub mod equation;
pub mod exppoly;
pub mod frontend;
pub mod numeric;
pub mod solver;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    struct Introduction;
    #[doc = include_str!("../../../book/src/exact-arithmetic.md")]
    struct ExactArithmetic;
    #[doc = include_str!("../../../book/src/exponential-polynomials.md")]
    struct ExponentialPolynomials;
    #[doc = include_str!("../../../book/src/equations.md")]
    struct Equations;
    #[doc = include_str!("../../../book/src/classification.md")]
    struct Classification;
    #[doc = include_str!("../../../book/src/solving.md")]
    struct Solving;
    #[doc = include_str!("../../../book/src/elimination.md")]
    struct Elimination;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
}
