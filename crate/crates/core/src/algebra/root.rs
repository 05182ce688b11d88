use std::fmt;

use thiserror::Error;

use super::rational::{fmt_rational, rational_nth_root, Rational};
use super::{CoefficientSum, Polynomial, RationalFunction};

/// Square-free factorization `f = lc · Π g_i^{m_i}` of a nonzero polynomial
/// (Yun's algorithm). Returns the monic, pairwise coprime, square-free `g_i`
/// with their multiplicities; constants yield an empty list.
pub fn squarefree_decomposition(f: &Polynomial) -> Vec<(Polynomial, u32)> {
    if f.is_constant() {
        return Vec::new();
    }
    let f = f.monic();
    let mut c = f.gcd(&f.derivative());
    let mut w = f.exact_div(&c).expect("gcd divides");
    let mut out = Vec::new();
    let mut i = 1;
    while !c.is_constant() {
        let y = w.gcd(&c);
        let z = w.exact_div(&y).expect("gcd divides");
        if !z.is_constant() {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.exact_div(&w).expect("gcd divides");
    }
    if !w.is_constant() {
        out.push((w, i));
    }
    out
}

/// Why a coefficient has no `n`-th root of the form `q·e^c`, `q ∈ ℚ(z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PowerObstruction {
    /// An irreducible-part multiplicity is not divisible by `n`.
    Multiplicity { factor: Polynomial, multiplicity: u32, in_denominator: bool },
    /// The polynomial part has a root but the rational scale does not:
    /// `q^n = constant · partial_root^n` needs an irrational constant.
    Constant { constant: Rational, partial_root: RationalFunction, unit: Rational },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("expected a single r·e^c term, found {terms}")]
    NotSingleTerm { terms: usize },
    #[error("not a perfect {n}-th power: {obstruction}")]
    NotPerfectPower { n: u32, obstruction: PowerObstruction },
}

impl fmt::Display for PowerObstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Multiplicity { factor, multiplicity, in_denominator } => write!(
                f,
                "factor ({}) has multiplicity {} in the {}",
                factor.to_dsl(false),
                multiplicity,
                if *in_denominator { "denominator" } else { "numerator" }
            ),
            Self::Constant { constant, partial_root, unit } => write!(
                f,
                "needs κ with κ^n = {} (root part {}, unit e^{})",
                fmt_rational(constant),
                partial_root,
                fmt_rational(unit)
            ),
        }
    }
}

fn poly_root(p: &Polynomial, n: u32, in_denominator: bool) -> Result<Polynomial, PowerObstruction> {
    let mut root = Polynomial::one();
    for (factor, multiplicity) in squarefree_decomposition(p) {
        if multiplicity % n != 0 {
            return Err(PowerObstruction::Multiplicity { factor, multiplicity, in_denominator });
        }
        root = &root * &factor.pow(multiplicity / n);
    }
    Ok(root)
}

/// Extracts `(q, c)` with `q^n · e^c = s` from a single-term coefficient
/// `s = r·e^c`.
///
/// The polynomial parts of `r` must be perfect `n`-th powers and its
/// rational scale must have a rational `n`-th root. The unit is returned
/// untouched.
pub fn nth_root(s: &CoefficientSum, n: u32) -> Result<(RationalFunction, Rational), RootError> {
    assert!(n >= 1, "root index must be positive");
    let (c, r) = s.single_term().ok_or(RootError::NotSingleTerm { terms: s.len() })?;
    let fail = |obstruction| RootError::NotPerfectPower { n, obstruction };
    let scale = r.num().leading_coeff().expect("stored coefficients are nonzero").clone();
    let num_root = poly_root(&r.num().monic(), n, false).map_err(fail)?;
    let den_root = poly_root(r.den(), n, true).map_err(fail)?;
    let partial = RationalFunction::new(num_root, den_root).expect("monic denominator");
    match rational_nth_root(&scale, n) {
        Some(k) => Ok((partial.scale(&k), c.clone())),
        None => Err(fail(PowerObstruction::Constant { constant: scale, partial_root: partial, unit: c.clone() })),
    }
}
