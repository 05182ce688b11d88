//! Generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

pub mod oracle;

use std::path::PathBuf;

use expsol::algebra::{CoefficientSum, Polynomial, Rational, RationalFunction};
use expsol::diffpoly::{DiffMonomial, DiffPolynomial};
use expsol::equation::{EquationSpec, RhsTerm};
use expsol::exppoly::ExpPolynomial;
use expsol::frontend::{parse_equation, parse_function};
use num_bigint::BigInt;
use proptest::prelude::*;

pub const CORPUS: [&str; 8] = [
    "cubic_shift",
    "rational_coeff",
    "power_ratio",
    "seventh_power",
    "bound_quartic",
    "bound_quintic",
    "bound_power",
    "bound_septic",
];

pub fn workspace_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn load(name: &str) -> (EquationSpec, ExpPolynomial) {
    let dir = workspace_dir().join("corpus");
    let eq = std::fs::read_to_string(dir.join(format!("{name}.eq"))).unwrap();
    let sol = std::fs::read_to_string(dir.join(format!("{name}.sol"))).unwrap();
    (parse_equation(eq.trim()).unwrap(), parse_function(sol.trim()).unwrap())
}

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-5i64..=5, 1i64..=3).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    small_rational().prop_filter("nonzero", |r| *r != Rational::from_integer(0.into()))
}

pub fn poly(max_deg: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(small_rational(), 0..=max_deg + 1).prop_map(Polynomial::new)
}

pub fn nonconstant_poly(max_deg: usize) -> impl Strategy<Value = Polynomial> {
    poly(max_deg).prop_filter("nonconstant", |p| !p.is_constant())
}

/// Exponent with zero constant term; possibly zero.
pub fn exponent(max_deg: usize) -> impl Strategy<Value = Polynomial> {
    poly(max_deg).prop_map(|p| p.without_constant())
}

pub fn ratfunc(max_deg: usize) -> impl Strategy<Value = RationalFunction> {
    (poly(max_deg), poly(max_deg).prop_filter("nonzero", |p| !p.is_zero()))
        .prop_map(|(n, d)| RationalFunction::new(n, d).unwrap())
}

pub fn nonzero_ratfunc(max_deg: usize) -> impl Strategy<Value = RationalFunction> {
    ratfunc(max_deg).prop_filter("nonzero", |r| !r.is_zero())
}

pub fn unit() -> impl Strategy<Value = Rational> {
    prop_oneof![Just(Rational::from_integer(0.into())), small_rational()]
}

/// Up to `terms` summands `r·e^{c}·e^{g}`.
pub fn exppoly(terms: usize, max_deg: usize) -> impl Strategy<Value = ExpPolynomial> {
    prop::collection::vec((ratfunc(2), unit(), exponent(max_deg)), 0..=terms).prop_map(|ts| {
        ts.into_iter().fold(ExpPolynomial::zero(), |acc, (r, c, g)| {
            acc + ExpPolynomial::with_coeff(CoefficientSum::term(r, c), g)
        })
    })
}

/// Polynomial coefficients only, so sampling never meets a pole.
pub fn entire_exppoly(terms: usize, max_deg: usize) -> impl Strategy<Value = ExpPolynomial> {
    prop::collection::vec((poly(2), unit(), exponent(max_deg)), 0..=terms).prop_map(|ts| {
        ts.into_iter().fold(ExpPolynomial::zero(), |acc, (p, c, g)| {
            acc + ExpPolynomial::with_coeff(CoefficientSum::term(p.into(), c), g)
        })
    })
}

/// `q·e^P` with nonconstant `P`.
pub fn single_term(max_deg: usize) -> impl Strategy<Value = ExpPolynomial> {
    (nonzero_ratfunc(1), nonconstant_poly(max_deg).prop_map(|p| p.without_constant()))
        .prop_map(|(q, p)| ExpPolynomial::term(q, p))
}

pub fn monomial(max_degree: u32, max_order: usize) -> impl Strategy<Value = DiffMonomial> {
    (nonzero_ratfunc(1), prop::collection::vec(0u32..=max_degree, 0..=max_order + 1))
        .prop_filter("degree bound", move |(_, e)| e.iter().sum::<u32>() <= max_degree)
        .prop_map(|(c, e)| DiffMonomial::new(c, e))
}

pub fn diffpoly(max_degree: u32, max_order: usize) -> impl Strategy<Value = DiffPolynomial> {
    prop::collection::vec(monomial(max_degree, max_order), 0..=3).prop_map(DiffPolynomial::from_monomials)
}

fn rhs_terms(max_k: usize, max_deg: usize) -> impl Strategy<Value = Vec<RhsTerm>> {
    prop::collection::vec((nonzero_ratfunc(2), nonconstant_poly(max_deg)), 1..=max_k)
        .prop_map(|ts| ts.into_iter().map(|(p, a)| RhsTerm::new(p, a)).collect())
}

/// Equations that print and re-parse: `P_d` avoids pure powers `≥ n`.
pub fn spec() -> impl Strategy<Value = EquationSpec> {
    (3u32..=6, prop_oneof![Just(Rational::from_integer(0.into())), nonzero_rational()], rhs_terms(3, 2))
        .prop_flat_map(|(n, a, rhs)| (Just(n), Just(a), Just(rhs), prop::collection::vec(monomial(n - 1, 2), 0..=3)))
        .prop_filter_map("merged away", |(n, a, rhs, ms)| {
            EquationSpec::new(n, a, DiffPolynomial::from_monomials(ms), rhs).ok()
        })
}

/// Right-hand sides with pairwise non-constant exponent differences.
pub fn cramer_spec(max_k: usize) -> impl Strategy<Value = EquationSpec> {
    prop::collection::vec((ratfunc(2).prop_filter("nonzero", |r| !r.is_zero()), nonconstant_poly(3)), 2..=max_k)
        .prop_filter_map("hypothesis", |ts| {
            let rhs = ts.into_iter().map(|(p, a)| RhsTerm::new(p, a)).collect();
            let s = EquationSpec::new(9, Rational::from_integer(0.into()), DiffPolynomial::zero(), rhs).ok()?;
            expsol::equation::validate(&s).pairwise_deg_ok.then_some(s)
        })
}
