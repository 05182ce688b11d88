use num_traits::{Signed, Zero};

use crate::algebra::{Polynomial, RationalFunction};
use crate::diffpoly::DiffMonomial;
use crate::equation::EquationSpec;
use crate::exppoly::ExpPolynomial;

/// Signed summands, joined as `a + b - c`.
fn join(pieces: Vec<(bool, String)>) -> String {
    let mut out = String::new();
    for (i, (neg, body)) in pieces.into_iter().enumerate() {
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// `r` standing alone as one or more summands.
fn rational_pieces(r: &RationalFunction) -> Vec<(bool, String)> {
    if let Some(p) = r.as_polynomial() {
        return p
            .coeffs()
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (c.is_negative(), Polynomial::monomial(c.abs(), i).to_dsl(false)))
            .collect();
    }
    let neg = r.is_negative();
    let abs = if neg { -r } else { r.clone() };
    vec![(neg, abs.to_dsl_factor())]
}

/// `r*rest` with the sign of `r` pulled out; `rest` must be nonempty.
fn scaled(r: &RationalFunction, rest: &str) -> (bool, String) {
    let neg = r.is_negative();
    let abs = if neg { -r } else { r.clone() };
    if abs.is_one() {
        (neg, rest.to_string())
    } else {
        (neg, format!("{}*{rest}", abs.to_dsl_factor()))
    }
}

fn exp_pieces(r: &RationalFunction, e: &Polynomial) -> Vec<(bool, String)> {
    if e.is_zero() {
        rational_pieces(r)
    } else {
        vec![scaled(r, &format!("exp({})", e.to_dsl(true)))]
    }
}

/// Canonical text: exponents in decreasing order, constants folded back into
/// the exponent.
///
/// ```
/// use expsol::frontend::{parse_function, print_function};
///
/// let x = parse_function("exp(2z) - exp(z)").unwrap();
/// assert_eq!(print_function(&x), "exp(2z) - exp(z)");
/// assert_eq!(print_function(&(&x - &x)), "0");
/// ```
pub fn print_function(x: &ExpPolynomial) -> String {
    let mut pieces = Vec::new();
    for (g, c) in x.terms().rev() {
        let units: Vec<_> = c.terms().collect();
        for (u, r) in units.into_iter().rev() {
            pieces.extend(exp_pieces(r, &(g + &Polynomial::constant(u.clone()))));
        }
    }
    join(pieces)
}

fn f_name(order: usize) -> String {
    match order {
        0..=3 => format!("f{}", "'".repeat(order)),
        k => format!("f^({k})"),
    }
}

/// `f^(i)` factors, highest derivative first.
fn f_factors(exponents: &[u32]) -> String {
    let mut parts = Vec::new();
    for (i, &p) in exponents.iter().enumerate().rev() {
        match p {
            0 => {}
            1 => parts.push(f_name(i)),
            p => parts.push(format!("{}^{p}", f_name(i))),
        }
    }
    parts.join("*")
}

fn monomial_pieces(m: &DiffMonomial) -> Vec<(bool, String)> {
    if m.exponents.is_empty() {
        rational_pieces(&m.coeff)
    } else {
        vec![scaled(&m.coeff, &f_factors(&m.exponents))]
    }
}

/// ```
/// use expsol::frontend::{parse_equation, print_equation};
///
/// let s = parse_equation("f^3 + 4*f'*f + f' - f = exp(3z) + 7*exp(2z) + 7*exp(z)").unwrap();
/// assert_eq!(print_equation(&s), "f^3 + 4*f'*f + f' - f = exp(3z) + 7*exp(2z) + 7*exp(z)");
/// ```
pub fn print_equation(spec: &EquationSpec) -> String {
    let n = spec.n();
    let mut lhs = vec![(false, format!("f^{n}"))];
    if !spec.a().is_zero() {
        let base = if n == 3 { "f".to_string() } else { format!("f^{}", n - 2) };
        lhs.push(scaled(&RationalFunction::constant(spec.a().clone()), &format!("{base}*f'")));
    }
    for m in spec.pd().monomials() {
        lhs.extend(monomial_pieces(&m));
    }
    let rhs = spec.rhs().iter().flat_map(|t| exp_pieces(&t.p, &t.alpha)).collect();
    format!("{} = {}", join(lhs), join(rhs))
}
