//! Linear algebra on the differentiated right-hand side.
//!
//! Differentiating `h = Σ p_i·e^{α_i}` gives `h^{(t)} = Σ c_{t,i}·e^{α_i}`
//! with `c_{0,i} = p_i` and `c_{t+1,i} = c_{t,i}' + c_{t,i}·α_i'`. Reading the
//! `e^{α_i}` as unknowns turns this into a `k×k` linear system whose
//! determinant `D₀` and Cramer numerator `D₁` satisfy `D₀·e^{α₁} = D₁`.

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{RationalFunction, Ring};
use crate::equation::EquationSpec;
use crate::exppoly::ExpPolynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EliminationError {
    #[error("diagnosis needs k >= 2, got k = {0}")]
    NeedsTwoTerms(usize),
}

/// `entries[t][i]` is the coefficient of `e^{α_i}` in `h^{(t)}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoefficientMatrix {
    pub k: usize,
    pub entries: Vec<Vec<RationalFunction>>,
}

/// ```
/// use expsol::elimination::build_system;
/// use expsol::frontend::parse_equation;
///
/// let spec = parse_equation("f^5 = exp(2z) + exp(z)").unwrap();
/// let m = build_system(&spec);
/// let shown: Vec<Vec<String>> = m.entries.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
/// assert_eq!(shown, [["1", "1"], ["2", "1"]]);
/// ```
pub fn build_system(spec: &EquationSpec) -> CoefficientMatrix {
    let k = spec.k();
    let dalpha: Vec<RationalFunction> = spec.rhs().iter().map(|t| t.alpha.derivative().into()).collect();
    let mut row: Vec<RationalFunction> = spec.rhs().iter().map(|t| t.p.clone()).collect();
    let mut entries = Vec::with_capacity(k);
    for _ in 0..k {
        let next = row.iter().zip(&dalpha).map(|(c, da)| c.derivative() + c * da).collect();
        entries.push(std::mem::replace(&mut row, next));
    }
    CoefficientMatrix { k, entries }
}

/// Matrix without row `r` and column `c`.
pub fn minor<R: Clone>(m: &[Vec<R>], r: usize, c: usize) -> Vec<Vec<R>> {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != r)
        .map(|(_, row)| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, x)| x.clone()).collect())
        .collect()
}

/// Cofactor expansion along the first column. Works over any ring.
pub fn det_laplace<R: Ring>(m: &[Vec<R>]) -> R {
    match m.len() {
        0 => R::one(),
        1 => m[0][0].clone(),
        2 => m[0][0].mul(&m[1][1]).sub(&m[0][1].mul(&m[1][0])),
        n => {
            let mut acc = R::zero();
            for r in 0..n {
                if m[r][0].is_zero() {
                    continue;
                }
                let term = m[r][0].mul(&det_laplace(&minor(m, r, 0)));
                acc = if r % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
    }
}

/// Fraction-free (Bareiss) elimination over ℚ(z) with row pivoting.
pub fn det_bareiss(m: &[Vec<RationalFunction>]) -> RationalFunction {
    let n = m.len();
    if n == 0 {
        return RationalFunction::one();
    }
    let mut a = m.to_vec();
    let mut sign = false;
    let mut prev = RationalFunction::one();
    for p in 0..n - 1 {
        if a[p][p].is_zero() {
            match (p + 1..n).find(|&r| !a[r][p].is_zero()) {
                Some(r) => {
                    a.swap(p, r);
                    sign = !sign;
                }
                None => return RationalFunction::zero(),
            }
        }
        for i in p + 1..n {
            for j in p + 1..n {
                let num = &a[i][j] * &a[p][p] - &a[i][p] * &a[p][j];
                a[i][j] = &num / &prev;
            }
        }
        prev = a[p][p].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Exact determinant: cofactors for `k ≤ 3`, Bareiss above.
///
/// ```
/// use expsol::algebra::{int, RationalFunction};
/// use expsol::elimination::det;
///
/// let m: Vec<Vec<RationalFunction>> = [[1, 7, 7], [3, 14, 7], [9, 28, 7]]
///     .iter()
///     .map(|r| r.iter().map(|&x| RationalFunction::constant(int(x))).collect())
///     .collect();
/// assert_eq!(det(&m), RationalFunction::constant(int(-98)));
/// ```
pub fn det(m: &[Vec<RationalFunction>]) -> RationalFunction {
    if m.len() <= 3 {
        det_laplace(m)
    } else {
        det_bareiss(m)
    }
}

/// `h, h', …, h^{(k-1)}`.
pub fn h_derivatives(spec: &EquationSpec) -> Vec<ExpPolynomial> {
    let mut out = vec![spec.rhs_exp()];
    for _ in 1..spec.k() {
        let next = out.last().expect("nonempty").derivative();
        out.push(next);
    }
    out
}

/// `D₁ = Σ_t (−1)^t·M_{t,1}·h^{(t)}`, expanding the bordered determinant
/// along the replaced first column.
pub fn d1_by_minors(m: &CoefficientMatrix, hs: &[ExpPolynomial]) -> ExpPolynomial {
    let mut acc = ExpPolynomial::zero();
    for (t, h) in hs.iter().enumerate() {
        let term = h.mul_rational(&det(&minor(&m.entries, t, 0)));
        acc = if t % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

/// `D₁` as a determinant over exponential polynomials, with the first
/// column replaced by the `h^{(t)}`.
pub fn d1_direct(m: &CoefficientMatrix, hs: &[ExpPolynomial]) -> ExpPolynomial {
    let bordered: Vec<Vec<ExpPolynomial>> = m
        .entries
        .iter()
        .zip(hs)
        .map(|(row, h)| {
            std::iter::once(h.clone()).chain(row[1..].iter().map(|x| ExpPolynomial::rational(x.clone()))).collect()
        })
        .collect();
    det_laplace(&bordered)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CramerReport {
    pub k: usize,
    pub d0: RationalFunction,
    pub d1: ExpPolynomial,
    pub holds: bool,
    /// `D₀ ≡ 0`: the identity then only says `D₁ = 0` and carries no
    /// information about `e^{α₁}`.
    pub degenerate: bool,
}

/// Checks `D₀·e^{α₁} = D₁` exactly.
pub fn cramer_identity_check(spec: &EquationSpec) -> Result<CramerReport, EliminationError> {
    if spec.k() < 2 {
        return Err(EliminationError::NeedsTwoTerms(spec.k()));
    }
    let m = build_system(spec);
    let d0 = det(&m.entries);
    let d1 = d1_by_minors(&m, &h_derivatives(spec));
    let lhs = ExpPolynomial::term(d0.clone(), spec.rhs()[0].alpha.clone());
    let holds = (lhs - &d1).is_zero();
    Ok(CramerReport { k: spec.k(), degenerate: d0.is_zero(), d0, d1, holds })
}

/// Rank of a matrix over the fraction field of an integral domain, by
/// fraction-free row reduction.
pub fn rank<R: Ring>(m: &[Vec<R>]) -> usize {
    let mut a = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in r + 1..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let (piv, f) = (a[r][c].clone(), a[i][c].clone());
            let pivot_row = a[r].clone();
            for (x, y) in a[i].iter_mut().zip(&pivot_row).skip(c) {
                *x = x.mul(&piv).sub(&y.mul(&f));
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub rank_coeff: usize,
    pub rank_augmented: usize,
}

/// Ranks of the coefficient matrix and of the matrix augmented with the
/// column `h^{(t)}`. The augmented matrix lives over exponential
/// polynomials.
pub fn rank_report(spec: &EquationSpec) -> RankReport {
    let m = build_system(spec);
    let hs = h_derivatives(spec);
    let augmented: Vec<Vec<ExpPolynomial>> = m
        .entries
        .iter()
        .zip(&hs)
        .map(|(row, h)| row.iter().map(|x| ExpPolynomial::rational(x.clone())).chain([h.clone()]).collect())
        .collect();
    RankReport { rank_coeff: rank(&m.entries), rank_augmented: rank(&augmented) }
}
