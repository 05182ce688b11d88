//! Constructive search for solutions of the form `q(z)·e^{P(z)}`.
//!
//! For a chosen dominant right-hand term `p·e^α` the exponent is forced:
//! `P = (α − α(0))/n`, and `q` comes from an `n`-th root of `p`. Substituting
//! `q·e^P` into the left side gives `Σ β_j·e^{jP}`; scaling `f` by `κ·e^c`
//! multiplies `β_j` by `κ^j·e^{jc}`. Each right-hand term must sit on one of
//! the `jP` and match `β_j` up to such a factor, which pins down `κ` and `c`.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::{
    fmt_rational, nth_root, rational_nth_root, serialize_rational, CoefficientSum, Polynomial, PowerObstruction,
    Rational, RationalFunction, RootError,
};
use crate::equation::{lhs_apply, validate, verify, CaseTag, EquationSpec, HypothesisReport};
use crate::exppoly::ExpPolynomial;

/// A verified solution `f = q·e^{P + c}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolutionCandidate {
    pub q: RationalFunction,
    /// Unit exponent carried by the dominant coefficient, before scaling.
    #[serde(serialize_with = "serialize_rational")]
    pub root_unit: Rational,
    /// Nonconstant part of the exponent.
    pub exponent: Polynomial,
    /// Additive constant of the exponent.
    #[serde(serialize_with = "serialize_rational")]
    pub constant: Rational,
    /// Role name and 1-based right-hand index.
    pub assignment: Vec<(String, usize)>,
}

impl SolutionCandidate {
    pub fn function(&self) -> ExpPolynomial {
        ExpPolynomial::term(self.q.clone(), &self.exponent + &Polynomial::constant(self.constant.clone()))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", content = "detail")]
pub enum SolveOutcome {
    Candidates(Vec<SolutionCandidate>),
    NoSolution(String),
    NotApplicable(HypothesisReport),
    Unresolved(Vec<String>),
}

impl SolveOutcome {
    /// A definite answer: some solution, or proof that none exists.
    pub fn is_definitive(&self) -> bool {
        match self {
            Self::Candidates(c) => !c.is_empty(),
            Self::NoSolution(_) => true,
            _ => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolveReport {
    pub hypothesis: HypothesisReport,
    pub outcome: SolveOutcome,
    pub trace: Vec<String>,
}

/// Why a constant could not be fixed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstantError {
    /// Two matched terms demand different `c`.
    Inconsistent(String),
    /// A ratio `p/β` is not a constant times a unit.
    NotAUnit(String),
    /// The constraints need a constant outside ℚ.
    Unresolved(Vec<String>),
}

impl fmt::Display for ConstantError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Inconsistent(s) => write!(f, "inconsistent: {s}"),
            Self::NotAUnit(s) => write!(f, "not a unit: {s}"),
            Self::Unresolved(cs) => write!(f, "unresolved: {}", cs.join("; ")),
        }
    }
}

/// `κ^j·e^{j·c} = λ·e^r` demanded by matching term `index` at level `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub index: usize,
    pub j: u32,
    pub lambda: Rational,
    pub r: Rational,
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "term {}: kappa^{j}*exp({j}c) = {}*exp({})",
            self.index,
            fmt_rational(&self.lambda),
            fmt_rational(&self.r),
            j = self.j
        )
    }
}

/// Solves the constraints for `c` and every rational `κ`.
///
/// ```
/// use expsol::algebra::{int, rat};
/// use expsol::solver::{resolve_constant, Constraint};
///
/// let cs = [Constraint { index: 2, j: 1, lambda: int(1), r: int(2) }];
/// let (c, kappas) = resolve_constant(&cs).unwrap();
/// assert_eq!(c, int(2));
/// assert_eq!(kappas, vec![int(1)]);
/// ```
pub fn resolve_constant(constraints: &[Constraint]) -> Result<(Rational, Vec<Rational>), ConstantError> {
    let Some(first) = constraints.first() else {
        return Ok((Rational::zero(), vec![Rational::one()]));
    };
    let c = &first.r / Rational::from_integer(first.j.into());
    for x in &constraints[1..] {
        let cx = &x.r / Rational::from_integer(x.j.into());
        if cx != c {
            return Err(ConstantError::Inconsistent(format!(
                "term {} needs c = {} but term {} needs c = {}",
                first.index,
                fmt_rational(&c),
                x.index,
                fmt_rational(&cx)
            )));
        }
    }

    let mut pool: Vec<Rational> = Vec::new();
    let mut rootless = Vec::new();
    for x in constraints {
        match rational_nth_root(&x.lambda, x.j) {
            Some(r) => {
                pool.push(r.clone());
                if x.j % 2 == 0 {
                    pool.push(-r);
                }
            }
            None => rootless.push(x),
        }
    }
    pool.sort();
    pool.dedup();
    let ok: Vec<Rational> = pool
        .into_iter()
        .filter(|kappa| constraints.iter().all(|x| num_traits::pow(kappa.clone(), x.j as usize) == x.lambda))
        .collect();
    if !ok.is_empty() {
        return Ok((c, ok));
    }
    if !rootless.is_empty() {
        return Err(ConstantError::Unresolved(constraints.iter().map(ToString::to_string).collect()));
    }
    Err(ConstantError::Inconsistent("no rational kappa satisfies every term".into()))
}

/// `r` with `α' = r·β'`, if the derivatives are proportional.
///
/// ```
/// use expsol::algebra::{rat, Polynomial};
/// use expsol::solver::exponent_ratio;
///
/// let a = Polynomial::monomial(rat(4, 1), 1);
/// let b = Polynomial::monomial(rat(10, 3), 1);
/// assert_eq!(exponent_ratio(&a, &b), Some(rat(6, 5)));
/// ```
pub fn exponent_ratio(alpha: &Polynomial, beta: &Polynomial) -> Option<Rational> {
    let da = alpha.derivative();
    let db = beta.derivative();
    let r = da.leading_coeff()? / db.leading_coeff()?;
    (da == db.scale(&r)).then_some(r)
}

enum Branch {
    Found(Vec<SolutionCandidate>),
    Rejected(String),
    Unresolved(Vec<String>),
}

/// Tries `tau0` as the dominant term.
fn try_branch(spec: &EquationSpec, tau0: usize, case: CaseTag) -> Branch {
    let n = spec.n();
    let term = &spec.rhs()[tau0];
    let exponent = term.alpha.without_constant().scale(&Rational::new(1.into(), n.into()));
    let dominant = CoefficientSum::rational(term.p.clone()).shift_unit(&term.alpha.constant_term());

    let (q, root_unit) = match nth_root(&dominant, n) {
        Ok(x) => x,
        Err(RootError::NotPerfectPower {
            obstruction: PowerObstruction::Constant { partial_root, unit, .. }, ..
        }) => (partial_root, unit),
        Err(e) => return Branch::Rejected(format!("no {n}-th root: {e}")),
    };

    let lhs = lhs_apply(spec, &ExpPolynomial::term(q.clone(), exponent.clone()));
    let lead = exponent.leading_coeff().expect("nonconstant").clone();
    let mut levels: Vec<(u32, RationalFunction, bool)> = Vec::new();
    for (g, c) in lhs.terms() {
        let j = g.leading_coeff().map_or_else(Rational::zero, |l| l / &lead);
        let level = j.to_integer();
        if !j.is_integer() || j.is_negative() || exponent.scale(&j) != *g || level > n.into() {
            return Branch::Rejected(format!("left side has exponent {g} off the multiples of {exponent}"));
        }
        let beta = c.as_rational().expect("unscaled substitution has no units");
        levels.push((level.try_into().expect("bounded by n"), beta, false));
    }

    let rhs = spec.rhs_exp();
    let mut constraints = Vec::new();
    let mut matched = Vec::new();
    for (g, s) in rhs.terms() {
        let idx = spec.rhs().iter().position(|t| t.alpha.without_constant() == *g).expect("term present") + 1;
        let Some(slot) = levels.iter_mut().find(|(j, _, _)| exponent.scale(&Rational::from_integer((*j).into())) == *g)
        else {
            return Branch::Rejected(format!("term {idx} is not matched by the left side"));
        };
        slot.2 = true;
        let (j, beta) = (slot.0, slot.1.clone());
        let Some((r, coeff)) = s.single_term() else {
            return Branch::Unresolved(vec![format!("term {idx} mixes several exp constants")]);
        };
        let ratio = coeff / &beta;
        let Some(lambda) = ratio.as_constant() else {
            return Branch::Rejected(ConstantError::NotAUnit(format!("term {idx}: ratio {ratio}")).to_string());
        };
        constraints.push(Constraint { index: idx, j, lambda, r: r.clone() });
        matched.push((idx, j));
    }
    if let Some((j, _, _)) = levels.iter().find(|l| !l.2) {
        return Branch::Rejected(format!("left side term at level {j} has no right-hand partner"));
    }

    let (c, kappas) = match resolve_constant(&constraints) {
        Ok(x) => x,
        Err(ConstantError::Unresolved(cs)) => return Branch::Unresolved(cs),
        Err(e) => return Branch::Rejected(e.to_string()),
    };

    let assignment = roles(case, n, tau0 + 1, &matched);
    let mut found = Vec::new();
    for kappa in kappas {
        let cand = SolutionCandidate {
            q: q.scale(&kappa),
            root_unit: root_unit.clone(),
            exponent: exponent.clone(),
            constant: c.clone(),
            assignment: assignment.clone(),
        };
        if verify(spec, &cand.function()).holds {
            found.push(cand);
        }
    }
    if found.is_empty() {
        Branch::Rejected("no scaling survives verification".into())
    } else {
        Branch::Found(found)
    }
}

fn roles(case: CaseTag, n: u32, tau0: usize, matched: &[(usize, u32)]) -> Vec<(String, usize)> {
    let mut rest: Vec<(usize, u32)> = matched.iter().copied().filter(|(i, _)| *i != tau0).collect();
    rest.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    match case {
        CaseTag::IIB | CaseTag::IIC => {
            let mut out = vec![("mu".to_string(), tau0)];
            let mut kappa = 0;
            for (i, j) in rest {
                if j + 1 == n {
                    out.push(("nu".into(), i));
                } else {
                    kappa += 1;
                    out.push((format!("kappa{kappa}"), i));
                }
            }
            out
        }
        _ => std::iter::once(("tau0".to_string(), tau0))
            .chain(rest.into_iter().enumerate().map(|(t, (i, _))| (format!("tau{}", t + 1), i)))
            .collect(),
    }
}

fn collect(spec: &EquationSpec, dominants: &[usize], case: CaseTag, trace: &mut Vec<String>) -> SolveOutcome {
    let mut found: Vec<SolutionCandidate> = Vec::new();
    let mut unresolved = Vec::new();
    for &tau0 in dominants {
        match try_branch(spec, tau0, case) {
            Branch::Found(cs) => {
                trace.push(format!("dominant term {}: {} candidate(s)", tau0 + 1, cs.len()));
                for c in cs {
                    if !found.iter().any(|x| x.function() == c.function()) {
                        found.push(c);
                    }
                }
            }
            Branch::Rejected(why) => trace.push(format!("dominant term {}: {why}", tau0 + 1)),
            Branch::Unresolved(cs) => {
                trace.push(format!("dominant term {}: unresolved", tau0 + 1));
                unresolved.extend(cs);
            }
        }
    }
    if found.is_empty() && !unresolved.is_empty() {
        SolveOutcome::Unresolved(unresolved)
    } else {
        SolveOutcome::Candidates(found)
    }
}

/// Every `q·e^P` solution reachable from any dominant term, regardless of
/// which case the equation falls in.
pub fn enumerate_candidates(spec: &EquationSpec) -> Vec<SolutionCandidate> {
    let all: Vec<usize> = (0..spec.k()).collect();
    match collect(spec, &all, CaseTag::IB, &mut Vec::new()) {
        SolveOutcome::Candidates(c) => c,
        _ => Vec::new(),
    }
}

/// Classifies the equation and, when the hypotheses hold, lists every
/// solution `q·e^{P+c}` with rational data.
///
/// ```
/// use expsol::frontend::{parse_equation, print_function};
/// use expsol::solver::{solve, SolveOutcome};
///
/// let spec = parse_equation("f^6 + 2*f^4*f' = exp(4z) + (4/3)*exp(10z/3)").unwrap();
/// let SolveOutcome::Candidates(cs) = solve(&spec).outcome else { panic!() };
/// assert_eq!(print_function(&cs[0].function()), "exp(2z/3)");
/// ```
pub fn solve(spec: &EquationSpec) -> SolveReport {
    let hypothesis = validate(spec);
    let mut trace = Vec::new();
    let outcome = match hypothesis.case_tag {
        CaseTag::NotApplicable => SolveOutcome::NotApplicable(hypothesis.clone()),
        CaseTag::IIA => {
            SolveOutcome::NoSolution("k = 1 with a != 0 admits no solution with finitely many poles".into())
        }
        CaseTag::IA => collect(spec, &[0], CaseTag::IA, &mut trace),
        CaseTag::IB | CaseTag::IIC => {
            let all: Vec<usize> = (0..spec.k()).collect();
            collect(spec, &all, hypothesis.case_tag, &mut trace)
        }
        CaseTag::IIB => {
            let n = Rational::from_integer(spec.n().into());
            let forward = &n / (&n - Rational::one());
            let ratio = exponent_ratio(&spec.rhs()[0].alpha, &spec.rhs()[1].alpha);
            let dominant = match ratio {
                Some(r) if r == forward => Some(0),
                Some(r) if r == forward.recip() => Some(1),
                _ => None,
            };
            match dominant {
                Some(d) => {
                    trace.push(format!("exponent ratio selects term {} as dominant", d + 1));
                    collect(spec, &[d], CaseTag::IIB, &mut trace)
                }
                None => {
                    trace.push("exponent ratio is neither n/(n-1) nor (n-1)/n".into());
                    SolveOutcome::Candidates(Vec::new())
                }
            }
        }
    };
    SolveReport { hypothesis, outcome, trace }
}
