//! The equation `f^n + a·f^{n-2}·f' + P_d(z, f) = Σ p_i·e^{α_i}`,
//! hypothesis checks, and the exact verifier.

use std::fmt;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{serialize_rational, Polynomial, Rational, RationalFunction};
use crate::diffpoly::DiffPolynomial;
use crate::exppoly::ExpPolynomial;
use crate::numeric::{self, GaussianRational, HpComplex, NumericError};

/// One right-hand term `p·e^α`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RhsTerm {
    pub p: RationalFunction,
    pub alpha: Polynomial,
}

impl RhsTerm {
    pub fn new(p: RationalFunction, alpha: Polynomial) -> Self {
        Self { p, alpha }
    }

    pub fn to_exp(&self) -> ExpPolynomial {
        ExpPolynomial::term(self.p.clone(), self.alpha.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("the leading power must be at least 2, got {0}")]
    PowerTooSmall(u32),
    #[error("right-hand term {0} has a constant exponent")]
    ConstantExponent(usize),
    #[error("right-hand term {0} has a zero coefficient")]
    ZeroCoefficient(usize),
    #[error("the right-hand side has no terms")]
    EmptyRhs,
}

/// A structurally valid equation. Right-hand terms with identical exponents
/// are merged on construction; each merge is recorded in [`notes`](Self::notes).
#[derive(Clone, Debug)]
pub struct EquationSpec {
    n: u32,
    a: Rational,
    pd: DiffPolynomial,
    rhs: Vec<RhsTerm>,
    notes: Vec<String>,
}

impl EquationSpec {
    pub fn new(n: u32, a: Rational, pd: DiffPolynomial, rhs: Vec<RhsTerm>) -> Result<Self, SpecError> {
        if n < 2 {
            return Err(SpecError::PowerTooSmall(n));
        }
        let mut merged: Vec<(RhsTerm, Vec<usize>)> = Vec::new();
        for (i, t) in rhs.into_iter().enumerate() {
            if t.alpha.is_constant() {
                return Err(SpecError::ConstantExponent(i + 1));
            }
            if t.p.is_zero() {
                return Err(SpecError::ZeroCoefficient(i + 1));
            }
            match merged.iter_mut().find(|(m, _)| m.alpha == t.alpha) {
                Some((m, idx)) => {
                    m.p = &m.p + &t.p;
                    idx.push(i + 1);
                }
                None => merged.push((t, vec![i + 1])),
            }
        }
        let mut notes = Vec::new();
        let mut out = Vec::new();
        for (t, idx) in merged {
            if idx.len() > 1 {
                let list: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
                let fate = if t.p.is_zero() { "cancel" } else { "merged" };
                notes.push(format!("terms {} share exponent {}: {fate}", list.join(", "), t.alpha));
            }
            if !t.p.is_zero() {
                out.push(t);
            }
        }
        if out.is_empty() {
            return Err(SpecError::EmptyRhs);
        }
        Ok(Self { n, a, pd, rhs: out, notes })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn pd(&self) -> &DiffPolynomial {
        &self.pd
    }

    pub fn rhs(&self) -> &[RhsTerm] {
        &self.rhs
    }

    pub fn k(&self) -> usize {
        self.rhs.len()
    }

    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    /// `h = Σ p_i·e^{α_i}` in canonical form.
    pub fn rhs_exp(&self) -> ExpPolynomial {
        self.rhs.iter().fold(ExpPolynomial::zero(), |acc, t| acc + t.to_exp())
    }

    /// Same equation with a different right-hand side.
    pub fn with_rhs(&self, rhs: Vec<RhsTerm>) -> Result<Self, SpecError> {
        Self::new(self.n, self.a.clone(), self.pd.clone(), rhs)
    }
}

/// Merge notes are diagnostics, not part of the equation.
impl PartialEq for EquationSpec {
    fn eq(&self, o: &Self) -> bool {
        self.n == o.n && self.a == o.a && self.pd == o.pd && self.rhs == o.rhs
    }
}

impl Eq for EquationSpec {}

impl fmt::Display for EquationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::frontend::print_equation(self))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CaseTag {
    IA,
    IB,
    IIA,
    IIB,
    IIC,
    NotApplicable,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    pub pairwise_deg_ok: bool,
    pub bound_ok: bool,
    pub n_ok: bool,
    pub case_tag: CaseTag,
    /// The case selected by `a` and `k` alone, before the checks.
    pub family: CaseTag,
    pub n: u32,
    pub k: usize,
    pub d: i64,
    #[serde(serialize_with = "serialize_rational")]
    pub a: Rational,
    pub violations: Vec<String>,
    pub notes: Vec<String>,
}

impl HypothesisReport {
    pub fn applicable(&self) -> bool {
        self.case_tag != CaseTag::NotApplicable
    }
}

/// Picks the case from `a` and `k` and checks its bounds on `n` and `d`.
///
/// ```
/// use expsol::equation::{validate, CaseTag};
/// use expsol::frontend::parse_equation;
///
/// let spec = parse_equation("f^6 + 2*f^4*f' = exp(4z) + (4/3)*exp(10z/3)").unwrap();
/// assert_eq!(validate(&spec).case_tag, CaseTag::IIB);
/// ```
pub fn validate(spec: &EquationSpec) -> HypothesisReport {
    let n = spec.n();
    let k = spec.k();
    let d = spec.pd().degree();
    let n_i = i64::from(n);
    let k_i = k as i64;
    let mut violations = Vec::new();

    let mut pairwise_deg_ok = true;
    for i in 0..k {
        for j in i + 1..k {
            let diff = &spec.rhs()[i].alpha - &spec.rhs()[j].alpha;
            if diff.is_constant() {
                pairwise_deg_ok = false;
                violations.push(format!("deg(alpha_{} - alpha_{}) < 1", i + 1, j + 1));
            }
        }
    }

    let (family, n_min, d_max) = if spec.a().is_zero() {
        let fam = if k == 1 { CaseTag::IA } else { CaseTag::IB };
        let n_min = if k == 1 { 2 } else { k_i + 2 };
        (fam, n_min, n_i - k_i - 1)
    } else {
        let (fam, n_min) = match k {
            1 => (CaseTag::IIA, 5),
            2 => (CaseTag::IIB, 6),
            _ => (CaseTag::IIC, k_i + 4),
        };
        (fam, n_min, n_i - k_i - 3)
    };

    let n_ok = n_i >= n_min;
    if !n_ok {
        let rule = match family {
            CaseTag::IA => "2".to_string(),
            CaseTag::IB => "k+2".to_string(),
            CaseTag::IIA => "5".to_string(),
            CaseTag::IIB => "6".to_string(),
            _ => "k+4".to_string(),
        };
        if rule.starts_with('k') {
            violations.push(format!("n={n} < {rule}={n_min}"));
        } else {
            violations.push(format!("n={n} < {n_min}"));
        }
    }
    let bound_ok = d <= d_max;
    if !bound_ok {
        let rule = if spec.a().is_zero() { "n-k-1" } else { "n-k-3" };
        violations.push(format!("d={d} > {rule}={d_max}"));
    }

    let case_tag = if pairwise_deg_ok && n_ok && bound_ok { family } else { CaseTag::NotApplicable };
    HypothesisReport {
        pairwise_deg_ok,
        bound_ok,
        n_ok,
        case_tag,
        family,
        n,
        k,
        d,
        a: spec.a().clone(),
        violations,
        notes: spec.notes().to_vec(),
    }
}

/// `f^n + a·f^{n-2}·f' + P_d(z, f)`.
pub fn lhs_apply(spec: &EquationSpec, f: &ExpPolynomial) -> ExpPolynomial {
    let mut out = f.pow(spec.n());
    if !spec.a().is_zero() {
        out = out + (f.pow(spec.n() - 2) * f.derivative()).scale(spec.a());
    }
    out + spec.pd().evaluate(f)
}

/// Residual magnitude at one sample point, or why it could not be computed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NumericCheck {
    pub point: GaussianRational,
    pub residual: Option<f64>,
    pub warning: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub holds: bool,
    /// LHS − RHS, canonical.
    pub residual: ExpPolynomial,
    pub numeric_checks: Vec<NumericCheck>,
}

/// Exact check that `f` solves the equation.
///
/// ```
/// use expsol::equation::verify;
/// use expsol::frontend::{parse_equation, parse_function};
///
/// let spec = parse_equation("f^3 + 4*f'*f + f' - f = exp(3z) + 7*exp(2z) + 7*exp(z)").unwrap();
/// let f = parse_function("exp(z) + 1").unwrap();
/// assert!(verify(&spec, &f).holds);
/// ```
pub fn verify(spec: &EquationSpec, f: &ExpPolynomial) -> VerificationReport {
    let residual = lhs_apply(spec, f) - spec.rhs_exp();
    VerificationReport { holds: residual.is_zero(), residual, numeric_checks: Vec::new() }
}

/// Settings for the sampling cross-check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleConfig {
    pub points: usize,
    pub precision_bits: u32,
    pub seed: u64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        Self { points: 10, precision_bits: 128, seed: 0x5eed }
    }
}

/// [`verify`] plus numeric residuals at pseudo-random points. The symbolic
/// verdict never depends on the samples.
pub fn verify_with_samples(spec: &EquationSpec, f: &ExpPolynomial, cfg: SampleConfig) -> VerificationReport {
    let mut report = verify(spec, f);
    let points = sample_points(spec, f, cfg.points, cfg.seed);
    report.numeric_checks = points
        .into_iter()
        .map(|z0| match numeric_residual(spec, f, &z0, cfg.precision_bits) {
            Ok(r) => NumericCheck { point: z0, residual: Some(r), warning: None },
            Err(e) => NumericCheck { point: z0, residual: None, warning: Some(e.to_string()) },
        })
        .collect();
    report
}

/// Every denominator whose roots must be avoided when sampling `spec` at `f`.
fn denominators(spec: &EquationSpec, f: &ExpPolynomial) -> Vec<Polynomial> {
    let mut dens: Vec<Polynomial> = spec.rhs().iter().map(|t| t.p.den().clone()).collect();
    dens.extend(spec.pd().monomials().into_iter().map(|m| m.coeff.den().clone()));
    for (_, c) in f.terms() {
        dens.extend(c.terms().map(|(_, r)| r.den().clone()));
    }
    dens.retain(|d| !d.is_constant());
    dens.sort();
    dens.dedup();
    dens
}

/// `count` points `(a + b·i)/16` with `|a|, |b| ≤ 16`, skipping any that lie
/// near a pole of the equation's or the candidate's coefficients.
pub fn sample_points(spec: &EquationSpec, f: &ExpPolynomial, count: usize, seed: u64) -> Vec<GaussianRational> {
    let dens = denominators(spec, f);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count && attempts < 100 * count.max(1) {
        attempts += 1;
        let z0 = GaussianRational::new(
            Rational::new(rng.gen_range(-16i64..=16).into(), 16.into()),
            Rational::new(rng.gen_range(-16i64..=16).into(), 16.into()),
        );
        if dens.iter().all(|d| !numeric::near_root(d, &z0)) && !out.contains(&z0) {
            out.push(z0);
        }
    }
    out
}

/// `|LHS(z0) − RHS(z0)|` computed without the symbolic product expansion:
/// derivatives of `f` are evaluated numerically and combined, and the RHS
/// uses the raw exponents.
pub fn numeric_residual(
    spec: &EquationSpec,
    f: &ExpPolynomial,
    z0: &GaussianRational,
    precision_bits: u32,
) -> Result<f64, NumericError> {
    if precision_bits < 64 {
        return Err(NumericError::PrecisionTooLow(precision_bits));
    }
    let bits = precision_bits + 64;
    let pole = || NumericError::PoleAtSample { point: z0.clone(), radius: numeric::POLE_EXCLUSION_RADIUS };
    let at = |r: &RationalFunction| -> Result<HpComplex, NumericError> {
        if numeric::near_root(r.den(), z0) {
            return Err(pole());
        }
        let v = numeric::eval_rational_function(r, z0).ok_or_else(pole)?;
        Ok(HpComplex::from_gaussian(&v, bits))
    };

    let order = spec.pd().max_order().unwrap_or(0).max(1);
    let mut derivs = Vec::with_capacity(order + 1);
    let mut g = f.clone();
    for _ in 0..=order {
        derivs.push(g.eval_numeric(z0, bits)?);
        g = g.derivative();
    }

    let n = spec.n();
    let mut lhs = derivs[0].pow(n);
    if !spec.a().is_zero() {
        let a = at(&RationalFunction::constant(spec.a().clone()))?;
        lhs = lhs.add(&a.mul(&derivs[0].pow(n - 2)).mul(&derivs[1]));
    }
    for m in spec.pd().monomials() {
        let mut term = at(&m.coeff)?;
        for (i, &p) in m.exponents.iter().enumerate() {
            if p > 0 {
                term = term.mul(&derivs[i].pow(p));
            }
        }
        lhs = lhs.add(&term);
    }

    let mut rhs = HpComplex::zero(bits);
    for t in spec.rhs() {
        let w = numeric::eval_poly(&t.alpha, z0);
        rhs = rhs.add(&at(&t.p)?.mul(&numeric::exp(&w, bits)));
    }
    Ok(lhs.sub(&rhs).truncate_to(precision_bits).norm_f64())
}
