use std::fmt::Write;
use std::path::Path;

use expsol::elimination::{build_system, cramer_identity_check, rank_report};
use expsol::equation::{validate, verify_with_samples, CaseTag, HypothesisReport, SampleConfig};
use expsol::frontend::{print_equation, print_function};
use expsol::solver::{solve, SolutionCandidate, SolveOutcome};
use serde_json::json;

use crate::input::{load_candidate, load_equation};
use crate::report::{CliError, Done};

pub fn hypothesis_text(h: &HypothesisReport) -> String {
    let mut s = String::new();
    if h.case_tag == CaseTag::NotApplicable {
        let _ = write!(s, "case: NotApplicable (would be {})", h.family);
    } else {
        let _ = write!(s, "case: {}", h.case_tag);
    }
    let _ = writeln!(s, "  n={} k={} d={} a={}", h.n, h.k, h.d, h.a);
    for v in &h.violations {
        let _ = writeln!(s, "violation: {v}");
    }
    for n in &h.notes {
        let _ = writeln!(s, "note: {n}");
    }
    s
}

fn candidate_text(c: &SolutionCandidate) -> String {
    let roles: Vec<String> = c.assignment.iter().map(|(r, i)| format!("{r}=term {i}")).collect();
    format!(
        "f = {}\n  roles: {}\n  exponent constant: {}\n",
        print_function(&c.function()),
        roles.join(", "),
        c.constant
    )
}

pub fn outcome_text(o: &SolveOutcome, case: CaseTag) -> String {
    match o {
        SolveOutcome::Candidates(cs) if cs.is_empty() => "no candidate verified\n".into(),
        SolveOutcome::Candidates(cs) => cs.iter().map(candidate_text).collect(),
        SolveOutcome::NoSolution(why) => format!("NoSolution (case {case}): {why}\n"),
        SolveOutcome::NotApplicable(h) => format!("NotApplicable: {}\n", h.violations.join("; ")),
        SolveOutcome::Unresolved(why) => {
            let mut s = String::from("Unresolved\n");
            for w in why {
                let _ = writeln!(s, "  {w}");
            }
            s
        }
    }
}

pub fn verify(path: &Path, candidate: Option<&str>, numeric: usize, precision_bits: u32) -> Result<Done, CliError> {
    if numeric > 0 && precision_bits < 64 {
        return Err(CliError::Usage(format!("--precision-bits must be at least 64, got {precision_bits}")));
    }
    let spec = load_equation(path)?;
    let (_, f) = load_candidate(path, candidate)?;
    let cfg = SampleConfig { points: numeric, precision_bits, ..SampleConfig::default() };
    let rep = verify_with_samples(&spec, &f, cfg);
    let mut text = format!("equation: {}\ncandidate: f = {}\n", print_equation(&spec), print_function(&f));
    let _ = writeln!(text, "holds: {}", rep.holds);
    if !rep.holds {
        let _ = writeln!(text, "residual: {}", print_function(&rep.residual));
    }
    for c in &rep.numeric_checks {
        match (&c.residual, &c.warning) {
            (Some(r), _) => {
                let _ = writeln!(text, "sample z = {}: |residual| = {r:e}", c.point);
            }
            (None, Some(w)) => {
                let _ = writeln!(text, "warning: {w}");
            }
            (None, None) => {}
        }
    }
    Ok(Done::new(&rep, text, rep.holds))
}

pub fn solve_cmd(path: &Path) -> Result<Done, CliError> {
    let spec = load_equation(path)?;
    let rep = solve(&spec);
    let mut text = format!("equation: {}\n", print_equation(&spec));
    text.push_str(&hypothesis_text(&rep.hypothesis));
    text.push_str(&outcome_text(&rep.outcome, rep.hypothesis.case_tag));
    let success = rep.outcome.is_definitive();
    Ok(Done::new(&rep, text, success))
}

pub fn classify(path: &Path) -> Result<Done, CliError> {
    let spec = load_equation(path)?;
    let h = validate(&spec);
    let text = format!("equation: {}\n{}", print_equation(&spec), hypothesis_text(&h));
    let ok = h.applicable();
    Ok(Done::new(&h, text, ok))
}

pub fn diagnose(path: &Path) -> Result<Done, CliError> {
    let spec = load_equation(path)?;
    let report = match cramer_identity_check(&spec) {
        Ok(r) => r,
        Err(e) => {
            let text = format!("equation: {}\n{e}\n", print_equation(&spec));
            return Ok(Done::new(&json!({ "error": e.to_string(), "k": spec.k() }), text, false));
        }
    };
    let matrix = build_system(&spec);
    let ranks = rank_report(&spec);
    let mut text = format!("equation: {}\ncoefficient matrix (k={}):\n", print_equation(&spec), matrix.k);
    for row in &matrix.entries {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        let _ = writeln!(text, "  [{}]", cells.join(", "));
    }
    let _ = writeln!(text, "D0 = {}", report.d0);
    let _ = writeln!(text, "D1 = {}", print_function(&report.d1));
    let _ = writeln!(text, "rank: coefficient {}, augmented {}", ranks.rank_coeff, ranks.rank_augmented);
    if report.degenerate {
        let _ = writeln!(text, "degenerate: D0 == 0, the identity does not determine exp(alpha_1)");
    }
    let _ = writeln!(text, "identity D0*exp(alpha_1) = D1: {}", if report.holds { "holds" } else { "fails" });
    let success = report.holds && !report.degenerate;
    let outcome = json!({ "matrix": matrix, "cramer": report, "rank": ranks });
    Ok(Done::new(&outcome, text, success))
}
