//! Regression runner over a directory of `.eq` files.
//!
//! `MANIFEST` lines read `name verdict [expected solution]`, `#` starts a
//! comment. Without a manifest every `.eq` file is expected to hold against
//! its `.sol` sidecar.

use std::fmt::Write;
use std::path::{Path, PathBuf};

use expsol::equation::{validate, verify, CaseTag};
use expsol::frontend::print_function;
use expsol::solver::{solve, SolveOutcome};
use rayon::prelude::*;
use serde::Serialize;

use crate::input::{load_candidate, load_equation, parse_candidate, sidecar};
use crate::report::{CliError, Done};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Fails,
    Solved,
    NoSolution,
    NotApplicable,
}

impl Verdict {
    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "holds" => Self::Holds,
            "fails" => Self::Fails,
            "solved" => Self::Solved,
            "no-solution" => Self::NoSolution,
            "not-applicable" => Self::NotApplicable,
            _ => return None,
        })
    }
}

#[derive(Debug)]
pub struct Entry {
    pub name: String,
    pub verdict: Verdict,
    pub solution: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct EntryResult {
    pub name: String,
    pub expected: Verdict,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct CorpusReport {
    pub passed: usize,
    pub total: usize,
    pub entries: Vec<EntryResult>,
}

pub fn parse_manifest(text: &str) -> Result<Vec<Entry>, String> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (name, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim_start();
        if rest.is_empty() {
            return Err(format!("MANIFEST line {}: missing verdict", i + 1));
        }
        let (word, solution) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
        let verdict =
            Verdict::parse(word).ok_or_else(|| format!("MANIFEST line {}: unknown verdict {word:?}", i + 1))?;
        let solution = Some(solution.trim().to_string()).filter(|s| !s.is_empty());
        let name = name.to_string();
        out.push(Entry { name, verdict, solution });
    }
    Ok(out)
}

fn entries(dir: &Path) -> Result<Vec<Entry>, CliError> {
    if !dir.is_dir() {
        return Err(CliError::Usage(format!("{}: not a directory", dir.display())));
    }
    let manifest = dir.join("MANIFEST");
    if manifest.is_file() {
        let text = crate::input::read(&manifest)?;
        return parse_manifest(&text).map_err(CliError::Usage);
    }
    let mut names: Vec<String> = std::fs::read_dir(dir)
        .map_err(|e| CliError::io(dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "eq"))
        .filter_map(|p| p.file_stem().map(|s| s.to_string_lossy().into_owned()))
        .collect();
    names.sort();
    Ok(names.into_iter().map(|name| Entry { name, verdict: Verdict::Holds, solution: None }).collect())
}

/// Runs one entry; `Ok` carries what was observed, `Err` why it failed.
fn check(dir: &Path, e: &Entry) -> Result<String, String> {
    let eq: PathBuf = dir.join(format!("{}.eq", e.name));
    let spec = load_equation(&eq).map_err(|err| err.to_string())?;
    let has_sol = sidecar(&eq).is_file();
    let sidecar_holds = || -> Result<bool, String> {
        let (_, f) = load_candidate(&eq, None).map_err(|err| err.to_string())?;
        Ok(verify(&spec, &f).holds)
    };
    match e.verdict {
        Verdict::Holds | Verdict::Fails => {
            let holds = sidecar_holds()?;
            let want = e.verdict == Verdict::Holds;
            let word = if holds { "holds" } else { "fails" };
            if holds == want {
                Ok(word.into())
            } else {
                Err(format!("expected {}, candidate {word}", if want { "holds" } else { "fails" }))
            }
        }
        Verdict::Solved => {
            if has_sol && !sidecar_holds()? {
                return Err("sidecar solution fails".into());
            }
            let SolveOutcome::Candidates(cs) = solve(&spec).outcome else {
                return Err("solver gave no candidates".into());
            };
            let found: Vec<String> = cs.iter().map(|c| print_function(&c.function())).collect();
            if let Some(s) = &e.solution {
                let want = parse_candidate("MANIFEST", s).map_err(|err| err.to_string())?;
                if !cs.iter().any(|c| c.function() == want) {
                    return Err(format!("expected f = {s}, solver found [{}]", found.join(", ")));
                }
            }
            if found.is_empty() {
                return Err("solver gave no candidates".into());
            }
            Ok(format!("f = {}", found.join(" | f = ")))
        }
        Verdict::NoSolution => match solve(&spec).outcome {
            SolveOutcome::NoSolution(_) => Ok("no solution".into()),
            other => Err(format!("expected no-solution, got {other:?}")),
        },
        Verdict::NotApplicable => {
            let h = validate(&spec);
            if h.case_tag != CaseTag::NotApplicable {
                return Err(format!("classified as {}", h.case_tag));
            }
            if has_sol && !sidecar_holds()? {
                return Err("sidecar solution fails".into());
            }
            Ok(h.violations.join("; "))
        }
    }
}

pub fn run(dir: &Path) -> Result<Done, CliError> {
    let list = entries(dir)?;
    if list.is_empty() {
        let report = CorpusReport { passed: 0, total: 0, entries: Vec::new() };
        return Ok(Done::new(&report, format!("{}: no entries\n", dir.display()), false));
    }
    let results: Vec<EntryResult> = list
        .par_iter()
        .map(|e| {
            let (pass, detail) = match check(dir, e) {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            EntryResult { name: e.name.clone(), expected: e.verdict, pass, detail }
        })
        .collect();
    let passed = results.iter().filter(|r| r.pass).count();
    let width = results.iter().map(|r| r.name.len()).max().unwrap_or(0);
    let mut text = String::new();
    for r in &results {
        let expected =
            serde_json::to_value(r.expected).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
        let _ =
            writeln!(text, "{} {:width$}  {:15} {}", if r.pass { "PASS" } else { "FAIL" }, r.name, expected, r.detail);
    }
    let _ = writeln!(text, "{passed}/{} pass", results.len());
    let report = CorpusReport { passed, total: results.len(), entries: results };
    let ok = report.passed == report.total;
    Ok(Done::new(&report, text, ok))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_lines() {
        let m = parse_manifest("# c\n\na holds\nb solved exp(2z/3)\n c  no-solution \n").unwrap();
        assert_eq!(m.len(), 3);
        assert_eq!(m[1].solution.as_deref(), Some("exp(2z/3)"));
        assert_eq!(m[2].verdict, Verdict::NoSolution);
        assert!(parse_manifest("a maybe").unwrap_err().contains("unknown verdict"));
        assert!(parse_manifest("a").unwrap_err().contains("missing verdict"));
    }
}
