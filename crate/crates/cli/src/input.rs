use std::path::{Path, PathBuf};

use expsol::equation::EquationSpec;
use expsol::exppoly::ExpPolynomial;
use expsol::frontend::{parse_equation, parse_function};

use crate::report::CliError;

pub fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

/// Drops `#` comment lines and surrounding blank space.
fn strip(text: &str) -> String {
    text.lines().filter(|l| !l.trim_start().starts_with('#')).collect::<Vec<_>>().join("\n").trim().to_string()
}

pub fn load_equation(path: &Path) -> Result<EquationSpec, CliError> {
    let source = strip(&read(path)?);
    parse_equation(&source).map_err(|error| CliError::Parse { path: path.display().to_string(), source, error })
}

pub fn parse_candidate(label: &str, text: &str) -> Result<ExpPolynomial, CliError> {
    let source = strip(text);
    parse_function(&source).map_err(|error| CliError::Parse { path: label.to_string(), source, error })
}

/// The sidecar `.sol` next to an `.eq` file.
pub fn sidecar(eq: &Path) -> PathBuf {
    eq.with_extension("sol")
}

/// `--candidate` is a file when such a file exists, otherwise an
/// expression; without it the sidecar is used.
pub fn load_candidate(eq: &Path, candidate: Option<&str>) -> Result<(String, ExpPolynomial), CliError> {
    match candidate {
        Some(c) if Path::new(c).is_file() => {
            let text = read(Path::new(c))?;
            Ok((c.to_string(), parse_candidate(c, &text)?))
        }
        Some(c) => Ok(("--candidate".to_string(), parse_candidate("--candidate", c)?)),
        None => {
            let sol = sidecar(eq);
            if !sol.is_file() {
                return Err(CliError::Usage(format!("no candidate: pass --candidate or provide {}", sol.display())));
            }
            let text = read(&sol)?;
            let label = sol.display().to_string();
            let f = parse_candidate(&label, &text)?;
            Ok((label, f))
        }
    }
}
