use std::fmt;
use std::path::{Path, PathBuf};

use expsol::frontend::ParseError;
use serde::Serialize;
use serde_json::Value;

/// Top-level JSON document printed by every subcommand.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: &'static str,
    pub version: &'static str,
    pub inputs: Vec<String>,
    pub outcome: Value,
    pub timing_ms: f64,
}

/// What a command produced: the JSON payload, its text rendering and the
/// success predicate that picks exit code 0 or 1.
pub struct Done {
    pub outcome: Value,
    pub text: String,
    pub success: bool,
}

impl Done {
    pub fn new(outcome: &impl Serialize, text: String, success: bool) -> Self {
        let outcome = serde_json::to_value(outcome).unwrap_or_else(|e| Value::String(format!("unserializable: {e}")));
        Self { outcome, text, success }
    }
}

/// Usage, I/O and parse failures; all exit with code 2.
#[derive(Debug)]
pub enum CliError {
    Io { path: PathBuf, error: std::io::Error },
    Parse { path: String, source: String, error: ParseError },
    Usage(String),
}

impl CliError {
    pub fn io(path: &Path, error: std::io::Error) -> Self {
        Self::Io { path: path.to_path_buf(), error }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Self::Io { path, error } => serde_json::json!({
                "kind": "io",
                "message": format!("{}: {error}", path.display()),
            }),
            Self::Parse { path, error, .. } => serde_json::json!({
                "kind": "parse",
                "path": path,
                "message": error.to_string(),
                "span": error.span,
            }),
            Self::Usage(msg) => serde_json::json!({ "kind": "usage", "message": msg }),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Io { path, error } => write!(f, "{}: {error}", path.display()),
            Self::Parse { path, source, error } => write!(f, "{path}: {}", error.render(source)),
            Self::Usage(msg) => f.write_str(msg),
        }
    }
}
