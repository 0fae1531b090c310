use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use shrubkit::registry::{Artifact, Outcome};

use crate::Format;

#[derive(Debug)]
pub struct CliError(pub String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<shrubkit::Error> for CliError {
    fn from(e: shrubkit::Error) -> Self {
        CliError(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

pub fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text)
        .map_err(|e| CliError(format!("cannot write {}: {e}", path.display())))
}

/// The main result of a command.
pub enum Payload {
    None,
    Artifact(Artifact),
    /// Text in a format without an [`Artifact`] kind (formulas, coloured trees).
    Text(String),
}

/// Everything a command prints: the verdict line first, then facts, then the
/// payload (or a note where the payload went).
pub struct Report {
    pub verdict: Option<bool>,
    pub line: Option<String>,
    pub facts: BTreeMap<String, Value>,
    pub payload: Payload,
    pub output: Option<PathBuf>,
}

impl Report {
    pub fn payload(payload: Payload, output: Option<PathBuf>) -> Self {
        Report {
            verdict: None,
            line: None,
            facts: BTreeMap::new(),
            payload,
            output,
        }
    }

    pub fn verdict(holds: bool, line: impl Into<String>) -> Self {
        Report {
            verdict: Some(holds),
            line: Some(line.into()),
            facts: BTreeMap::new(),
            payload: Payload::None,
            output: None,
        }
    }

    /// A headline without a yes/no verdict.
    pub fn headline(line: impl Into<String>) -> Self {
        Report {
            line: Some(line.into()),
            ..Report::payload(Payload::None, None)
        }
    }

    pub fn from_outcome(o: Outcome, output: Option<PathBuf>) -> Self {
        Report {
            verdict: o.verdict,
            line: Some(o.line),
            facts: o.facts,
            payload: o.witness.map_or(Payload::None, Payload::Artifact),
            output,
        }
    }

    pub fn fact(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.facts.insert(key.to_string(), value.into());
        self
    }

    pub fn with_payload(mut self, payload: Payload, output: Option<PathBuf>) -> Self {
        self.payload = payload;
        self.output = output;
        self
    }

    /// Prints the report and returns the exit code: 1 for a negative verdict,
    /// 0 otherwise.
    pub fn emit(self, format: Format) -> CliResult<u8> {
        let text = match &self.payload {
            Payload::None => None,
            Payload::Artifact(a) => Some(a.to_text()),
            Payload::Text(t) => Some(t.clone()),
        };
        if let (Some(path), Some(text)) = (&self.output, &text) {
            write_file(path, text)?;
        }
        let mut out = String::new();
        match format {
            Format::Text => {
                if let Some(line) = &self.line {
                    out.push_str(&format!("{line}\n"));
                }
                for (k, v) in &self.facts {
                    out.push_str(&format!("{k}: {}\n", plain(v)));
                }
                match (&self.output, text) {
                    (Some(path), Some(_)) => out.push_str(&format!("wrote {}\n", path.display())),
                    (None, Some(t)) => out.push_str(&t),
                    _ => {}
                }
            }
            Format::Structured => {
                let result = match &self.payload {
                    Payload::None => Value::Null,
                    Payload::Artifact(a) => {
                        json!({ "kind": a.kind().name(), "value": a.to_json() })
                    }
                    Payload::Text(t) => json!({ "kind": "text", "value": t }),
                };
                let verdict = self.verdict.map(|v| if v { "YES" } else { "NO" });
                let doc = json!({
                    "verdict": verdict,
                    "line": self.line,
                    "facts": self.facts,
                    "result": result,
                    "output": self.output.as_ref().map(|p| p.display().to_string()),
                });
                out = serde_json::to_string_pretty(&doc).expect("serializable");
                out.push('\n');
            }
        }
        // a closed pipe (e.g. `| head`) is not an error worth reporting
        let _ = std::io::stdout().lock().write_all(out.as_bytes());
        Ok(if self.verdict == Some(false) { 1 } else { 0 })
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
