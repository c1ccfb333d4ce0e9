//! One module per subcommand family. Each returns the primary artifact plus its checks.

mod algebra;
mod cocycle;
mod fock;
mod index;
mod module;
mod spectral;
mod toeplitz;

use quantlab_core::dolbeault::Gauge;
use serde_json::{Map, Value};

use crate::checks::Check;
use crate::cli::Command;
use crate::config::merge;
use crate::error::CliError;
use crate::formats::to_csv;
use crate::registry::OPERATIONS;

#[derive(Clone, Debug, PartialEq)]
pub enum Artifact {
    Json(Value),
    Csv(String),
}

impl Artifact {
    /// The artifact as written to disk or stdout, newline-terminated.
    pub fn render(&self) -> String {
        match self {
            Self::Json(v) => {
                let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
                s.push('\n');
                s
            }
            Self::Csv(s) => s.clone(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub artifact: Artifact,
    pub checks: Vec<Check>,
}

impl Outcome {
    /// A JSON report: `body` plus `command` and `checks` keys.
    fn json(command: &str, body: Value, checks: Vec<Check>) -> Self {
        let Value::Object(mut map) = body else { unreachable!("report bodies are objects") };
        map.insert("command".into(), Value::String(command.into()));
        map.insert("checks".into(), serde_json::to_value(&checks).expect("checks serialize"));
        Self { artifact: Artifact::Json(Value::Object(map)), checks }
    }

    fn csv(text: String, checks: Vec<Check>) -> Self {
        Self { artifact: Artifact::Csv(text), checks }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Merges the config overrides into the parsed flags and runs the command.
pub fn execute(command: &Command, params: &Map<String, Value>) -> Result<Outcome, CliError> {
    match command {
        Command::CocycleCheck(a) => cocycle::run(&merge(a, params)?),
        Command::Algebra(a) => algebra::run(&merge(a, params)?),
        Command::ModuleGram(a) => module::run(&merge(a, params)?),
        Command::Spectral(a) => spectral::run(&merge(a, params)?),
        Command::ToeplitzSweep(a) => toeplitz::sweep(&merge(a, params)?),
        Command::Weyl(a) => toeplitz::weyl(&merge(a, params)?),
        Command::Bargmann(a) => fock::bargmann(&merge(a, params)?),
        Command::Heisenberg(a) => fock::heisenberg(&merge(a, params)?),
        Command::Index(a) => index::run(&merge(a, params)?),
        Command::Registry => {
            if let Some(k) = params.keys().next() {
                return Err(CliError::usage(format!("registry takes no parameters, got {k:?}")));
            }
            Ok(Outcome::csv(to_csv(OPERATIONS)?, Vec::new()))
        }
    }
}

fn positive(name: &str, v: f64) -> Result<f64, CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::usage(format!("{name} must be positive, got {v}")))
    }
}

fn parse_gauge(tag: Option<&str>) -> Result<Gauge, CliError> {
    let tag = tag.unwrap_or("landau");
    Gauge::from_tag(tag).ok_or_else(|| CliError::usage(format!("unknown gauge {tag:?}; use landau or symmetric-periodic")))
}

fn default_grid(n: usize) -> usize {
    (8 * n).max(16)
}

fn to_usize(values: Vec<i64>, name: &str, min: i64) -> Result<Vec<usize>, CliError> {
    if values.iter().any(|&v| v < min) {
        return Err(CliError::usage(format!("{name} values must be at least {min}")));
    }
    Ok(values.into_iter().map(|v| v as usize).collect())
}
