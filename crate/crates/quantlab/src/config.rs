//! `--config` handling: JSON fields override the corresponding flags.

use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::CliError;
use crate::formats::read_json;

/// Environment variable capping worker threads.
pub const THREADS_ENV: &str = "QUANTLAB_THREADS";

/// A parsed config file, split into global keys and command parameters.
#[derive(Debug, Default)]
pub struct ConfigFile {
    pub output: Option<PathBuf>,
    pub params: Map<String, Value>,
}

impl ConfigFile {
    /// Reads `path` and checks that an optional `"command"` key names `command`.
    pub fn load(path: &Path, command: &str) -> Result<Self, CliError> {
        let value: Value = read_json(path)?;
        let Value::Object(mut params) = value else {
            return Err(CliError::usage(format!("{} must hold a JSON object", path.display())));
        };
        match params.remove("command") {
            None => {}
            Some(Value::String(c)) if c == command => {}
            Some(other) => return Err(CliError::usage(format!("config is for command {other}, not {command}"))),
        }
        let output = match params.remove("output") {
            None | Some(Value::Null) => None,
            Some(Value::String(p)) => Some(PathBuf::from(p)),
            Some(other) => return Err(CliError::usage(format!("output must be a path, got {other}"))),
        };
        Ok(Self { output, params })
    }
}

/// Overlays `params` on the flags in `cli` and re-validates the result against the argument schema.
pub fn merge<T: Serialize + DeserializeOwned>(cli: &T, params: &Map<String, Value>) -> Result<T, CliError> {
    let Value::Object(mut base) = serde_json::to_value(cli).map_err(|e| CliError::usage(e.to_string()))? else {
        unreachable!("argument structs serialize to objects");
    };
    base.retain(|_, v| !v.is_null());
    for (k, v) in params {
        base.insert(k.clone(), v.clone());
    }
    serde_json::from_value(Value::Object(base)).map_err(|e| CliError::usage(format!("invalid config: {e}")))
}

/// Worker count: the requested value capped by `QUANTLAB_THREADS`; 0 leaves the choice to rayon.
pub fn thread_count(requested: Option<usize>) -> Result<usize, CliError> {
    let cap = match std::env::var(THREADS_ENV) {
        Ok(v) => Some(
            v.trim()
                .parse::<usize>()
                .ok()
                .filter(|&t| t > 0)
                .ok_or_else(|| CliError::usage(format!("{THREADS_ENV} must be a positive integer, got {v:?}")))?,
        ),
        Err(_) => None,
    };
    if requested == Some(0) {
        return Err(CliError::usage("threads must be positive"));
    }
    Ok(match (requested, cap) {
        (Some(r), Some(c)) => r.min(c),
        (Some(r), None) => r,
        (None, Some(c)) => c,
        (None, None) => 0,
    })
}

/// Runs `f` inside a dedicated pool of `threads` workers.
pub fn with_pool<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> Result<R, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::usage(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(f))
}
