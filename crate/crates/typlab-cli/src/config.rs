//! Run configuration: `key = value` files merged under CLI flags.
//!
//! Precedence, highest first: explicit flag, config-file entry, the
//! `TYPLAB_SEED` environment variable (seed only), built-in default.
//! Unknown keys and malformed lines are usage errors (exit 2).

use std::collections::BTreeMap;
use std::path::Path;

/// A parsed config file: flat string map plus provenance for messages.
#[derive(Debug, Default, Clone)]
pub struct FileConfig {
    values: BTreeMap<String, String>,
}

/// Usage-level error (maps to exit code 2).
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for UsageError {}

impl FileConfig {
    /// Parse a line-based `key = value` file. Blank lines and lines
    /// starting with `#` are ignored.
    pub fn load(path: &Path, allowed_keys: &[&str]) -> Result<Self, UsageError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| UsageError(format!("cannot read config {}: {e}", path.display())))?;
        let mut values = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(UsageError(format!(
                    "{}:{}: malformed line (expected `key = value`): {raw:?}",
                    path.display(),
                    lineno + 1
                )));
            };
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            if !allowed_keys.contains(&key.as_str()) {
                return Err(UsageError(format!(
                    "{}:{}: unknown key {key:?} (allowed: {})",
                    path.display(),
                    lineno + 1,
                    allowed_keys.join(", ")
                )));
            }
            values.insert(key, value);
        }
        Ok(FileConfig { values })
    }

    pub fn get<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, UsageError>
    where
        T::Err: std::fmt::Display,
    {
        match self.values.get(key) {
            None => Ok(None),
            Some(raw) => raw.parse::<T>().map(Some).map_err(|e| {
                UsageError(format!("config key {key:?}: cannot parse {raw:?}: {e}"))
            }),
        }
    }

    /// Full parameter echo for run headers.
    pub fn echo(&self) -> String {
        self.values
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Resolve one parameter through the precedence chain.
pub fn resolve<T: Clone>(flag: Option<T>, file: Option<T>, default: T) -> T {
    flag.or(file).unwrap_or(default)
}

/// Seed resolution includes the environment fallback.
pub fn resolve_seed(flag: Option<u64>, file: Option<u64>) -> u64 {
    flag.or(file)
        .or_else(|| {
            std::env::var("TYPLAB_SEED")
                .ok()
                .and_then(|s| s.parse::<u64>().ok())
        })
        .unwrap_or(42)
}
