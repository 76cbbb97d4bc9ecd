//! Output files: a stamped header line followed by a plain CSV table.
//!
//! Dialect: comma separators, `.` decimals, LF line endings, no quoting
//! (data rows never contain free text). Every file starts with a header
//! line carrying the artifact version, the seed, and an ISO-8601
//! timestamp; `--no-timestamp` drops the timestamp so reruns are
//! byte-identical.

use std::io::Write;
use std::path::Path;

use crate::config::UsageError;

pub struct RunStamp {
    pub seed: u64,
    pub no_timestamp: bool,
    pub params: String,
}

impl RunStamp {
    pub fn header_line(&self) -> String {
        let version = env!("CARGO_PKG_VERSION");
        let mut line = format!("# typlab {version} seed={}", self.seed);
        if !self.params.is_empty() {
            line.push(' ');
            line.push_str(&self.params);
        }
        if !self.no_timestamp {
            line.push(' ');
            line.push_str(&chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true));
        }
        line
    }
}

/// Write a CSV file: stamp line, column line, data rows.
pub fn write_csv(
    path: &Path,
    stamp: &RunStamp,
    columns: &[&str],
    rows: &[Vec<String>],
) -> Result<(), UsageError> {
    let mut out = String::new();
    out.push_str(&stamp.header_line());
    out.push('\n');
    out.push_str(&columns.join(","));
    out.push('\n');
    for row in rows {
        debug_assert_eq!(row.len(), columns.len());
        out.push_str(&row.join(","));
        out.push('\n');
    }
    std::fs::write(path, out)
        .map_err(|e| UsageError(format!("cannot write {}: {e}", path.display())))
}

/// Write a JSON document (reports, run headers).
pub fn write_json(path: &Path, value: &serde_json::Value) -> Result<(), UsageError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| UsageError(format!("serialize: {e}")))?;
    text.push('\n');
    std::fs::write(path, text)
        .map_err(|e| UsageError(format!("cannot write {}: {e}", path.display())))
}

/// Forgiving float formatting for CSV cells: shortest round-trip repr.
pub fn fmt_f64(x: f64) -> String {
    if x == x.trunc() && x.abs() < 1e15 {
        format!("{x:.1}")
    } else {
        format!("{x}")
    }
}

/// Print a line to stdout immediately (suite progress).
pub fn say(line: &str) {
    println!("{line}");
    let _ = std::io::stdout().flush();
}
