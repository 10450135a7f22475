//! Machine-readable run reports.
//!
//! Exact rationals are serialized as `"p/q"` strings by the core types;
//! every float that reaches a report is wrapped in [`Approx`], which
//! renders it as `{"approx": "<15 significant digits>"}` so consumers can
//! never mistake a diagnostic estimate for an exact value. Reports are
//! byte-deterministic for identical inputs and flags.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use sha2::{Digest, Sha256};

pub const SCHEMA: &str = "septool.report/v1";

/// A tagged approximate value (never exact; 15 significant digits).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Approx(pub f64);

impl Serialize for Approx {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Approx", 1)?;
        st.serialize_field("approx", &format!("{:.14e}", self.0))?;
        st.end()
    }
}

#[derive(Debug, Serialize)]
pub struct RunReport<T: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub schema: &'static str,
    pub command: String,
    pub input_digest: String,
    pub output: T,
}

impl<T: Serialize> RunReport<T> {
    pub fn new(command: &str, digest_parts: &[&str], output: T) -> Self {
        RunReport {
            tool: "septool",
            version: env!("CARGO_PKG_VERSION"),
            schema: SCHEMA,
            command: command.to_string(),
            input_digest: digest(digest_parts),
            output,
        }
    }
}

/// Hex SHA-256 over the parts joined with a separator byte, so flag order
/// and missing fields are unambiguous.
pub fn digest(parts: &[&str]) -> String {
    let mut hasher = Sha256::new();
    for p in parts {
        hasher.update(p.as_bytes());
        hasher.update([0x1f]);
    }
    let out = hasher.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

/// Write the report: `Some("-")` prints JSON to stdout (suppressing the
/// human summary), `Some(path)` writes the file alongside the summary,
/// `None` prints only the summary.
pub fn emit<T: Serialize>(
    report: &RunReport<T>,
    json_target: Option<&str>,
    human: &str,
) -> anyhow::Result<()> {
    let rendered = serde_json::to_string_pretty(report)?;
    match json_target {
        Some("-") => println!("{rendered}"),
        Some(path) => {
            std::fs::write(path, rendered.as_bytes())?;
            println!("{human}");
            println!("report written to {path}");
        }
        None => println!("{human}"),
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn approx_is_tagged_and_precise() {
        let v = serde_json::to_value(Approx(0.5123456789012345)).unwrap();
        let s = v["approx"].as_str().unwrap();
        assert!(s.starts_with("5.1234567890123"));
        assert!(s.contains('e'));
    }

    #[test]
    fn digest_is_stable_and_separator_aware() {
        assert_eq!(digest(&["a", "b"]), digest(&["a", "b"]));
        assert_ne!(digest(&["a", "b"]), digest(&["ab"]));
        assert_ne!(digest(&["a", "b"]), digest(&["a", "c"]));
    }
}
