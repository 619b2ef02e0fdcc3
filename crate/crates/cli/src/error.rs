use std::fmt::Debug;

use serde_json::json;

use concordance_core::jsequence::JSequenceError;
use concordance_core::{CommutatorError, FoxError, InfectionError, LedgerError, RingError, SeifertError};

use crate::Report;

pub const DOMAIN: u8 = 1;
pub const USAGE: u8 = 2;

#[derive(Debug, Clone)]
pub struct CliError {
    pub kind: String,
    pub message: String,
    pub code: u8,
    /// Extra fields merged into the error document.
    pub detail: Option<serde_json::Value>,
}

impl CliError {
    pub fn new(kind: impl Into<String>, message: impl Into<String>, code: u8) -> Self {
        CliError { kind: kind.into(), message: message.into(), code, detail: None }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        CliError::new("Usage", message, USAGE)
    }

    pub fn io(path: &str, e: std::io::Error) -> Self {
        CliError::new("Io", format!("{path}: {e}"), USAGE)
    }

    pub fn with_detail(mut self, detail: serde_json::Value) -> Self {
        self.detail = Some(detail);
        self
    }

    pub fn report(&self) -> Report {
        let mut doc = json!({ "error": { "kind": self.kind, "message": self.message } });
        if let (Some(serde_json::Value::Object(extra)), Some(map)) = (&self.detail, doc.as_object_mut()) {
            map.extend(extra.clone());
        }
        Report { json: doc, text: String::new(), code: self.code }
    }
}

/// `kind: message` for stderr.
pub fn describe(doc: &serde_json::Value) -> String {
    let e = &doc["error"];
    format!("error[{}]: {}", e["kind"].as_str().unwrap_or("?"), e["message"].as_str().unwrap_or(""))
}

/// Innermost variant name of a derived `Debug` rendering, looking through
/// the wrapper variants `Fox(..)`, `Ring(..)` and `Seifert(..)`.
fn variant<E: Debug>(e: &E) -> String {
    let text = format!("{e:?}");
    let mut rest = text.as_str();
    loop {
        let end = rest.find(|c: char| !c.is_alphanumeric() && c != '_').unwrap_or(rest.len());
        let name = &rest[..end];
        match (name, rest[end..].strip_prefix('(')) {
            ("Fox" | "Ring" | "Seifert", Some(inner)) => rest = inner,
            _ => return name.to_string(),
        }
    }
}

fn classify<E: Debug + std::fmt::Display>(e: &E, usage: &[&str]) -> CliError {
    let kind = variant(e);
    let code = if usage.contains(&kind.as_str()) { USAGE } else { DOMAIN };
    CliError::new(kind, e.to_string(), code)
}

const INPUT_ERRORS: &[&str] = &[
    "Parse",
    "NotSquare",
    "NotUnimodular",
    "OddSize",
    "InvalidPrime",
    "Shape",
    "IndexOutOfRange",
    "LimitZero",
    "WrongTupleSize",
    "TrivialSystem",
    "UnsupportedLevel",
    "UnsupportedCoefficients",
    "InvalidPrimeBound",
    "InvalidFamily",
    "LengthMismatch",
    "AllZero",
    "InvalidAxis",
    "DimensionMismatch",
    "MissingCrossingNumber",
];

macro_rules! from_core {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                classify(&e, INPUT_ERRORS)
            }
        }
    )*};
}

from_core!(SeifertError, RingError, FoxError, CommutatorError, InfectionError, LedgerError, JSequenceError);
