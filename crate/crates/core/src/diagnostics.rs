//! Machine-readable diagnostics collected while mining and refining.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiagnosticKind {
    MalformedSource,
    MalformedEntry,
    ParseFailure,
    Todo,
    DefaultMismatch,
    NonRepresentableDefault,
    Undocumented,
    NotInSignature,
    SkippedParameter,
    DuplicateConstraint,
    IgnoredType,
    Conflict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub class: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arg: Option<String>,
    pub kind: DiagnosticKind,
    pub message: String,
}

impl Diagnostic {
    pub fn new(
        class: &str,
        arg: Option<&str>,
        kind: DiagnosticKind,
        message: impl Into<String>,
    ) -> Self {
        Diagnostic {
            class: class.to_string(),
            arg: arg.map(str::to_string),
            kind,
            message: message.into(),
        }
    }
}

/// Count of diagnostics of one kind.
pub fn count(diags: &[Diagnostic], kind: DiagnosticKind) -> usize {
    diags.iter().filter(|d| d.kind == kind).count()
}
