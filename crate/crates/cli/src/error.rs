// Copyright 2026 abcage Contributors
// SPDX-License-Identifier: Apache-2.0

use serde_json::json;
use thiserror::Error;

/// Failure of a CLI run, carrying its process exit code.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CliError {
    /// Unreadable, malformed or out-of-domain configuration. Exit code 2.
    #[error("{message}")]
    Config {
        message: String,
        /// Dotted path of the offending field, when known.
        field: Option<String>,
        line: Option<usize>,
        column: Option<usize>,
    },
    /// The numerics failed on valid input. Exit code 3.
    #[error("{0}")]
    Numerical(String),
    /// Output could not be written. Exit code 1.
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self::Config {
            message: message.into(),
            field: Some(field.into()),
            line: None,
            column: None,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config { .. } => 2,
            Self::Numerical(_) => 3,
            Self::Io(_) => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::Config { .. } => "config",
            Self::Numerical(_) => "numerical",
            Self::Io(_) => "io",
        }
    }

    /// One-line JSON object for standard error.
    pub fn to_json(&self) -> String {
        let mut v = json!({
            "error": self.kind(),
            "exit_code": self.exit_code(),
            "message": self.to_string(),
        });
        if let Self::Config {
            field,
            line,
            column,
            ..
        } = self
        {
            if let Some(f) = field {
                v["field"] = json!(f);
            }
            if let Some(l) = line {
                v["line"] = json!(l);
            }
            if let Some(c) = column {
                v["column"] = json!(c);
            }
        }
        v.to_string()
    }

    /// Attaches a field path to a config error that lacks one.
    pub fn in_field(self, path: &str) -> Self {
        match self {
            Self::Config {
                message,
                field: None,
                line,
                column,
            } => Self::Config {
                message,
                field: Some(path.to_string()),
                line,
                column,
            },
            other => other,
        }
    }
}

impl From<abcage_core::Error> for CliError {
    fn from(e: abcage_core::Error) -> Self {
        use abcage_core::Error as E;
        match e {
            E::ParameterDomain { .. }
            | E::Shape { .. }
            | E::IndexOutOfRange { .. }
            | E::Unsupported(_)
            | E::DegenerateBasis { .. } => Self::Config {
                message: e.to_string(),
                field: None,
                line: None,
                column: None,
            },
            E::NoConvergence { .. }
            | E::InaccurateEigenpairs { .. }
            | E::Singular
            | E::NonFinite { .. } => Self::Numerical(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::Io(e.to_string())
    }
}
