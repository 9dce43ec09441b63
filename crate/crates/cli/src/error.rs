use serde::Serialize;
use thiserror::Error;

/// Parse error classes. The `code` strings are stable and appear in JSON
/// error output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParseErrorKind {
    Syntax,
    UnresolvedName,
    DuplicateName,
    Dimension,
    ElementRange,
    ImproperFilter,
    /// Statement not allowed for this kind of instance (finite vs. symbolic).
    InstanceKind,
    Missing,
}

impl ParseErrorKind {
    pub fn code(self) -> &'static str {
        match self {
            ParseErrorKind::Syntax => "E101-syntax",
            ParseErrorKind::UnresolvedName => "E102-unresolved-name",
            ParseErrorKind::DuplicateName => "E103-duplicate-name",
            ParseErrorKind::Dimension => "E104-dimension",
            ParseErrorKind::ElementRange => "E105-element-range",
            ParseErrorKind::ImproperFilter => "E106-improper-filter",
            ParseErrorKind::InstanceKind => "E107-instance-kind",
            ParseErrorKind::Missing => "E108-missing",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(kind: ParseErrorKind, line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError { kind, line, column, message: message.into() }
    }

    pub fn at(kind: ParseErrorKind, at: (usize, usize), message: impl Into<String>) -> Self {
        ParseError::new(kind, at.0, at.1, message)
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("size cap exceeded: product has {tuples} tuples, cap is {cap}")]
    SizeCap { tuples: u128, cap: u128 },
    #[error("{0}")]
    Core(redprod::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl From<redprod::Error> for CliError {
    fn from(e: redprod::Error) -> Self {
        match e {
            redprod::Error::SizeCap { tuples, cap } => CliError::SizeCap { tuples, cap },
            other => CliError::Core(other),
        }
    }
}

impl CliError {
    /// Stable code for machine consumers.
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "E001-usage",
            CliError::Parse(p) => p.kind.code(),
            CliError::SizeCap { .. } => "E301-size-cap",
            CliError::Core(_) => "E002-input",
            CliError::Io { .. } => "E003-io",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Core(_) | CliError::Io { .. } => 1,
            CliError::Parse(_) => 2,
            CliError::SizeCap { .. } => 3,
        }
    }

    /// Source location, where the error has one.
    pub fn location(&self) -> Option<(usize, usize)> {
        match self {
            CliError::Parse(p) => Some((p.line, p.column)),
            _ => None,
        }
    }
}
