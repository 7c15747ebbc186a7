use std::fmt;

use serde::Serialize;

/// Byte range in a source text, with the 1-based line/column of its start.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
    pub line: usize,
    pub column: usize,
}

impl Span {
    pub fn at(text: &str, start: usize, end: usize) -> Span {
        let before = &text[..start];
        let line = before.matches('\n').count() + 1;
        let column = before.rfind('\n').map_or(start, |nl| start - nl - 1) + 1;
        Span {
            start,
            end,
            line,
            column,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Warning,
    Error,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub enum DiagnosticKind {
    Lexical,
    Syntax,
    DuplicateName,
    UnknownAgent,
    UnknownClock,
    UnknownLocation,
    UnknownProposition,
    DanglingId,
    InconsistentOwners,
    InitialInvariantUnsatisfiable,
    InvariantUnsatisfiable,
    NestedStrategic,
    MalformedInterval,
    Io,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub kind: DiagnosticKind,
    pub message: String,
    pub span: Option<Span>,
}

impl Diagnostic {
    pub fn error(kind: DiagnosticKind, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Error,
            kind,
            message: message.into(),
            span: None,
        }
    }

    pub fn warning(kind: DiagnosticKind, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Warning,
            kind,
            message: message.into(),
            span: None,
        }
    }

    pub fn with_span(mut self, span: Option<Span>) -> Self {
        if self.span.is_none() {
            self.span = span;
        }
        self
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Warning => "warning",
            Severity::Error => "error",
        };
        match self.span {
            Some(s) => write!(f, "{}:{}: {}: {}", s.line, s.column, sev, self.message),
            None => write!(f, "{}: {}", sev, self.message),
        }
    }
}

pub fn has_errors(diags: &[Diagnostic]) -> bool {
    diags.iter().any(Diagnostic::is_error)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn span_line_and_column_are_one_based() {
        let text = "agent A {\n  init l0;\n}";
        let start = text.find("init").unwrap();
        let s = Span::at(text, start, start + 4);
        assert_eq!((s.line, s.column), (2, 3));
        assert_eq!(Span::at(text, 0, 1).column, 1);
    }
}
