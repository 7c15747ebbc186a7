use crate::diagnostic::{Diagnostic, DiagnosticKind, Span};

#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) enum Tok {
    Ident(String),
    Nat(u32),
    Directive(String),
    LBrace,
    RBrace,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Semi,
    Comma,
    Dot,
    Arrow,
    Lt,
    Le,
    Eq,
    Ge,
    Gt,
    LtLt,
    GtGt,
    Amp,
    Bar,
    Bang,
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{}`", s),
            Tok::Nat(n) => format!("`{}`", n),
            Tok::Directive(d) => format!("`#{}`", d),
            Tok::Eof => "end of input".to_string(),
            other => {
                let s = match other {
                    Tok::LBrace => "{",
                    Tok::RBrace => "}",
                    Tok::LParen => "(",
                    Tok::RParen => ")",
                    Tok::LBracket => "[",
                    Tok::RBracket => "]",
                    Tok::Semi => ";",
                    Tok::Comma => ",",
                    Tok::Dot => ".",
                    Tok::Arrow => "->",
                    Tok::Lt => "<",
                    Tok::Le => "<=",
                    Tok::Eq => "=",
                    Tok::Ge => ">=",
                    Tok::Gt => ">",
                    Tok::LtLt => "<<",
                    Tok::GtGt => ">>",
                    Tok::Amp => "&",
                    Tok::Bar => "|",
                    Tok::Bang => "!",
                    _ => unreachable!(),
                };
                format!("`{}`", s)
            }
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub span: Span,
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<Token>, Diagnostic> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let span = |s: usize, e: usize| Span::at(text, s, e);
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c == b'/' && bytes.get(i + 1) == Some(&b'/') {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let ident_end = |mut j: usize| {
            while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_') {
                j += 1;
            }
            j
        };
        let tok = if c.is_ascii_alphabetic() || c == b'_' {
            i = ident_end(i);
            Tok::Ident(text[start..i].to_string())
        } else if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            match text[start..i].parse::<u32>() {
                Ok(n) => Tok::Nat(n),
                Err(_) => {
                    return Err(Diagnostic::error(
                        DiagnosticKind::Lexical,
                        format!("integer literal `{}` is too large", &text[start..i]),
                    )
                    .with_span(Some(span(start, i))))
                }
            }
        } else if c == b'#' {
            i = ident_end(i + 1);
            if i == start + 1 {
                return Err(Diagnostic::error(DiagnosticKind::Lexical, "expected a directive after `#`")
                    .with_span(Some(span(start, i))));
            }
            Tok::Directive(text[start + 1..i].to_string())
        } else {
            let two = bytes.get(i + 1).copied();
            let (tok, len) = match (c, two) {
                (b'-', Some(b'>')) => (Tok::Arrow, 2),
                (b'<', Some(b'<')) => (Tok::LtLt, 2),
                (b'>', Some(b'>')) => (Tok::GtGt, 2),
                (b'<', Some(b'=')) => (Tok::Le, 2),
                (b'>', Some(b'=')) => (Tok::Ge, 2),
                (b'<', _) => (Tok::Lt, 1),
                (b'>', _) => (Tok::Gt, 1),
                (b'=', _) => (Tok::Eq, 1),
                (b'{', _) => (Tok::LBrace, 1),
                (b'}', _) => (Tok::RBrace, 1),
                (b'(', _) => (Tok::LParen, 1),
                (b')', _) => (Tok::RParen, 1),
                (b'[', _) => (Tok::LBracket, 1),
                (b']', _) => (Tok::RBracket, 1),
                (b';', _) => (Tok::Semi, 1),
                (b',', _) => (Tok::Comma, 1),
                (b'.', _) => (Tok::Dot, 1),
                (b'&', _) => (Tok::Amp, 1),
                (b'|', _) => (Tok::Bar, 1),
                (b'!', _) => (Tok::Bang, 1),
                _ => {
                    let ch = text[i..].chars().next().unwrap_or('?');
                    return Err(Diagnostic::error(
                        DiagnosticKind::Lexical,
                        format!("unexpected character `{}`", ch),
                    )
                    .with_span(Some(span(start, start + ch.len_utf8()))));
                }
            };
            i += len;
            tok
        };
        out.push(Token {
            tok,
            span: span(start, i),
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        span: span(text.len(), text.len()),
    });
    Ok(out)
}

/// Cursor over a token stream with the helpers both parsers need.
pub(crate) struct Cursor<'a> {
    toks: &'a [Token],
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(toks: &'a [Token]) -> Self {
        Cursor { toks, pos: 0 }
    }

    pub(crate) fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    pub(crate) fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    pub(crate) fn span(&self) -> Span {
        self.toks[self.pos].span
    }

    pub(crate) fn prev_span(&self) -> Span {
        self.toks[self.pos.saturating_sub(1)].span
    }

    pub(crate) fn bump(&mut self) -> &Token {
        let t = &self.toks[self.pos];
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub(crate) fn error(&self, expected: &str) -> Diagnostic {
        Diagnostic::error(
            DiagnosticKind::Syntax,
            format!("expected {}, found {}", expected, self.peek().describe()),
        )
        .with_span(Some(self.span()))
    }

    pub(crate) fn expect(&mut self, tok: Tok) -> Result<Span, Diagnostic> {
        if *self.peek() == tok {
            Ok(self.bump().span)
        } else {
            Err(self.error(&tok.describe()))
        }
    }

    pub(crate) fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    pub(crate) fn keyword(&mut self, kw: &str) -> Result<Span, Diagnostic> {
        if self.is_keyword(kw) {
            Ok(self.bump().span)
        } else {
            Err(self.error(&format!("`{}`", kw)))
        }
    }

    pub(crate) fn ident(&mut self, what: &str) -> Result<(String, Span), Diagnostic> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let span = self.bump().span;
                Ok((s, span))
            }
            _ => Err(self.error(what)),
        }
    }

    pub(crate) fn nat(&mut self) -> Result<u32, Diagnostic> {
        match *self.peek() {
            Tok::Nat(n) => {
                self.bump();
                Ok(n)
            }
            _ => Err(self.error("a natural number")),
        }
    }
}
