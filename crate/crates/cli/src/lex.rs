//! Tokenizer shared by the instance DSL and the formula syntax.

use crate::error::{ParseError, ParseErrorKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Num(u64),
    Sym(char),
}

impl std::fmt::Display for Tok {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Num(n) => write!(f, "`{n}`"),
            Tok::Sym(c) => write!(f, "`{c}`"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

const SYMBOLS: &[char] = &['{', '}', '(', ')', ',', '=', '.', '~', '&', '|'];

/// Tokens of one line; `#` starts a comment. Columns are 1-based and count
/// characters, not bytes.
pub fn tokenize_line(text: &str, line: usize) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let column = k + 1;
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let digits: String = chars[start..k].iter().collect();
            let n = digits.parse().map_err(|_| {
                ParseError::new(ParseErrorKind::Syntax, line, column, format!("number `{digits}` is too large"))
            })?;
            out.push(Token { tok: Tok::Num(n), line, column });
        } else if c.is_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].is_alphanumeric() || chars[k] == '_' || chars[k] == '-') {
                k += 1;
            }
            out.push(Token { tok: Tok::Ident(chars[start..k].iter().collect()), line, column });
        } else if SYMBOLS.contains(&c) {
            out.push(Token { tok: Tok::Sym(c), line, column });
            k += 1;
        } else {
            return Err(ParseError::new(ParseErrorKind::Syntax, line, column, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

/// Cursor over the tokens of one statement.
pub struct Cursor<'a> {
    tokens: &'a [Token],
    pos: usize,
    line: usize,
    /// Column just past the last token, for errors at end of input.
    end_column: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(tokens: &'a [Token], line: usize, end_column: usize) -> Self {
        Cursor { tokens, pos: 0, line, end_column }
    }

    pub fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.pos)
    }

    pub fn peek_tok(&self) -> Option<&'a Tok> {
        self.peek().map(|t| &t.tok)
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    pub fn next(&mut self) -> Option<&'a Token> {
        let t = self.tokens.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    /// Location of the next token, or of the end of input.
    pub fn here(&self) -> (usize, usize) {
        match self.peek() {
            Some(t) => (t.line, t.column),
            None => (self.line, self.end_column),
        }
    }

    pub fn error(&self, message: impl Into<String>) -> ParseError {
        let (line, column) = self.here();
        ParseError::new(ParseErrorKind::Syntax, line, column, message)
    }

    pub fn unexpected(&self, wanted: &str) -> ParseError {
        match self.peek() {
            Some(t) => self.error(format!("expected {wanted}, found {}", t.tok)),
            None => self.error(format!("expected {wanted}, found end of line")),
        }
    }

    pub fn eat_sym(&mut self, c: char) -> bool {
        if self.peek_tok() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{c}`")))
        }
    }

    pub fn eat_keyword(&mut self, word: &str) -> bool {
        if matches!(self.peek_tok(), Some(Tok::Ident(s)) if s == word) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect_keyword(&mut self, word: &str) -> Result<(), ParseError> {
        if self.eat_keyword(word) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{word}`")))
        }
    }

    pub fn ident(&mut self, what: &str) -> Result<(String, (usize, usize)), ParseError> {
        let at = self.here();
        match self.peek_tok() {
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok((s.clone(), at))
            }
            _ => Err(self.unexpected(what)),
        }
    }

    pub fn number(&mut self, what: &str) -> Result<(u64, (usize, usize)), ParseError> {
        let at = self.here();
        match self.peek_tok() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok((*n, at))
            }
            _ => Err(self.unexpected(what)),
        }
    }

    pub fn usize(&mut self, what: &str) -> Result<(usize, (usize, usize)), ParseError> {
        let (n, at) = self.number(what)?;
        let n = usize::try_from(n).map_err(|_| ParseError::new(ParseErrorKind::Syntax, at.0, at.1, "number too large"))?;
        Ok((n, at))
    }

    /// `{a, b, c}`; commas optional.
    pub fn number_set(&mut self) -> Result<(Vec<u64>, (usize, usize)), ParseError> {
        let at = self.here();
        self.expect_sym('{')?;
        let mut xs = Vec::new();
        loop {
            if self.eat_sym('}') {
                return Ok((xs, at));
            }
            xs.push(self.number("a number or `}`")?.0);
            self.eat_sym(',');
        }
    }

    /// `(a, b, c)`.
    pub fn tuple(&mut self) -> Result<(Vec<u64>, (usize, usize)), ParseError> {
        let at = self.here();
        self.expect_sym('(')?;
        let mut xs = Vec::new();
        if self.eat_sym(')') {
            return Ok((xs, at));
        }
        loop {
            xs.push(self.number("a number")?.0);
            if self.eat_sym(')') {
                return Ok((xs, at));
            }
            self.expect_sym(',')?;
        }
    }

    pub fn finish(&self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.unexpected("end of line"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_and_columns() {
        let toks = tokenize_line("edge 0 12 # loop", 3).unwrap();
        let got: Vec<(Tok, usize)> = toks.into_iter().map(|t| (t.tok, t.column)).collect();
        assert_eq!(
            got,
            vec![(Tok::Ident("edge".into()), 1), (Tok::Num(0), 6), (Tok::Num(12), 8)]
        );
    }

    #[test]
    fn bad_character_located() {
        let e = tokenize_line("edge 0 $", 7).unwrap_err();
        assert_eq!((e.kind, e.line, e.column), (ParseErrorKind::Syntax, 7, 8));
    }

    #[test]
    fn sets_and_tuples() {
        let toks = tokenize_line("{0,1 2} (3, 4)", 1).unwrap();
        let mut c = Cursor::new(&toks, 1, 15);
        assert_eq!(c.number_set().unwrap().0, vec![0, 1, 2]);
        assert_eq!(c.tuple().unwrap().0, vec![3, 4]);
        assert!(c.finish().is_ok());
    }
}
