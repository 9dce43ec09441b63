//! Text syntax for formulas over one binary relation `R`.
//!
//! ```text
//! formula := ("exists" | "forall") name+ "." formula | disj
//! disj    := conj ("|" conj)*
//! conj    := unary ("&" unary)*
//! unary   := "~" unary | "(" formula ")" | "true" | "false"
//!          | "R" "(" name "," name ")" | name "=" name
//!          | "dist" "(" n ")" "(" name "," name ")" | "conn" "(" n ")"
//!          | ("exists" | "forall") ...
//! ```
//!
//! `dist(n)(x,y)` expands to the bounded-distance formula for paths of
//! length `n+1`; `conn(n)` to the sentence saying any two points are that
//! close. Free variables are numbered in order of first occurrence.

use redprod::formula::{conn_sentence, dist_formula, Formula};

use crate::error::{ParseError, ParseErrorKind};
use crate::lex::{tokenize_line, Cursor, Tok};

const KEYWORDS: &[&str] = &["exists", "forall", "true", "false", "R", "dist", "conn"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedFormula {
    pub formula: Formula,
    /// Free variable names by index.
    pub free: Vec<String>,
}

struct Scope {
    bound: Vec<String>,
    free: Vec<String>,
}

impl Scope {
    fn index(&mut self, name: &str) -> usize {
        let depth = self.bound.len();
        if let Some(pos) = self.bound.iter().rposition(|b| b == name) {
            return depth - 1 - pos;
        }
        let m = match self.free.iter().position(|f| f == name) {
            Some(m) => m,
            None => {
                self.free.push(name.to_string());
                self.free.len() - 1
            }
        };
        depth + m
    }
}

pub fn parse_formula(text: &str) -> Result<ParsedFormula, ParseError> {
    let mut tokens = Vec::new();
    for (k, line) in text.lines().enumerate() {
        tokens.extend(tokenize_line(line, k + 1)?);
    }
    let last_line = text.lines().count().max(1);
    let end = text.lines().last().map(|l| l.chars().count() + 1).unwrap_or(1);
    let mut c = Cursor::new(&tokens, last_line, end);
    let mut scope = Scope { bound: Vec::new(), free: Vec::new() };
    let formula = formula(&mut c, &mut scope)?;
    c.finish()?;
    Ok(ParsedFormula { formula, free: scope.free })
}

fn formula(c: &mut Cursor<'_>, s: &mut Scope) -> Result<Formula, ParseError> {
    if let Some(q) = quantifier(c) {
        return quantified(c, s, q);
    }
    let mut parts = vec![conj(c, s)?];
    while c.eat_sym('|') {
        parts.push(conj(c, s)?);
    }
    Ok(if parts.len() == 1 { parts.pop().expect("one part") } else { Formula::Or(parts) })
}

fn quantifier(c: &mut Cursor<'_>) -> Option<bool> {
    if c.eat_keyword("exists") {
        Some(true)
    } else if c.eat_keyword("forall") {
        Some(false)
    } else {
        None
    }
}

fn quantified(c: &mut Cursor<'_>, s: &mut Scope, exists: bool) -> Result<Formula, ParseError> {
    let mut names = vec![variable(c)?];
    while matches!(c.peek_tok(), Some(Tok::Ident(_))) {
        names.push(variable(c)?);
    }
    c.expect_sym('.')?;
    s.bound.extend(names.iter().cloned());
    let mut body = formula(c, s)?;
    for _ in &names {
        s.bound.pop();
        body = if exists { Formula::exists(body) } else { Formula::forall(body) };
    }
    Ok(body)
}

fn conj(c: &mut Cursor<'_>, s: &mut Scope) -> Result<Formula, ParseError> {
    let mut parts = vec![unary(c, s)?];
    while c.eat_sym('&') {
        parts.push(unary(c, s)?);
    }
    Ok(if parts.len() == 1 { parts.pop().expect("one part") } else { Formula::And(parts) })
}

fn variable(c: &mut Cursor<'_>) -> Result<String, ParseError> {
    let at = c.here();
    let (name, _) = c.ident("a variable")?;
    if KEYWORDS.contains(&name.as_str()) {
        return Err(ParseError::at(ParseErrorKind::Syntax, at, format!("`{name}` is reserved")));
    }
    Ok(name)
}

fn pair(c: &mut Cursor<'_>, s: &mut Scope) -> Result<(usize, usize), ParseError> {
    c.expect_sym('(')?;
    let a = variable(c)?;
    c.expect_sym(',')?;
    let b = variable(c)?;
    c.expect_sym(')')?;
    Ok((s.index(&a), s.index(&b)))
}

fn bound_n(c: &mut Cursor<'_>) -> Result<usize, ParseError> {
    c.expect_sym('(')?;
    let (n, at) = c.usize("a distance bound")?;
    c.expect_sym(')')?;
    if n > redprod::formula::MAX_DIST_N {
        return Err(ParseError::at(
            ParseErrorKind::Syntax,
            at,
            format!("bound {n} exceeds the maximum {}", redprod::formula::MAX_DIST_N),
        ));
    }
    Ok(n)
}

fn unary(c: &mut Cursor<'_>, s: &mut Scope) -> Result<Formula, ParseError> {
    if c.eat_sym('~') {
        return Ok(Formula::not(unary(c, s)?));
    }
    if c.eat_sym('(') {
        let f = formula(c, s)?;
        c.expect_sym(')')?;
        return Ok(f);
    }
    if let Some(q) = quantifier(c) {
        return quantified(c, s, q);
    }
    if c.eat_keyword("true") {
        return Ok(Formula::And(vec![]));
    }
    if c.eat_keyword("false") {
        return Ok(Formula::Or(vec![]));
    }
    if c.eat_keyword("R") {
        let (a, b) = pair(c, s)?;
        return Ok(Formula::Rel(a, b));
    }
    if c.eat_keyword("dist") {
        let n = bound_n(c)?;
        let (a, b) = pair(c, s)?;
        let f = dist_formula(n).expect("bound checked");
        return Ok(rebind(&f, &[a, b], 0));
    }
    if c.eat_keyword("conn") {
        let n = bound_n(c)?;
        return Ok(conn_sentence(n).expect("bound checked"));
    }
    if matches!(c.peek_tok(), Some(Tok::Ident(_))) {
        let a = variable(c)?;
        c.expect_sym('=')?;
        let b = variable(c)?;
        return Ok(Formula::Eq(s.index(&a), s.index(&b)));
    }
    Err(c.unexpected("a formula"))
}

/// Sends free variable `m` of `f` to index `targets[m]` of the surrounding
/// context.
fn rebind(f: &Formula, targets: &[usize], depth: usize) -> Formula {
    let v = |i: usize| if i < depth { i } else { targets[i - depth] + depth };
    match f {
        Formula::Rel(a, b) => Formula::Rel(v(*a), v(*b)),
        Formula::Eq(a, b) => Formula::Eq(v(*a), v(*b)),
        Formula::Not(g) => Formula::not(rebind(g, targets, depth)),
        Formula::And(gs) => Formula::And(gs.iter().map(|g| rebind(g, targets, depth)).collect()),
        Formula::Or(gs) => Formula::Or(gs.iter().map(|g| rebind(g, targets, depth)).collect()),
        Formula::Exists(g) => Formula::exists(rebind(g, targets, depth + 1)),
        Formula::Forall(g) => Formula::forall(rebind(g, targets, depth + 1)),
    }
}
