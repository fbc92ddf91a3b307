//! Surface-syntax parsers for types, terms, contexts, and formulas.
//!
//! Grammar, loosest to tightest: `->` (right), `*` (right), prefix `<>`
//! (and `o`, `[]` in formulas), atoms. Terms: lambda and the `let` family
//! extend as far right as possible, application is left-associative, and
//! `fst`/`snd`/`return` take an atomic argument, so `fst p y` is
//! `(fst p) y`. Variables are resolved to de Bruijn indices against the
//! ambient scope; binders may shadow.

use laxcal::kripke::Formula;
use laxcal::syntax::{Ctx, Term, Type};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at {}:{}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Number(String),
    Backslash,
    Dot,
    Colon,
    Comma,
    LParen,
    RParen,
    Equals,
    Star,
    Arrow,
    Diamond,
    BoxBrackets,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Number(s) => write!(f, "`{s}`"),
            Tok::Backslash => f.write_str("`\\`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Equals => f.write_str("`=`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::Diamond => f.write_str("`<>`"),
            Tok::BoxBrackets => f.write_str("`[]`"),
        }
    }
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

fn is_ident_start(c: u8) -> bool {
    c.is_ascii_alphabetic() || c == b'_'
}

fn is_ident_continue(c: u8) -> bool {
    c.is_ascii_alphanumeric() || c == b'_' || c == b'\''
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Lexer<'a> {
        Lexer { src: src.as_bytes(), pos: 0, line: 1, col: 1 }
    }

    fn bump(&mut self) -> Option<u8> {
        let c = *self.src.get(self.pos)?;
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn error(&self, message: String) -> ParseError {
        ParseError { line: self.line, col: self.col, message }
    }

    fn tokens(mut self) -> Result<Vec<(Tok, usize, usize)>, ParseError> {
        let mut out = Vec::new();
        loop {
            while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
                self.bump();
            }
            let (line, col) = (self.line, self.col);
            let Some(c) = self.peek() else { break };
            let tok = match c {
                b'\\' => {
                    self.bump();
                    Tok::Backslash
                }
                b'.' => {
                    self.bump();
                    Tok::Dot
                }
                b':' => {
                    self.bump();
                    Tok::Colon
                }
                b',' => {
                    self.bump();
                    Tok::Comma
                }
                b'(' => {
                    self.bump();
                    Tok::LParen
                }
                b')' => {
                    self.bump();
                    Tok::RParen
                }
                b'=' => {
                    self.bump();
                    Tok::Equals
                }
                b'*' => {
                    self.bump();
                    Tok::Star
                }
                b'-' => {
                    self.bump();
                    if self.peek() == Some(b'>') {
                        self.bump();
                        Tok::Arrow
                    } else {
                        return Err(self.error("expected `->`".into()));
                    }
                }
                b'<' => {
                    self.bump();
                    if self.peek() == Some(b'>') {
                        self.bump();
                        Tok::Diamond
                    } else {
                        return Err(self.error("expected `<>`".into()));
                    }
                }
                b'[' => {
                    self.bump();
                    if self.peek() == Some(b']') {
                        self.bump();
                        Tok::BoxBrackets
                    } else {
                        return Err(self.error("expected `[]`".into()));
                    }
                }
                c if c.is_ascii_digit() => {
                    let mut s = String::new();
                    while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                        s.push(self.bump().unwrap() as char);
                    }
                    Tok::Number(s)
                }
                c if is_ident_start(c) => {
                    let mut s = String::new();
                    while matches!(self.peek(), Some(c) if is_ident_continue(c)) {
                        s.push(self.bump().unwrap() as char);
                    }
                    Tok::Ident(s)
                }
                other => {
                    return Err(self.error(format!("unexpected character `{}`", other as char)));
                }
            };
            out.push((tok, line, col));
        }
        Ok(out)
    }
}

const TERM_KEYWORDS: [&str; 7] = ["fst", "snd", "return", "let", "letmap", "letjoin", "in"];

struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn new(src: &str) -> Result<Parser, ParseError> {
        let toks = Lexer::new(src).tokens()?;
        let end = toks
            .last()
            .map(|(_, l, c)| (*l, *c + 1))
            .unwrap_or((1, 1));
        Ok(Parser { toks, pos: 0, end })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _, _)| t)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map(|(_, l, c)| (*l, *c)).unwrap_or(self.end)
    }

    fn error(&self, message: String) -> ParseError {
        let (line, col) = self.here();
        ParseError { line, col, message }
    }

    fn describe_next(&self) -> String {
        match self.peek() {
            Some(t) => format!("{t}"),
            None => "end of input".into(),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {tok}, found {}", self.describe_next())))
        }
    }

    fn expect_ident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) if !TERM_KEYWORDS.contains(&s.as_str()) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.error(format!("expected {what}, found {}", self.describe_next()))),
        }
    }

    fn at_end(&self) -> bool {
        self.pos == self.toks.len()
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error(format!("unexpected {} after the expression", self.describe_next())))
        }
    }

    // ---- types ----

    fn ty(&mut self) -> Result<Type, ParseError> {
        let left = self.ty_prod()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.pos += 1;
            let right = self.ty()?;
            Ok(Type::fun(left, right))
        } else {
            Ok(left)
        }
    }

    fn ty_prod(&mut self) -> Result<Type, ParseError> {
        let left = self.ty_prefix()?;
        if self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            let right = self.ty_prod()?;
            Ok(Type::prod(left, right))
        } else {
            Ok(left)
        }
    }

    fn ty_prefix(&mut self) -> Result<Type, ParseError> {
        if self.peek() == Some(&Tok::Diamond) {
            self.pos += 1;
            return Ok(Type::dia(self.ty_prefix()?));
        }
        match self.next() {
            Some(Tok::Ident(s)) if s == "i" => Ok(Type::Base),
            Some(Tok::Number(s)) if s == "1" => Ok(Type::Unit),
            Some(Tok::LParen) => {
                let t = self.ty()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Some(other) => {
                self.pos -= 1;
                Err(self.error(format!("expected a type (`i`, `1`, `<>`, `(`), found {other}")))
            }
            None => Err(self.error("expected a type, found end of input".into())),
        }
    }

    // ---- terms ----

    fn term(&mut self, scope: &mut Vec<String>) -> Result<Term, ParseError> {
        match self.peek() {
            Some(Tok::Backslash) => {
                self.pos += 1;
                let name = self.expect_ident("a binder name")?;
                let ann = if self.peek() == Some(&Tok::Colon) {
                    self.pos += 1;
                    Some(self.ty()?)
                } else {
                    None
                };
                self.expect(Tok::Dot)?;
                scope.push(name);
                let body = self.term(scope)?;
                scope.pop();
                Ok(Term::Lam(ann, Box::new(body)))
            }
            Some(Tok::Ident(kw)) if kw == "let" || kw == "letmap" || kw == "letjoin" => {
                let kw = kw.clone();
                self.pos += 1;
                let name = self.expect_ident("a binder name")?;
                self.expect(Tok::Equals)?;
                let subject = self.term(scope)?;
                match self.peek() {
                    Some(Tok::Ident(s)) if s == "in" => {
                        self.pos += 1;
                    }
                    _ => {
                        return Err(
                            self.error(format!("expected `in`, found {}", self.describe_next()))
                        )
                    }
                }
                scope.push(name);
                let body = self.term(scope)?;
                scope.pop();
                Ok(match kw.as_str() {
                    "let" => Term::let_in(subject, body),
                    "letmap" => Term::letmap(subject, body),
                    _ => Term::letjoin(subject, body),
                })
            }
            _ => self.app(scope),
        }
    }

    fn app(&mut self, scope: &mut Vec<String>) -> Result<Term, ParseError> {
        let mut acc = self.prefix(scope)?;
        while self.starts_prefix() {
            let arg = self.prefix(scope)?;
            acc = Term::app(acc, arg);
        }
        Ok(acc)
    }

    fn starts_prefix(&self) -> bool {
        match self.peek() {
            Some(Tok::LParen) => true,
            Some(Tok::Ident(s)) => s != "in" && s != "let" && s != "letmap" && s != "letjoin",
            _ => false,
        }
    }

    fn prefix(&mut self, scope: &mut Vec<String>) -> Result<Term, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == "fst" || s == "snd" || s == "return" => {
                let kw = s.clone();
                self.pos += 1;
                let arg = self.atom(scope)?;
                Ok(match kw.as_str() {
                    "fst" => Term::fst(arg),
                    "snd" => Term::snd(arg),
                    _ => Term::ret(arg),
                })
            }
            _ => self.atom(scope),
        }
    }

    fn atom(&mut self, scope: &mut Vec<String>) -> Result<Term, ParseError> {
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.pos += 1;
                if self.peek() == Some(&Tok::RParen) {
                    self.pos += 1;
                    return Ok(Term::Unit);
                }
                let first = self.term(scope)?;
                if self.peek() == Some(&Tok::Comma) {
                    self.pos += 1;
                    let second = self.term(scope)?;
                    self.expect(Tok::RParen)?;
                    Ok(Term::pair(first, second))
                } else {
                    self.expect(Tok::RParen)?;
                    Ok(first)
                }
            }
            Some(Tok::Ident(name)) if !TERM_KEYWORDS.contains(&name.as_str()) => {
                self.pos += 1;
                match scope.iter().rev().position(|n| *n == name) {
                    Some(k) => Ok(Term::Var(k)),
                    None => {
                        self.pos -= 1;
                        Err(self.error(format!("unbound variable `{name}`")))
                    }
                }
            }
            _ => Err(self.error(format!(
                "expected a term (variable, `(`, `\\`, `fst`, `snd`, `return`, `let`), found {}",
                self.describe_next()
            ))),
        }
    }

    // ---- formulas ----

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let left = self.formula_and()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.pos += 1;
            let right = self.formula()?;
            Ok(Formula::imp(left, right))
        } else {
            Ok(left)
        }
    }

    fn formula_and(&mut self) -> Result<Formula, ParseError> {
        let left = self.formula_prefix()?;
        if self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            let right = self.formula_and()?;
            Ok(Formula::and(left, right))
        } else {
            Ok(left)
        }
    }

    fn formula_prefix(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Tok::Diamond) => {
                self.pos += 1;
                Ok(Formula::dia(self.formula_prefix()?))
            }
            Some(Tok::BoxBrackets) => {
                self.pos += 1;
                Ok(Formula::boxed(self.formula_prefix()?))
            }
            Some(Tok::Ident(s)) if s == "o" => {
                self.pos += 1;
                Ok(Formula::circ(self.formula_prefix()?))
            }
            _ => self.formula_atom(),
        }
    }

    fn formula_atom(&mut self) -> Result<Formula, ParseError> {
        match self.next() {
            Some(Tok::Ident(p)) => Ok(Formula::Atom(p)),
            Some(Tok::Number(s)) if s == "1" => Ok(Formula::Top),
            Some(Tok::LParen) => {
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Some(other) => {
                self.pos -= 1;
                Err(self.error(format!("expected a formula, found {other}")))
            }
            None => Err(self.error("expected a formula, found end of input".into())),
        }
    }
}

/// Parse a type: `i | 1 | <>T | T * T | T -> T | (T)`.
pub fn parse_type(src: &str) -> Result<Type, ParseError> {
    let mut p = Parser::new(src)?;
    let t = p.ty()?;
    p.expect_end()?;
    Ok(t)
}

/// Parse a term against the names of the ambient context (oldest first).
pub fn parse_term(src: &str, ctx_names: &[String]) -> Result<Term, ParseError> {
    let mut p = Parser::new(src)?;
    let mut scope = ctx_names.to_vec();
    let t = p.term(&mut scope)?;
    p.expect_end()?;
    Ok(t)
}

/// Parse a context like `x:i, y:<>i` into names and types; the empty
/// string is the empty context.
pub fn parse_ctx(src: &str) -> Result<(Vec<String>, Ctx), ParseError> {
    let mut p = Parser::new(src)?;
    let mut names = Vec::new();
    let mut ctx = Ctx::empty();
    if p.at_end() {
        return Ok((names, ctx));
    }
    loop {
        let name = p.expect_ident("a variable name")?;
        if names.contains(&name) {
            return Err(p.error(format!("duplicate context variable `{name}`")));
        }
        p.expect(Tok::Colon)?;
        let ty = p.ty()?;
        names.push(name);
        ctx = ctx.extend(ty);
        if p.at_end() {
            return Ok((names, ctx));
        }
        p.expect(Tok::Comma)?;
    }
}

/// Parse a propositional formula; `o` and `[]` are the global diamond and
/// the box.
pub fn parse_formula(src: &str) -> Result<Formula, ParseError> {
    let mut p = Parser::new(src)?;
    let f = p.formula()?;
    p.expect_end()?;
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use laxcal::syntax::{alpha_eq, print};

    fn names(ns: &[&str]) -> Vec<String> {
        ns.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn type_precedence() {
        let t = parse_type("<>i -> <>i * i").unwrap();
        assert_eq!(
            t,
            Type::fun(Type::dia(Type::Base), Type::prod(Type::dia(Type::Base), Type::Base))
        );
        assert_eq!(parse_type("i -> i -> i").unwrap(), parse_type("i -> (i -> i)").unwrap());
        assert_eq!(parse_type("<> <> i").unwrap(), Type::dia(Type::dia(Type::Base)));
        assert!(parse_type("i ->").is_err());
    }

    #[test]
    fn strength_witness_parses() {
        let t = parse_term("\\x:i*<>i. letmap y = snd x in (fst x, y)", &[]).unwrap();
        let expected = Term::lam(
            Type::prod(Type::Base, Type::dia(Type::Base)),
            Term::letmap(
                Term::snd(Term::Var(0)),
                Term::pair(Term::fst(Term::Var(1)), Term::Var(0)),
            ),
        );
        assert_eq!(t, expected);
    }

    #[test]
    fn application_is_left_associative_and_prefixes_bind_atoms() {
        let t = parse_term("f x y", &names(&["f", "x", "y"])).unwrap();
        assert_eq!(
            t,
            Term::app(Term::app(Term::Var(2), Term::Var(1)), Term::Var(0))
        );
        let t = parse_term("fst p y", &names(&["p", "y"])).unwrap();
        assert_eq!(t, Term::app(Term::fst(Term::Var(1)), Term::Var(0)));
        let t = parse_term("f (fst p)", &names(&["f", "p"])).unwrap();
        assert_eq!(t, Term::app(Term::Var(1), Term::fst(Term::Var(0))));
    }

    #[test]
    fn shadowing_resolves_to_the_innermost_binder() {
        let t = parse_term("\\x. \\x. x", &[]).unwrap();
        assert_eq!(t, Term::lam_unannotated(Term::lam_unannotated(Term::Var(0))));
    }

    #[test]
    fn malformed_let_is_rejected_with_position() {
        let err = parse_term("let x = in", &[]).unwrap_err();
        assert_eq!(err.line, 1);
        assert!(err.message.contains("expected a term"), "{}", err.message);
        assert!(parse_term("let x = () in", &[]).is_err());
    }

    #[test]
    fn unbound_variables_are_parse_errors() {
        let err = parse_term("x", &[]).unwrap_err();
        assert!(err.message.contains("unbound variable `x`"));
    }

    #[test]
    fn print_parse_round_trip_on_display_forms() {
        let witnesses = [
            "\\x. letmap y = snd x in (fst x, y)",
            "\\x. let y = snd x in return (fst x, y)",
            "\\x. return x",
            "\\x. let y = x in y",
            "\\x. letjoin y = x in y",
            "(\\x. x) ()",
            "fst p g",
        ];
        for src in witnesses {
            let t = parse_term(src, &names(&["p", "g"])).unwrap();
            let printed = print(&t, &["p", "g"]);
            let back = parse_term(&printed, &names(&["p", "g"])).unwrap();
            assert!(alpha_eq(&t, &back), "{src} -> {printed}");
        }
    }

    #[test]
    fn ctx_parsing() {
        let (names, ctx) = parse_ctx("x:i, y:<>i").unwrap();
        assert_eq!(names, vec!["x".to_string(), "y".to_string()]);
        assert_eq!(ctx.lookup(0), Some(&Type::dia(Type::Base)));
        assert_eq!(ctx.lookup(1), Some(&Type::Base));
        assert!(parse_ctx("").unwrap().0.is_empty());
        assert!(parse_ctx("x:i, x:1").is_err());
    }

    #[test]
    fn formula_parsing() {
        let f = parse_formula("p * <>q -> <>(p * q)").unwrap();
        assert_eq!(
            f,
            Formula::axiom_s(Formula::atom("p"), Formula::atom("q"))
        );
        assert_eq!(
            parse_formula("o p").unwrap(),
            Formula::circ(Formula::atom("p"))
        );
        assert_eq!(
            parse_formula("[]p").unwrap(),
            Formula::boxed(Formula::atom("p"))
        );
        assert!(parse_formula("p ->").is_err());
    }
}
