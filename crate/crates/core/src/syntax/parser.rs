//! Recursive-descent parsers for `.atm` (source) and `.mps` (target) text.
//!
//! Both dialects share the OCaml-flavoured expression layer:
//!
//! ```text
//! expr  ::= fun x -> expr | fix f x -> expr | let x = expr in expr
//!         | let rec f x = expr in expr | if expr then expr else expr
//!         | shift k -> expr            (source)
//!         | shift[p] k -> expr | newp p in expr   (target)
//!         | cons
//! cons  ::= add [:: cons]
//! add   ::= app {+ app}
//! app   ::= item {atom}
//! item  ::= reset atom | throw k atom | reset[p] atom | head atom | tail atom | null atom | atom
//! atom  ::= x | n | true | false | [] | [e; ...] | (expr) | omega | #n
//! ```
//!
//! The right operand of `+` and `::` may also be a binder form, which then
//! extends as far to the right as possible.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use super::lexer::{lex, Pos, Tok, Token};
use super::{list_literal_source, list_literal_target, Literal, Name, PromptId, TargetTerm, Term};
use crate::source::{Judgment, TypeATM};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseError {
    Syntax { line: usize, col: usize, msg: String },
    Scope { line: usize, col: usize, msg: String },
}

impl ParseError {
    pub(crate) fn syntax(pos: Pos, msg: impl Into<String>) -> ParseError {
        ParseError::Syntax { line: pos.line, col: pos.col, msg: msg.into() }
    }

    fn scope(pos: Pos, msg: impl Into<String>) -> ParseError {
        ParseError::Scope { line: pos.line, col: pos.col, msg: msg.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax { line, col, msg } => write!(f, "syntax error at {line}:{col}: {msg}"),
            ParseError::Scope { line, col, msg } => write!(f, "scope error at {line}:{col}: {msg}"),
        }
    }
}

impl core::error::Error for ParseError {}

/// A closed source program with an optional type annotation.
#[derive(Clone, Debug, PartialEq)]
pub struct SourceProgram {
    pub term: Term,
    pub expected_type: Option<Judgment>,
}

const KEYWORDS: &[&str] = &[
    "fun", "fix", "let", "rec", "in", "shift", "throw", "reset", "if", "then", "else", "true", "false",
    "head", "tail", "null", "newp", "omega",
];

#[derive(Clone, Copy, PartialEq, Eq)]
enum Binder {
    Ordinary,
    Continuation,
}

struct Parser {
    toks: Vec<Token>,
    idx: usize,
    /// Innermost binder last; only consulted for `throw`.
    scope: Vec<(Name, Binder)>,
}

impl Parser {
    fn new(src: &str) -> Result<Parser, ParseError> {
        Ok(Parser { toks: lex(src)?, idx: 0, scope: Vec::new() })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.idx].tok
    }

    fn pos(&self) -> Pos {
        self.toks[self.idx].pos
    }

    fn advance(&mut self) -> Tok {
        let t = self.toks[self.idx].tok.clone();
        if self.idx + 1 < self.toks.len() {
            self.idx += 1;
        }
        t
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn eat_kw(&mut self, kw: &str) -> bool {
        if self.is_kw(kw) {
            self.advance();
            true
        } else {
            false
        }
    }

    fn expect_kw(&mut self, kw: &str) -> Result<(), ParseError> {
        if self.eat_kw(kw) {
            Ok(())
        } else {
            Err(self.unexpected(&alloc::format!("'{kw}'")))
        }
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.advance();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok, what: &str) -> Result<(), ParseError> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(self.unexpected(what))
        }
    }

    fn unexpected(&self, what: &str) -> ParseError {
        let found = match self.peek() {
            Tok::Ident(s) => alloc::format!("'{s}'"),
            Tok::Int(n) => alloc::format!("{n}"),
            Tok::Eof => "end of input".to_string(),
            t => alloc::format!("{t:?}"),
        };
        ParseError::syntax(self.pos(), alloc::format!("expected {what}, found {found}"))
    }

    fn ident(&mut self) -> Result<Name, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                self.advance();
                Ok(s)
            }
            _ => Err(self.unexpected("identifier")),
        }
    }

    fn at_binder_form(&self) -> bool {
        ["fun", "fix", "let", "shift", "if", "newp"].iter().any(|k| self.is_kw(k))
    }

    fn at_atom_start(&self) -> bool {
        match self.peek() {
            Tok::Ident(s) => !KEYWORDS.contains(&s.as_str()) || matches!(s.as_str(), "true" | "false" | "omega"),
            Tok::Int(_) | Tok::Prompt(_) | Tok::LParen | Tok::LBracket => true,
            _ => false,
        }
    }

    fn with_binders<T>(
        &mut self,
        names: &[(Name, Binder)],
        f: impl FnOnce(&mut Self) -> Result<T, ParseError>,
    ) -> Result<T, ParseError> {
        self.scope.extend(names.iter().cloned());
        let r = f(self);
        self.scope.truncate(self.scope.len() - names.len());
        r
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if matches!(self.peek(), Tok::Eof) {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }

    // ---------------------------------------------------------------- source

    fn s_expr(&mut self) -> Result<Term, ParseError> {
        if self.eat_kw("fun") {
            let x = self.ident()?;
            self.expect(&Tok::Arrow, "'->'")?;
            let body = self.with_binders(&[(x.clone(), Binder::Ordinary)], |p| p.s_expr())?;
            return Ok(Term::Lam(x, Box::new(body)));
        }
        if self.eat_kw("fix") {
            let f = self.ident()?;
            let x = self.ident()?;
            self.expect(&Tok::Arrow, "'->'")?;
            let body = self.with_binders(
                &[(f.clone(), Binder::Ordinary), (x.clone(), Binder::Ordinary)],
                |p| p.s_expr(),
            )?;
            return Ok(Term::Fix(f, x, Box::new(body)));
        }
        if self.is_kw("let") {
            let pos = self.pos();
            self.advance();
            if self.eat_kw("rec") {
                let f = self.ident()?;
                let x = self.ident()?;
                self.expect(&Tok::Equals, "'='")?;
                let fbody = self.with_binders(
                    &[(f.clone(), Binder::Ordinary), (x.clone(), Binder::Ordinary)],
                    |p| p.s_expr(),
                )?;
                self.expect_kw("in")?;
                let body = self.with_binders(&[(f.clone(), Binder::Ordinary)], |p| p.s_expr())?;
                let fix = Term::Fix(f.clone(), x, Box::new(fbody));
                return Ok(Term::Let(f, Box::new(fix), Box::new(body)));
            }
            let x = self.ident()?;
            self.expect(&Tok::Equals, "'='")?;
            let v = self.s_expr()?;
            if !v.is_value() {
                return Err(ParseError::syntax(pos, "the term bound by let must be a value"));
            }
            self.expect_kw("in")?;
            let body = self.with_binders(&[(x.clone(), Binder::Ordinary)], |p| p.s_expr())?;
            return Ok(Term::Let(x, Box::new(v), Box::new(body)));
        }
        if self.eat_kw("shift") {
            let k = self.ident()?;
            self.expect(&Tok::Arrow, "'->'")?;
            let body = self.with_binders(&[(k.clone(), Binder::Continuation)], |p| p.s_expr())?;
            return Ok(Term::Shift(k, Box::new(body)));
        }
        if self.eat_kw("if") {
            let c = self.s_expr()?;
            self.expect_kw("then")?;
            let a = self.s_expr()?;
            self.expect_kw("else")?;
            let b = self.s_expr()?;
            return Ok(Term::If(Box::new(c), Box::new(a), Box::new(b)));
        }
        self.s_cons()
    }

    fn s_operand(&mut self, next: fn(&mut Self) -> Result<Term, ParseError>) -> Result<Term, ParseError> {
        if self.at_binder_form() {
            self.s_expr()
        } else {
            next(self)
        }
    }

    fn s_cons(&mut self) -> Result<Term, ParseError> {
        let head = self.s_add()?;
        if self.eat(&Tok::ColonColon) {
            let tail = self.s_operand(Self::s_cons)?;
            return Ok(Term::Cons(Box::new(head), Box::new(tail)));
        }
        Ok(head)
    }

    fn s_add(&mut self) -> Result<Term, ParseError> {
        let mut lhs = self.s_app()?;
        while self.eat(&Tok::Plus) {
            if self.at_binder_form() {
                let rhs = self.s_expr()?;
                return Ok(Term::Add(Box::new(lhs), Box::new(rhs)));
            }
            let rhs = self.s_app()?;
            lhs = Term::Add(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn s_app(&mut self) -> Result<Term, ParseError> {
        let mut f = self.s_item()?;
        while self.at_atom_start() {
            let a = self.s_atom()?;
            f = Term::App(Box::new(f), Box::new(a));
        }
        Ok(f)
    }

    fn s_item(&mut self) -> Result<Term, ParseError> {
        if self.eat_kw("reset") {
            return Ok(Term::Reset(Box::new(self.s_atom()?)));
        }
        if self.is_kw("throw") {
            self.advance();
            let pos = self.pos();
            let k = self.ident()?;
            match self.scope.iter().rev().find(|(n, _)| *n == k) {
                Some((_, Binder::Continuation)) => {}
                Some((_, Binder::Ordinary)) => {
                    return Err(ParseError::scope(pos, alloc::format!("'{k}' is not a continuation variable")));
                }
                None => {
                    return Err(ParseError::scope(pos, alloc::format!("unbound continuation variable '{k}'")));
                }
            }
            let arg = self.s_atom()?;
            return Ok(Term::Throw(k, Box::new(arg)));
        }
        if self.eat_kw("head") {
            return Ok(Term::Head(Box::new(self.s_atom()?)));
        }
        if self.eat_kw("tail") {
            return Ok(Term::Tail(Box::new(self.s_atom()?)));
        }
        if self.eat_kw("null") {
            return Ok(Term::IsNil(Box::new(self.s_atom()?)));
        }
        self.s_atom()
    }

    fn s_atom(&mut self) -> Result<Term, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.advance();
                Ok(Term::Const(Literal::Int(n)))
            }
            Tok::Ident(s) if s == "true" || s == "false" => {
                self.advance();
                Ok(Term::Const(Literal::Bool(s == "true")))
            }
            Tok::Ident(_) => Ok(Term::Var(self.ident()?)),
            Tok::LParen => {
                self.advance();
                let e = self.s_expr()?;
                self.expect(&Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::LBracket => {
                self.advance();
                let mut items = Vec::new();
                if !self.eat(&Tok::RBracket) {
                    loop {
                        items.push(self.s_expr()?);
                        if self.eat(&Tok::Semi) {
                            if self.eat(&Tok::RBracket) {
                                break;
                            }
                            continue;
                        }
                        self.expect(&Tok::RBracket, "';' or ']'")?;
                        break;
                    }
                }
                Ok(list_literal_source(items))
            }
            _ => Err(self.unexpected("a term")),
        }
    }

    // ----------------------------------------------------------------- types

    fn judgment(&mut self, vars: &mut BTreeMap<String, u32>) -> Result<Judgment, ParseError> {
        let t = self.ty(vars)?;
        if self.eat(&Tok::Semi) {
            let a = self.ty(vars)?;
            self.expect(&Tok::Comma, "','")?;
            let b = self.ty(vars)?;
            return Ok(Judgment::Eff(t, a, b));
        }
        Ok(Judgment::Pure(t))
    }

    fn ty(&mut self, vars: &mut BTreeMap<String, u32>) -> Result<TypeATM, ParseError> {
        let lhs = self.ty_app(vars)?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.ty(vars)?;
            return Ok(TypeATM::Pure(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn ty_app(&mut self, vars: &mut BTreeMap<String, u32>) -> Result<TypeATM, ParseError> {
        let mut t = self.ty_atom(vars)?;
        while self.eat_kw_type("list") {
            t = TypeATM::List(Box::new(t));
        }
        Ok(t)
    }

    fn eat_kw_type(&mut self, kw: &str) -> bool {
        self.eat_kw(kw)
    }

    fn ty_atom(&mut self, vars: &mut BTreeMap<String, u32>) -> Result<TypeATM, ParseError> {
        match self.peek().clone() {
            Tok::TyVar(name) => {
                self.advance();
                let next = vars.len() as u32;
                Ok(TypeATM::Var(*vars.entry(name).or_insert(next)))
            }
            Tok::Ident(s) if s == "int" => {
                self.advance();
                Ok(TypeATM::Int)
            }
            Tok::Ident(s) if s == "bool" => {
                self.advance();
                Ok(TypeATM::Bool)
            }
            Tok::LParen => {
                self.advance();
                let sigma = self.ty(vars)?;
                if self.eat(&Tok::Slash) {
                    let alpha = self.ty_app(vars)?;
                    self.expect(&Tok::Arrow, "'->'")?;
                    let tau = self.ty_app(vars)?;
                    self.expect(&Tok::Slash, "'/'")?;
                    let beta = self.ty(vars)?;
                    self.expect(&Tok::RParen, "')'")?;
                    return Ok(TypeATM::Eff(Box::new(sigma), Box::new(alpha), Box::new(tau), Box::new(beta)));
                }
                self.expect(&Tok::RParen, "')'")?;
                Ok(sigma)
            }
            _ => Err(self.unexpected("a type")),
        }
    }

    // ---------------------------------------------------------------- target

    fn t_expr(&mut self) -> Result<TargetTerm, ParseError> {
        if self.eat_kw("fun") {
            let x = self.ident()?;
            self.expect(&Tok::Arrow, "'->'")?;
            let body = self.t_expr()?;
            return Ok(TargetTerm::Lam(x, Box::new(body)));
        }
        if self.eat_kw("fix") {
            let f = self.ident()?;
            let x = self.ident()?;
            self.expect(&Tok::Arrow, "'->'")?;
            let body = self.t_expr()?;
            return Ok(TargetTerm::Fix(f, x, Box::new(body)));
        }
        if self.is_kw("let") {
            let pos = self.pos();
            self.advance();
            if self.eat_kw("rec") {
                let f = self.ident()?;
                let x = self.ident()?;
                self.expect(&Tok::Equals, "'='")?;
                let fbody = self.t_expr()?;
                self.expect_kw("in")?;
                let body = self.t_expr()?;
                let fix = TargetTerm::Fix(f.clone(), x, Box::new(fbody));
                return Ok(TargetTerm::Let(f, Box::new(fix), Box::new(body)));
            }
            let x = self.ident()?;
            self.expect(&Tok::Equals, "'='")?;
            let v = self.t_expr()?;
            if !v.is_value() {
                return Err(ParseError::syntax(pos, "the term bound by let must be a value"));
            }
            self.expect_kw("in")?;
            let body = self.t_expr()?;
            return Ok(TargetTerm::Let(x, Box::new(v), Box::new(body)));
        }
        if self.eat_kw("shift") {
            let p = self.t_prompt()?;
            let k = self.ident()?;
            self.expect(&Tok::Arrow, "'->'")?;
            let body = self.t_expr()?;
            return Ok(TargetTerm::ShiftP(Box::new(p), k, Box::new(body)));
        }
        if self.eat_kw("newp") {
            let x = self.ident()?;
            self.expect_kw("in")?;
            let body = self.t_expr()?;
            return Ok(TargetTerm::NewPrompt(x, Box::new(body)));
        }
        if self.eat_kw("if") {
            let c = self.t_expr()?;
            self.expect_kw("then")?;
            let a = self.t_expr()?;
            self.expect_kw("else")?;
            let b = self.t_expr()?;
            return Ok(TargetTerm::If(Box::new(c), Box::new(a), Box::new(b)));
        }
        self.t_cons()
    }

    fn t_prompt(&mut self) -> Result<TargetTerm, ParseError> {
        self.expect(&Tok::LBracket, "'['")?;
        let p = match self.peek().clone() {
            Tok::Prompt(n) => {
                self.advance();
                TargetTerm::PromptConst(PromptId(n))
            }
            _ => TargetTerm::Var(self.ident()?),
        };
        self.expect(&Tok::RBracket, "']'")?;
        Ok(p)
    }

    fn t_cons(&mut self) -> Result<TargetTerm, ParseError> {
        let head = self.t_add()?;
        if self.eat(&Tok::ColonColon) {
            let tail = if self.at_binder_form() { self.t_expr()? } else { self.t_cons()? };
            return Ok(TargetTerm::Cons(Box::new(head), Box::new(tail)));
        }
        Ok(head)
    }

    fn t_add(&mut self) -> Result<TargetTerm, ParseError> {
        let mut lhs = self.t_app()?;
        while self.eat(&Tok::Plus) {
            if self.at_binder_form() {
                let rhs = self.t_expr()?;
                return Ok(TargetTerm::Add(Box::new(lhs), Box::new(rhs)));
            }
            let rhs = self.t_app()?;
            lhs = TargetTerm::Add(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn t_app(&mut self) -> Result<TargetTerm, ParseError> {
        let mut f = self.t_item()?;
        while self.at_atom_start() {
            let a = self.t_atom()?;
            f = TargetTerm::App(Box::new(f), Box::new(a));
        }
        Ok(f)
    }

    fn t_item(&mut self) -> Result<TargetTerm, ParseError> {
        if self.eat_kw("reset") {
            let p = self.t_prompt()?;
            let body = self.t_atom()?;
            return Ok(TargetTerm::ResetP(Box::new(p), Box::new(body)));
        }
        if self.eat_kw("head") {
            return Ok(TargetTerm::Head(Box::new(self.t_atom()?)));
        }
        if self.eat_kw("tail") {
            return Ok(TargetTerm::Tail(Box::new(self.t_atom()?)));
        }
        if self.eat_kw("null") {
            return Ok(TargetTerm::IsNil(Box::new(self.t_atom()?)));
        }
        self.t_atom()
    }

    fn t_atom(&mut self) -> Result<TargetTerm, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.advance();
                Ok(TargetTerm::Const(Literal::Int(n)))
            }
            Tok::Prompt(n) => {
                self.advance();
                Ok(TargetTerm::PromptConst(PromptId(n)))
            }
            Tok::Ident(s) if s == "true" || s == "false" => {
                self.advance();
                Ok(TargetTerm::Const(Literal::Bool(s == "true")))
            }
            Tok::Ident(s) if s == "omega" => {
                self.advance();
                Ok(TargetTerm::Omega)
            }
            Tok::Ident(_) => Ok(TargetTerm::Var(self.ident()?)),
            Tok::LParen => {
                self.advance();
                let e = self.t_expr()?;
                self.expect(&Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::LBracket => {
                self.advance();
                let mut items = Vec::new();
                if !self.eat(&Tok::RBracket) {
                    loop {
                        items.push(self.t_expr()?);
                        if self.eat(&Tok::Semi) {
                            if self.eat(&Tok::RBracket) {
                                break;
                            }
                            continue;
                        }
                        self.expect(&Tok::RBracket, "';' or ']'")?;
                        break;
                    }
                }
                Ok(list_literal_target(items))
            }
            _ => Err(self.unexpected("a term")),
        }
    }
}

/// Parses a source term. `throw` must name a continuation bound by an
/// enclosing `shift`.
pub fn parse_source(text: &str) -> Result<Term, ParseError> {
    let mut p = Parser::new(text)?;
    let t = p.s_expr()?;
    p.finish()?;
    Ok(t)
}

/// Parses a source program: a term optionally followed by `: judgment`, where
/// a judgment is either a type (pure) or `type ; type, type` (effectful).
pub fn parse_program(text: &str) -> Result<SourceProgram, ParseError> {
    let mut p = Parser::new(text)?;
    let term = p.s_expr()?;
    let expected_type = if p.eat(&Tok::Colon) {
        let mut vars = BTreeMap::new();
        Some(p.judgment(&mut vars)?)
    } else {
        None
    };
    p.finish()?;
    Ok(SourceProgram { term, expected_type })
}

pub fn parse_target(text: &str) -> Result<TargetTerm, ParseError> {
    let mut p = Parser::new(text)?;
    let t = p.t_expr()?;
    p.finish()?;
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity() {
        assert_eq!(parse_source("fun x -> x").unwrap(), Term::lam("x", Term::var("x")));
    }

    #[test]
    fn reset_five_plus_shift() {
        let t = parse_source("reset (5 + shift k -> fun x -> throw k x)").unwrap();
        let expected = Term::reset(Term::add(
            Term::int(5),
            Term::shift("k", Term::lam("x", Term::throw("k", Term::var("x")))),
        ));
        assert_eq!(t, expected);
    }

    #[test]
    fn application_is_left_associative() {
        let t = parse_source("f a b").unwrap();
        assert_eq!(t, Term::app(Term::app(Term::var("f"), Term::var("a")), Term::var("b")));
    }

    #[test]
    fn append_listing_is_fix_over_if_null() {
        let src = "let rec append lst = if null lst then shift k -> fun x -> throw k x \
                   else head lst :: append (tail lst) in (reset (append [1;2;3])) [4;5;6]";
        let t = parse_source(src).unwrap();
        let Term::Let(name, fix, _) = t else { panic!("expected let") };
        assert_eq!(name, "append");
        let Term::Fix(_, _, body) = *fix else { panic!("expected fix") };
        assert!(matches!(*body, Term::If(ref c, _, _) if matches!(**c, Term::IsNil(_))));
    }

    #[test]
    fn unbound_throw_is_a_scope_error() {
        assert!(matches!(parse_source("throw k 1"), Err(ParseError::Scope { .. })));
        assert!(matches!(parse_source("fun k -> throw k 1"), Err(ParseError::Scope { .. })));
        assert!(parse_source("shift k -> throw k 1").is_ok());
    }

    #[test]
    fn let_requires_a_value() {
        let err = parse_source("let x = 1 + 2 in x").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 1, col: 1, .. }));
        assert!(parse_source("let x = fun y -> y in x").is_ok());
    }

    #[test]
    fn syntax_error_position() {
        let err = parse_source("fun x ->\n  (x").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 2, .. }), "{err}");
    }

    #[test]
    fn comments_nest() {
        assert_eq!(parse_source("(* a (* b *) c *) 5").unwrap(), Term::int(5));
    }

    #[test]
    fn target_forms() {
        assert_eq!(parse_target("omega").unwrap(), TargetTerm::Omega);
        let t = parse_target("newp p in reset[p] 1").unwrap();
        let expected = TargetTerm::newp(
            "p",
            TargetTerm::reset(TargetTerm::var("p"), TargetTerm::Const(Literal::Int(1))),
        );
        assert_eq!(t, expected);
        let s = parse_target("shift[#3] _ -> 1").unwrap();
        assert!(matches!(s, TargetTerm::ShiftP(ref p, _, _) if **p == TargetTerm::PromptConst(PromptId(3))));
    }

    #[test]
    fn annotations() {
        let p = parse_program("1 + (shift k -> fun x -> throw k x) : int ; int, (int/'a -> int/'a)").unwrap();
        let a = TypeATM::Var(0);
        let f = TypeATM::Eff(
            Box::new(TypeATM::Int),
            Box::new(a.clone()),
            Box::new(TypeATM::Int),
            Box::new(a),
        );
        assert_eq!(p.expected_type, Some(Judgment::Eff(TypeATM::Int, TypeATM::Int, f)));
        let q = parse_program("[1] : int list").unwrap();
        assert_eq!(q.expected_type, Some(Judgment::Pure(TypeATM::List(Box::new(TypeATM::Int)))));
    }
}
