//! Abstract syntax for the source calculus (shift/reset with answer-type
//! modification) and the target calculus (multi-prompt shift/reset), plus
//! parsing, printing and structural utilities shared by both.

mod alpha;
mod lexer;
mod parser;
mod pretty;

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub use alpha::{alpha_eq, alpha_eq_source};
pub use parser::{parse_program, parse_source, parse_target, ParseError, SourceProgram};
pub use pretty::{pretty_source, pretty_target};

/// Identifier of a variable, continuation variable or prompt binder.
pub type Name = String;

/// Runtime prompt constant, allocated in increasing order by the target machine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PromptId(pub u32);

impl fmt::Display for PromptId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Literal {
    Int(i64),
    Bool(bool),
    /// Non-empty list of integer literals; `[]` is always `Nil`.
    IntList(Vec<i64>),
}

/// Terms of the source calculus.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(Name),
    Const(Literal),
    Lam(Name, Box<Term>),
    App(Box<Term>, Box<Term>),
    /// `let x = v in e`; the bound term is a syntactic value.
    Let(Name, Box<Term>, Box<Term>),
    Shift(Name, Box<Term>),
    /// Continuation application `throw k e`.
    Throw(Name, Box<Term>),
    Reset(Box<Term>),
    Add(Box<Term>, Box<Term>),
    If(Box<Term>, Box<Term>, Box<Term>),
    /// `fix f x -> e`, a recursive function.
    Fix(Name, Name, Box<Term>),
    Nil,
    Cons(Box<Term>, Box<Term>),
    Head(Box<Term>),
    Tail(Box<Term>),
    IsNil(Box<Term>),
}

/// Terms of the target calculus.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TargetTerm {
    Var(Name),
    Const(Literal),
    Lam(Name, Box<TargetTerm>),
    App(Box<TargetTerm>, Box<TargetTerm>),
    /// `shift[v] x -> e`; the prompt expression is a variable or prompt constant.
    ShiftP(Box<TargetTerm>, Name, Box<TargetTerm>),
    /// `reset[v] e`.
    ResetP(Box<TargetTerm>, Box<TargetTerm>),
    /// `newp x in e` binds a freshly generated prompt.
    NewPrompt(Name, Box<TargetTerm>),
    Let(Name, Box<TargetTerm>, Box<TargetTerm>),
    Omega,
    PromptConst(PromptId),
    Add(Box<TargetTerm>, Box<TargetTerm>),
    If(Box<TargetTerm>, Box<TargetTerm>, Box<TargetTerm>),
    Fix(Name, Name, Box<TargetTerm>),
    Nil,
    Cons(Box<TargetTerm>, Box<TargetTerm>),
    Head(Box<TargetTerm>),
    Tail(Box<TargetTerm>),
    IsNil(Box<TargetTerm>),
}

/// Syntactic purity of a source term, as used by the optimized translation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Purity {
    /// `x | c | fun x -> e | fix f x -> e | reset e | throw k e | []`, and list
    /// primitives whose operands are all pure.
    Pure,
    /// A nest of `let`s around a pure term.
    QPure,
    Effectful,
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.into())
    }

    pub fn int(n: i64) -> Term {
        Term::Const(Literal::Int(n))
    }

    pub fn lam(x: &str, body: Term) -> Term {
        Term::Lam(x.into(), Box::new(body))
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Box::new(f), Box::new(a))
    }

    pub fn add(a: Term, b: Term) -> Term {
        Term::Add(Box::new(a), Box::new(b))
    }

    pub fn shift(k: &str, body: Term) -> Term {
        Term::Shift(k.into(), Box::new(body))
    }

    pub fn throw(k: &str, arg: Term) -> Term {
        Term::Throw(k.into(), Box::new(arg))
    }

    pub fn reset(body: Term) -> Term {
        Term::Reset(Box::new(body))
    }

    pub fn let_(x: &str, v: Term, body: Term) -> Term {
        Term::Let(x.into(), Box::new(v), Box::new(body))
    }

    /// Syntactic values: variables, constants, abstractions, and lists of values.
    pub fn is_value(&self) -> bool {
        match self {
            Term::Var(_) | Term::Const(_) | Term::Lam(..) | Term::Fix(..) | Term::Nil => true,
            Term::Cons(a, b) => a.is_value() && b.is_value(),
            _ => false,
        }
    }

    pub fn purity(&self) -> Purity {
        if self.is_pure() {
            Purity::Pure
        } else if self.is_qpure() {
            Purity::QPure
        } else {
            Purity::Effectful
        }
    }

    pub fn is_pure(&self) -> bool {
        match self {
            Term::Var(_)
            | Term::Const(_)
            | Term::Lam(..)
            | Term::Fix(..)
            | Term::Reset(_)
            | Term::Throw(..)
            | Term::Nil => true,
            Term::Cons(a, b) => a.is_pure() && b.is_pure(),
            Term::Head(e) | Term::Tail(e) | Term::IsNil(e) => e.is_pure(),
            _ => false,
        }
    }

    /// Pure, or `let x = v in e` with `e` quasi-pure.
    pub fn is_qpure(&self) -> bool {
        match self {
            Term::Let(_, _, body) => body.is_qpure(),
            t => t.is_pure(),
        }
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        1 + match self {
            Term::Var(_) | Term::Const(_) | Term::Nil => 0,
            Term::Lam(_, b) | Term::Shift(_, b) | Term::Throw(_, b) | Term::Fix(_, _, b) => b.size(),
            Term::Reset(b) | Term::Head(b) | Term::Tail(b) | Term::IsNil(b) => b.size(),
            Term::App(a, b) | Term::Let(_, a, b) | Term::Add(a, b) | Term::Cons(a, b) => {
                a.size() + b.size()
            }
            Term::If(c, a, b) => c.size() + a.size() + b.size(),
        }
    }

    /// Every identifier occurring in the term, bound or free.
    pub fn names(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_names(&mut out);
        out
    }

    fn collect_names(&self, out: &mut BTreeSet<Name>) {
        match self {
            Term::Var(x) => {
                out.insert(x.clone());
            }
            Term::Const(_) | Term::Nil => {}
            Term::Lam(x, b) | Term::Shift(x, b) | Term::Throw(x, b) => {
                out.insert(x.clone());
                b.collect_names(out);
            }
            Term::Fix(f, x, b) => {
                out.insert(f.clone());
                out.insert(x.clone());
                b.collect_names(out);
            }
            Term::Let(x, v, b) => {
                out.insert(x.clone());
                v.collect_names(out);
                b.collect_names(out);
            }
            Term::App(a, b) | Term::Add(a, b) | Term::Cons(a, b) => {
                a.collect_names(out);
                b.collect_names(out);
            }
            Term::If(c, a, b) => {
                c.collect_names(out);
                a.collect_names(out);
                b.collect_names(out);
            }
            Term::Reset(b) | Term::Head(b) | Term::Tail(b) | Term::IsNil(b) => b.collect_names(out),
        }
    }

    /// Free ordinary and continuation variables.
    pub fn free_vars(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        let mut bound = Vec::new();
        self.collect_free(&mut bound, &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Name>, out: &mut BTreeSet<Name>) {
        let under = |b: &Term, names: &[&Name], bound: &mut Vec<Name>, out: &mut BTreeSet<Name>| {
            for n in names {
                bound.push((*n).clone());
            }
            b.collect_free(bound, out);
            for _ in names {
                bound.pop();
            }
        };
        match self {
            Term::Var(x) => {
                if !bound.contains(x) {
                    out.insert(x.clone());
                }
            }
            Term::Throw(k, b) => {
                if !bound.contains(k) {
                    out.insert(k.clone());
                }
                b.collect_free(bound, out);
            }
            Term::Const(_) | Term::Nil => {}
            Term::Lam(x, b) | Term::Shift(x, b) => under(b, &[x], bound, out),
            Term::Fix(f, x, b) => under(b, &[f, x], bound, out),
            Term::Let(x, v, b) => {
                v.collect_free(bound, out);
                under(b, &[x], bound, out);
            }
            Term::App(a, b) | Term::Add(a, b) | Term::Cons(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Term::If(c, a, b) => {
                c.collect_free(bound, out);
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Term::Reset(b) | Term::Head(b) | Term::Tail(b) | Term::IsNil(b) => b.collect_free(bound, out),
        }
    }
}

impl TargetTerm {
    pub fn var(name: &str) -> TargetTerm {
        TargetTerm::Var(name.into())
    }

    pub fn lam(x: &str, body: TargetTerm) -> TargetTerm {
        TargetTerm::Lam(x.into(), Box::new(body))
    }

    pub fn app(f: TargetTerm, a: TargetTerm) -> TargetTerm {
        TargetTerm::App(Box::new(f), Box::new(a))
    }

    pub fn shift(p: TargetTerm, k: &str, body: TargetTerm) -> TargetTerm {
        TargetTerm::ShiftP(Box::new(p), k.into(), Box::new(body))
    }

    pub fn reset(p: TargetTerm, body: TargetTerm) -> TargetTerm {
        TargetTerm::ResetP(Box::new(p), Box::new(body))
    }

    pub fn newp(x: &str, body: TargetTerm) -> TargetTerm {
        TargetTerm::NewPrompt(x.into(), Box::new(body))
    }

    pub fn is_value(&self) -> bool {
        match self {
            TargetTerm::Var(_)
            | TargetTerm::Const(_)
            | TargetTerm::Lam(..)
            | TargetTerm::Fix(..)
            | TargetTerm::PromptConst(_)
            | TargetTerm::Nil => true,
            TargetTerm::Cons(a, b) => a.is_value() && b.is_value(),
            _ => false,
        }
    }

    pub fn size(&self) -> usize {
        use TargetTerm::*;
        1 + match self {
            Var(_) | Const(_) | Omega | PromptConst(_) | Nil => 0,
            Lam(_, b) | NewPrompt(_, b) | Fix(_, _, b) | Head(b) | Tail(b) | IsNil(b) => b.size(),
            App(a, b) | ResetP(a, b) | ShiftP(a, _, b) | Let(_, a, b) | Add(a, b) | Cons(a, b) => {
                a.size() + b.size()
            }
            If(c, a, b) => c.size() + a.size() + b.size(),
        }
    }

    /// Number of `newp` binders in the term.
    pub fn count_new_prompts(&self) -> usize {
        self.count(&|t| matches!(t, TargetTerm::NewPrompt(..)))
    }

    /// Counts nodes satisfying `pred`.
    pub fn count(&self, pred: &dyn Fn(&TargetTerm) -> bool) -> usize {
        use TargetTerm::*;
        let here = usize::from(pred(self));
        here + match self {
            Var(_) | Const(_) | Omega | PromptConst(_) | Nil => 0,
            Lam(_, b) | NewPrompt(_, b) | Fix(_, _, b) | Head(b) | Tail(b) | IsNil(b) => b.count(pred),
            App(a, b) | ResetP(a, b) | ShiftP(a, _, b) | Let(_, a, b) | Add(a, b) | Cons(a, b) => {
                a.count(pred) + b.count(pred)
            }
            If(c, a, b) => c.count(pred) + a.count(pred) + b.count(pred),
        }
    }
}

/// Builds a list literal, collapsing all-integer lists into a constant.
pub(crate) fn list_literal_source(items: Vec<Term>) -> Term {
    if items.is_empty() {
        return Term::Nil;
    }
    let ints: Option<Vec<i64>> = items
        .iter()
        .map(|t| match t {
            Term::Const(Literal::Int(n)) => Some(*n),
            _ => None,
        })
        .collect();
    match ints {
        Some(ns) => Term::Const(Literal::IntList(ns)),
        None => items
            .into_iter()
            .rev()
            .fold(Term::Nil, |acc, t| Term::Cons(Box::new(t), Box::new(acc))),
    }
}

pub(crate) fn list_literal_target(items: Vec<TargetTerm>) -> TargetTerm {
    if items.is_empty() {
        return TargetTerm::Nil;
    }
    let ints: Option<Vec<i64>> = items
        .iter()
        .map(|t| match t {
            TargetTerm::Const(Literal::Int(n)) => Some(*n),
            _ => None,
        })
        .collect();
    match ints {
        Some(ns) => TargetTerm::Const(Literal::IntList(ns)),
        None => items
            .into_iter()
            .rev()
            .fold(TargetTerm::Nil, |acc, t| TargetTerm::Cons(Box::new(t), Box::new(acc))),
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&pretty_source(self))
    }
}

impl fmt::Display for TargetTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&pretty_target(self))
    }
}
