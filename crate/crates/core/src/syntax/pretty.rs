use alloc::string::String;
use core::fmt::Write;

use super::{Literal, TargetTerm, Term};

/// Binding strength, loosest first.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Level {
    Binder,
    Cons,
    Add,
    App,
    Atom,
}

fn literal(out: &mut String, lit: &Literal) {
    match lit {
        Literal::Int(n) => {
            let _ = write!(out, "{n}");
        }
        Literal::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Literal::IntList(ns) => {
            out.push('[');
            for (i, n) in ns.iter().enumerate() {
                if i > 0 {
                    out.push_str("; ");
                }
                let _ = write!(out, "{n}");
            }
            out.push(']');
        }
    }
}

pub fn pretty_source(t: &Term) -> String {
    let mut out = String::new();
    source(&mut out, t, Level::Binder);
    out
}

pub fn pretty_target(t: &TargetTerm) -> String {
    let mut out = String::new();
    target(&mut out, t, Level::Binder);
    out
}

fn source_level(t: &Term) -> Level {
    match t {
        Term::Lam(..) | Term::Let(..) | Term::Shift(..) | Term::If(..) | Term::Fix(..) => Level::Binder,
        Term::Cons(..) => Level::Cons,
        Term::Add(..) => Level::Add,
        Term::App(..) | Term::Throw(..) | Term::Reset(_) | Term::Head(_) | Term::Tail(_) | Term::IsNil(_) => {
            Level::App
        }
        Term::Var(_) | Term::Const(_) | Term::Nil => Level::Atom,
    }
}

fn source(out: &mut String, t: &Term, ctx: Level) {
    let paren = source_level(t) < ctx;
    if paren {
        out.push('(');
    }
    match t {
        Term::Var(x) => out.push_str(x),
        Term::Const(c) => literal(out, c),
        Term::Nil => out.push_str("[]"),
        Term::Lam(x, b) => {
            let _ = write!(out, "fun {x} -> ");
            source(out, b, Level::Binder);
        }
        Term::Fix(f, x, b) => {
            let _ = write!(out, "fix {f} {x} -> ");
            source(out, b, Level::Binder);
        }
        Term::Let(x, v, b) => {
            let _ = write!(out, "let {x} = ");
            source(out, v, Level::Binder);
            out.push_str(" in ");
            source(out, b, Level::Binder);
        }
        Term::Shift(k, b) => {
            let _ = write!(out, "shift {k} -> ");
            source(out, b, Level::Binder);
        }
        Term::If(c, a, b) => {
            out.push_str("if ");
            source(out, c, Level::Binder);
            out.push_str(" then ");
            source(out, a, Level::Binder);
            out.push_str(" else ");
            source(out, b, Level::Binder);
        }
        Term::Cons(a, b) => {
            source(out, a, Level::Add);
            out.push_str(" :: ");
            source(out, b, Level::Cons);
        }
        Term::Add(a, b) => {
            source(out, a, Level::Add);
            out.push_str(" + ");
            source(out, b, Level::App);
        }
        Term::App(f, a) => {
            source(out, f, Level::App);
            out.push(' ');
            source(out, a, Level::Atom);
        }
        Term::Throw(k, a) => {
            let _ = write!(out, "throw {k} ");
            source(out, a, Level::Atom);
        }
        Term::Reset(b) => {
            out.push_str("reset ");
            source(out, b, Level::Atom);
        }
        Term::Head(b) => {
            out.push_str("head ");
            source(out, b, Level::Atom);
        }
        Term::Tail(b) => {
            out.push_str("tail ");
            source(out, b, Level::Atom);
        }
        Term::IsNil(b) => {
            out.push_str("null ");
            source(out, b, Level::Atom);
        }
    }
    if paren {
        out.push(')');
    }
}

fn target_level(t: &TargetTerm) -> Level {
    use TargetTerm::*;
    match t {
        Lam(..) | Let(..) | ShiftP(..) | NewPrompt(..) | If(..) | Fix(..) => Level::Binder,
        Cons(..) => Level::Cons,
        Add(..) => Level::Add,
        App(..) | ResetP(..) | Head(_) | Tail(_) | IsNil(_) => Level::App,
        Var(_) | Const(_) | Nil | Omega | PromptConst(_) => Level::Atom,
    }
}

fn prompt(out: &mut String, p: &TargetTerm) {
    out.push('[');
    match p {
        TargetTerm::Var(x) => out.push_str(x),
        TargetTerm::PromptConst(id) => {
            let _ = write!(out, "{id}");
        }
        // Not produced by the parser; printed so that errors stay readable.
        other => target(out, other, Level::Binder),
    }
    out.push(']');
}

fn target(out: &mut String, t: &TargetTerm, ctx: Level) {
    use TargetTerm::*;
    let paren = target_level(t) < ctx;
    if paren {
        out.push('(');
    }
    match t {
        Var(x) => out.push_str(x),
        Const(c) => literal(out, c),
        Nil => out.push_str("[]"),
        Omega => out.push_str("omega"),
        PromptConst(id) => {
            let _ = write!(out, "{id}");
        }
        Lam(x, b) => {
            let _ = write!(out, "fun {x} -> ");
            target(out, b, Level::Binder);
        }
        Fix(f, x, b) => {
            let _ = write!(out, "fix {f} {x} -> ");
            target(out, b, Level::Binder);
        }
        Let(x, v, b) => {
            let _ = write!(out, "let {x} = ");
            target(out, v, Level::Binder);
            out.push_str(" in ");
            target(out, b, Level::Binder);
        }
        ShiftP(p, k, b) => {
            out.push_str("shift");
            prompt(out, p);
            let _ = write!(out, " {k} -> ");
            target(out, b, Level::Binder);
        }
        NewPrompt(x, b) => {
            let _ = write!(out, "newp {x} in ");
            target(out, b, Level::Binder);
        }
        If(c, a, b) => {
            out.push_str("if ");
            target(out, c, Level::Binder);
            out.push_str(" then ");
            target(out, a, Level::Binder);
            out.push_str(" else ");
            target(out, b, Level::Binder);
        }
        Cons(a, b) => {
            target(out, a, Level::Add);
            out.push_str(" :: ");
            target(out, b, Level::Cons);
        }
        Add(a, b) => {
            target(out, a, Level::Add);
            out.push_str(" + ");
            target(out, b, Level::App);
        }
        App(f, a) => {
            target(out, f, Level::App);
            out.push(' ');
            target(out, a, Level::Atom);
        }
        ResetP(p, b) => {
            out.push_str("reset");
            prompt(out, p);
            out.push(' ');
            target(out, b, Level::Atom);
        }
        Head(b) => {
            out.push_str("head ");
            target(out, b, Level::Atom);
        }
        Tail(b) => {
            out.push_str("tail ");
            target(out, b, Level::Atom);
        }
        IsNil(b) => {
            out.push_str("null ");
            target(out, b, Level::Atom);
        }
    }
    if paren {
        out.push(')');
    }
}
