//! Small-step, substitution-based evaluation of the source calculus.
//!
//! Applications and binary operators evaluate their right operand first.
//! Each step decomposes the term into a frame stack and a redex.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use crate::syntax::{Literal, Name, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum StuckReason {
    /// `shift` with no enclosing `reset`.
    NoEnclosingReset,
    UnboundVariable(Name),
    /// `throw k e` where `k` was never bound to a continuation.
    FreeContinuation(Name),
    NotAFunction,
    /// A primitive received an operand of the wrong shape.
    BadOperand,
    EmptyList,
}

impl fmt::Display for StuckReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StuckReason::NoEnclosingReset => f.write_str("shift without an enclosing reset"),
            StuckReason::UnboundVariable(x) => write!(f, "unbound variable '{x}'"),
            StuckReason::FreeContinuation(k) => write!(f, "throw to unbound continuation '{k}'"),
            StuckReason::NotAFunction => f.write_str("application of a non-function"),
            StuckReason::BadOperand => f.write_str("primitive applied to an operand of the wrong shape"),
            StuckReason::EmptyList => f.write_str("head or tail of an empty list"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    Value,
    Next(Term),
    Stuck(StuckReason),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalError {
    Stuck { reason: StuckReason, term: Term, steps: u64 },
    OutOfFuel { steps: u64 },
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::Stuck { reason, term, steps } => write!(f, "stuck after {steps} steps: {reason} in `{term}`"),
            EvalError::OutOfFuel { steps } => write!(f, "fuel exhausted after {steps} steps"),
        }
    }
}

impl core::error::Error for EvalError {}

/// One layer of evaluation context. Operands stored in `…L` frames are
/// already values: the right operand has been evaluated first.
#[derive(Clone, Debug)]
enum Frame {
    /// `[] v`
    AppFun(Term),
    /// `e []`
    AppArg(Term),
    /// `[] + v`
    AddL(Term),
    /// `e + []`
    AddR(Term),
    ConsL(Term),
    ConsR(Term),
    IfCond(Term, Term),
    Reset,
    Head,
    Tail,
    IsNil,
}

fn plug(frames: Vec<Frame>, mut t: Term) -> Term {
    for f in frames.into_iter().rev() {
        t = plug_one(f, t);
    }
    t
}

fn plug_one(f: Frame, t: Term) -> Term {
    let b = Box::new(t);
    match f {
        Frame::AppFun(v) => Term::App(b, Box::new(v)),
        Frame::AppArg(e) => Term::App(Box::new(e), b),
        Frame::AddL(v) => Term::Add(b, Box::new(v)),
        Frame::AddR(e) => Term::Add(Box::new(e), b),
        Frame::ConsL(v) => Term::Cons(b, Box::new(v)),
        Frame::ConsR(e) => Term::Cons(Box::new(e), b),
        Frame::IfCond(x, y) => Term::If(b, Box::new(x), Box::new(y)),
        Frame::Reset => Term::Reset(b),
        Frame::Head => Term::Head(b),
        Frame::Tail => Term::Tail(b),
        Frame::IsNil => Term::IsNil(b),
    }
}

/// Splits `t` into evaluation frames (outermost first) and the term in
/// focus, which is a redex, a value, or a stuck form.
fn decompose(mut t: Term, frames: &mut Vec<Frame>) -> Term {
    loop {
        t = match t {
            Term::App(f, a) if !a.is_value() => {
                frames.push(Frame::AppArg(*f));
                *a
            }
            Term::App(f, a) if !f.is_value() => {
                frames.push(Frame::AppFun(*a));
                *f
            }
            Term::Add(l, r) if !r.is_value() => {
                frames.push(Frame::AddR(*l));
                *r
            }
            Term::Add(l, r) if !l.is_value() => {
                frames.push(Frame::AddL(*r));
                *l
            }
            Term::Cons(l, r) if !r.is_value() => {
                frames.push(Frame::ConsR(*l));
                *r
            }
            Term::Cons(l, r) if !l.is_value() => {
                frames.push(Frame::ConsL(*r));
                *l
            }
            Term::If(c, a, b) if !c.is_value() => {
                frames.push(Frame::IfCond(*a, *b));
                *c
            }
            Term::Reset(e) if !e.is_value() => {
                frames.push(Frame::Reset);
                *e
            }
            Term::Head(e) if !e.is_value() => {
                frames.push(Frame::Head);
                *e
            }
            Term::Tail(e) if !e.is_value() => {
                frames.push(Frame::Tail);
                *e
            }
            Term::IsNil(e) if !e.is_value() => {
                frames.push(Frame::IsNil);
                *e
            }
            other => return other,
        }
    }
}

/// `t{x := v}` for a closed value `v`.
pub fn subst(t: &Term, x: &str, v: &Term) -> Term {
    let go = |e: &Term| Box::new(subst(e, x, v));
    match t {
        Term::Var(y) if y == x => v.clone(),
        Term::Var(_) | Term::Const(_) | Term::Nil => t.clone(),
        Term::Lam(y, _) | Term::Shift(y, _) if y == x => t.clone(),
        Term::Lam(y, b) => Term::Lam(y.clone(), go(b)),
        Term::Shift(k, b) => Term::Shift(k.clone(), go(b)),
        Term::Fix(f, y, _) if f == x || y == x => t.clone(),
        Term::Fix(f, y, b) => Term::Fix(f.clone(), y.clone(), go(b)),
        Term::Let(y, e, b) if y == x => Term::Let(y.clone(), go(e), b.clone()),
        Term::Let(y, e, b) => Term::Let(y.clone(), go(e), go(b)),
        Term::Throw(k, e) => Term::Throw(k.clone(), go(e)),
        Term::App(a, b) => Term::App(go(a), go(b)),
        Term::Add(a, b) => Term::Add(go(a), go(b)),
        Term::Cons(a, b) => Term::Cons(go(a), go(b)),
        Term::If(c, a, b) => Term::If(go(c), go(a), go(b)),
        Term::Reset(e) => Term::Reset(go(e)),
        Term::Head(e) => Term::Head(go(e)),
        Term::Tail(e) => Term::Tail(go(e)),
        Term::IsNil(e) => Term::IsNil(go(e)),
    }
}

/// `t{k := c}` for a continuation variable: `throw k e` becomes `reset (c e')`.
pub fn subst_continuation(t: &Term, k: &str, c: &Term) -> Term {
    let go = |e: &Term| Box::new(subst_continuation(e, k, c));
    match t {
        Term::Throw(j, e) if j == k => Term::Reset(Box::new(Term::App(Box::new(c.clone()), go(e)))),
        Term::Throw(j, e) => Term::Throw(j.clone(), go(e)),
        Term::Var(_) | Term::Const(_) | Term::Nil => t.clone(),
        Term::Lam(y, _) | Term::Shift(y, _) if y == k => t.clone(),
        Term::Lam(y, b) => Term::Lam(y.clone(), go(b)),
        Term::Shift(j, b) => Term::Shift(j.clone(), go(b)),
        Term::Fix(f, y, _) if f == k || y == k => t.clone(),
        Term::Fix(f, y, b) => Term::Fix(f.clone(), y.clone(), go(b)),
        Term::Let(y, e, b) if y == k => Term::Let(y.clone(), go(e), b.clone()),
        Term::Let(y, e, b) => Term::Let(y.clone(), go(e), go(b)),
        Term::App(a, b) => Term::App(go(a), go(b)),
        Term::Add(a, b) => Term::Add(go(a), go(b)),
        Term::Cons(a, b) => Term::Cons(go(a), go(b)),
        Term::If(c2, a, b) => Term::If(go(c2), go(a), go(b)),
        Term::Reset(e) => Term::Reset(go(e)),
        Term::Head(e) => Term::Head(go(e)),
        Term::Tail(e) => Term::Tail(go(e)),
        Term::IsNil(e) => Term::IsNil(go(e)),
    }
}

/// Splits a list value into head and tail.
fn uncons(v: &Term) -> Result<Option<(Term, Term)>, StuckReason> {
    match v {
        Term::Nil => Ok(None),
        Term::Cons(h, t) => Ok(Some(((**h).clone(), (**t).clone()))),
        Term::Const(Literal::IntList(ns)) => {
            let rest = if ns.len() == 1 { Term::Nil } else { Term::Const(Literal::IntList(ns[1..].to_vec())) };
            Ok(Some((Term::int(ns[0]), rest)))
        }
        _ => Err(StuckReason::BadOperand),
    }
}

fn contract(redex: Term, frames: &mut Vec<Frame>) -> Result<Term, StuckReason> {
    Ok(match redex {
        Term::Var(x) => return Err(StuckReason::UnboundVariable(x)),
        Term::Throw(k, _) => return Err(StuckReason::FreeContinuation(k)),
        Term::App(f, a) => match *f {
            Term::Lam(x, body) => subst(&body, &x, &a),
            Term::Fix(ref g, ref x, ref body) => {
                let body = subst(body, g, &f);
                subst(&body, x, &a)
            }
            _ => return Err(StuckReason::NotAFunction),
        },
        Term::Let(x, v, body) => subst(&body, &x, &v),
        Term::Add(l, r) => match (*l, *r) {
            (Term::Const(Literal::Int(a)), Term::Const(Literal::Int(b))) => Term::int(a.wrapping_add(b)),
            _ => return Err(StuckReason::BadOperand),
        },
        Term::If(c, a, b) => match *c {
            Term::Const(Literal::Bool(true)) => *a,
            Term::Const(Literal::Bool(false)) => *b,
            _ => return Err(StuckReason::BadOperand),
        },
        Term::Reset(v) => *v,
        Term::Head(v) => uncons(&v)?.ok_or(StuckReason::EmptyList)?.0,
        Term::Tail(v) => uncons(&v)?.ok_or(StuckReason::EmptyList)?.1,
        Term::IsNil(v) => Term::Const(Literal::Bool(uncons(&v)?.is_none())),
        Term::Shift(k, body) => {
            let at = frames
                .iter()
                .rposition(|f| matches!(f, Frame::Reset))
                .ok_or(StuckReason::NoEnclosingReset)?;
            let inner: Vec<Frame> = frames.drain(at + 1..).collect();
            // The reset frame at `at` stays and now delimits the body.
            let y: Name = "y".into();
            let cont = Term::Lam(y.clone(), Box::new(Term::Reset(Box::new(plug(inner, Term::Var(y))))));
            subst_continuation(&body, &k, &cont)
        }
        _ => unreachable!("decompose returned a non-redex"),
    })
}

/// Performs one reduction step on a closed term.
pub fn step_source(t: &Term) -> Step {
    if t.is_value() {
        return match t {
            Term::Var(x) => Step::Stuck(StuckReason::UnboundVariable(x.clone())),
            _ => Step::Value,
        };
    }
    let mut frames = Vec::new();
    let redex = decompose(t.clone(), &mut frames);
    match contract(redex, &mut frames) {
        Ok(next) => Step::Next(plug(frames, next)),
        Err(reason) => Step::Stuck(reason),
    }
}

/// Evaluates to a value within `fuel` steps, returning it and the step count.
pub fn eval_source(t: &Term, fuel: u64) -> Result<(Term, u64), EvalError> {
    let mut cur = t.clone();
    let mut steps = 0;
    loop {
        match step_source(&cur) {
            Step::Value => return Ok((cur, steps)),
            Step::Stuck(reason) => return Err(EvalError::Stuck { reason, term: cur, steps }),
            Step::Next(next) => {
                if steps == fuel {
                    return Err(EvalError::OutOfFuel { steps });
                }
                steps += 1;
                cur = next;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_source;

    fn run(s: &str) -> Term {
        eval_source(&parse_source(s).unwrap(), 10_000).unwrap().0
    }

    #[test]
    fn constant_takes_no_steps() {
        assert_eq!(eval_source(&Term::int(5), 10).unwrap(), (Term::int(5), 0));
    }

    #[test]
    fn reset_of_value() {
        assert_eq!(step_source(&parse_source("reset 5").unwrap()), Step::Next(Term::int(5)));
    }

    #[test]
    fn shifted_function_probe() {
        assert_eq!(run("(reset (5 + shift k -> fun x -> throw k x)) 9"), Term::int(14));
    }

    #[test]
    fn right_to_left_order() {
        // The right operand's shift captures the left operand unevaluated.
        let t = parse_source("reset ((shift k -> 1) + (shift k -> 2))").unwrap();
        assert_eq!(eval_source(&t, 100).unwrap().0, Term::int(2));
    }

    #[test]
    fn throw_is_wrapped_in_reset() {
        let t = parse_source("reset (1 + shift k -> throw k 1)").unwrap();
        let Step::Next(next) = step_source(&t) else { panic!() };
        let expected = parse_source("reset (reset ((fun y -> reset (1 + y)) 1))").unwrap();
        assert_eq!(next, expected);
    }

    #[test]
    fn stuck_forms() {
        let t = parse_source("1 + shift k -> 2").unwrap();
        assert!(matches!(
            eval_source(&t, 10),
            Err(EvalError::Stuck { reason: StuckReason::NoEnclosingReset, .. })
        ));
        let t = parse_source("head []").unwrap();
        assert!(matches!(eval_source(&t, 10), Err(EvalError::Stuck { reason: StuckReason::EmptyList, .. })));
    }

    #[test]
    fn fuel() {
        let t = parse_source("(fix f x -> f x) 1").unwrap();
        assert_eq!(eval_source(&t, 50), Err(EvalError::OutOfFuel { steps: 50 }));
    }

    #[test]
    fn append() {
        let src = "let rec append lst = if null lst then shift k -> fun x -> throw k x \
                   else head lst :: append (tail lst) in (reset (append [1;2;3])) [4;5;6]";
        let v = run(src);
        let expected = parse_source("1 :: 2 :: 3 :: [4;5;6]").unwrap();
        assert_eq!(v, expected);
    }
}
