//! The optimized translation: one-pass, and quasi-pure subterms are
//! translated without prompts wherever their answer types coincide.

use alloc::boxed::Box;

use super::{app2, child, exp_clause, reset_clause, shift_clause, var, Names, Res, TranslateError};
use crate::source::{Derivation, Rule};
use crate::syntax::{TargetTerm, Term};

struct Opt {
    names: Names,
}

pub(crate) fn translate(d: &Derivation) -> Res {
    let mut t = Opt { names: Names::for_term(&d.subject) };
    if d.is_qpure() {
        t.pure(d)
    } else {
        let p = t.names.fresh("p");
        let q = t.names.fresh("q");
        let body = t.eff(d, &p, &q)?;
        Ok(TargetTerm::lam(&p, TargetTerm::lam(&q, body)))
    }
}

fn binary(rule: Rule, a: TargetTerm, b: TargetTerm) -> TargetTerm {
    if rule == Rule::Add {
        TargetTerm::Add(Box::new(a), Box::new(b))
    } else {
        TargetTerm::Cons(Box::new(a), Box::new(b))
    }
}

impl Opt {
    /// `fun p -> fun q -> body` for the body of a function.
    fn function_body(&mut self, body: &Derivation) -> Res {
        let p = self.names.fresh("p");
        let q = self.names.fresh("q");
        let inner = self.eff(body, &p, &q)?;
        Ok(TargetTerm::lam(&p, TargetTerm::lam(&q, inner)))
    }

    /// Translation of a quasi-pure term, which needs no prompts.
    fn pure(&mut self, d: &Derivation) -> Res {
        let d = d.strip_exp();
        Ok(match (&d.rule, &d.subject) {
            (Rule::Var, Term::Var(x)) => var(x),
            (Rule::Const, Term::Const(c)) => TargetTerm::Const(c.clone()),
            (Rule::Nil, _) => TargetTerm::Nil,
            (Rule::Fun, Term::Lam(x, _)) => TargetTerm::lam(x, self.function_body(child(d, 0)?)?),
            (Rule::Fix, Term::Fix(f, x, _)) => {
                TargetTerm::Fix(f.clone(), x.clone(), Box::new(self.function_body(child(d, 0)?)?))
            }
            (Rule::Throw, Term::Throw(k, _)) => TargetTerm::app(var(k), self.pure(child(d, 0)?)?),
            (Rule::Reset, _) => {
                let body = child(d, 0)?;
                if body.is_qpure() {
                    self.pure(body)?
                } else {
                    let p = self.names.fresh("p");
                    let q = self.names.fresh("q");
                    let inner = self.eff(body, &p, &q)?;
                    reset_clause(&mut self.names, &p, &q, inner)
                }
            }
            (Rule::Let, Term::Let(x, _, _)) => {
                let v = self.pure(child(d, 0)?)?;
                TargetTerm::Let(x.clone(), Box::new(v), Box::new(self.pure(child(d, 1)?)?))
            }
            (Rule::Cons, _) => {
                let h = self.pure(child(d, 0)?)?;
                TargetTerm::Cons(Box::new(h), Box::new(self.pure(child(d, 1)?)?))
            }
            (Rule::Head, _) => TargetTerm::Head(Box::new(self.pure(child(d, 0)?)?)),
            (Rule::Tail, _) => TargetTerm::Tail(Box::new(self.pure(child(d, 0)?)?)),
            (Rule::IsNil, _) => TargetTerm::IsNil(Box::new(self.pure(child(d, 0)?)?)),
            _ => return Err(TranslateError::UnsupportedNode(d.rule)),
        })
    }

    /// Translation of a term in effectful position, given the prompts of
    /// its final (`p`) and initial (`q`) answer types.
    fn eff(&mut self, d: &Derivation, p: &str, q: &str) -> Res {
        if d.is_qpure() {
            let v = self.pure(d)?;
            return Ok(exp_clause(&mut self.names, p, q, v));
        }
        Ok(match (&d.rule, &d.subject) {
            (Rule::App, _) => {
                let (f, a) = (child(d, 0)?, child(d, 1)?);
                match (f.is_qpure(), a.is_qpure()) {
                    (true, true) => {
                        let f = self.pure(f)?;
                        app2(TargetTerm::app(f, self.pure(a)?), p, q)
                    }
                    (true, false) => {
                        let r = self.names.fresh("r");
                        let f = self.pure(f)?;
                        let a = self.eff(a, p, &r)?;
                        TargetTerm::newp(&r, app2(TargetTerm::app(f, a), &r, q))
                    }
                    (false, true) => {
                        let r = self.names.fresh("r");
                        let f = self.eff(f, p, &r)?;
                        let a = self.pure(a)?;
                        TargetTerm::newp(&r, app2(TargetTerm::app(f, a), &r, q))
                    }
                    (false, false) => {
                        let r = self.names.fresh("r");
                        let s = self.names.fresh("s");
                        let f = self.eff(f, &r, &s)?;
                        let a = self.eff(a, p, &r)?;
                        TargetTerm::newp(&r, TargetTerm::newp(&s, app2(TargetTerm::app(f, a), &s, q)))
                    }
                }
            }
            (Rule::Let, Term::Let(x, _, _)) => {
                let v = self.pure(child(d, 0)?)?;
                let b = self.eff(child(d, 1)?, p, q)?;
                TargetTerm::Let(x.clone(), Box::new(v), Box::new(b))
            }
            (Rule::Shift, Term::Shift(k, _)) => {
                let body = self.pure(child(d, 0)?)?;
                shift_clause(&mut self.names, p, q, k, body)
            }
            (Rule::Add | Rule::Cons, _) => {
                let (l, r) = (child(d, 0)?, child(d, 1)?);
                match (l.is_qpure(), r.is_qpure()) {
                    // The operation itself still answers through p and q.
                    (true, true) => {
                        let l = self.pure(l)?;
                        let v = binary(d.rule, l, self.pure(r)?);
                        exp_clause(&mut self.names, p, q, v)
                    }
                    (true, false) => {
                        let l = self.pure(l)?;
                        binary(d.rule, l, self.eff(r, p, q)?)
                    }
                    (false, true) => {
                        let l = self.eff(l, p, q)?;
                        binary(d.rule, l, self.pure(r)?)
                    }
                    (false, false) => {
                        let m = self.names.fresh("r");
                        let l = self.eff(l, &m, q)?;
                        let r = self.eff(r, p, &m)?;
                        TargetTerm::newp(&m, binary(d.rule, l, r))
                    }
                }
            }
            (Rule::If, _) => {
                let (c, a, b) = (child(d, 0)?, child(d, 1)?, child(d, 2)?);
                if c.is_qpure() {
                    let c = self.pure(c)?;
                    let a = self.eff(a, p, q)?;
                    let b = self.eff(b, p, q)?;
                    TargetTerm::If(Box::new(c), Box::new(a), Box::new(b))
                } else if a.is_qpure() && b.is_qpure() {
                    let c = self.eff(c, p, q)?;
                    let a = self.pure(a)?;
                    let b = self.pure(b)?;
                    TargetTerm::If(Box::new(c), Box::new(a), Box::new(b))
                } else {
                    let r = self.names.fresh("r");
                    let c = self.eff(c, p, &r)?;
                    let a = self.eff(a, &r, q)?;
                    let b = self.eff(b, &r, q)?;
                    TargetTerm::newp(&r, TargetTerm::If(Box::new(c), Box::new(a), Box::new(b)))
                }
            }
            (Rule::Head, _) => TargetTerm::Head(Box::new(self.eff(child(d, 0)?, p, q)?)),
            (Rule::Tail, _) => TargetTerm::Tail(Box::new(self.eff(child(d, 0)?, p, q)?)),
            (Rule::IsNil, _) => TargetTerm::IsNil(Box::new(self.eff(child(d, 0)?, p, q)?)),
            _ => return Err(TranslateError::UnsupportedNode(d.rule)),
        })
    }
}
