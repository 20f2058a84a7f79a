//! The naive and one-pass translations. They share every clause and differ
//! only in how an effectful subterm receives its prompts: the naive
//! translation builds `fun p -> fun q -> ...` and applies it in the output,
//! while the one-pass translation substitutes the prompts while translating.

use alloc::boxed::Box;

use super::{app2, child, exp_clause, reset_clause, shift_clause, var, Names, Res, TranslateError};
use crate::source::{Derivation, Judgment, Rule};
use crate::syntax::{TargetTerm, Term};

#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum Layer {
    Dynamic,
    Static,
}

struct Pps {
    names: Names,
    layer: Layer,
}

pub(crate) fn translate(d: &Derivation, layer: Layer) -> Res {
    let mut t = Pps { names: Names::for_term(&d.subject), layer };
    match d.judgment {
        Judgment::Pure(_) => t.pure(d),
        Judgment::Eff(..) => t.abstracted(d),
    }
}

impl Pps {
    /// `fun p -> fun q -> [d] p q` with fresh prompt names.
    fn abstracted(&mut self, d: &Derivation) -> Res {
        let p = self.names.fresh("p");
        let q = self.names.fresh("q");
        let body = self.body(d, &p, &q)?;
        Ok(TargetTerm::lam(&p, TargetTerm::lam(&q, body)))
    }

    /// The effectful translation of `d` supplied with prompts `p` and `q`.
    fn at(&mut self, d: &Derivation, p: &str, q: &str) -> Res {
        match self.layer {
            Layer::Static => self.body(d, p, q),
            Layer::Dynamic => Ok(app2(self.abstracted(d)?, p, q)),
        }
    }

    fn pure(&mut self, d: &Derivation) -> Res {
        Ok(match (&d.rule, &d.subject) {
            (Rule::Var, Term::Var(x)) => var(x),
            (Rule::Const, Term::Const(c)) => TargetTerm::Const(c.clone()),
            (Rule::Nil, _) => TargetTerm::Nil,
            (Rule::Fun, Term::Lam(x, _)) => TargetTerm::lam(x, self.abstracted(child(d, 0)?)?),
            (Rule::Fix, Term::Fix(f, x, _)) => {
                TargetTerm::Fix(f.clone(), x.clone(), Box::new(self.abstracted(child(d, 0)?)?))
            }
            (Rule::Throw, Term::Throw(k, _)) => TargetTerm::app(var(k), self.pure(child(d, 0)?)?),
            (Rule::Reset, _) => {
                let p = self.names.fresh("p");
                let q = self.names.fresh("q");
                let body = self.at(child(d, 0)?, &p, &q)?;
                reset_clause(&mut self.names, &p, &q, body)
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

    /// Clause bodies for effectful nodes, with `p` the prompt of the final
    /// answer type and `q` that of the initial one.
    fn body(&mut self, d: &Derivation, p: &str, q: &str) -> Res {
        if !matches!(d.judgment, Judgment::Eff(..)) {
            return Err(TranslateError::UnsupportedNode(d.rule));
        }
        Ok(match (&d.rule, &d.subject) {
            (Rule::Exp, _) => {
                let v = self.pure(child(d, 0)?)?;
                exp_clause(&mut self.names, p, q, v)
            }
            (Rule::App, _) => {
                let r = self.names.fresh("r");
                let s = self.names.fresh("s");
                let f = self.at(child(d, 0)?, &r, &s)?;
                let a = self.at(child(d, 1)?, p, &r)?;
                let call = app2(TargetTerm::app(f, a), &s, q);
                TargetTerm::newp(&r, TargetTerm::newp(&s, call))
            }
            (Rule::Let, Term::Let(x, _, _)) => {
                let v = self.pure(child(d, 0)?)?;
                let b = self.at(child(d, 1)?, p, q)?;
                TargetTerm::Let(x.clone(), Box::new(v), Box::new(b))
            }
            (Rule::Shift, Term::Shift(k, _)) => {
                let body = self.pure(child(d, 0)?)?;
                shift_clause(&mut self.names, p, q, k, body)
            }
            (Rule::Add | Rule::Cons, _) => {
                let r = self.names.fresh("r");
                let a = self.at(child(d, 0)?, &r, q)?;
                let b = self.at(child(d, 1)?, p, &r)?;
                let op = if d.rule == Rule::Add {
                    TargetTerm::Add(Box::new(a), Box::new(b))
                } else {
                    TargetTerm::Cons(Box::new(a), Box::new(b))
                };
                TargetTerm::newp(&r, op)
            }
            (Rule::If, _) => {
                let r = self.names.fresh("r");
                let c = self.at(child(d, 0)?, p, &r)?;
                let a = self.at(child(d, 1)?, &r, q)?;
                let b = self.at(child(d, 2)?, &r, q)?;
                TargetTerm::newp(&r, TargetTerm::If(Box::new(c), Box::new(a), Box::new(b)))
            }
            (Rule::Head, _) => TargetTerm::Head(Box::new(self.at(child(d, 0)?, p, q)?)),
            (Rule::Tail, _) => TargetTerm::Tail(Box::new(self.at(child(d, 0)?, p, q)?)),
            (Rule::IsNil, _) => TargetTerm::IsNil(Box::new(self.at(child(d, 0)?, p, q)?)),
            _ => return Err(TranslateError::UnsupportedNode(d.rule)),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::source::infer_program;
    use crate::syntax::{alpha_eq, parse_program, parse_target};

    fn both(s: &str) -> (TargetTerm, TargetTerm) {
        let d = infer_program(&parse_program(s).unwrap()).unwrap();
        (translate(&d, Layer::Dynamic).unwrap(), translate(&d, Layer::Static).unwrap())
    }

    #[test]
    fn naive_reset_of_shift() {
        let (naive, _) = both("reset (shift k -> 1)");
        let expected = parse_target(
            "newp p in newp q in reset[p] ((fun y -> shift[q] _ -> y) \
             ((fun p2 -> fun q2 -> shift[p2] k2 -> (fun k -> 1) \
               (fun y2 -> reset[q2] ((fun _ -> omega) (k2 y2)))) p q))",
        )
        .unwrap();
        assert!(alpha_eq(&naive, &expected), "{naive}");
    }

    #[test]
    fn onepass_application_passes_prompts_once() {
        let (_, one) = both("reset ((fun x -> x) 1)");
        let expected = parse_target(
            "newp p in newp q in reset[p] ((fun y -> shift[q] _ -> y) \
             (newp r in newp s in \
               (shift[r] k -> reset[s] (k (fun x -> fun p2 -> fun q2 -> shift[p2] k2 -> reset[q2] (k2 x)))) \
               (shift[p] k3 -> reset[r] (k3 1)) s q))",
        )
        .unwrap();
        assert!(alpha_eq(&one, &expected), "{one}");
    }
}
