use alloc::vec::Vec;

use super::{Name, TargetTerm, Term};

/// Parallel binder stacks for the two sides of a comparison.
#[derive(Default)]
struct Binders<'a> {
    left: Vec<&'a Name>,
    right: Vec<&'a Name>,
}

impl<'a> Binders<'a> {
    fn same_var(&self, x: &Name, y: &Name) -> bool {
        let i = self.left.iter().rposition(|n| *n == x);
        let j = self.right.iter().rposition(|n| *n == y);
        match (i, j) {
            (Some(i), Some(j)) => i == j,
            (None, None) => x == y,
            _ => false,
        }
    }

    fn push(&mut self, x: &'a Name, y: &'a Name) {
        self.left.push(x);
        self.right.push(y);
    }

    fn pop(&mut self, n: usize) {
        for _ in 0..n {
            self.left.pop();
            self.right.pop();
        }
    }
}

/// Equality of target terms up to consistent renaming of bound variables,
/// including prompt binders introduced by `newp`.
pub fn alpha_eq(a: &TargetTerm, b: &TargetTerm) -> bool {
    target(a, b, &mut Binders::default())
}

/// Equality of source terms up to consistent renaming of bound variables.
pub fn alpha_eq_source(a: &Term, b: &Term) -> bool {
    source(a, b, &mut Binders::default())
}

fn target<'a>(a: &'a TargetTerm, b: &'a TargetTerm, env: &mut Binders<'a>) -> bool {
    use TargetTerm::*;
    match (a, b) {
        (Var(x), Var(y)) => env.same_var(x, y),
        (Const(c), Const(d)) => c == d,
        (Omega, Omega) | (Nil, Nil) => true,
        (PromptConst(p), PromptConst(q)) => p == q,
        (Lam(x, e), Lam(y, f)) | (NewPrompt(x, e), NewPrompt(y, f)) => {
            env.push(x, y);
            let r = target(e, f, env);
            env.pop(1);
            r
        }
        (Fix(f1, x1, e1), Fix(f2, x2, e2)) => {
            env.push(f1, f2);
            env.push(x1, x2);
            let r = target(e1, e2, env);
            env.pop(2);
            r
        }
        (Let(x, v1, e1), Let(y, v2, e2)) => {
            if !target(v1, v2, env) {
                return false;
            }
            env.push(x, y);
            let r = target(e1, e2, env);
            env.pop(1);
            r
        }
        (ShiftP(p1, k1, e1), ShiftP(p2, k2, e2)) => {
            if !target(p1, p2, env) {
                return false;
            }
            env.push(k1, k2);
            let r = target(e1, e2, env);
            env.pop(1);
            r
        }
        (App(f1, a1), App(f2, a2))
        | (ResetP(f1, a1), ResetP(f2, a2))
        | (Add(f1, a1), Add(f2, a2))
        | (Cons(f1, a1), Cons(f2, a2)) => target(f1, f2, env) && target(a1, a2, env),
        (If(c1, a1, b1), If(c2, a2, b2)) => target(c1, c2, env) && target(a1, a2, env) && target(b1, b2, env),
        (Head(e1), Head(e2)) | (Tail(e1), Tail(e2)) | (IsNil(e1), IsNil(e2)) => target(e1, e2, env),
        _ => false,
    }
}

fn source<'a>(a: &'a Term, b: &'a Term, env: &mut Binders<'a>) -> bool {
    use Term::*;
    match (a, b) {
        (Var(x), Var(y)) => env.same_var(x, y),
        (Const(c), Const(d)) => c == d,
        (Nil, Nil) => true,
        (Lam(x, e), Lam(y, f)) | (Shift(x, e), Shift(y, f)) => {
            env.push(x, y);
            let r = source(e, f, env);
            env.pop(1);
            r
        }
        (Throw(k1, e1), Throw(k2, e2)) => env.same_var(k1, k2) && source(e1, e2, env),
        (Fix(f1, x1, e1), Fix(f2, x2, e2)) => {
            env.push(f1, f2);
            env.push(x1, x2);
            let r = source(e1, e2, env);
            env.pop(2);
            r
        }
        (Let(x, v1, e1), Let(y, v2, e2)) => {
            if !source(v1, v2, env) {
                return false;
            }
            env.push(x, y);
            let r = source(e1, e2, env);
            env.pop(1);
            r
        }
        (App(f1, a1), App(f2, a2)) | (Add(f1, a1), Add(f2, a2)) | (Cons(f1, a1), Cons(f2, a2)) => {
            source(f1, f2, env) && source(a1, a2, env)
        }
        (If(c1, a1, b1), If(c2, a2, b2)) => source(c1, c2, env) && source(a1, a2, env) && source(b1, b2, env),
        (Reset(e1), Reset(e2)) | (Head(e1), Head(e2)) | (Tail(e1), Tail(e2)) | (IsNil(e1), IsNil(e2)) => {
            source(e1, e2, env)
        }
        _ => false,
    }
}
