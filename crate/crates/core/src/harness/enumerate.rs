//! Exhaustive enumeration of small closed programs.
//!
//! The grammar slice is integers 1 and 2, variables, addition, functions,
//! application, `let`, `shift`, `throw` and `reset`. The depth of a term is
//! the height of its syntax tree, except that `throw k e` counts as deep as
//! `e`, and a `throw` argument is never itself a `throw`. Subterms are kept
//! only if they type check with their free variables given monomorphic
//! types, which prunes the search without losing any closed program
//! outside of let-polymorphic uses.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::source::{infer, EnvEntry, TypeATM, TypeEnv, TypeScheme};
use crate::syntax::{Name, Term};

const INTS: [i64; 2] = [1, 2];

/// Bound on the depth of the shallower operand of a binary node.
const SHALLOW: usize = 2;

fn x(i: usize) -> Name {
    format!("x{i}")
}

fn k(i: usize) -> Name {
    format!("k{i}")
}

struct Enumerator {
    exact: BTreeMap<(usize, usize, usize), Vec<Term>>,
}

fn typable(t: &Term, nv: usize, nk: usize) -> bool {
    let mut env = TypeEnv::new();
    let mut next = 0u32;
    let mut fresh = || {
        next += 1;
        TypeATM::Var(next)
    };
    for i in 0..nv {
        env.push(x(i), EnvEntry::Ordinary(TypeScheme { bound_vars: Vec::new(), body: fresh() }));
    }
    for i in 0..nk {
        let (a, b) = (fresh(), fresh());
        env.push(k(i), EnvEntry::Continuation(a, b));
    }
    infer(&env, t).is_ok()
}

impl Enumerator {
    /// Typable terms of exactly depth `d` over `nv` variables and `nk`
    /// continuation variables.
    fn exact(&mut self, d: usize, nv: usize, nk: usize) -> Vec<Term> {
        if let Some(ts) = self.exact.get(&(d, nv, nk)) {
            return ts.clone();
        }
        let mut plain = Vec::new();
        if d == 1 {
            plain.extend(INTS.iter().map(|&n| Term::int(n)));
            plain.extend((0..nv).map(|i| Term::Var(x(i))));
        } else {
            let below = self.exact(d - 1, nv, nk);
            // Of the two sides of a binary node or `let`, the deeper has depth
            // exactly d - 1 and the other is no deeper than SHALLOW.
            let mut pairs = Vec::new();
            for a in &below {
                for b in self.up_to((d - 1).min(SHALLOW), nv, nk) {
                    pairs.push((a.clone(), b));
                }
            }
            for a in self.up_to((d - 2).min(SHALLOW), nv, nk) {
                for b in &below {
                    pairs.push((a.clone(), b.clone()));
                }
            }
            for (a, b) in &pairs {
                plain.push(Term::add(a.clone(), b.clone()));
            }
            for (a, b) in &pairs {
                if matches!(a, Term::Lam(..) | Term::Var(_)) {
                    plain.push(Term::app(a.clone(), b.clone()));
                }
            }
            plain.extend(below.iter().map(|e| Term::reset(e.clone())));
            for e in self.exact(d - 1, nv, nk + 1) {
                if e.is_pure() {
                    plain.push(Term::shift(&k(nk), e));
                }
            }
            for e in self.exact(d - 1, nv + 1, nk) {
                plain.push(Term::lam(&x(nv), e));
            }
            let values_below: Vec<Term> = below.iter().filter(|v| v.is_value()).cloned().collect();
            let values_shallow: Vec<Term> =
                self.up_to((d - 2).min(SHALLOW), nv, nk).into_iter().filter(Term::is_value).collect();
            let body_below = self.exact(d - 1, nv + 1, nk);
            let body_other = self.up_to((d - 1).min(SHALLOW), nv + 1, nk);
            for v in &values_below {
                for b in &body_other {
                    plain.push(Term::let_(&x(nv), v.clone(), b.clone()));
                }
            }
            for v in &values_shallow {
                for b in &body_below {
                    plain.push(Term::let_(&x(nv), v.clone(), b.clone()));
                }
            }
        }
        let mut out: Vec<Term> = plain.into_iter().filter(|t| typable(t, nv, nk)).collect();
        let throws: Vec<Term> = (0..nk)
            .flat_map(|j| out.iter().map(move |e| Term::throw(&k(j), e.clone())))
            .filter(|t| typable(t, nv, nk))
            .collect();
        out.extend(throws);

        self.exact.insert((d, nv, nk), out.clone());
        out
    }

    fn up_to(&mut self, d: usize, nv: usize, nk: usize) -> Vec<Term> {
        let mut out = Vec::new();
        for i in 1..=d {
            out.extend(self.exact(i, nv, nk));
        }
        out
    }
}

/// Closed programs of base type up to `max_depth`, in a fixed order. A
/// program whose root is effectful is returned wrapped in `reset`; it is
/// only produced that way at the maximal depth, since below it the wrapped
/// term is enumerated on its own.
pub fn enumerate_programs(max_depth: usize) -> Vec<Term> {
    assert!(max_depth <= 5, "enumeration depth is limited to 5");
    let mut en = Enumerator { exact: BTreeMap::new() };
    let mut out = Vec::new();
    for d in 1..=max_depth {
        for t in en.exact(d, 0, 0) {
            let Ok(j) = infer(&TypeEnv::new(), &t).map(|der| der.judgment) else {
                continue;
            };
            if j.is_pure() {
                if j.result().is_base() {
                    out.push(t);
                }
            } else if d == max_depth {
                let closed = Term::reset(t);
                if infer(&TypeEnv::new(), &closed).is_ok_and(|der| der.judgment.result().is_base()) {
                    out.push(closed);
                }
            }
        }
    }
    out
}
