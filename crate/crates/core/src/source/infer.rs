//! Type inference and derivation checking for the source calculus.
//!
//! Inference is unification-based over four-place effectful arrows. Every
//! syntactically pure subterm that sits in an effectful position is wrapped
//! in an explicit `exp` node, so the resulting [`Derivation`] records exactly
//! where the coercion from pure to effectful judgments happens. The
//! translations are driven by that tree.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use super::types::{match_type, EnvEntry, Judgment, Subst, TypeATM, TypeEnv, TypeNamer, TypeScheme, UnifyError};
use crate::syntax::{Literal, Name, Purity, SourceProgram, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Rule {
    Var,
    Const,
    Exp,
    Fun,
    Fix,
    App,
    Reset,
    Shift,
    Throw,
    Let,
    Add,
    If,
    Nil,
    Cons,
    Head,
    Tail,
    IsNil,
}

/// Elaborated typing derivation. Children are ordered as the subterms appear
/// in the subject; an `Exp` node has the same subject as its single child.
#[derive(Clone, Debug, PartialEq)]
pub struct Derivation {
    pub rule: Rule,
    pub judgment: Judgment,
    pub subject: Term,
    pub children: Vec<Derivation>,
    pub purity: Purity,
}

impl Derivation {
    fn node(rule: Rule, judgment: Judgment, subject: &Term, children: Vec<Derivation>) -> Derivation {
        Derivation { rule, judgment, purity: subject.purity(), subject: subject.clone(), children }
    }

    /// Unwraps an `exp` coercion, if any.
    pub fn strip_exp(&self) -> &Derivation {
        match self.rule {
            Rule::Exp => &self.children[0],
            _ => self,
        }
    }

    pub fn is_qpure(&self) -> bool {
        self.purity != Purity::Effectful
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(Derivation::size).sum::<usize>()
    }

    /// Visits every node in pre-order.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a Derivation)) {
        f(self);
        for c in &self.children {
            c.walk(f);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InferError {
    /// Occurs-check failure or constructor clash.
    Type { message: String, subterm: Term },
    /// The body of a `shift` must be syntactically pure.
    ImpureShiftBody { subterm: Term },
    Scope { name: Name, message: String },
    Annotation { message: String },
}

impl fmt::Display for InferError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InferError::Type { message, subterm } => write!(f, "type error in `{subterm}`: {message}"),
            InferError::ImpureShiftBody { subterm } => write!(
                f,
                "the body of `{subterm}` is not pure; wrap it in reset (shift k -> reset (...))"
            ),
            InferError::Scope { name, message } => write!(f, "scope error: {message} '{name}'"),
            InferError::Annotation { message } => write!(f, "annotation mismatch: {message}"),
        }
    }
}

impl core::error::Error for InferError {}

fn describe(err: UnifyError) -> String {
    let mut n = TypeNamer::new();
    match err {
        UnifyError::Occurs(a, b) => alloc::format!("cannot build infinite type {} = {}", n.show(&a), n.show(&b)),
        UnifyError::Clash(a, b) => alloc::format!("cannot unify {} with {}", n.show(&a), n.show(&b)),
    }
}

struct Inferencer {
    subst: Subst,
}

/// Effectful view of a derivation: the node and its triple `τ; α, β`.
struct Eff {
    d: Derivation,
    ty: TypeATM,
    initial: TypeATM,
    fin: TypeATM,
}

impl Inferencer {
    fn unify(&mut self, a: &TypeATM, b: &TypeATM, at: &Term) -> Result<(), InferError> {
        self.subst
            .unify(a, b)
            .map_err(|e| InferError::Type { message: describe(e), subterm: at.clone() })
    }

    fn instantiate(&mut self, s: &TypeScheme) -> TypeATM {
        let mut map: BTreeMap<u32, TypeATM> = BTreeMap::new();
        for v in &s.bound_vars {
            let f = self.subst.fresh();
            map.insert(*v, f);
        }
        s.body.map_vars(&mut |v| map.get(&v).cloned().unwrap_or(TypeATM::Var(v)))
    }

    /// Lifts a pure derivation with the exp rule; effectful ones pass through.
    fn eff(&mut self, d: Derivation) -> Eff {
        match d.judgment.clone() {
            Judgment::Eff(ty, initial, fin) => Eff { d, ty, initial, fin },
            Judgment::Pure(ty) => {
                let a = self.subst.fresh();
                let j = Judgment::Eff(ty.clone(), a.clone(), a.clone());
                let subject = d.subject.clone();
                let node = Derivation::node(Rule::Exp, j, &subject, alloc::vec![d]);
                Eff { d: node, ty, initial: a.clone(), fin: a }
            }
        }
    }

    fn pure_type(d: &Derivation) -> TypeATM {
        match &d.judgment {
            Judgment::Pure(t) => t.clone(),
            Judgment::Eff(..) => unreachable!("pure subterm inferred an effectful judgment"),
        }
    }

    fn infer(&mut self, env: &mut TypeEnv, t: &Term) -> Result<Derivation, InferError> {
        match t {
            Term::Var(x) => match env.lookup(x) {
                None => Err(InferError::Scope { name: x.clone(), message: "unbound variable".into() }),
                Some(EnvEntry::Continuation(..)) => Err(InferError::Type {
                    message: alloc::format!(
                        "continuation variable '{x}' can only be used with throw (write fun v -> throw {x} v)"
                    ),
                    subterm: t.clone(),
                }),
                Some(EnvEntry::Ordinary(s)) => {
                    let s = s.clone();
                    let ty = self.instantiate(&s);
                    Ok(Derivation::node(Rule::Var, Judgment::Pure(ty), t, Vec::new()))
                }
            },
            Term::Const(c) => {
                let ty = match c {
                    Literal::Int(_) => TypeATM::Int,
                    Literal::Bool(_) => TypeATM::Bool,
                    Literal::IntList(_) => TypeATM::list(TypeATM::Int),
                };
                Ok(Derivation::node(Rule::Const, Judgment::Pure(ty), t, Vec::new()))
            }
            Term::Nil => {
                let a = self.subst.fresh();
                Ok(Derivation::node(Rule::Nil, Judgment::Pure(TypeATM::list(a)), t, Vec::new()))
            }
            Term::Lam(x, body) => {
                let sigma = self.subst.fresh();
                env.push(x.clone(), EnvEntry::Ordinary(TypeScheme { bound_vars: Vec::new(), body: sigma.clone() }));
                let db = self.infer(env, body);
                env.pop();
                let b = self.eff(db?);
                let ty = TypeATM::eff_arrow(sigma, b.initial, b.ty, b.fin);
                Ok(Derivation::node(Rule::Fun, Judgment::Pure(ty), t, alloc::vec![b.d]))
            }
            Term::Fix(f, x, body) => {
                let (sigma, alpha, tau, beta) =
                    (self.subst.fresh(), self.subst.fresh(), self.subst.fresh(), self.subst.fresh());
                let fty = TypeATM::eff_arrow(sigma.clone(), alpha.clone(), tau.clone(), beta.clone());
                env.push(f.clone(), EnvEntry::Ordinary(TypeScheme { bound_vars: Vec::new(), body: fty.clone() }));
                env.push(x.clone(), EnvEntry::Ordinary(TypeScheme { bound_vars: Vec::new(), body: sigma }));
                let db = self.infer(env, body);
                env.pop();
                env.pop();
                let b = self.eff(db?);
                self.unify(&b.ty, &tau, body)?;
                self.unify(&b.initial, &alpha, body)?;
                self.unify(&b.fin, &beta, body)?;
                Ok(Derivation::node(Rule::Fix, Judgment::Pure(fty), t, alloc::vec![b.d]))
            }
            Term::App(e1, e2) => {
                let f = self.infer(env, e1)?;
                let f = self.eff(f);
                let a = self.infer(env, e2)?;
                let a = self.eff(a);
                let (alpha, tau) = (self.subst.fresh(), self.subst.fresh());
                let expected = TypeATM::eff_arrow(a.ty.clone(), alpha.clone(), tau.clone(), f.initial.clone());
                self.unify(&f.ty, &expected, e1)?;
                self.unify(&f.fin, &a.initial, t)?;
                let j = Judgment::Eff(tau, alpha, a.fin);
                Ok(Derivation::node(Rule::App, j, t, alloc::vec![f.d, a.d]))
            }
            Term::Let(x, v, body) => {
                if !v.is_value() {
                    return Err(InferError::Type {
                        message: "the term bound by let must be a value".into(),
                        subterm: (**v).clone(),
                    });
                }
                let dv = self.infer(env, v)?;
                let sigma = self.subst.apply(&Self::pure_type(&dv));
                let env_vars = env.free_type_vars(&self.subst);
                let bound: Vec<u32> = sigma.vars().into_iter().filter(|v| !env_vars.contains(v)).collect();
                env.push(x.clone(), EnvEntry::Ordinary(TypeScheme { bound_vars: bound, body: sigma }));
                let db = self.infer(env, body);
                env.pop();
                let b = self.eff(db?);
                let j = Judgment::Eff(b.ty, b.initial, b.fin);
                Ok(Derivation::node(Rule::Let, j, t, alloc::vec![dv, b.d]))
            }
            Term::Shift(k, body) => {
                if !body.is_pure() {
                    return Err(InferError::ImpureShiftBody { subterm: t.clone() });
                }
                let (tau, alpha) = (self.subst.fresh(), self.subst.fresh());
                env.push(k.clone(), EnvEntry::Continuation(tau.clone(), alpha.clone()));
                let db = self.infer(env, body);
                env.pop();
                let db = db?;
                let beta = Self::pure_type(&db);
                Ok(Derivation::node(Rule::Shift, Judgment::Eff(tau, alpha, beta), t, alloc::vec![db]))
            }
            Term::Throw(k, arg) => {
                let (sigma, tau) = match env.lookup(k) {
                    Some(EnvEntry::Continuation(s, r)) => (s.clone(), r.clone()),
                    Some(EnvEntry::Ordinary(_)) => {
                        return Err(InferError::Scope { name: k.clone(), message: "not a continuation variable".into() })
                    }
                    None => {
                        return Err(InferError::Scope {
                            name: k.clone(),
                            message: "unbound continuation variable".into(),
                        })
                    }
                };
                if !arg.is_pure() {
                    return Err(InferError::Type {
                        message: alloc::format!(
                            "the argument of throw must be pure; write (fun v -> throw {k} v) ({arg})"
                        ),
                        subterm: t.clone(),
                    });
                }
                let da = self.infer(env, arg)?;
                let s = Self::pure_type(&da);
                self.unify(&s, &sigma, arg)?;
                Ok(Derivation::node(Rule::Throw, Judgment::Pure(tau), t, alloc::vec![da]))
            }
            Term::Reset(body) => {
                let db = self.infer(env, body)?;
                let b = self.eff(db);
                self.unify(&b.ty, &b.initial, body)?;
                Ok(Derivation::node(Rule::Reset, Judgment::Pure(b.fin), t, alloc::vec![b.d]))
            }
            Term::Add(e1, e2) => {
                let l = self.infer(env, e1)?;
                let l = self.eff(l);
                let r = self.infer(env, e2)?;
                let r = self.eff(r);
                self.unify(&l.ty, &TypeATM::Int, e1)?;
                self.unify(&r.ty, &TypeATM::Int, e2)?;
                self.unify(&l.fin, &r.initial, t)?;
                let j = Judgment::Eff(TypeATM::Int, l.initial, r.fin);
                Ok(Derivation::node(Rule::Add, j, t, alloc::vec![l.d, r.d]))
            }
            Term::If(c, a, b) => {
                let dc = self.infer(env, c)?;
                let dc = self.eff(dc);
                let da = self.infer(env, a)?;
                let da = self.eff(da);
                let db = self.infer(env, b)?;
                let db = self.eff(db);
                self.unify(&dc.ty, &TypeATM::Bool, c)?;
                self.unify(&da.ty, &db.ty, t)?;
                self.unify(&da.initial, &db.initial, t)?;
                self.unify(&da.fin, &db.fin, t)?;
                self.unify(&da.fin, &dc.initial, t)?;
                let j = Judgment::Eff(da.ty, da.initial, dc.fin);
                Ok(Derivation::node(Rule::If, j, t, alloc::vec![dc.d, da.d, db.d]))
            }
            Term::Cons(e1, e2) => {
                let d1 = self.infer(env, e1)?;
                let d2 = self.infer(env, e2)?;
                if t.is_pure() {
                    let (t1, t2) = (Self::pure_type(&d1), Self::pure_type(&d2));
                    self.unify(&t2, &TypeATM::list(t1.clone()), t)?;
                    return Ok(Derivation::node(Rule::Cons, Judgment::Pure(TypeATM::list(t1)), t, alloc::vec![d1, d2]));
                }
                let l = self.eff(d1);
                let r = self.eff(d2);
                self.unify(&r.ty, &TypeATM::list(l.ty.clone()), t)?;
                self.unify(&l.fin, &r.initial, t)?;
                let j = Judgment::Eff(TypeATM::list(l.ty), l.initial, r.fin);
                Ok(Derivation::node(Rule::Cons, j, t, alloc::vec![l.d, r.d]))
            }
            Term::Head(e) | Term::Tail(e) | Term::IsNil(e) => {
                let (rule, elem) = (
                    match t {
                        Term::Head(_) => Rule::Head,
                        Term::Tail(_) => Rule::Tail,
                        _ => Rule::IsNil,
                    },
                    self.subst.fresh(),
                );
                let result = match rule {
                    Rule::Head => elem.clone(),
                    Rule::Tail => TypeATM::list(elem.clone()),
                    _ => TypeATM::Bool,
                };
                let d = self.infer(env, e)?;
                if t.is_pure() {
                    let te = Self::pure_type(&d);
                    self.unify(&te, &TypeATM::list(elem), e)?;
                    return Ok(Derivation::node(rule, Judgment::Pure(result), t, alloc::vec![d]));
                }
                let d = self.eff(d);
                self.unify(&d.ty, &TypeATM::list(elem), e)?;
                let j = Judgment::Eff(result, d.initial, d.fin);
                Ok(Derivation::node(rule, j, t, alloc::vec![d.d]))
            }
        }
    }

    fn zonk(&self, d: &mut Derivation) {
        d.judgment = self.subst.apply_judgment(&d.judgment);
        for c in &mut d.children {
            self.zonk(c);
        }
    }
}

fn env_vars(env: &TypeEnv) -> BTreeSet<u32> {
    let mut out = BTreeSet::new();
    for (_, e) in env.entries() {
        match e {
            EnvEntry::Ordinary(s) => s.body.collect_vars(&mut out),
            EnvEntry::Continuation(a, b) => {
                a.collect_vars(&mut out);
                b.collect_vars(&mut out);
            }
        }
    }
    out
}

/// Infers the principal judgment of `term` under `env`, returning the
/// elaborated derivation with all types fully resolved.
pub fn infer(env: &TypeEnv, term: &Term) -> Result<Derivation, InferError> {
    let mut st = Inferencer { subst: Subst::above(&env_vars(env)) };
    let mut env = env.clone();
    let mut d = st.infer(&mut env, term)?;
    st.zonk(&mut d);
    Ok(d)
}

/// Infers a closed program and, when it carries an annotation, specializes
/// the derivation to it. The annotation must be an instance of the principal
/// judgment; an effectful annotation on a pure term inserts an `exp` at the root.
pub fn infer_program(program: &SourceProgram) -> Result<Derivation, InferError> {
    let mut st = Inferencer { subst: Subst::new() };
    let mut env = TypeEnv::new();
    let d = st.infer(&mut env, &program.term)?;
    let Some(expected) = &program.expected_type else {
        let mut d = d;
        st.zonk(&mut d);
        return Ok(d);
    };

    // Annotation variables become fresh unification variables that must stay
    // distinct and unconstrained.
    let mut rename: BTreeMap<u32, TypeATM> = BTreeMap::new();
    let expected = expected.map_types(|t| {
        t.map_vars(&mut |v| rename.entry(v).or_insert_with(|| st.subst.fresh()).clone())
    });
    let mismatch = |st: &Inferencer, d: &Derivation| {
        let mut namer = TypeNamer::new();
        let inferred = namer.show_judgment(&st.subst.apply_judgment(&d.judgment));
        let mut namer = TypeNamer::new();
        let annotated = namer.show_judgment(&expected);
        InferError::Annotation { message: alloc::format!("annotated {annotated}, inferred {inferred}") }
    };
    let mut d = match (&expected, d.judgment.is_pure()) {
        (Judgment::Pure(_), false) => return Err(mismatch(&st, &d)),
        (Judgment::Eff(..), true) => st.eff(d).d,
        _ => d,
    };
    let pairs: Vec<(TypeATM, TypeATM)> =
        expected.types().into_iter().cloned().zip(d.judgment.types().into_iter().cloned()).collect();
    for (e, i) in &pairs {
        if st.subst.unify(e, i).is_err() {
            return Err(mismatch(&st, &d));
        }
    }
    let mut images = BTreeSet::new();
    for v in rename.values() {
        match st.subst.apply(v) {
            TypeATM::Var(x) if images.insert(x) => {}
            _ => {
                return Err(InferError::Annotation {
                    message: "the annotation is more general than the inferred type".to_string(),
                })
            }
        }
    }
    st.zonk(&mut d);
    Ok(d)
}

/// Location and cause of the first node that fails re-checking.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadNode {
    /// Child indices from the root.
    pub path: Vec<usize>,
    pub reason: String,
}

impl fmt::Display for BadNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid derivation node at {:?}: {}", self.path, self.reason)
    }
}

/// Re-checks every node against its rule under an empty environment.
pub fn validate(d: &Derivation) -> bool {
    check_derivation(&TypeEnv::new(), d).is_ok()
}

/// Re-checks every node of `d` against the schema of its rule.
pub fn check_derivation(env: &TypeEnv, d: &Derivation) -> Result<(), BadNode> {
    let mut env = env.clone();
    let mut path = Vec::new();
    check_node(&mut env, d, &mut path)
}

fn pure_of(d: &Derivation) -> Option<&TypeATM> {
    match &d.judgment {
        Judgment::Pure(t) => Some(t),
        _ => None,
    }
}

fn eff_of(d: &Derivation) -> Option<(&TypeATM, &TypeATM, &TypeATM)> {
    match &d.judgment {
        Judgment::Eff(t, a, b) => Some((t, a, b)),
        _ => None,
    }
}

fn check_node(env: &mut TypeEnv, d: &Derivation, path: &mut Vec<usize>) -> Result<(), BadNode> {
    let bad = |path: &Vec<usize>, reason: &str| BadNode { path: path.clone(), reason: reason.into() };
    if d.purity != d.subject.purity() {
        return Err(bad(path, "purity class disagrees with the subject"));
    }
    let arity = match d.rule {
        Rule::Var | Rule::Const | Rule::Nil => 0,
        Rule::Exp | Rule::Fun | Rule::Fix | Rule::Reset | Rule::Shift | Rule::Throw => 1,
        Rule::Head | Rule::Tail | Rule::IsNil => 1,
        Rule::App | Rule::Let | Rule::Add | Rule::Cons => 2,
        Rule::If => 3,
    };
    if d.children.len() != arity {
        return Err(bad(path, "wrong number of premises"));
    }
    let child = |i: usize| &d.children[i];
    let subj_ok = |i: usize, s: &Term| child(i).subject == *s;

    // Premises are checked under the environment the rule extends.
    let recurse = |env: &mut TypeEnv, i: usize, path: &mut Vec<usize>| {
        path.push(i);
        let r = check_node(env, &d.children[i], path);
        path.pop();
        r
    };

    let mono = |t: &TypeATM| EnvEntry::Ordinary(TypeScheme { bound_vars: Vec::new(), body: t.clone() });

    match (&d.rule, &d.subject) {
        (Rule::Exp, _) => {
            let (t, a, b) = eff_of(d).ok_or_else(|| bad(path, "exp must conclude an effectful judgment"))?;
            let p = pure_of(child(0)).ok_or_else(|| bad(path, "exp premise must be pure"))?;
            if a != b || p != t || child(0).subject != d.subject {
                return Err(bad(path, "exp conclusion must be τ; α, α over its premise"));
            }
            recurse(env, 0, path)
        }
        (Rule::Var, Term::Var(x)) => {
            let t = pure_of(d).ok_or_else(|| bad(path, "var is pure"))?;
            match env.lookup(x) {
                Some(EnvEntry::Ordinary(s)) => {
                    let flexible: BTreeSet<u32> = s.bound_vars.iter().copied().collect();
                    if match_type(&s.body, t, &flexible, &mut BTreeMap::new()) {
                        Ok(())
                    } else {
                        Err(bad(path, "variable type is not an instance of its scheme"))
                    }
                }
                _ => Err(bad(path, "unbound variable")),
            }
        }
        (Rule::Const, Term::Const(c)) => {
            let expected = match c {
                Literal::Int(_) => TypeATM::Int,
                Literal::Bool(_) => TypeATM::Bool,
                Literal::IntList(_) => TypeATM::list(TypeATM::Int),
            };
            if d.judgment == Judgment::Pure(expected) {
                Ok(())
            } else {
                Err(bad(path, "constant has the wrong type"))
            }
        }
        (Rule::Nil, Term::Nil) => match pure_of(d) {
            Some(TypeATM::List(_)) => Ok(()),
            _ => Err(bad(path, "[] has a list type")),
        },
        (Rule::Fun, Term::Lam(x, body)) => {
            let Some(TypeATM::Eff(s, a, t, b)) = pure_of(d) else {
                return Err(bad(path, "fun concludes a pure effectful-arrow type"));
            };
            if !subj_ok(0, body) || eff_of(child(0)) != Some((t, a, b)) {
                return Err(bad(path, "fun premise must be the body at τ; α, β"));
            }
            env.push(x.clone(), mono(s));
            let r = recurse(env, 0, path);
            env.pop();
            r
        }
        (Rule::Fix, Term::Fix(f, x, body)) => {
            let fty = pure_of(d).ok_or_else(|| bad(path, "fix is pure"))?;
            let TypeATM::Eff(s, a, t, b) = fty else {
                return Err(bad(path, "fix concludes an effectful-arrow type"));
            };
            if !subj_ok(0, body) || eff_of(child(0)) != Some((t, a, b)) {
                return Err(bad(path, "fix premise must be the body at τ; α, β"));
            }
            env.push(f.clone(), mono(fty));
            env.push(x.clone(), mono(s));
            let r = recurse(env, 0, path);
            env.pop();
            env.pop();
            r
        }
        (Rule::App, Term::App(e1, e2)) => {
            let (t, alpha, delta) = eff_of(d).ok_or_else(|| bad(path, "app is effectful"))?;
            let (ft, beta, gamma) = eff_of(child(0)).ok_or_else(|| bad(path, "app function premise"))?;
            let (s, gamma2, delta2) = eff_of(child(1)).ok_or_else(|| bad(path, "app argument premise"))?;
            let expected = TypeATM::eff_arrow(s.clone(), alpha.clone(), t.clone(), beta.clone());
            if !subj_ok(0, e1) || !subj_ok(1, e2) || *ft != expected || gamma != gamma2 || delta != delta2 {
                return Err(bad(path, "app premises do not thread answer types"));
            }
            recurse(env, 0, path)?;
            recurse(env, 1, path)
        }
        (Rule::Let, Term::Let(x, v, body)) => {
            let sigma = pure_of(child(0)).ok_or_else(|| bad(path, "let-bound value is pure"))?;
            if !v.is_value() || !subj_ok(0, v) || !subj_ok(1, body) || eff_of(child(1)).is_none() {
                return Err(bad(path, "let premises"));
            }
            let (t, a, b) = eff_of(child(1)).unwrap();
            if d.judgment != Judgment::Eff(t.clone(), a.clone(), b.clone()) {
                return Err(bad(path, "let conclusion must equal its body's judgment"));
            }
            recurse(env, 0, path)?;
            let env_vars = env.free_type_vars(&Subst::new());
            let bound = sigma.vars().into_iter().filter(|v| !env_vars.contains(v)).collect();
            env.push(x.clone(), EnvEntry::Ordinary(TypeScheme { bound_vars: bound, body: sigma.clone() }));
            let r = recurse(env, 1, path);
            env.pop();
            r
        }
        (Rule::Shift, Term::Shift(k, body)) => {
            let (t, a, b) = eff_of(d).ok_or_else(|| bad(path, "shift is effectful"))?;
            if !subj_ok(0, body) || pure_of(child(0)) != Some(b) {
                return Err(bad(path, "shift body must be pure at the final answer type"));
            }
            env.push(k.clone(), EnvEntry::Continuation(t.clone(), a.clone()));
            let r = recurse(env, 0, path);
            env.pop();
            r
        }
        (Rule::Throw, Term::Throw(k, arg)) => {
            let t = pure_of(d).ok_or_else(|| bad(path, "throw is pure"))?;
            let Some(EnvEntry::Continuation(s, r)) = env.lookup(k).cloned() else {
                return Err(bad(path, "throw needs a continuation variable"));
            };
            if *t != r || !subj_ok(0, arg) || pure_of(child(0)) != Some(&s) {
                return Err(bad(path, "throw argument/result types"));
            }
            recurse(env, 0, path)
        }
        (Rule::Reset, Term::Reset(body)) => {
            let t = pure_of(d).ok_or_else(|| bad(path, "reset is pure"))?;
            match eff_of(child(0)) {
                Some((s, a, b)) if s == a && b == t && subj_ok(0, body) => recurse(env, 0, path),
                _ => Err(bad(path, "reset premise must be σ; σ, τ")),
            }
        }
        (Rule::Add, Term::Add(e1, e2)) => {
            let (t, alpha, beta) = eff_of(d).ok_or_else(|| bad(path, "addition is effectful"))?;
            let l = eff_of(child(0)).ok_or_else(|| bad(path, "addition operand"))?;
            let r = eff_of(child(1)).ok_or_else(|| bad(path, "addition operand"))?;
            let ok = *t == TypeATM::Int
                && *l.0 == TypeATM::Int
                && *r.0 == TypeATM::Int
                && l.1 == alpha
                && l.2 == r.1
                && r.2 == beta
                && subj_ok(0, e1)
                && subj_ok(1, e2);
            if !ok {
                return Err(bad(path, "addition premises do not thread answer types"));
            }
            recurse(env, 0, path)?;
            recurse(env, 1, path)
        }
        (Rule::If, Term::If(c, a, b)) => {
            let (t, alpha, beta) = eff_of(d).ok_or_else(|| bad(path, "if is effectful"))?;
            let dc = eff_of(child(0)).ok_or_else(|| bad(path, "if condition"))?;
            let da = eff_of(child(1)).ok_or_else(|| bad(path, "if branch"))?;
            let db = eff_of(child(2)).ok_or_else(|| bad(path, "if branch"))?;
            let ok = *dc.0 == TypeATM::Bool
                && dc.2 == beta
                && da == db
                && da.0 == t
                && da.1 == alpha
                && da.2 == dc.1
                && subj_ok(0, c)
                && subj_ok(1, a)
                && subj_ok(2, b);
            if !ok {
                return Err(bad(path, "if premises do not thread answer types"));
            }
            recurse(env, 0, path)?;
            recurse(env, 1, path)?;
            recurse(env, 2, path)
        }
        (Rule::Cons, Term::Cons(e1, e2)) => {
            if !subj_ok(0, e1) || !subj_ok(1, e2) {
                return Err(bad(path, "cons premises"));
            }
            let ok = match &d.judgment {
                Judgment::Pure(t) => {
                    matches!((pure_of(child(0)), pure_of(child(1))), (Some(h), Some(tl)) if *t == TypeATM::list(h.clone()) && tl == t)
                }
                Judgment::Eff(t, alpha, beta) => match (eff_of(child(0)), eff_of(child(1))) {
                    (Some(h), Some(tl)) => {
                        *t == TypeATM::list(h.0.clone()) && tl.0 == t && h.1 == alpha && h.2 == tl.1 && tl.2 == beta
                    }
                    _ => false,
                },
            };
            if !ok {
                return Err(bad(path, "cons premises do not match"));
            }
            recurse(env, 0, path)?;
            recurse(env, 1, path)
        }
        (Rule::Head | Rule::Tail | Rule::IsNil, Term::Head(e) | Term::Tail(e) | Term::IsNil(e)) => {
            let same_prim = matches!(
                (&d.rule, &d.subject),
                (Rule::Head, Term::Head(_)) | (Rule::Tail, Term::Tail(_)) | (Rule::IsNil, Term::IsNil(_))
            );
            let (arg, res, answers) = match (&d.judgment, &child(0).judgment) {
                (Judgment::Pure(r), Judgment::Pure(a)) => (a, r, true),
                (Judgment::Eff(r, a1, b1), Judgment::Eff(a, a2, b2)) => (a, r, a1 == a2 && b1 == b2),
                _ => return Err(bad(path, "list primitive premise")),
            };
            let ok = match (arg, &d.rule) {
                (TypeATM::List(elem), Rule::Head) => **elem == *res,
                (TypeATM::List(_), Rule::Tail) => arg == res,
                (TypeATM::List(_), _) => *res == TypeATM::Bool,
                _ => false,
            };
            if !(same_prim && ok && answers && subj_ok(0, e)) {
                return Err(bad(path, "list primitive types"));
            }
            recurse(env, 0, path)
        }
        _ => Err(bad(path, "rule does not match the subject")),
    }
}
