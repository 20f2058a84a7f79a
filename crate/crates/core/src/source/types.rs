use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Write};

use crate::syntax::Name;

/// Types of the source calculus. Effectful arrows carry the answer types
/// before and after the call: `Eff(arg, initial, result, final)` is
/// `(arg/initial -> result/final)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeATM {
    Var(u32),
    Int,
    Bool,
    List(Box<TypeATM>),
    /// Pure arrow, the type of captured continuations.
    Pure(Box<TypeATM>, Box<TypeATM>),
    Eff(Box<TypeATM>, Box<TypeATM>, Box<TypeATM>, Box<TypeATM>),
}

/// Either `Γ ⊢p e : τ` or `Γ ⊢ e : τ; α, β`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Judgment {
    Pure(TypeATM),
    Eff(TypeATM, TypeATM, TypeATM),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeScheme {
    pub bound_vars: Vec<u32>,
    pub body: TypeATM,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EnvEntry {
    Ordinary(TypeScheme),
    /// Continuation variable `k : σ -> τ`, always monomorphic.
    Continuation(TypeATM, TypeATM),
}

/// Ordered typing environment; later bindings shadow earlier ones.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TypeEnv {
    entries: Vec<(Name, EnvEntry)>,
}

impl TypeEnv {
    pub fn new() -> TypeEnv {
        TypeEnv::default()
    }

    pub fn push(&mut self, name: Name, entry: EnvEntry) {
        self.entries.push((name, entry));
    }

    pub fn pop(&mut self) {
        self.entries.pop();
    }

    pub fn lookup(&self, name: &str) -> Option<&EnvEntry> {
        self.entries.iter().rev().find(|(n, _)| n == name).map(|(_, e)| e)
    }

    pub fn entries(&self) -> impl Iterator<Item = &(Name, EnvEntry)> {
        self.entries.iter()
    }

    pub(crate) fn free_type_vars(&self, subst: &Subst) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        for (_, e) in &self.entries {
            match e {
                EnvEntry::Ordinary(s) => {
                    let mut fv = BTreeSet::new();
                    subst.apply(&s.body).collect_vars(&mut fv);
                    for v in fv {
                        if !s.bound_vars.contains(&v) {
                            out.insert(v);
                        }
                    }
                }
                EnvEntry::Continuation(a, b) => {
                    subst.apply(a).collect_vars(&mut out);
                    subst.apply(b).collect_vars(&mut out);
                }
            }
        }
        out
    }
}

impl TypeATM {
    pub fn list(t: TypeATM) -> TypeATM {
        TypeATM::List(Box::new(t))
    }

    pub fn pure_arrow(a: TypeATM, b: TypeATM) -> TypeATM {
        TypeATM::Pure(Box::new(a), Box::new(b))
    }

    pub fn eff_arrow(arg: TypeATM, initial: TypeATM, result: TypeATM, fin: TypeATM) -> TypeATM {
        TypeATM::Eff(Box::new(arg), Box::new(initial), Box::new(result), Box::new(fin))
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<u32>) {
        match self {
            TypeATM::Var(v) => {
                out.insert(*v);
            }
            TypeATM::Int | TypeATM::Bool => {}
            TypeATM::List(t) => t.collect_vars(out),
            TypeATM::Pure(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            TypeATM::Eff(a, b, c, d) => {
                a.collect_vars(out);
                b.collect_vars(out);
                c.collect_vars(out);
                d.collect_vars(out);
            }
        }
    }

    pub fn vars(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub fn map_vars(&self, f: &mut impl FnMut(u32) -> TypeATM) -> TypeATM {
        match self {
            TypeATM::Var(v) => f(*v),
            TypeATM::Int => TypeATM::Int,
            TypeATM::Bool => TypeATM::Bool,
            TypeATM::List(t) => TypeATM::list(t.map_vars(f)),
            TypeATM::Pure(a, b) => TypeATM::pure_arrow(a.map_vars(f), b.map_vars(f)),
            TypeATM::Eff(a, b, c, d) => {
                TypeATM::eff_arrow(a.map_vars(f), b.map_vars(f), c.map_vars(f), d.map_vars(f))
            }
        }
    }

    /// Base types (and lists of them) are the only observable results.
    pub fn is_base(&self) -> bool {
        match self {
            TypeATM::Int | TypeATM::Bool => true,
            TypeATM::List(t) => t.is_base(),
            _ => false,
        }
    }
}

impl Judgment {
    pub fn result(&self) -> &TypeATM {
        match self {
            Judgment::Pure(t) | Judgment::Eff(t, _, _) => t,
        }
    }

    pub fn is_pure(&self) -> bool {
        matches!(self, Judgment::Pure(_))
    }

    pub fn types(&self) -> Vec<&TypeATM> {
        match self {
            Judgment::Pure(t) => alloc::vec![t],
            Judgment::Eff(t, a, b) => alloc::vec![t, a, b],
        }
    }

    pub fn map_types(&self, mut f: impl FnMut(&TypeATM) -> TypeATM) -> Judgment {
        match self {
            Judgment::Pure(t) => Judgment::Pure(f(t)),
            Judgment::Eff(t, a, b) => Judgment::Eff(f(t), f(a), f(b)),
        }
    }

    pub fn vars(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        for t in self.types() {
            t.collect_vars(&mut out);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnifyError {
    Occurs(TypeATM, TypeATM),
    Clash(TypeATM, TypeATM),
}

/// Triangular substitution over numbered type variables.
#[derive(Clone, Debug, Default)]
pub struct Subst {
    slots: Vec<Option<TypeATM>>,
}

impl Subst {
    pub fn new() -> Subst {
        Subst::default()
    }

    /// A substitution whose fresh variables start above every id in `reserved`.
    pub fn above(reserved: &BTreeSet<u32>) -> Subst {
        let n = reserved.iter().next_back().map_or(0, |v| *v as usize + 1);
        Subst { slots: alloc::vec![None; n] }
    }

    pub fn fresh(&mut self) -> TypeATM {
        self.slots.push(None);
        TypeATM::Var((self.slots.len() - 1) as u32)
    }

    fn ensure(&mut self, v: u32) {
        if self.slots.len() <= v as usize {
            self.slots.resize(v as usize + 1, None);
        }
    }

    fn binding(&self, v: u32) -> Option<&TypeATM> {
        self.slots.get(v as usize).and_then(|s| s.as_ref())
    }

    pub fn apply(&self, t: &TypeATM) -> TypeATM {
        t.map_vars(&mut |v| match self.binding(v) {
            Some(b) => self.apply(b),
            None => TypeATM::Var(v),
        })
    }

    pub fn apply_judgment(&self, j: &Judgment) -> Judgment {
        j.map_types(|t| self.apply(t))
    }

    fn shallow(&self, t: &TypeATM) -> TypeATM {
        let mut cur = t.clone();
        while let TypeATM::Var(v) = cur {
            match self.binding(v) {
                Some(b) => cur = b.clone(),
                None => break,
            }
        }
        cur
    }

    fn occurs(&self, v: u32, t: &TypeATM) -> bool {
        self.apply(t).vars().contains(&v)
    }

    pub fn unify(&mut self, a: &TypeATM, b: &TypeATM) -> Result<(), UnifyError> {
        let a = self.shallow(a);
        let b = self.shallow(b);
        match (&a, &b) {
            (TypeATM::Var(x), TypeATM::Var(y)) if x == y => Ok(()),
            (TypeATM::Var(x), t) | (t, TypeATM::Var(x)) => {
                if self.occurs(*x, t) {
                    return Err(UnifyError::Occurs(self.apply(&TypeATM::Var(*x)), self.apply(t)));
                }
                self.ensure(*x);
                self.slots[*x as usize] = Some(t.clone());
                Ok(())
            }
            (TypeATM::Int, TypeATM::Int) | (TypeATM::Bool, TypeATM::Bool) => Ok(()),
            (TypeATM::List(x), TypeATM::List(y)) => self.unify(x, y),
            (TypeATM::Pure(a1, b1), TypeATM::Pure(a2, b2)) => {
                self.unify(a1, a2)?;
                self.unify(b1, b2)
            }
            (TypeATM::Eff(a1, b1, c1, d1), TypeATM::Eff(a2, b2, c2, d2)) => {
                self.unify(a1, a2)?;
                self.unify(b1, b2)?;
                self.unify(c1, c2)?;
                self.unify(d1, d2)
            }
            _ => Err(UnifyError::Clash(self.apply(&a), self.apply(&b))),
        }
    }
}

/// One-way matching: finds `s` with `s(pattern) == target`, binding only
/// variables in `flexible`. Other variables must match themselves.
pub fn match_type(
    pattern: &TypeATM,
    target: &TypeATM,
    flexible: &BTreeSet<u32>,
    bindings: &mut BTreeMap<u32, TypeATM>,
) -> bool {
    match (pattern, target) {
        (TypeATM::Var(v), t) if flexible.contains(v) => match bindings.get(v) {
            Some(prev) => prev == t,
            None => {
                bindings.insert(*v, t.clone());
                true
            }
        },
        (TypeATM::Var(v), TypeATM::Var(w)) => v == w,
        (TypeATM::Int, TypeATM::Int) | (TypeATM::Bool, TypeATM::Bool) => true,
        (TypeATM::List(a), TypeATM::List(b)) => match_type(a, b, flexible, bindings),
        (TypeATM::Pure(a1, b1), TypeATM::Pure(a2, b2)) => {
            match_type(a1, a2, flexible, bindings) && match_type(b1, b2, flexible, bindings)
        }
        (TypeATM::Eff(a1, b1, c1, d1), TypeATM::Eff(a2, b2, c2, d2)) => {
            match_type(a1, a2, flexible, bindings)
                && match_type(b1, b2, flexible, bindings)
                && match_type(c1, c2, flexible, bindings)
                && match_type(d1, d2, flexible, bindings)
        }
        _ => false,
    }
}

/// Whether `specific` is an instance of `general`, treating every variable of
/// `general` as instantiable.
pub fn judgment_instance_of(specific: &Judgment, general: &Judgment) -> bool {
    let flexible = general.vars();
    let mut bindings = BTreeMap::new();
    match (general, specific) {
        (Judgment::Pure(g), Judgment::Pure(s)) => match_type(g, s, &flexible, &mut bindings),
        (Judgment::Eff(g1, g2, g3), Judgment::Eff(s1, s2, s3)) => {
            match_type(g1, s1, &flexible, &mut bindings)
                && match_type(g2, s2, &flexible, &mut bindings)
                && match_type(g3, s3, &flexible, &mut bindings)
        }
        _ => false,
    }
}

/// Names type variables `'a`, `'b`, ... in order of first appearance, so that
/// several types printed with the same namer share variable names.
#[derive(Default)]
pub struct TypeNamer {
    names: BTreeMap<u32, String>,
}

pub(crate) fn var_name(i: usize) -> String {
    let letter = (b'a' + (i % 26) as u8) as char;
    if i < 26 {
        alloc::format!("'{letter}")
    } else {
        alloc::format!("'{letter}{}", i / 26)
    }
}

impl TypeNamer {
    pub fn new() -> TypeNamer {
        TypeNamer::default()
    }

    /// Name of variable `v`, allocating the next letter on first use.
    pub fn var(&mut self, v: u32) -> String {
        let next = self.names.len();
        self.names.entry(v).or_insert_with(|| var_name(next)).clone()
    }

    pub fn show(&mut self, t: &TypeATM) -> String {
        let mut out = String::new();
        self.write(&mut out, t, 0);
        out
    }

    /// Levels: 0 = any, 1 = operand of an arrow, 2 = operand of `list`.
    fn write(&mut self, out: &mut String, t: &TypeATM, level: u8) {
        match t {
            TypeATM::Var(v) => {
                let n = self.var(*v);
                out.push_str(&n);
            }
            TypeATM::Int => out.push_str("int"),
            TypeATM::Bool => out.push_str("bool"),
            TypeATM::List(e) => {
                self.write(out, e, 2);
                out.push_str(" list");
            }
            TypeATM::Pure(a, b) => {
                if level > 0 {
                    out.push('(');
                }
                self.write(out, a, 1);
                out.push_str(" -> ");
                self.write(out, b, 0);
                if level > 0 {
                    out.push(')');
                }
            }
            TypeATM::Eff(a, b, c, d) => {
                out.push('(');
                self.write(out, a, 1);
                out.push('/');
                self.write(out, b, 1);
                out.push_str(" -> ");
                self.write(out, c, 1);
                out.push('/');
                self.write(out, d, 1);
                out.push(')');
            }
        }
    }

    pub fn show_judgment(&mut self, j: &Judgment) -> String {
        match j {
            Judgment::Pure(t) => self.show(t),
            Judgment::Eff(t, a, b) => {
                let mut out = String::new();
                let _ = write!(out, "{} ; {}, {}", self.show(t), self.show(a), self.show(b));
                out
            }
        }
    }
}

impl fmt::Display for TypeATM {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&TypeNamer::new().show(self))
    }
}

impl fmt::Display for Judgment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&TypeNamer::new().show_judgment(self))
    }
}
