//! Prompt-passing translations from the source calculus into the target
//! calculus.
//!
//! Every translator consumes an elaborated [`Derivation`], because the
//! clause for a pure term in effectful position depends on where the
//! inference placed its `exp` coercions. An effectful term is translated to
//! a function of two prompts: the first stands for its final answer type,
//! the second for its initial one.
//!
//! * [`TransMode::Naive`] emits those prompt abstractions literally.
//! * [`TransMode::OnePass`] applies them at translation time, so prompts are
//!   passed at run time only to source-level functions.
//! * [`TransMode::Optimized`] additionally avoids generating prompts for
//!   quasi-pure subterms (pure terms under a nest of `let`s).
//!
//! Conditionals, recursive functions and list operations are extensions.
//! A conditional threads its condition's answer types into both branches
//! like the operands of an application; `fix` is translated like `fun`;
//! list operations follow the clause for addition.

mod opt;
mod pps;
mod types;

use alloc::collections::BTreeSet;
use alloc::string::String;
use core::fmt;
use core::str::FromStr;

use crate::source::{infer_program, Derivation, InferError, Rule, TypeNamer};
use crate::syntax::{Name, SourceProgram, TargetTerm, Term};
use crate::target::{check_closed, TargetType, TargetTypeError, TargetTypeNamer};

pub use types::{translate_env, translate_judgment, translate_scheme, translate_triple, translate_type};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum TransMode {
    Naive,
    OnePass,
    #[cfg_attr(feature = "serde", serde(rename = "opt"))]
    Optimized,
}

impl TransMode {
    pub const ALL: [TransMode; 3] = [TransMode::Naive, TransMode::OnePass, TransMode::Optimized];

    pub fn name(self) -> &'static str {
        match self {
            TransMode::Naive => "naive",
            TransMode::OnePass => "onepass",
            TransMode::Optimized => "opt",
        }
    }
}

impl fmt::Display for TransMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TransMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "naive" => Ok(TransMode::Naive),
            "onepass" => Ok(TransMode::OnePass),
            "opt" => Ok(TransMode::Optimized),
            other => Err(alloc::format!("unknown mode '{other}' (expected naive, onepass or opt)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TranslateError {
    Infer(InferError),
    /// A derivation node that has no translation clause, or is malformed.
    UnsupportedNode(Rule),
    /// The translated term does not type check at all.
    TargetType(TargetTypeError),
    /// The translated term checks, but not at the translated source type.
    TypePreservationViolation { expected: String, found: String, term: TargetTerm },
}

impl fmt::Display for TranslateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TranslateError::Infer(e) => e.fmt(f),
            TranslateError::UnsupportedNode(r) => write!(f, "no translation for {r:?} node"),
            TranslateError::TargetType(e) => write!(f, "translated term is ill-typed: {e}"),
            TranslateError::TypePreservationViolation { expected, found, .. } => {
                write!(f, "type preservation violated: expected {expected}, translated term has type {found}")
            }
        }
    }
}

impl core::error::Error for TranslateError {}

impl From<InferError> for TranslateError {
    fn from(e: InferError) -> Self {
        TranslateError::Infer(e)
    }
}

pub(crate) type Res = Result<TargetTerm, TranslateError>;

/// Generator of binder names that cannot clash with the source program.
pub(crate) struct Names {
    next: usize,
    avoid: BTreeSet<Name>,
}

impl Names {
    pub(crate) fn for_term(t: &Term) -> Names {
        Names { next: 0, avoid: t.names() }
    }

    pub(crate) fn fresh(&mut self, base: &str) -> Name {
        loop {
            self.next += 1;
            let n = alloc::format!("{base}{}", self.next);
            if !self.avoid.contains(&n) {
                return n;
            }
        }
    }
}

pub(crate) fn var(n: &str) -> TargetTerm {
    TargetTerm::var(n)
}

/// `e p q`
pub(crate) fn app2(e: TargetTerm, p: &str, q: &str) -> TargetTerm {
    TargetTerm::app(TargetTerm::app(e, var(p)), var(q))
}

pub(crate) fn child(d: &Derivation, i: usize) -> Result<&Derivation, TranslateError> {
    d.children.get(i).ok_or(TranslateError::UnsupportedNode(d.rule))
}

/// `shift[p] k -> reset[q] (k v)`: a pure value in effectful position.
pub(crate) fn exp_clause(names: &mut Names, p: &str, q: &str, v: TargetTerm) -> TargetTerm {
    let k = names.fresh("k");
    TargetTerm::shift(var(p), &k, TargetTerm::reset(var(q), TargetTerm::app(var(&k), v)))
}

/// `newp p in newp q in reset[p] ((fun y -> shift[q] _ -> y) body)`, where
/// `body` was translated with the prompts `p` and `q`.
pub(crate) fn reset_clause(names: &mut Names, p: &str, q: &str, body: TargetTerm) -> TargetTerm {
    let y = names.fresh("y");
    let guard = TargetTerm::lam(&y, TargetTerm::shift(var(q), "_", var(&y)));
    let reset = TargetTerm::reset(var(p), TargetTerm::app(guard, body));
    TargetTerm::newp(p, TargetTerm::newp(q, reset))
}

/// `shift[p] k' -> (fun k -> body) (fun y -> reset[q] ((fun _ -> omega) (k' y)))`.
///
/// The captured continuation contains the dangling `shift[q]` inserted by
/// the reset clause; wrapping every use in `reset[q]` keeps it delimited.
pub(crate) fn shift_clause(names: &mut Names, p: &str, q: &str, k: &str, body: TargetTerm) -> TargetTerm {
    let k2 = names.fresh("k");
    let y = names.fresh("y");
    let guard = TargetTerm::app(TargetTerm::lam("_", TargetTerm::Omega), TargetTerm::app(var(&k2), var(&y)));
    let detox = TargetTerm::lam(&y, TargetTerm::reset(var(q), guard));
    TargetTerm::shift(var(p), &k2, TargetTerm::app(TargetTerm::lam(k, body), detox))
}

/// Translates a closed derivation with the chosen translator.
///
/// A pure root yields the pure translation. An effectful root yields a
/// function of two prompts, except that the optimized translation gives
/// quasi-pure roots their plain translation.
pub fn translate(d: &Derivation, mode: TransMode) -> Res {
    match mode {
        TransMode::Naive => pps::translate(d, pps::Layer::Dynamic),
        TransMode::OnePass => pps::translate(d, pps::Layer::Static),
        TransMode::Optimized => opt::translate(d),
    }
}

pub fn translate_naive(d: &Derivation) -> Res {
    translate(d, TransMode::Naive)
}

pub fn translate_onepass(d: &Derivation) -> Res {
    translate(d, TransMode::OnePass)
}

pub fn translate_opt(d: &Derivation) -> Res {
    translate(d, TransMode::Optimized)
}

/// The type the translation of `d` must have.
pub fn expected_target_type(d: &Derivation, mode: TransMode) -> TargetType {
    if mode == TransMode::Optimized && d.is_qpure() {
        translate_type(d.judgment.result())
    } else {
        translate_judgment(&d.judgment)
    }
}

/// Checks that `term` has exactly the translated type of `d`, up to
/// renaming of type variables.
pub fn check_preservation(d: &Derivation, mode: TransMode, term: &TargetTerm) -> Result<TargetType, TranslateError> {
    let found = check_closed(term).map_err(TranslateError::TargetType)?;
    let expected = expected_target_type(d, mode);
    if found.equal_up_to_renaming(&expected) {
        Ok(found)
    } else {
        let mut n = TargetTypeNamer::new();
        let expected = n.show(&expected);
        let found = TargetTypeNamer::new().show(&found);
        Err(TranslateError::TypePreservationViolation { expected, found, term: term.clone() })
    }
}

/// Infers, translates and re-checks a program; the returned type is the
/// checker's type for the translated term.
pub fn typed_translate(program: &SourceProgram, mode: TransMode) -> Result<(TargetTerm, TargetType), TranslateError> {
    let d = infer_program(program)?;
    translate_checked(&d, mode)
}

/// Translates an already inferred derivation and re-checks the result.
pub fn translate_checked(d: &Derivation, mode: TransMode) -> Result<(TargetTerm, TargetType), TranslateError> {
    let term = translate(d, mode)?;
    let ty = check_preservation(d, mode, &term)?;
    Ok((term, ty))
}

/// Renders a source judgment the way the checker renders target types.
pub fn show_source_judgment(d: &Derivation) -> String {
    TypeNamer::new().show_judgment(&d.judgment)
}
