//! Differential testing of the translations against the source evaluator,
//! the program corpus, exhaustive small-program enumeration and the prompt
//! count report for the `e_n` family.

mod corpus;
mod enumerate;
mod report;
mod value;

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use core::fmt;

pub use corpus::{corpus, CorpusEntry};
pub use enumerate::enumerate_programs;
pub use report::{e_n, prompt_report, PromptRow};
pub use value::{Observation, Value};

use crate::source::{eval_source, infer_program, Derivation, EvalError, Judgment, TypeATM};
use crate::syntax::{SourceProgram, TargetTerm, Term};
use crate::target::{eval_target, RunStats, TargetEvalError};
use crate::translate::{check_preservation, translate, TransMode, TranslateError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Status {
    Agree,
    Disagree,
    SourceStuck,
    TargetStuck,
    Fuel,
    /// The program could not be typed, or its translation could not be.
    Rejected,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Agree => "agree",
            Status::Disagree => "disagree",
            Status::SourceStuck => "source-stuck",
            Status::TargetStuck => "target-stuck",
            Status::Fuel => "fuel",
            Status::Rejected => "rejected",
        })
    }
}

/// Outcome of running one program directly and through one translation.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Verdict {
    pub program: String,
    pub mode: TransMode,
    pub source: Observation,
    pub target: Observation,
    pub status: Status,
    /// Statistics of the target run, when there was one.
    pub stats: Option<RunStats>,
}

impl Verdict {
    pub fn agrees(&self) -> bool {
        self.status == Status::Agree
    }

    /// True when the failure is the translator's fault rather than the input's.
    pub fn is_internal_failure(&self) -> bool {
        match self.status {
            Status::Agree | Status::SourceStuck | Status::Fuel => false,
            Status::Rejected => !matches!(self.source, Observation::Rejected(_)),
            Status::Disagree | Status::TargetStuck => true,
        }
    }
}

/// Infers a program and, if its root is effectful, closes it with a reset
/// so that both sides can run it. The returned term is what was inferred.
pub fn close_program(program: &SourceProgram) -> Result<(Term, Derivation), String> {
    let d = infer_program(program).map_err(|e| e.to_string())?;
    if d.judgment.is_pure() {
        return Ok((program.term.clone(), d));
    }
    let closed = Term::Reset(Box::new(program.term.clone()));
    let d = infer_program(&SourceProgram { term: closed.clone(), expected_type: None }).map_err(|e| e.to_string())?;
    Ok((closed, d))
}

fn observable(j: &Judgment) -> bool {
    match j.result() {
        TypeATM::Var(_) => true,
        t => t.is_base(),
    }
}

/// Runs `program` with the source evaluator and through `mode`'s
/// translation, and compares the two observations.
pub fn differential_check(id: &str, program: &SourceProgram, mode: TransMode, fuel: u64) -> Verdict {
    differential_check_with(id, program, mode, fuel, &translate)
}

/// [`differential_check`] with a caller-supplied translator; the result is
/// still held to the type `mode` promises.
pub fn differential_check_with(
    id: &str,
    program: &SourceProgram,
    mode: TransMode,
    fuel: u64,
    translator: &dyn Fn(&Derivation, TransMode) -> Result<TargetTerm, TranslateError>,
) -> Verdict {
    let verdict = |source, target, status, stats| Verdict {
        program: id.to_string(),
        mode,
        source,
        target,
        status,
        stats,
    };
    let (term, d) = match close_program(program) {
        Ok(x) => x,
        Err(e) => {
            let skipped = Observation::Rejected(String::from("not translated"));
            return verdict(Observation::Rejected(e), skipped, Status::Rejected, None);
        }
    };
    if !observable(&d.judgment) {
        let msg = alloc::format!("result type {} is not observable", d.judgment.result());
        return verdict(Observation::Rejected(msg), Observation::Opaque, Status::Rejected, None);
    }

    let source = match eval_source(&term, fuel) {
        Ok((v, _)) => Value::from_source(&v).map_or(Observation::Opaque, Observation::Value),
        Err(EvalError::Stuck { reason, .. }) => Observation::Stuck(reason.to_string()),
        Err(EvalError::OutOfFuel { .. }) => Observation::OutOfFuel,
    };

    let translated = translator(&d, mode).and_then(|t| check_preservation(&d, mode, &t).map(|_| t));
    let target_term = match translated {
        Ok(t) => t,
        Err(e) => return verdict(source, Observation::Rejected(e.to_string()), Status::Rejected, None),
    };
    let (target, stats) = match eval_target(&target_term, fuel) {
        Ok((v, stats)) => (Value::from_target(&v).map_or(Observation::Opaque, Observation::Value), Some(stats)),
        Err(TargetEvalError::Stuck { reason, stats, .. }) => (Observation::Stuck(reason.to_string()), Some(stats)),
        Err(TargetEvalError::OutOfFuel { stats }) => (Observation::OutOfFuel, Some(stats)),
    };

    let status = match (&source, &target) {
        (Observation::OutOfFuel, _) | (_, Observation::OutOfFuel) => Status::Fuel,
        (Observation::Stuck(_), _) => Status::SourceStuck,
        (_, Observation::Stuck(_)) => Status::TargetStuck,
        (Observation::Value(a), Observation::Value(b)) if a == b => Status::Agree,
        _ => Status::Disagree,
    };
    verdict(source, target, status, stats)
}
