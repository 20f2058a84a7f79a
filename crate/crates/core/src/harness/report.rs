use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::ops::RangeInclusive;

use crate::syntax::{SourceProgram, Term};
use crate::target::eval_target;
use crate::translate::{typed_translate, TransMode};

/// `1 + (2 + ... + (n + shift k -> fun x -> throw k x))`, of type
/// `int; int, (int/'a -> int/'a)`.
pub fn e_n(n: u32) -> Term {
    assert!(n >= 1, "e_n needs n >= 1");
    let capture = Term::shift("k", Term::lam("x", Term::throw("k", Term::var("x"))));
    (1..=n).rev().fold(capture, |acc, i| Term::add(Term::int(i64::from(i)), acc))
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PromptRow {
    pub n: u32,
    pub mode: TransMode,
    pub prompts_generated: u64,
    pub term_size: usize,
    pub steps: u64,
}

/// Translates `reset e_n` in every mode for each `n` and runs the result.
pub fn prompt_report(ns: RangeInclusive<u32>) -> Result<Vec<PromptRow>, String> {
    let mut rows = Vec::new();
    for n in ns {
        let program = SourceProgram { term: Term::reset(e_n(n)), expected_type: None };
        for mode in TransMode::ALL {
            let (term, _) = typed_translate(&program, mode).map_err(|e| e.to_string())?;
            let (_, stats) = eval_target(&term, 10_000_000).map_err(|e| e.to_string())?;
            rows.push(PromptRow {
                n,
                mode,
                prompts_generated: stats.prompts_generated,
                term_size: term.size(),
                steps: stats.steps,
            });
        }
    }
    Ok(rows)
}
