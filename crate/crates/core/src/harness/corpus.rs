use alloc::string::String;
use alloc::vec::Vec;

use crate::syntax::{parse_program, ParseError, SourceProgram};

/// A named program with the observation it must produce and, where they
/// are pinned, the prompts each translation allocates when it runs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub text: &'static str,
    pub expected: Option<String>,
    /// `(naive, onepass, opt)`
    pub prompts: Option<(u64, u64, u64)>,
}

impl CorpusEntry {
    pub fn program(&self) -> Result<SourceProgram, ParseError> {
        parse_program(self.text)
    }
}

macro_rules! files {
    ($($name:literal)*) => {
        &[$(($name, include_str!(concat!("../../corpus/", $name, ".atm")))),*]
    };
}

const FILES: &[(&str, &str)] = files!(
    "append"
    "apply_lambda"
    "discard"
    "double"
    "e_1"
    "e_12"
    "e_2"
    "e_3"
    "e_5"
    "e_8"
    "fix_applied"
    "head_of_thrown"
    "inner_reset_delimits"
    "int_to_list_answer"
    "length"
    "let_nest"
    "let_nest_app"
    "let_nest_fun"
    "let_nest_sum"
    "let_polymorphism"
    "list_continuation"
    "nested_resets"
    "null_cons"
    "null_nil"
    "prefix"
    "reset_five_plus_shift"
    "returned_continuation"
    "right_to_left"
    "shift_in_branch"
    "shift_in_condition"
    "shifting_function"
    "sum"
    "tail_pure"
    "twice"
    "two_resets"
    "two_shifts"
);

/// Reads `(* key: value *)` header lines.
fn header<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    text.lines().find_map(|l| {
        let l = l.trim().strip_prefix("(*")?.strip_suffix("*)")?.trim();
        l.strip_prefix(key)?.strip_prefix(':').map(str::trim)
    })
}

fn prompts(fields: &str) -> Option<(u64, u64, u64)> {
    let mut counts = [None; 3];
    for field in fields.split_whitespace() {
        let (mode, n) = field.split_once('=')?;
        let slot = match mode {
            "naive" => 0,
            "onepass" => 1,
            "opt" => 2,
            _ => return None,
        };
        counts[slot] = Some(n.parse().ok()?);
    }
    Some((counts[0]?, counts[1]?, counts[2]?))
}

/// The bundled programs, in name order.
pub fn corpus() -> Vec<CorpusEntry> {
    let mut entries: Vec<CorpusEntry> = FILES
        .iter()
        .map(|(name, text)| CorpusEntry {
            name,
            text,
            expected: header(text, "expect").map(String::from),
            prompts: header(text, "prompts").and_then(prompts),
        })
        .collect();
    entries.sort_by_key(|e| e.name);
    entries
}
