use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::syntax::{Literal, TargetTerm, Term};

/// Base-type result of a run, comparable across the two calculi.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Value {
    Int(i64),
    Bool(bool),
    List(Vec<Value>),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(n) => write!(f, "{n}"),
            Value::Bool(b) => write!(f, "{b}"),
            Value::List(items) => {
                f.write_str("[")?;
                for (i, v) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str("; ")?;
                    }
                    write!(f, "{v}")?;
                }
                f.write_str("]")
            }
        }
    }
}

fn literal(l: &Literal) -> Value {
    match l {
        Literal::Int(n) => Value::Int(*n),
        Literal::Bool(b) => Value::Bool(*b),
        Literal::IntList(ns) => Value::List(ns.iter().map(|n| Value::Int(*n)).collect()),
    }
}

impl Value {
    /// Reads a source value; functions have no observation.
    pub fn from_source(t: &Term) -> Option<Value> {
        match t {
            Term::Const(l) => Some(literal(l)),
            Term::Nil => Some(Value::List(Vec::new())),
            Term::Cons(h, tl) => {
                let h = Value::from_source(h)?;
                match Value::from_source(tl)? {
                    Value::List(mut rest) => {
                        rest.insert(0, h);
                        Some(Value::List(rest))
                    }
                    _ => None,
                }
            }
            _ => None,
        }
    }

    /// Reads a target value; functions and prompts have no observation.
    pub fn from_target(t: &TargetTerm) -> Option<Value> {
        match t {
            TargetTerm::Const(l) => Some(literal(l)),
            TargetTerm::Nil => Some(Value::List(Vec::new())),
            TargetTerm::Cons(h, tl) => {
                let h = Value::from_target(h)?;
                match Value::from_target(tl)? {
                    Value::List(mut rest) => {
                        rest.insert(0, h);
                        Some(Value::List(rest))
                    }
                    _ => None,
                }
            }
            _ => None,
        }
    }
}

/// What one side of a differential run produced.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", content = "detail", rename_all = "snake_case"))]
pub enum Observation {
    Value(Value),
    /// A function or prompt value.
    Opaque,
    Stuck(String),
    OutOfFuel,
    /// The program was rejected before running (typing or translation).
    Rejected(String),
}

impl fmt::Display for Observation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Observation::Value(v) => write!(f, "{v}"),
            Observation::Opaque => f.write_str("<fun>"),
            Observation::Stuck(s) => write!(f, "stuck: {s}"),
            Observation::OutOfFuel => f.write_str("out of fuel"),
            Observation::Rejected(s) => write!(f, "rejected: {s}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use crate::syntax::parse_source;

    #[test]
    fn nested_lists_print_like_ocaml() {
        let t = parse_source("[1] :: (1 :: [2]) :: [[1;2;3]]").unwrap();
        let v = Value::from_source(&t).unwrap();
        assert_eq!(v.to_string(), "[[1]; [1; 2]; [1; 2; 3]]");
    }

    #[test]
    fn mixed_list_representations() {
        let t = parse_source("1 :: 2 :: [3]").unwrap();
        assert_eq!(Value::from_source(&t).unwrap().to_string(), "[1; 2; 3]");
        assert_eq!(Value::from_source(&Term::Nil).unwrap().to_string(), "[]");
        assert_eq!(Value::from_source(&parse_source("fun x -> x").unwrap()), None);
    }
}
