//! The source calculus: type inference with explicit `exp` coercions and a
//! substitution-based small-step evaluator.

mod eval;
mod infer;
mod types;

pub use eval::{eval_source, step_source, subst, subst_continuation, EvalError, Step, StuckReason};
pub use infer::{check_derivation, infer, infer_program, validate, BadNode, Derivation, InferError, Rule};
pub use types::{
    judgment_instance_of, match_type, EnvEntry, Judgment, Subst, TypeATM, TypeEnv, TypeNamer, TypeScheme,
    UnifyError,
};
