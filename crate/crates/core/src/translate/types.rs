use crate::source::{EnvEntry, Judgment, TypeATM, TypeEnv, TypeScheme};
use crate::target::{TargetEnv, TargetScheme, TargetType};

/// Translates a source type. Effectful arrows become functions that take
/// the two prompts standing for their final and initial answer types.
pub fn translate_type(t: &TypeATM) -> TargetType {
    match t {
        TypeATM::Var(v) => TargetType::Var(*v),
        TypeATM::Int => TargetType::Int,
        TypeATM::Bool => TargetType::Bool,
        TypeATM::List(e) => TargetType::list(translate_type(e)),
        TypeATM::Pure(a, b) => TargetType::arrow(translate_type(a), translate_type(b)),
        TypeATM::Eff(s, a, r, b) => TargetType::arrow(translate_type(s), translate_triple(r, a, b)),
    }
}

/// `τ; α, β` becomes `β prompt -> α prompt -> τ`.
pub fn translate_triple(t: &TypeATM, initial: &TypeATM, fin: &TypeATM) -> TargetType {
    TargetType::arrow(
        TargetType::prompt(translate_type(fin)),
        TargetType::arrow(TargetType::prompt(translate_type(initial)), translate_type(t)),
    )
}

/// Pure judgments translate their type, effectful ones their triple.
pub fn translate_judgment(j: &Judgment) -> TargetType {
    match j {
        Judgment::Pure(t) => translate_type(t),
        Judgment::Eff(t, a, b) => translate_triple(t, a, b),
    }
}

pub fn translate_scheme(s: &TypeScheme) -> TargetScheme {
    TargetScheme { bound_vars: s.bound_vars.clone(), body: translate_type(&s.body) }
}

pub fn translate_env(env: &TypeEnv) -> TargetEnv {
    let mut out = TargetEnv::new();
    for (name, entry) in env.entries() {
        let scheme = match entry {
            EnvEntry::Ordinary(s) => translate_scheme(s),
            EnvEntry::Continuation(a, b) => {
                TargetScheme::mono(TargetType::arrow(translate_type(a), translate_type(b)))
            }
        };
        out.push(name.clone(), scheme);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn base_types_are_unchanged() {
        assert_eq!(translate_type(&TypeATM::Int), TargetType::Int);
        assert_eq!(translate_type(&TypeATM::Bool), TargetType::Bool);
    }

    #[test]
    fn triple() {
        let t = translate_triple(&TypeATM::Int, &TypeATM::Int, &TypeATM::Int);
        let p = TargetType::prompt(TargetType::Int);
        assert_eq!(t, TargetType::arrow(p.clone(), TargetType::arrow(p, TargetType::Int)));
    }

    #[test]
    fn effectful_arrow() {
        let f = TypeATM::eff_arrow(TypeATM::Int, TypeATM::Int, TypeATM::Int, TypeATM::Int);
        assert_eq!(translate_type(&f).to_string(), "int -> int prompt -> int prompt -> int");
    }
}
