use proptest::prelude::*;

use promptpass_core::syntax::{
    parse_source, parse_target, pretty_source, pretty_target, Literal, PromptId, TargetTerm, Term,
};

fn name() -> impl Strategy<Value = String> {
    prop::sample::select(vec!["x", "y", "f", "k", "acc"]).prop_map(String::from)
}

fn literal() -> impl Strategy<Value = Literal> {
    prop_oneof![
        (0i64..1000).prop_map(Literal::Int),
        any::<bool>().prop_map(Literal::Bool),
        prop::collection::vec(0i64..50, 1..4).prop_map(Literal::IntList),
    ]
}

fn source_term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![literal().prop_map(Term::Const), name().prop_map(Term::Var), Just(Term::Nil)];
    leaf.prop_recursive(5, 48, 3, |e| {
        let b = |t: Term| Box::new(t);
        prop_oneof![
            (name(), e.clone()).prop_map(move |(x, t)| Term::Lam(x, b(t))),
            (e.clone(), e.clone()).prop_map(move |(f, a)| Term::App(b(f), b(a))),
            (name(), e.clone(), e.clone()).prop_map(move |(x, v, t)| Term::Let(x, b(v), b(t))),
            (name(), e.clone()).prop_map(move |(k, t)| Term::Shift(k, b(t))),
            (name(), e.clone()).prop_map(move |(k, t)| Term::Throw(k, b(t))),
            e.clone().prop_map(move |t| Term::Reset(b(t))),
            (e.clone(), e.clone()).prop_map(move |(x, y)| Term::Add(b(x), b(y))),
            (e.clone(), e.clone(), e.clone()).prop_map(move |(c, x, y)| Term::If(b(c), b(x), b(y))),
            (name(), name(), e.clone()).prop_map(move |(f, x, t)| Term::Fix(f, x, b(t))),
            (e.clone(), e.clone()).prop_map(move |(x, y)| Term::Cons(b(x), b(y))),
            e.clone().prop_map(move |t| Term::Head(b(t))),
            e.clone().prop_map(move |t| Term::Tail(b(t))),
            e.clone().prop_map(move |t| Term::IsNil(b(t))),
        ]
    })
}

/// Makes a random term acceptable to the parser: `throw` targets must be
/// bound by an enclosing `shift`, and `let` binds values only.
fn repair(t: Term, conts: &mut Vec<String>) -> Term {
    let b = Box::new;
    let under = |x: &str, conts: &mut Vec<String>, body: Term, is_cont: bool| {
        let saved = conts.clone();
        conts.retain(|k| k != x);
        if is_cont {
            conts.push(x.to_string());
        }
        let body = repair(body, conts);
        *conts = saved;
        body
    };
    match t {
        Term::Lam(x, e) => {
            let e = under(&x, conts, *e, false);
            Term::Lam(x, b(e))
        }
        Term::Fix(f, x, e) => {
            let saved = conts.clone();
            conts.retain(|k| k != &f);
            let e = under(&x, conts, *e, false);
            *conts = saved;
            Term::Fix(f, x, b(e))
        }
        Term::Let(x, v, e) => {
            let v = repair(*v, conts);
            let v = if v.is_value() { v } else { Term::Lam("y".into(), b(v)) };
            let e = under(&x, conts, *e, false);
            Term::Let(x, b(v), b(e))
        }
        Term::Shift(k, e) => {
            let e = under(&k, conts, *e, true);
            Term::Shift(k, b(e))
        }
        Term::Throw(k, e) => {
            let e = repair(*e, conts);
            if conts.contains(&k) {
                Term::Throw(k, b(e))
            } else {
                Term::Shift(k.clone(), b(Term::Throw(k, b(e))))
            }
        }
        Term::App(f, a) => Term::App(b(repair(*f, conts)), b(repair(*a, conts))),
        Term::Reset(e) => Term::Reset(b(repair(*e, conts))),
        Term::Add(x, y) => Term::Add(b(repair(*x, conts)), b(repair(*y, conts))),
        Term::Cons(x, y) => Term::Cons(b(repair(*x, conts)), b(repair(*y, conts))),
        Term::If(c, x, y) => Term::If(b(repair(*c, conts)), b(repair(*x, conts)), b(repair(*y, conts))),
        Term::Head(e) => Term::Head(b(repair(*e, conts))),
        Term::Tail(e) => Term::Tail(b(repair(*e, conts))),
        Term::IsNil(e) => Term::IsNil(b(repair(*e, conts))),
        leaf => leaf,
    }
}

fn repair_target(t: TargetTerm) -> TargetTerm {
    use TargetTerm as T;
    let go = |e: Box<TargetTerm>| Box::new(repair_target(*e));
    match t {
        T::Let(x, v, e) => {
            let v = repair_target(*v);
            let v = if v.is_value() { v } else { T::Lam("y".into(), Box::new(v)) };
            T::Let(x, Box::new(v), go(e))
        }
        T::Lam(x, e) => T::Lam(x, go(e)),
        T::App(f, a) => T::App(go(f), go(a)),
        T::ShiftP(p, k, e) => T::ShiftP(p, k, go(e)),
        T::ResetP(p, e) => T::ResetP(p, go(e)),
        T::NewPrompt(x, e) => T::NewPrompt(x, go(e)),
        T::Add(x, y) => T::Add(go(x), go(y)),
        T::Cons(x, y) => T::Cons(go(x), go(y)),
        T::If(c, x, y) => T::If(go(c), go(x), go(y)),
        T::Fix(f, x, e) => T::Fix(f, x, go(e)),
        T::Head(e) => T::Head(go(e)),
        T::Tail(e) => T::Tail(go(e)),
        T::IsNil(e) => T::IsNil(go(e)),
        leaf => leaf,
    }
}

fn prompt() -> impl Strategy<Value = TargetTerm> {
    prop_oneof![name().prop_map(TargetTerm::Var), (0u32..5).prop_map(|n| TargetTerm::PromptConst(PromptId(n)))]
}

fn target_term() -> impl Strategy<Value = TargetTerm> {
    let leaf = prop_oneof![
        literal().prop_map(TargetTerm::Const),
        name().prop_map(TargetTerm::Var),
        Just(TargetTerm::Nil),
        Just(TargetTerm::Omega),
        (0u32..5).prop_map(|n| TargetTerm::PromptConst(PromptId(n))),
    ];
    leaf.prop_recursive(5, 48, 3, |e| {
        let b = |t: TargetTerm| Box::new(t);
        prop_oneof![
            (name(), e.clone()).prop_map(move |(x, t)| TargetTerm::Lam(x, b(t))),
            (e.clone(), e.clone()).prop_map(move |(f, a)| TargetTerm::App(b(f), b(a))),
            (prompt(), name(), e.clone()).prop_map(move |(p, k, t)| TargetTerm::ShiftP(b(p), k, b(t))),
            (prompt(), e.clone()).prop_map(move |(p, t)| TargetTerm::ResetP(b(p), b(t))),
            (name(), e.clone()).prop_map(move |(x, t)| TargetTerm::NewPrompt(x, b(t))),
            (name(), e.clone(), e.clone()).prop_map(move |(x, v, t)| TargetTerm::Let(x, b(v), b(t))),
            (e.clone(), e.clone()).prop_map(move |(x, y)| TargetTerm::Add(b(x), b(y))),
            (e.clone(), e.clone(), e.clone()).prop_map(move |(c, x, y)| TargetTerm::If(b(c), b(x), b(y))),
            (name(), name(), e.clone()).prop_map(move |(f, x, t)| TargetTerm::Fix(f, x, b(t))),
            (e.clone(), e.clone()).prop_map(move |(x, y)| TargetTerm::Cons(b(x), b(y))),
            e.clone().prop_map(move |t| TargetTerm::Head(b(t))),
            e.clone().prop_map(move |t| TargetTerm::Tail(b(t))),
            e.clone().prop_map(move |t| TargetTerm::IsNil(b(t))),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn source_pretty_parses_back(t in source_term().prop_map(|t| repair(t, &mut Vec::new()))) {
        let text = pretty_source(&t);
        let back = parse_source(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert_eq!(back, t, "{}", text);
    }

    #[test]
    fn target_pretty_parses_back(t in target_term().prop_map(repair_target)) {
        let text = pretty_target(&t);
        let back = parse_target(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert_eq!(back, t, "{}", text);
    }
}
