//! Acceptance gate. Prints one PASS or FAIL line per criterion and exits
//! nonzero if any criterion fails. All comparisons are exact.

use std::path::PathBuf;
use std::process::{Command, ExitCode};

use rayon::prelude::*;

use promptpass_core::harness::{
    close_program, corpus, differential_check, enumerate_programs, prompt_report, Observation, PromptRow, Status,
    Value, Verdict,
};
use promptpass_core::source::{infer_program, judgment_instance_of, step_source, Derivation, Rule, Step};
use promptpass_core::syntax::{alpha_eq, parse_program, parse_target, Literal, SourceProgram, TargetTerm, Term};
use promptpass_core::target::{eval_target, subst_target};
use promptpass_core::translate::{translate, typed_translate, TransMode, TranslateError};

const FUEL: u64 = 1_000_000;
const ENUMERATION_DEPTH: usize = 4;
const E_N_MAX: u32 = 50;
const MIN_CORPUS: usize = 30;

type Check = Result<String, String>;

fn corpus_file(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/corpus").join(format!("{name}.atm"))
}

fn cli(args: &[&str]) -> Result<String, String> {
    let o = Command::new(env!("CARGO_BIN_EXE_promptpass")).args(args).output().map_err(|e| e.to_string())?;
    if !o.status.success() {
        return Err(format!("{args:?} exited with {}", o.status));
    }
    String::from_utf8(o.stdout).map_err(|e| e.to_string())
}

fn golden_outputs() -> Check {
    for (name, expected) in [("append", "[1; 2; 3; 4; 5; 6]"), ("prefix", "[[1]; [1; 2]; [1; 2; 3]]")] {
        let file = corpus_file(name);
        let file = file.to_str().unwrap();
        let direct = cli(&["run", file])?;
        if direct.trim_end() != expected {
            return Err(format!("run {name}: {direct}"));
        }
        let records = cli(&["compare", "--format", "records", file])?;
        let mut modes = 0;
        for line in records.lines() {
            let v: serde_json::Value = serde_json::from_str(line).map_err(|e| e.to_string())?;
            let value: Value = serde_json::from_value(v["target"]["detail"].clone()).map_err(|e| e.to_string())?;
            if v["status"] != "Agree" || value.to_string() != expected {
                return Err(format!("compare {name}: {line}"));
            }
            modes += 1;
        }
        if modes != 3 {
            return Err(format!("compare {name}: {modes} modes"));
        }
    }
    Ok("append and prefix exact under run and all three translations".into())
}

fn worked_example() -> Check {
    let program = parse_program("reset (5 + shift k -> fun x -> throw k x)").unwrap();
    let harness = parse_target("newp a in newp b in reset[a] ((fun y -> shift[b] _ -> y) (f a b))").unwrap();
    for mode in TransMode::ALL {
        let (t, _) = typed_translate(&program, mode).map_err(|e| e.to_string())?;
        let probe = subst_target(&harness, "f", &TargetTerm::app(t, TargetTerm::Const(Literal::Int(9))));
        let (v, _) = eval_target(&probe, FUEL).map_err(|e| format!("{mode}: {e}"))?;
        if v != TargetTerm::Const(Literal::Int(14)) {
            return Err(format!("{mode}: {v}"));
        }
    }
    Ok("probe with 9 gives 14 in every mode".into())
}

fn prompt_counts(rows: &[PromptRow]) -> Check {
    for r in rows {
        let want = match r.mode {
            TransMode::Naive | TransMode::OnePass => u64::from(r.n) + 2,
            TransMode::Optimized => 2,
        };
        if r.prompts_generated != want {
            return Err(format!("n={} {}: {} prompts, expected {want}", r.n, r.mode, r.prompts_generated));
        }
    }
    Ok(format!("n+2 / n+2 / 2 for n = 1..{E_N_MAX}"))
}

fn size_ordering(rows: &[PromptRow]) -> Check {
    for n in 1..=E_N_MAX {
        let size = |m| rows.iter().find(|r| r.n == n && r.mode == m).map(|r| r.term_size).unwrap();
        let (naive, one, opt) = (size(TransMode::Naive), size(TransMode::OnePass), size(TransMode::Optimized));
        if !(opt <= one && one <= naive) {
            return Err(format!("n={n}: opt {opt}, onepass {one}, naive {naive}"));
        }
    }
    Ok(format!("opt <= onepass <= naive for n = 1..{E_N_MAX}"))
}

fn type_preservation(programs: &[(String, SourceProgram)], verdicts: &[Verdict]) -> Check {
    let names: Vec<&str> = corpus().iter().map(|e| e.name).collect();
    for required in ["append", "prefix", "e_1", "e_3", "let_nest", "let_nest_fun"] {
        if !names.contains(&required) {
            return Err(format!("corpus lacks {required}"));
        }
    }
    if names.len() < MIN_CORPUS {
        return Err(format!("corpus has {} programs", names.len()));
    }
    // Corpus programs as written, before any closing reset.
    for e in corpus() {
        let p = e.program().unwrap();
        for mode in TransMode::ALL {
            if let Err(err) = typed_translate(&p, mode) {
                return Err(format!("{} [{mode}]: {err}", e.name));
            }
        }
    }
    // Every differential run re-checks the translation it executes.
    if let Some(v) = verdicts.iter().find(|v| matches!(v.target, Observation::Rejected(_))) {
        return Err(format!("{} [{}]: {}", v.program, v.mode, v.target));
    }
    let violations = programs
        .par_iter()
        .flat_map(|(name, p)| {
            TransMode::ALL.par_iter().filter_map(move |&m| match typed_translate(p, m) {
                Err(e @ TranslateError::TypePreservationViolation { .. }) => Some(format!("{name} [{m}]: {e}")),
                _ => None,
            })
        })
        .collect::<Vec<_>>();
    if let Some(v) = violations.first() {
        return Err(v.clone());
    }
    Ok(format!("{} corpus and enumerated programs, 3 modes, 0 violations", programs.len()))
}

fn semantic_agreement(verdicts: &[Verdict]) -> Check {
    let bad: Vec<&Verdict> = verdicts.iter().filter(|v| v.status != Status::Agree).collect();
    match bad.first() {
        None => Ok(format!("{} checks agree", verdicts.len())),
        Some(v) => Err(format!("{} disagreements, first {} [{}]: {} vs {}", bad.len(), v.program, v.mode, v.source, v.target)),
    }
}

fn closed_corpus() -> Vec<(&'static str, Derivation)> {
    corpus().into_iter().map(|e| (e.name, close_program(&e.program().unwrap()).unwrap().1)).collect()
}

fn subject_reduction() -> Check {
    let mut steps_checked = 0;
    for (name, d) in closed_corpus() {
        let mut term: Term = d.subject.clone();
        loop {
            match step_source(&term) {
                Step::Value => break,
                Step::Stuck(r) => return Err(format!("{name}: stuck: {r}")),
                Step::Next(next) => term = next,
            }
            let again = infer_program(&SourceProgram { term: term.clone(), expected_type: None })
                .map_err(|e| format!("{name}: {e}"))?;
            if !judgment_instance_of(&d.judgment, &again.judgment) {
                return Err(format!("{name}: {} became {}", d.judgment, again.judgment));
            }
            steps_checked += 1;
        }
    }
    Ok(format!("{steps_checked} reduction steps preserve the judgment"))
}

fn reduce_prompt_redexes(t: &TargetTerm) -> TargetTerm {
    use TargetTerm as T;
    let go = |e: &TargetTerm| Box::new(reduce_prompt_redexes(e));
    let t = match t {
        T::Lam(x, b) => T::Lam(x.clone(), go(b)),
        T::App(f, a) => T::App(go(f), go(a)),
        T::ShiftP(p, k, b) => T::ShiftP(go(p), k.clone(), go(b)),
        T::ResetP(p, b) => T::ResetP(go(p), go(b)),
        T::NewPrompt(x, b) => T::NewPrompt(x.clone(), go(b)),
        T::Let(x, v, b) => T::Let(x.clone(), go(v), go(b)),
        T::Add(a, b) => T::Add(go(a), go(b)),
        T::If(c, a, b) => T::If(go(c), go(a), go(b)),
        T::Fix(f, x, b) => T::Fix(f.clone(), x.clone(), go(b)),
        T::Cons(a, b) => T::Cons(go(a), go(b)),
        T::Head(a) => T::Head(go(a)),
        T::Tail(a) => T::Tail(go(a)),
        T::IsNil(a) => T::IsNil(go(a)),
        other => other.clone(),
    };
    match &t {
        T::App(f, a) => match (&**f, &**a) {
            (T::Lam(x, b), T::Var(_)) => reduce_prompt_redexes(&subst_target(b, x, a)),
            _ => t,
        },
        _ => t,
    }
}

fn is_prompt_name(n: &str) -> bool {
    n.len() > 1 && n.starts_with(['p', 'q', 'r', 's']) && n[1..].chars().all(|c| c.is_ascii_digit())
}

fn onepass_residual() -> Check {
    for (name, d) in closed_corpus() {
        let naive = translate(&d, TransMode::Naive).map_err(|e| e.to_string())?;
        let one = translate(&d, TransMode::OnePass).map_err(|e| e.to_string())?;
        if !alpha_eq(&reduce_prompt_redexes(&naive), &one) {
            return Err(format!("{name}: reduced naive output differs from one-pass output"));
        }
        let dynamic = one.count(&|t| match t {
            TargetTerm::App(f, q) => match (&**f, &**q) {
                (TargetTerm::App(_, p), TargetTerm::Var(q)) => {
                    matches!(&**p, TargetTerm::Var(p) if is_prompt_name(p)) && is_prompt_name(q)
                }
                _ => false,
            },
            _ => false,
        });
        let mut apps = 0;
        d.walk(&mut |d| apps += usize::from(d.rule == Rule::App));
        if dynamic != apps {
            return Err(format!("{name}: {dynamic} prompt applications for {apps} source applications"));
        }
    }
    Ok("corpus residuals match reduced naive output; prompts passed only at applications".into())
}

fn safety(verdicts: &[Verdict]) -> Check {
    for v in verdicts {
        if let Observation::Stuck(why) = &v.target {
            return Err(format!("{} [{}]: {why}", v.program, v.mode));
        }
        if v.stats.is_some_and(|s| s.omega_hit) {
            return Err(format!("{} [{}]: omega evaluated", v.program, v.mode));
        }
    }
    Ok(format!("{} translated runs, none stuck", verdicts.len()))
}

fn main() -> ExitCode {
    let mut programs: Vec<(String, SourceProgram)> =
        corpus().into_iter().map(|e| (e.name.to_string(), e.program().unwrap())).collect();
    let corpus_len = programs.len();
    programs.extend(
        enumerate_programs(ENUMERATION_DEPTH)
            .into_iter()
            .enumerate()
            .map(|(i, term)| (format!("enum-{i}"), SourceProgram { term, expected_type: None })),
    );
    let jobs: Vec<(&str, &SourceProgram, TransMode)> = programs
        .iter()
        .flat_map(|(name, p)| TransMode::ALL.into_iter().map(move |m| (name.as_str(), p, m)))
        .collect();
    let verdicts: Vec<Verdict> = jobs.par_iter().map(|&(n, p, m)| differential_check(n, p, m, FUEL)).collect();
    let corpus_verdicts = &verdicts[..corpus_len * 3];
    let rows = prompt_report(1..=E_N_MAX).expect("prompt report");

    let results: Vec<(&str, Check)> = vec![
        ("1 golden outputs", golden_outputs()),
        ("2 worked example", worked_example()),
        ("3 prompt counts", prompt_counts(&rows)),
        ("4 type preservation", type_preservation(&programs, &verdicts)),
        ("5 semantic agreement", semantic_agreement(&verdicts)),
        ("6 subject reduction", subject_reduction()),
        ("7 one-pass residual", onepass_residual()),
        ("8 safety", safety(corpus_verdicts).and(safety(&verdicts))),
        ("9 size ordering", size_ordering(&rows)),
    ];
    let mut failed = 0;
    for (name, r) in &results {
        match r {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
