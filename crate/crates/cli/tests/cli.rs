use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use promptpass_core::syntax::{alpha_eq, parse_target, TargetTerm};
use promptpass_core::target::subst_target;

fn corpus_file(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/corpus").join(format!("{name}.atm"))
}

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_promptpass"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut input = child.stdin.take().unwrap();
    input.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(input);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str], stdin: Option<&str>) -> String {
    let o = run(args, stdin);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

#[test]
fn run_golden_programs() {
    let append = corpus_file("append");
    assert_eq!(ok(&["run", append.to_str().unwrap()], None), "[1; 2; 3; 4; 5; 6]\n");
    let prefix = corpus_file("prefix");
    assert_eq!(ok(&["run", prefix.to_str().unwrap()], None), "[[1]; [1; 2]; [1; 2; 3]]\n");
    assert_eq!(ok(&["run"], Some("5")), "5\n");
    assert_eq!(ok(&["run", "-"], Some("fun x -> x")), "<fun>\n");
}

#[test]
fn check_prints_judgments() {
    assert_eq!(ok(&["check"], Some("5")), "pure : int\n");
    let e3 = "1 + (2 + (3 + shift k -> fun x -> throw k x)) : int ; int, (int/'a -> int/'a)";
    assert_eq!(ok(&["check"], Some(e3)), "int ; int, (int/'a -> int/'a)\n");
    let bare = "1 + (2 + (3 + shift k -> fun x -> throw k x))";
    assert_eq!(ok(&["check"], Some(bare)), "int ; 'a, (int/'b -> 'a/'b)\n");
}

#[test]
fn user_errors_exit_with_one() {
    let o = run(&["check"], Some("reset (shift k -> 1 + 1)"));
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not pure"));
    assert_eq!(run(&["run"], Some("1 +")).status.code(), Some(1));
    assert_eq!(run(&["run"], Some("1 + true")).status.code(), Some(1));
    assert_eq!(run(&["run"], Some("head []")).status.code(), Some(1));
    assert_eq!(run(&["run", "/nonexistent/file.atm"], None).status.code(), Some(1));
    assert_eq!(run(&["run-target"], Some("newp p in shift[p] k -> 1")).status.code(), Some(1));
    assert_eq!(run(&["compare"], Some("head []")).status.code(), Some(1));
    assert!(!run(&["run", "--fuel", "0"], Some("5")).status.success());
}

#[test]
fn translate_pure_root() {
    for mode in ["naive", "onepass", "opt"] {
        assert_eq!(ok(&["translate", "--mode", mode], Some("5")), "5 : int\n");
    }
}

/// Beta-reduces applications of functions to variables.
fn reduce(t: &TargetTerm) -> TargetTerm {
    use TargetTerm as T;
    let go = |e: &TargetTerm| Box::new(reduce(e));
    let t = match t {
        T::Lam(x, b) => T::Lam(x.clone(), go(b)),
        T::App(f, a) => T::App(go(f), go(a)),
        T::ShiftP(p, k, b) => T::ShiftP(go(p), k.clone(), go(b)),
        T::ResetP(p, b) => T::ResetP(go(p), go(b)),
        T::NewPrompt(x, b) => T::NewPrompt(x.clone(), go(b)),
        T::Add(a, b) => T::Add(go(a), go(b)),
        other => other.clone(),
    };
    match &t {
        T::App(f, a) => match (&**f, &**a) {
            (T::Lam(x, b), T::Var(_)) => reduce(&subst_target(b, x, a)),
            _ => t,
        },
        _ => t,
    }
}

#[test]
fn translate_worked_example_naive() {
    let out = ok(&["translate", "--mode", "naive", "--term-only"], Some("reset (5 + shift k -> fun x -> throw k x)"));
    let naive = parse_target(out.trim()).unwrap();
    // `let y = e in b` written as `(fun y -> b) e`, and `shift k. k` as its
    // eta expansion.
    let shown = parse_target(
        "newp p in newp q in reset[p] ((fun y -> shift[q] z -> y) \
           (newp r in (shift[r] k -> reset[q] (k 5)) \
              + (shift[p] k1 -> (fun k -> fun x -> fun p2 -> fun q2 -> shift[p2] k3 -> reset[q2] (k3 (k x))) \
                   (fun u -> reset[r] ((fun w -> omega) (k1 u))))))",
    )
    .unwrap();
    assert!(alpha_eq(&reduce(&naive), &shown), "{naive}");
    let typed = ok(&["translate", "--mode", "naive"], Some("reset (5 + shift k -> fun x -> throw k x)"));
    assert!(typed.trim_end().ends_with(" : int -> 'a prompt -> 'a prompt -> int"), "{typed}");
}

#[test]
fn translate_append_opt_binds_prompts_in_recursive_function() {
    let append = corpus_file("append");
    let out = ok(&["translate", "--mode", "opt", "--term-only", append.to_str().unwrap()], None);
    let t = parse_target(out.trim()).unwrap();
    let fix = t.count(&|t| match t {
        TargetTerm::Fix(_, _, body) => match &**body {
            TargetTerm::Lam(_, b) => matches!(&**b, TargetTerm::Lam(..)) && body.count_new_prompts() == 0,
            _ => false,
        },
        _ => false,
    });
    assert_eq!(fix, 1, "{out}");
}

#[test]
fn translated_output_runs_as_target() {
    let src = "reset (1 + shift k -> throw k (throw k 10))";
    for mode in ["naive", "onepass", "opt"] {
        let term = ok(&["translate", "--mode", mode, "--term-only"], Some(src));
        let run = ok(&["run-target"], Some(&term));
        assert!(run.starts_with("12 : int\n"), "{mode}: {run}");
        assert!(run.contains("omega_hit=false"));
    }
}

#[test]
fn compare_corpus_and_enumeration() {
    let out = ok(&["compare", "--corpus"], None);
    assert!(out.ends_with("108/108 agree\n"), "{out}");
    let out = ok(&["compare", "--enumerate", "3", "--mode", "opt"], None);
    assert_eq!(out, "534/534 agree\n");
    let append = corpus_file("append");
    let out = ok(&["compare", append.to_str().unwrap()], None);
    assert!(out.contains("[opt] agree: source [1; 2; 3; 4; 5; 6] / target [1; 2; 3; 4; 5; 6]"), "{out}");
}

#[test]
fn compare_records_are_json_lines() {
    let out = ok(&["compare", "--format", "records", "--mode", "naive"], Some("(reset (5 + shift k -> fun x -> throw k x)) 9"));
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["status"], "Agree");
    assert_eq!(v["mode"], "naive");
    assert_eq!(v["target"]["detail"]["Int"], 14);
}

#[test]
fn broken_translators_fail_the_comparison() {
    for fault in ["swap-prompts", "swap-add"] {
        let o = run(&["compare", "--corpus", "--inject-fault", fault], None);
        assert_eq!(o.status.code(), Some(2), "{fault}");
    }
}

#[test]
fn stats_table_and_records() {
    let out = ok(&["stats", "--family", "en", "--max", "3", "--format", "records"], None);
    let rows: Vec<serde_json::Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 9);
    let prompts = |n: u64, mode: &str| {
        rows.iter().find(|r| r["n"] == n && r["mode"] == mode).unwrap()["prompts_generated"].as_u64().unwrap()
    };
    assert_eq!(prompts(3, "naive"), 5);
    assert_eq!(prompts(3, "onepass"), 5);
    assert_eq!(prompts(3, "opt"), 2);
    let text = ok(&["stats", "--max", "2", "--mode", "opt"], None);
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn output_is_reproducible() {
    let append = corpus_file("prefix");
    let a = ok(&["translate", "--mode", "naive", append.to_str().unwrap()], None);
    let b = ok(&["translate", "--mode", "naive", append.to_str().unwrap()], None);
    assert_eq!(a, b);
}
