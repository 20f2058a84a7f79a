use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use promptpass_core::harness::{
    close_program, differential_check, differential_check_with, enumerate_programs, prompt_report, Observation,
    Value, Verdict,
};
use promptpass_core::source::{eval_source, infer_program, Derivation, EvalError};
use promptpass_core::syntax::{parse_program, parse_target, pretty_target, SourceProgram, TargetTerm};
use promptpass_core::target::{check_closed, eval_target, RunStats, TargetEvalError, TargetTypeNamer};
use promptpass_core::translate::{translate, typed_translate, TransMode, TranslateError};

/// Shift/reset with answer-type modification, translated into multi-prompt
/// shift/reset by prompt passing.
#[derive(Parser)]
#[command(name = "promptpass", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Evaluation step budget.
    #[arg(long, global = true, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    fuel: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    /// One JSON object per line.
    Records,
}

#[derive(Subcommand)]
enum Command {
    /// Infer the judgment of a source program.
    Check(Input),
    /// Evaluate a source program.
    Run(Input),
    /// Translate a source program into the target calculus.
    Translate {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "opt")]
        mode: TransMode,
        /// Print only the term, without its type.
        #[arg(long)]
        term_only: bool,
    },
    /// Type check and evaluate a target program.
    RunTarget(Input),
    /// Compare source evaluation with evaluation of the translation.
    Compare {
        /// Program to compare; reads stdin when neither a file nor another
        /// source of programs is given.
        file: Option<PathBuf>,
        /// Compare every enumerated program up to this depth.
        #[arg(long, value_name = "DEPTH", conflicts_with_all = ["file", "corpus"])]
        enumerate: Option<usize>,
        /// Compare the bundled corpus.
        #[arg(long, conflicts_with = "file")]
        corpus: bool,
        #[arg(long, default_value = "all")]
        mode: ModeChoice,
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<Fault>,
    },
    /// Prompt and size statistics for a family of programs.
    Stats {
        #[arg(long, value_enum, default_value_t = Family::En)]
        family: Family,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
        max: u32,
        #[arg(long, default_value = "all")]
        mode: ModeChoice,
    },
}

#[derive(Args)]
struct Input {
    /// Input file; `-` or nothing reads stdin.
    file: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    /// `reset (1 + (2 + ... + (n + shift k -> fun x -> throw k x)))`
    En,
}

#[derive(Clone, Copy)]
enum ModeChoice {
    One(TransMode),
    All,
}

impl std::str::FromStr for ModeChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "all" {
            Ok(ModeChoice::All)
        } else {
            s.parse().map(ModeChoice::One)
        }
    }
}

impl ModeChoice {
    fn modes(self) -> Vec<TransMode> {
        match self {
            ModeChoice::One(m) => vec![m],
            ModeChoice::All => TransMode::ALL.to_vec(),
        }
    }
}

/// Deliberate translator faults, for checking that `compare` notices them.
#[derive(Clone, Copy, ValueEnum)]
enum Fault {
    /// Exchange the two prompts of every prompt-passing application.
    SwapPrompts,
    /// Exchange the operands of every addition.
    SwapAdd,
}

/// Failures, split by whose fault they are.
enum Failure {
    User(anyhow::Error),
    Internal(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::User(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::User(e.into())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = io::stdout().lock();
    match run(&cli, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::User(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(e)) => {
            eprintln!("internal error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli, out: &mut impl Write) -> Outcome {
    match &cli.command {
        Command::Check(input) => cmd_check(cli, out, &read(input.file.as_ref())?),
        Command::Run(input) => cmd_run(cli, out, &read(input.file.as_ref())?),
        Command::Translate { input, mode, term_only } => {
            cmd_translate(cli, out, &read(input.file.as_ref())?, *mode, *term_only)
        }
        Command::RunTarget(input) => cmd_run_target(cli, out, &read(input.file.as_ref())?),
        Command::Compare { file, enumerate, corpus, mode, inject_fault } => {
            let programs = if let Some(depth) = enumerate {
                if *depth > 5 {
                    return Err(anyhow!("enumeration depth is limited to 5").into());
                }
                enumerate_programs(*depth)
                    .into_iter()
                    .enumerate()
                    .map(|(i, term)| (format!("enum-{i}"), SourceProgram { term, expected_type: None }))
                    .collect()
            } else if *corpus {
                promptpass_core::harness::corpus()
                    .into_iter()
                    .map(|e| Ok((e.name.to_string(), e.program().map_err(|err| anyhow!("{}: {err}", e.name))?)))
                    .collect::<Result<Vec<_>, anyhow::Error>>()?
            } else {
                let name = file.as_ref().map_or("<stdin>".to_string(), |f| f.display().to_string());
                vec![(name, parse(&read(file.as_ref())?)?)]
            };
            cmd_compare(cli, out, &programs, *mode, *inject_fault)
        }
        Command::Stats { family: Family::En, max, mode } => cmd_stats(cli, out, *max, *mode),
    }
}

fn read(file: Option<&PathBuf>) -> Result<String, Failure> {
    match file {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display())).map_err(Failure::User)
        }
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn parse(text: &str) -> Result<SourceProgram, Failure> {
    parse_program(text).map_err(|e| Failure::User(anyhow!("{e}")))
}

fn infer(program: &SourceProgram) -> Result<Derivation, Failure> {
    infer_program(program).map_err(|e| Failure::User(anyhow!("{e}")))
}

fn record(out: &mut impl Write, value: &impl Serialize) -> Outcome {
    let line = serde_json::to_string(value).map_err(|e| Failure::Internal(e.into()))?;
    writeln!(out, "{line}")?;
    Ok(())
}

fn cmd_check(cli: &Cli, out: &mut impl Write, text: &str) -> Outcome {
    let d = infer(&parse(text)?)?;
    let shown = promptpass_core::translate::show_source_judgment(&d);
    let pure = d.judgment.is_pure();
    match cli.format {
        Format::Text if pure => writeln!(out, "pure : {shown}")?,
        Format::Text => writeln!(out, "{shown}")?,
        Format::Records => {
            record(out, &serde_json::json!({ "pure": pure, "judgment": shown }))?;
        }
    }
    Ok(())
}

fn cmd_run(cli: &Cli, out: &mut impl Write, text: &str) -> Outcome {
    let program = parse(text)?;
    let (term, _) = close_program(&program).map_err(|e| Failure::User(anyhow!(e)))?;
    let (value, steps) = eval_source(&term, cli.fuel).map_err(|e| match e {
        EvalError::Stuck { reason, steps, .. } => anyhow!("evaluation stuck after {steps} steps: {reason}"),
        EvalError::OutOfFuel { steps } => anyhow!("out of fuel after {steps} steps"),
    })?;
    let shown = Value::from_source(&value).map_or_else(|| "<fun>".to_string(), |v| v.to_string());
    match cli.format {
        Format::Text => writeln!(out, "{shown}")?,
        Format::Records => record(out, &serde_json::json!({ "value": shown, "steps": steps }))?,
    }
    Ok(())
}

fn translate_failure(e: TranslateError) -> Failure {
    match e {
        TranslateError::Infer(e) => Failure::User(anyhow!("{e}")),
        other => Failure::Internal(anyhow!("{other}")),
    }
}

fn cmd_translate(cli: &Cli, out: &mut impl Write, text: &str, mode: TransMode, term_only: bool) -> Outcome {
    let program = parse(text)?;
    let (term, ty) = typed_translate(&program, mode).map_err(translate_failure)?;
    let term_text = pretty_target(&term);
    let ty_text = TargetTypeNamer::new().show(&ty);
    match cli.format {
        Format::Text if term_only => writeln!(out, "{term_text}")?,
        Format::Text => writeln!(out, "{term_text} : {ty_text}")?,
        Format::Records => record(
            out,
            &serde_json::json!({
                "mode": mode,
                "term": term_text,
                "type": ty_text,
                "size": term.size(),
                "new_prompts": term.count_new_prompts(),
            }),
        )?,
    }
    Ok(())
}

fn cmd_run_target(cli: &Cli, out: &mut impl Write, text: &str) -> Outcome {
    let term = parse_target(text).map_err(|e| Failure::User(anyhow!("{e}")))?;
    let ty = check_closed(&term).map_err(|e| Failure::User(anyhow!("{e}")))?;
    let (value, stats) = eval_target(&term, cli.fuel).map_err(|e| match e {
        TargetEvalError::Stuck { reason, stats, .. } => {
            anyhow!("evaluation stuck after {} steps: {reason}", stats.steps)
        }
        TargetEvalError::OutOfFuel { stats } => anyhow!("out of fuel after {} steps", stats.steps),
    })?;
    let shown = Value::from_target(&value).map_or_else(|| pretty_target(&value), |v| v.to_string());
    match cli.format {
        Format::Text => {
            writeln!(out, "{shown} : {}", TargetTypeNamer::new().show(&ty))?;
            writeln!(out, "{}", stats.to_record())?;
        }
        Format::Records => {
            #[derive(Serialize)]
            struct Run<'a> {
                value: &'a str,
                #[serde(flatten)]
                stats: RunStats,
            }
            record(out, &Run { value: &shown, stats })?;
        }
    }
    Ok(())
}

/// Applies a deliberate fault to a correct translation.
fn faulty(fault: Fault) -> impl Fn(&Derivation, TransMode) -> Result<TargetTerm, TranslateError> + Sync {
    fn mutate(t: &TargetTerm, fault: Fault) -> TargetTerm {
        use TargetTerm as T;
        let go = |e: &TargetTerm| Box::new(mutate(e, fault));
        match t {
            T::App(f, q) => match (&**f, &**q, fault) {
                (T::App(e, p), T::Var(_), Fault::SwapPrompts) if matches!(**p, T::Var(_)) => {
                    T::App(Box::new(T::App(go(e), go(q))), go(p))
                }
                _ => T::App(go(f), go(q)),
            },
            T::Add(a, b) => match fault {
                Fault::SwapAdd => T::Add(go(b), go(a)),
                Fault::SwapPrompts => T::Add(go(a), go(b)),
            },
            T::Lam(x, b) => T::Lam(x.clone(), go(b)),
            T::ShiftP(p, k, b) => T::ShiftP(p.clone(), k.clone(), go(b)),
            T::ResetP(p, b) => T::ResetP(p.clone(), go(b)),
            T::NewPrompt(x, b) => T::NewPrompt(x.clone(), go(b)),
            T::Let(x, v, b) => T::Let(x.clone(), go(v), go(b)),
            T::If(c, a, b) => T::If(go(c), go(a), go(b)),
            T::Fix(f, x, b) => T::Fix(f.clone(), x.clone(), go(b)),
            T::Cons(a, b) => T::Cons(go(a), go(b)),
            T::Head(a) => T::Head(go(a)),
            T::Tail(a) => T::Tail(go(a)),
            T::IsNil(a) => T::IsNil(go(a)),
            other => other.clone(),
        }
    }
    move |d, mode| translate(d, mode).map(|t| mutate(&t, fault))
}

fn cmd_compare(
    cli: &Cli,
    out: &mut impl Write,
    programs: &[(String, SourceProgram)],
    mode: ModeChoice,
    fault: Option<Fault>,
) -> Outcome {
    let modes = mode.modes();
    let jobs: Vec<(&str, &SourceProgram, TransMode)> =
        programs.iter().flat_map(|(name, p)| modes.iter().map(move |&m| (name.as_str(), p, m))).collect();
    let verdicts: Vec<Verdict> = jobs
        .par_iter()
        .map(|&(name, p, m)| match fault {
            None => differential_check(name, p, m, cli.fuel),
            Some(f) => differential_check_with(name, p, m, cli.fuel, &faulty(f)),
        })
        .collect();

    let single = programs.len() == 1;
    for v in &verdicts {
        match cli.format {
            Format::Records => record(out, v)?,
            Format::Text if single || !v.agrees() => {
                writeln!(out, "{} [{}] {}: source {} / target {}", v.program, v.mode, v.status, v.source, v.target)?
            }
            Format::Text => {}
        }
    }
    let agree = verdicts.iter().filter(|v| v.agrees()).count();
    if cli.format == Format::Text {
        writeln!(out, "{agree}/{} agree", verdicts.len())?;
    }
    if agree == verdicts.len() {
        Ok(())
    } else if verdicts.iter().any(Verdict::is_internal_failure) {
        let n = verdicts.iter().filter(|v| v.is_internal_failure()).count();
        Err(Failure::Internal(anyhow!("{n} comparisons failed")))
    } else {
        let first = verdicts.iter().find(|v| !v.agrees()).map(|v| v.source.clone());
        let why = match first {
            Some(Observation::Rejected(e)) => e,
            Some(o) => o.to_string(),
            None => String::new(),
        };
        Err(Failure::User(anyhow!("{} programs could not be compared: {why}", verdicts.len() - agree)))
    }
}

fn cmd_stats(cli: &Cli, out: &mut impl Write, max: u32, mode: ModeChoice) -> Outcome {
    let modes = mode.modes();
    let rows = prompt_report(1..=max).map_err(|e| Failure::Internal(anyhow!(e)))?;
    let rows: Vec<_> = rows.into_iter().filter(|r| modes.contains(&r.mode)).collect();
    match cli.format {
        Format::Records => {
            for r in &rows {
                record(out, r)?;
            }
        }
        Format::Text => {
            writeln!(out, "{:>4}  {:<8} {:>8} {:>10} {:>10}", "n", "mode", "prompts", "size", "steps")?;
            for r in &rows {
                writeln!(
                    out,
                    "{:>4}  {:<8} {:>8} {:>10} {:>10}",
                    r.n,
                    r.mode.name(),
                    r.prompts_generated,
                    r.term_size,
                    r.steps
                )?;
            }
        }
    }
    Ok(())
}
