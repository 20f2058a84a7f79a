use promptpass_core::harness::{differential_check, enumerate_programs, Status};
use promptpass_core::source::infer_program;
use promptpass_core::syntax::{SourceProgram, Term};
use promptpass_core::translate::{translate, typed_translate, TransMode};

fn program(t: &Term) -> SourceProgram {
    SourceProgram { term: t.clone(), expected_type: None }
}

#[test]
fn counts_are_stable() {
    let counts: Vec<usize> = (1..=3).map(|d| enumerate_programs(d).len()).collect();
    assert_eq!(counts, vec![2, 18, 534]);
}

#[test]
fn enumerated_programs_are_closed_pure_and_of_base_type() {
    for t in enumerate_programs(3) {
        assert!(t.free_vars().is_empty(), "{t}");
        let d = infer_program(&program(&t)).unwrap();
        assert!(d.judgment.is_pure() && d.judgment.result().is_base(), "{t}: {}", d.judgment);
    }
}

#[test]
fn depth_three_agrees_in_every_mode() {
    for (i, t) in enumerate_programs(3).iter().enumerate() {
        for mode in TransMode::ALL {
            typed_translate(&program(t), mode).unwrap_or_else(|e| panic!("{t} [{mode}]: {e}"));
            let v = differential_check(&i.to_string(), &program(t), mode, 100_000);
            assert_eq!(v.status, Status::Agree, "{t} [{mode}]: {} vs {}", v.source, v.target);
        }
    }
}

#[test]
fn translation_is_deterministic() {
    for t in enumerate_programs(3).iter().step_by(7) {
        let d = infer_program(&program(t)).unwrap();
        for mode in TransMode::ALL {
            assert_eq!(translate(&d, mode).unwrap(), translate(&d, mode).unwrap());
        }
    }
}
