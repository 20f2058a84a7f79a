use promptpass_core::harness::{corpus, differential_check, Observation, Status};
use promptpass_core::source::infer_program;
use promptpass_core::translate::TransMode;

const FUEL: u64 = 1_000_000;

#[test]
fn every_program_infers() {
    for e in corpus() {
        let p = e.program().unwrap_or_else(|err| panic!("{}: {err}", e.name));
        infer_program(&p).unwrap_or_else(|err| panic!("{}: {err}", e.name));
    }
}

#[test]
fn every_program_agrees_with_its_expected_value() {
    let mut failures = Vec::new();
    for e in corpus() {
        let p = e.program().unwrap();
        for mode in TransMode::ALL {
            let v = differential_check(e.name, &p, mode, FUEL);
            let shown = match &v.target {
                Observation::Value(x) => Some(x.to_string()),
                _ => None,
            };
            if v.status != Status::Agree || shown != e.expected {
                failures.push(format!("{} [{mode}]: {:?} source={} target={}", e.name, v.status, v.source, v.target));
            }
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn pinned_prompt_counts_and_monotonicity() {
    for e in corpus() {
        let p = e.program().unwrap();
        let count = |mode| differential_check(e.name, &p, mode, FUEL).stats.unwrap().prompts_generated;
        let (naive, one, opt) = (count(TransMode::Naive), count(TransMode::OnePass), count(TransMode::Optimized));
        assert_eq!(naive, one, "{}", e.name);
        assert!(opt <= one, "{}: opt {opt} > onepass {one}", e.name);
        if let Some(pinned) = e.prompts {
            assert_eq!((naive, one, opt), pinned, "{}", e.name);
        }
    }
}
