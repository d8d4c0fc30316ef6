//! One line per acceptance criterion with its time limit. The suite
//! criteria run in-process; the last one drives the binary.

use std::process::Command;
use std::time::{Duration, Instant};

use stonespec::suite::{run_criterion, SuiteConfig, CRITERIA};

const LIMITS: [u64; 13] = [5, 5, 2, 2, 2, 5, 10, 10, 2, 2, 3, 30, 60];

fn line(id: usize, name: &str, passed: bool, elapsed: Duration, detail: &str) -> bool {
    let limit = Duration::from_secs(LIMITS[id - 1]);
    let in_time = elapsed <= limit;
    let ok = passed && in_time;
    let mark = if ok { "PASS" } else { "FAIL" };
    let timing = format!("{:.3}s / {}s", elapsed.as_secs_f64(), limit.as_secs());
    let note = match (passed, in_time) {
        (true, true) => String::new(),
        (false, _) => format!("  [check failed] {detail}"),
        (true, false) => "  [over time limit]".into(),
    };
    println!("criterion {id:>2} {mark} {name:<15} {timing}{note}");
    ok
}

fn determinism() -> (bool, String) {
    let run = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_stonespec"))
            .args(args)
            .output()
            .expect("binary runs")
    };
    let a = run(&["suite", "all", "--seed", "0"]);
    let b = run(&["suite", "all", "--seed", "0"]);
    let mut problems = Vec::new();
    if a.stdout != b.stdout {
        problems.push("reports differ".to_string());
    }
    if serde_json::from_slice::<serde_json::Value>(&a.stdout).is_err() {
        problems.push("report is not JSON".into());
    }
    if a.status.code() != Some(0) || b.status.code() != Some(0) {
        problems.push(format!(
            "suite exit codes {:?} {:?}",
            a.status.code(),
            b.status.code()
        ));
    }
    let failing = run(&["check", "corpus:O6", "--expect", "orthomodular"]);
    if failing.status.code() != Some(1) || failing.stdout.is_empty() {
        problems.push(format!("check failure exit {:?}", failing.status.code()));
    }
    let bad_input = run(&["check", r#"{"n": 3, "covers": [[0,1],[0,2]]}"#]);
    if bad_input.status.code() != Some(2) {
        problems.push(format!("input error exit {:?}", bad_input.status.code()));
    }
    (problems.is_empty(), problems.join("; "))
}

#[test]
fn acceptance() {
    let config = SuiteConfig {
        seed: 0,
        exhaustive: false,
    };
    let mut all = true;
    for (i, name) in CRITERIA.iter().enumerate() {
        let start = Instant::now();
        let report = run_criterion(i + 1, config);
        let elapsed = start.elapsed();
        all &= line(
            i + 1,
            name,
            report.passed,
            elapsed,
            &report.details.to_string(),
        );
    }
    let start = Instant::now();
    let (passed, detail) = determinism();
    all &= line(13, "determinism", passed, start.elapsed(), &detail);
    assert!(all, "some acceptance criteria failed");
}
