//! One PASS/FAIL line per acceptance criterion. Every criterion is exact (no numeric tolerance);
//! the time budgets below are the only tolerances and are checked against wall-clock time.

use shortgf_cli::selftest::{run_suite, Mode, SUITES};
use std::process::ExitCode;
use std::time::Duration;

const SEED: u64 = 0;

/// Wall-clock budget per criterion, in seconds.
const BUDGET_SECS: [(u32, u64); 11] = [
    (1, 120),
    (2, 120),
    (3, 120),
    (4, 300),
    (5, 300),
    (6, 60),
    (7, 60),
    (8, 60),
    (9, 300),
    (10, 120),
    (11, 300),
];

fn main() -> ExitCode {
    let mut failures = 0;
    for s in SUITES {
        let budget = Duration::from_secs(BUDGET_SECS.iter().find(|(id, _)| *id == s.id).expect("budget pinned").1);
        let rep = run_suite(s, Mode::Full, SEED);
        let (ok, detail) = match &rep.outcome {
            Ok(d) if rep.elapsed <= budget => (true, d.clone()),
            Ok(d) => (false, format!("{d}; over budget")),
            Err(d) => (false, d.clone()),
        };
        failures += usize::from(!ok);
        println!(
            "criterion {:>2} {:<28} {}  [{:.2}s / {}s]  {detail}",
            s.id,
            s.name,
            if ok { "PASS" } else { "FAIL" },
            rep.elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    println!("acceptance: {} of {} criteria passed", SUITES.len() - failures, SUITES.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
