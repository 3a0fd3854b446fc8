//! Prints one PASS or FAIL line per acceptance criterion and exits non-zero
//! if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use hurwitz_testkit::golden;

const PROPERTY_CASES: u32 = 256;
const RUNS: usize = 3;

type Check = Box<dyn Fn() -> Result<(), String>>;

fn main() -> ExitCode {
    let mut criteria: Vec<(u32, &str, Check)> = golden::CRITERIA
        .iter()
        .map(|&(n, title, check)| (n, title, Box::new(check) as Check))
        .collect();
    criteria.push((
        8,
        "randomized property suites",
        Box::new(|| golden::criterion_8(PROPERTY_CASES)),
    ));
    criteria.push((9, "command-line golden files", Box::new(|| common::check_golden(RUNS))));

    let mut failed = 0;
    for (n, title, check) in &criteria {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(()) => println!("criterion {n}: PASS  {title} ({secs:.2}s)"),
            Err(e) => {
                failed += 1;
                println!("criterion {n}: FAIL  {title} ({secs:.2}s): {e}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
