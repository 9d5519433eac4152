//! Runs every acceptance criterion and prints one PASS/FAIL line each.

use std::process::ExitCode;

use noma_esg::acceptance::{run_all, SuiteOptions};

fn main() -> ExitCode {
    let outcomes = run_all(&SuiteOptions::default());
    for o in &outcomes {
        println!("{o}");
    }
    let failed = outcomes.iter().filter(|o| !o.pass).count();
    println!(
        "acceptance: {} passed, {failed} failed",
        outcomes.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
