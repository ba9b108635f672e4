//! Runs every acceptance criterion at full size and prints one PASS/FAIL
//! line each. Exits nonzero if any criterion fails or the suite overruns
//! its time budget.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use qturan_cli::verify::{run_criterion, Level, CRITERIA};

const BUDGET: Duration = Duration::from_secs(30 * 60);

fn main() -> ExitCode {
    let start = Instant::now();
    let mut failed = 0;
    for id in 1..=CRITERIA.len() {
        let r = run_criterion(id, Level::Full);
        println!("{}", r.line());
        for f in &r.failures {
            println!("    {f}");
        }
        failed += usize::from(!r.passed);
    }
    let total = start.elapsed();
    let over = total > BUDGET;
    println!(
        "{} acceptance: {}/{} criteria passed in {:.1}s (budget {}s)",
        if failed == 0 && !over { "PASS" } else { "FAIL" },
        CRITERIA.len() - failed,
        CRITERIA.len(),
        total.as_secs_f64(),
        BUDGET.as_secs()
    );
    if failed == 0 && !over {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
