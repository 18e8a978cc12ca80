//! One line per acceptance criterion. All tolerances are exact: every
//! compared quantity is an integer or a rational.

use std::process::ExitCode;
use std::time::Instant;

use hypersurf::verify::{run, VerifyConfig};

const TOLERANCE: &str = "exact";

fn main() -> ExitCode {
    // the test harness passes its own flags; listing must not run anything
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return ExitCode::SUCCESS;
    }
    let start = Instant::now();
    let report = run(&VerifyConfig::default());
    for c in &report.criteria {
        let tag = if c.passed { "PASS" } else { "FAIL" };
        println!("[{tag}] {} {} (tolerance: {TOLERANCE}) -- {}", c.id, c.name, c.detail);
    }
    let failed = report.failed().len();
    println!(
        "acceptance: {} passed, {failed} failed in {:.1?}",
        report.criteria.len() - failed,
        start.elapsed()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
