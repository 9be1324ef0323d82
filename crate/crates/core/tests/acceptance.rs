//! Runs every acceptance criterion and prints one PASS/FAIL line each.

use std::process::ExitCode;

use dunklpoly::report::first_failure;
use dunklpoly::{run_criterion, Criterion};

fn main() -> ExitCode {
    let mut failed = 0;
    for c in Criterion::ALL {
        let r = run_criterion(c);
        let status = if r.passed() { "PASS" } else { "FAIL" };
        println!(
            "{status} [{:>2}] {:<18} {} ({} records, {} ms)",
            c.number(),
            c.name(),
            c.description(),
            r.records.len(),
            r.millis
        );
        if let Some(rec) = first_failure(&r.records) {
            println!(
                "       first failure: {} {} residual={} params={}",
                rec.suite, rec.target, rec.residual, rec.params
            );
        }
        if !r.passed() {
            failed += 1;
        }
    }
    println!("acceptance: {}/{} criteria passed", Criterion::ALL.len() - failed, Criterion::ALL.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
