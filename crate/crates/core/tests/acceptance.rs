//! One pass/fail line per acceptance criterion. Runs without the libtest
//! harness so the lines are never captured.

use std::process::ExitCode;

use pfchain::repro::{run_claim, CLAIM_COUNT};

fn main() -> ExitCode {
    let mut failed = Vec::new();
    for id in 1..=CLAIM_COUNT {
        let r = run_claim(id);
        println!("{}", r.line());
        if !r.pass {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: {CLAIM_COUNT}/{CLAIM_COUNT} criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
