//! One PASS/FAIL line per acceptance criterion. Runs without the libtest
//! harness so every line is printed; exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use jtheta_validation::criteria::ALL;

fn main() -> ExitCode {
    let mut failed = Vec::new();
    for (n, check) in ALL {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {n}: PASS ({secs:.1} s) {detail}"),
            Err(detail) => {
                println!("criterion {n}: FAIL ({secs:.1} s) {detail}");
                failed.push(n);
            }
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass", ALL.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        ExitCode::FAILURE
    }
}
