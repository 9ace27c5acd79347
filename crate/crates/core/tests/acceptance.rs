//! Acceptance criteria 1 to 12, each run through its verification suite at acceptance defaults.
//!
//! Prints one `criterion k: PASS|FAIL` line per criterion. A criterion passes when every row of its
//! suite passes and, where a runtime limit applies, the suite finishes within it.

use std::time::{Duration, Instant};

use lagfock::suites::{criterion_suite, run_suite, SuiteConfig};

/// Wall-clock limits per criterion; criteria without a limit are absent.
fn runtime_limit(k: usize) -> Option<Duration> {
    let secs = match k {
        1 => 5,
        2 => 30,
        6 => 60,
        8 => 10,
        9 => 120,
        _ => return None,
    };
    Some(Duration::from_secs(secs))
}

// Runs without the libtest harness so the criterion lines always reach the terminal.
fn main() {
    let mut failed = Vec::new();
    // Sequential so that each timing measures one suite alone.
    for k in 1..=12 {
        let suite = criterion_suite(k).expect("criterion has a suite");
        let start = Instant::now();
        let outcome = run_suite(suite, &SuiteConfig::default());
        let elapsed = start.elapsed();
        let mut notes = Vec::new();
        let rows_ok = match &outcome {
            Ok(rows) => {
                for r in rows.iter().filter(|r| !r.pass) {
                    notes.push(format!("failed row `{}`: computed {} target {} tol {}", r.quantity, r.computed, r.target, r.tolerance));
                }
                !rows.is_empty() && notes.is_empty()
            }
            Err(e) => {
                notes.push(format!("error: {e}"));
                false
            }
        };
        let time_ok = runtime_limit(k).is_none_or(|limit| elapsed <= limit);
        if !time_ok {
            notes.push(format!("runtime {:.1} s exceeds {:?}", elapsed.as_secs_f64(), runtime_limit(k).unwrap()));
        }
        let pass = rows_ok && time_ok;
        let rows = outcome.as_ref().map(Vec::len).unwrap_or(0);
        println!("criterion {k}: {} (suite {suite}, {rows} rows, {:.2} s)", if pass { "PASS" } else { "FAIL" }, elapsed.as_secs_f64());
        for n in &notes {
            println!("    {n}");
        }
        if !pass {
            failed.push(k);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
