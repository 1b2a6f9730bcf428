//! Runs every suite (or the ones named) at the default configuration and
//! prints per-report counts and wall-clock time:
//! `cargo run --release -p cobcalc-core --example timings -- sop uv`

use std::time::Instant;

use cobcalc_core::verify::{run_suite, SuiteConfig, SUITES};

fn main() {
    let cfg = SuiteConfig::default();
    let only: Vec<String> = std::env::args().skip(1).collect();
    for name in SUITES {
        if !only.is_empty() && !only.iter().any(|o| o == name) {
            continue;
        }
        let t = Instant::now();
        match run_suite(name, &cfg) {
            Ok(reps) => {
                for r in &reps {
                    let w = r.first_failure().map(|c| format!("  FIRST FAIL {}: {:?}", c.input, c.witness)).unwrap_or_default();
                    println!("{name:10} p={:?} reps={:?} {}/{}{w}", r.p, r.reps, r.summary.pass, r.total());
                }
            }
            Err(e) => println!("{name}: ERROR {e}"),
        }
        println!("  {name} took {:.2?}", t.elapsed());
    }
}
