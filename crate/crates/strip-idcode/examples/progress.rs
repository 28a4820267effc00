//! Solve one height with live progress on stderr.
//!
//! ```text
//! cargo run --release --example progress -- 4
//! ```
//!
//! The two relaxation passes dominate the runtime at height 4 and up, and
//! each runs for exactly `vertex count` rounds, so the round counter is an
//! honest progress bar.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use strip_idcode::mcm::McmPass;
use strip_idcode::{solve_with_progress, SolveOptions};

fn main() {
    let height: usize =
        std::env::args().nth(1).and_then(|a| a.parse().ok()).expect("usage: progress <height>");
    let start = Instant::now();
    let last = AtomicUsize::new(0);
    let report = move |pass: McmPass, round: usize, total: usize| {
        if round.is_multiple_of(2000) || round == total {
            // Progress callbacks arrive from worker threads; only one of
            // them needs to win the right to print a given round.
            if last.swap(round, Ordering::Relaxed) != round {
                eprintln!("{pass:?} round {round}/{total}");
            }
        }
    };
    let r = solve_with_progress(height, &SolveOptions::default(), Some(&report))
        .unwrap_or_else(|e| panic!("height {height}: {e}"));
    println!(
        "height {}: density {} (cycle mean {}, period {}) over {} vertices / {} edges in {:.1} s",
        r.height, r.density, r.lambda, r.cycle_length, r.vertices, r.edges, r.seconds
    );
    println!("{}", r.pattern);
    eprintln!("total wall clock {:.1} s", start.elapsed().as_secs_f64());
}
