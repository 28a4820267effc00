//! Check a claimed minimum cycle mean in one Bellman–Ford pass instead of
//! a full minimization.
//!
//! ```text
//! cargo run --release --example witness -- 5 19 10
//! ```
//!
//! asks for a cycle of mean exactly 19/10 in the height-5 digraph. Getting
//! one back is a complete proof that 19/10 is the minimum: the probe only
//! reaches its fixpoint because nothing lies below, and the returned cycle
//! shows the value is attained. At height 5 this takes seconds where the
//! full solver takes hours.

use std::time::Instant;

use strip_idcode::mcm::{verify_cycle_mean, witness_cycle_at};
use strip_idcode::{build_automaton, verify_periodic_pattern, verify_window_oracle, Rational};

fn main() {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<i64>());
    let usage = "usage: witness <height> <numerator> <denominator>";
    let height = args.next().expect(usage).expect(usage) as usize;
    let num = args.next().expect(usage).expect(usage);
    let den = args.next().expect(usage).expect(usage);
    let claim = Rational::new(num, den);

    let t = Instant::now();
    let automaton = build_automaton(height).unwrap_or_else(|e| panic!("{e}"));
    println!(
        "height {height}: {} vertices, {} edges ({:.1} s to build)",
        automaton.vertex_count(),
        automaton.edge_count(),
        t.elapsed().as_secs_f64()
    );

    let g = automaton.to_digraph();
    let t = Instant::now();
    match witness_cycle_at(&g, claim) {
        None => println!(
            "no cycle of mean {claim} exists ({:.1} s) — the claim is not the minimum",
            t.elapsed().as_secs_f64()
        ),
        Some(cycle) => {
            assert_eq!(verify_cycle_mean(&g, &cycle.vertices), claim);
            let pattern = automaton.cycle_to_pattern(&cycle.vertices);
            assert!(verify_periodic_pattern(&pattern).valid);
            assert!(verify_window_oracle(&pattern).valid);
            println!(
                "minimum confirmed: cycle of length {} and weight {} ({:.1} s)",
                cycle.vertices.len(),
                cycle.total_weight,
                t.elapsed().as_secs_f64()
            );
            println!("density {} pattern, valid by both checkers:\n{pattern}", pattern.density());
        }
    }
}
