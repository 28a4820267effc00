//! Exact minimum-density periodic identifying codes in grid strips.
//!
//! Fix a strip of unit squares that is `k` rows tall and extends without
//! bound to the left and right. An *identifying code* is a set of occupied
//! cells such that every cell of the strip (occupied or not) has at least
//! one occupied cell among itself and its horizontal/vertical neighbors,
//! and no two cells see exactly the same set of occupied neighbors. The
//! interesting question is the minimum *density* — the fraction of occupied
//! cells — over all such sets, and it is attained by patterns that repeat
//! with some finite period.
//!
//! This crate computes that minimum exactly. Periodic patterns of height
//! `k` correspond to closed walks in a finite digraph whose vertices are
//! short windows of valid patterns and whose edge weights count occupied
//! cells per new column; the minimum density is the digraph's minimum cycle
//! mean divided by `k`. Everything is integer arithmetic end to end — the
//! reported densities are exact fractions, not approximations — and every
//! answer is re-verified by two independent pattern checkers before it is
//! returned.
//!
//! ```
//! use strip_idcode::{solve, Rational, SolveOptions};
//!
//! let report = solve(2, &SolveOptions::default()).unwrap();
//! assert_eq!(report.density, Rational::new(3, 7));
//! println!("{}", report.pattern); // a period-7 pattern attaining 3/7
//! ```
//!
//! The pieces are usable on their own:
//!
//! * [`pattern`] — the [`BarPattern`] grid type and its `#`/`.` text form;
//! * [`verify`] — two independent validity checkers for periodic patterns;
//! * [`automaton`] — the transition digraph for one strip height;
//! * [`mcm`] — exact minimum cycle mean of a weighted digraph, with cycle
//!   extraction and an independent feasibility oracle;
//! * [`oracle`] — brute-force sweeps for small cases;
//! * [`solve`](fn@solve) — the pipeline tying those together;
//! * [`render`] — text and SVG drawings of patterns.

pub mod automaton;
pub mod grid;
pub mod mcm;
pub mod oracle;
pub mod pattern;
pub mod rational;
pub mod render;
pub mod solve;
pub mod verify;

pub use automaton::{build_automaton, build_automaton_with_budget, AutomatonStats, StripAutomaton};
pub use oracle::{brute_force_min_density, SweepResult};
pub use pattern::{BarPattern, ColumnMask, ParseError, MAX_ROWS};
pub use rational::Rational;
pub use solve::{solve, solve_with_progress, SolveError, SolveOptions, SolveReport};
pub use verify::{verify_periodic_pattern, verify_window_oracle, VerifyReport, Violation};

/// Compiles and runs every code block in the guide (`book/`), so the prose
/// can never drift from the crate. Doctest-only; invisible otherwise.
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            mod $name {}
        };
    }
    chapter!(readme, "../../../README.md");
    chapter!(introduction, "../../../book/src/introduction.md");
    chapter!(patterns, "../../../book/src/patterns.md");
    chapter!(transition_digraph, "../../../book/src/transition-digraph.md");
    chapter!(minimum_cycle_mean, "../../../book/src/minimum-cycle-mean.md");
    chapter!(certificates, "../../../book/src/certificates.md");
    chapter!(command_line, "../../../book/src/command-line.md");
}
