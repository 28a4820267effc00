//! End-to-end pipeline: height in, optimal pattern out.
//!
//! Build the transition digraph, take its minimum cycle mean, extract a
//! witness cycle, spell the cycle out as a pattern — then re-verify that
//! pattern with both independent checkers and re-derive its density before
//! reporting anything. A result that fails its own audit is an error, never
//! a return value.

use std::time::Instant;

use thiserror::Error;

use crate::automaton::{build_automaton_with_budget, BuildError, DEFAULT_MEM_BUDGET_MB};
use crate::mcm::{certify_lambda_star, solve_mcm, McmError, Progress};
use crate::pattern::BarPattern;
use crate::rational::Rational;
use crate::verify::{verify_periodic_pattern, verify_window_oracle};

/// Tuning knobs for [`solve`]. `Default` is right for almost everything.
#[derive(Debug, Clone)]
pub struct SolveOptions {
    /// Worker threads for the relaxation sweeps; 0 uses the global pool.
    pub threads: usize,
    /// Rounds of predecessor history for cycle extraction; 0 picks
    /// `4·height + 64`, comfortably past every cycle length seen in
    /// practice. Too small only costs extra passes, never correctness.
    pub window: usize,
    /// Also run the two feasibility probes on the final mean.
    pub certify: bool,
    /// Memory budget in MiB for the digraph and solver working set.
    pub mem_budget_mb: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { threads: 0, window: 0, certify: false, mem_budget_mb: DEFAULT_MEM_BUDGET_MB }
    }
}

/// Everything [`solve`] establishes about one strip height.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub height: usize,
    /// The minimum density: occupied cells per cell of the strip.
    pub density: Rational,
    /// A periodic pattern attaining it; its period is `cycle_length`.
    pub pattern: BarPattern,
    pub cycle_length: usize,
    /// The minimum cycle mean itself (`density · height`).
    pub lambda: Rational,
    /// Digraph size, for context in logs and reports.
    pub vertices: u64,
    pub edges: u64,
    /// Wall-clock seconds for the whole pipeline.
    pub seconds: f64,
    /// `Some(true)` when certification was requested (a failed
    /// certification is an error, not a report).
    pub certified: Option<bool>,
}

/// Why [`solve`] returned no report.
#[derive(Debug, Error)]
pub enum SolveError {
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error("cycle-mean solver failed: {0}")]
    Mcm(#[from] McmError),
    #[error("solving height {height} needs about {needed_mb} MiB of working memory, over the {budget_mb} MiB budget")]
    WorkingMemory { height: usize, needed_mb: u64, budget_mb: u64 },
    #[error("self-check failed: {0}")]
    SelfCheck(String),
}

/// Computes the minimum density and a witness pattern for strip height
/// `height`.
pub fn solve(height: usize, opts: &SolveOptions) -> Result<SolveReport, SolveError> {
    solve_with_progress(height, opts, None)
}

/// [`solve`] with the cycle-mean solver's per-round progress callback.
pub fn solve_with_progress(
    height: usize,
    opts: &SolveOptions,
    progress: Progress,
) -> Result<SolveReport, SolveError> {
    let run = || solve_inner(height, opts, progress);
    if opts.threads == 0 {
        run()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .map_err(|e| SolveError::SelfCheck(format!("thread pool: {e}")))?;
        pool.install(run)
    }
}

fn solve_inner(
    height: usize,
    opts: &SolveOptions,
    progress: Progress,
) -> Result<SolveReport, SolveError> {
    let started = Instant::now();
    let automaton = build_automaton_with_budget(height, opts.mem_budget_mb)?;
    let g = automaton.to_digraph();
    let (n, m) = (g.vertex_count(), g.edge_count());
    let window = if opts.window == 0 { 4 * height + 64 } else { opts.window };

    // The digraph is built; what remains is the solver working set — two
    // distance rows, the λ accumulators, and the predecessor ring.
    let needed = 48 * n as u64 + 16 * m as u64 + 4 * n as u64 * window.min(n) as u64;
    if needed >> 20 > opts.mem_budget_mb {
        return Err(SolveError::WorkingMemory {
            height,
            needed_mb: needed >> 20,
            budget_mb: opts.mem_budget_mb,
        });
    }

    let (mcm, cycle) = solve_mcm(&g, window, progress)?;
    let pattern = automaton.cycle_to_pattern(&cycle.vertices);

    // Nothing below is optional: the pattern must satisfy both independent
    // validity checkers, and its density must reproduce the cycle mean.
    let windowed = verify_periodic_pattern(&pattern);
    let unrolled = verify_window_oracle(&pattern);
    if !windowed.valid || !unrolled.valid {
        return Err(SolveError::SelfCheck(format!(
            "extracted pattern fails verification ({} windowed, {} unrolled violations)",
            windowed.violations.len(),
            unrolled.violations.len()
        )));
    }
    let density = mcm.lambda.div_int(height as i64);
    if density != pattern.density() {
        return Err(SolveError::SelfCheck(format!(
            "pattern density {} disagrees with cycle mean {} over height {height}",
            pattern.density(),
            mcm.lambda
        )));
    }
    let certified = if opts.certify {
        let c = certify_lambda_star(&g, mcm.lambda);
        if !c.is_tight() {
            return Err(SolveError::SelfCheck(format!(
                "feasibility probes do not certify the mean {}: {c:?}",
                mcm.lambda
            )));
        }
        Some(true)
    } else {
        None
    };

    Ok(SolveReport {
        height,
        density,
        pattern,
        cycle_length: cycle.vertices.len(),
        lambda: mcm.lambda,
        vertices: n as u64,
        edges: m as u64,
        seconds: started.elapsed().as_secs_f64(),
        certified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn height_one_reaches_one_half() {
        let r = solve(1, &SolveOptions::default()).unwrap();
        assert_eq!(r.density, Rational::new(1, 2));
        assert_eq!(r.lambda, Rational::new(1, 2));
        assert_eq!(r.cycle_length, r.pattern.len());
        assert_eq!(r.certified, None);
    }

    #[test]
    fn height_two_reaches_three_sevenths() {
        let r = solve(2, &SolveOptions::default()).unwrap();
        assert_eq!(r.density, Rational::new(3, 7));
    }

    #[test]
    fn height_three_reaches_seven_eighteenths() {
        let r = solve(3, &SolveOptions::default()).unwrap();
        assert_eq!(r.density, Rational::new(7, 18));
        assert_eq!(r.lambda, Rational::new(7, 6));
    }

    #[test]
    fn certification_is_reported_when_asked_for() {
        let opts = SolveOptions { certify: true, ..Default::default() };
        assert_eq!(solve(1, &opts).unwrap().certified, Some(true));
        assert_eq!(solve(2, &opts).unwrap().certified, Some(true));
    }

    #[test]
    fn thread_count_does_not_change_the_answer() {
        let one = solve(2, &SolveOptions { threads: 1, ..Default::default() }).unwrap();
        let two = solve(2, &SolveOptions { threads: 2, ..Default::default() }).unwrap();
        assert_eq!(one.density, two.density);
        assert_eq!(one.pattern, two.pattern);
        assert_eq!(one.cycle_length, two.cycle_length);
    }

    #[test]
    fn a_tiny_window_still_solves() {
        let wide = solve(2, &SolveOptions::default()).unwrap();
        let narrow = solve(2, &SolveOptions { window: 1, ..Default::default() }).unwrap();
        assert_eq!(narrow.density, wide.density);
        assert_eq!(narrow.pattern, wide.pattern);
    }

    #[test]
    fn zero_budget_refuses_to_build() {
        match solve(3, &SolveOptions { mem_budget_mb: 0, ..Default::default() }) {
            Err(SolveError::Build(_)) => {}
            other => panic!("expected a budget refusal, got {other:?}"),
        }
    }
}
