//! Exhaustive reference solver for small heights and short periods.
//!
//! Sweeps every pattern of every period up to a bound, keeps the valid ones
//! (validity decided by [`verify_window_oracle`], the checker that shares no
//! code with the transition-digraph pipeline), and returns the sparsest.
//! Exponential in `height · period`, so this is a cross-check for the real
//! solver, not a way to compute anything new — but within its range its
//! answer is beyond argument.

use thiserror::Error;

use crate::pattern::BarPattern;
use crate::rational::{cmp_frac, Rational};
use crate::verify::verify_window_oracle;

/// Default cap on how many candidate patterns a sweep may visit.
pub const DEFAULT_CANDIDATE_BUDGET: u64 = 1 << 26;

/// The sweep would be too large to finish in reasonable time.
#[derive(Debug, Error, PartialEq, Eq)]
#[error(
    "sweeping height {height} through period {max_period} visits {candidates} \
     candidate patterns, over the budget of {budget}"
)]
pub struct SweepTooLarge {
    pub height: usize,
    pub max_period: usize,
    pub candidates: u128,
    pub budget: u64,
}

/// The sparsest valid pattern a sweep found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepResult {
    /// Occupied cells divided by all cells, in lowest terms.
    pub density: Rational,
    /// The first pattern attaining it, ordered by period then packed value.
    pub pattern: BarPattern,
}

/// Minimum density over all valid patterns of period `1..=max_period`,
/// under the default candidate budget.
pub fn brute_force_min_density(
    height: usize,
    max_period: usize,
) -> Result<SweepResult, SweepTooLarge> {
    brute_force_with_budget(height, max_period, DEFAULT_CANDIDATE_BUDGET)
}

/// [`brute_force_min_density`] with an explicit candidate budget.
pub fn brute_force_with_budget(
    height: usize,
    max_period: usize,
    budget: u64,
) -> Result<SweepResult, SweepTooLarge> {
    assert!(height >= 1 && max_period >= 1);
    let candidates: u128 = (1..=max_period).map(|l| 1u128 << (height * l).min(127)).sum();
    if candidates > budget as u128 {
        return Err(SweepTooLarge { height, max_period, candidates, budget });
    }

    let mut best: Option<(Rational, BarPattern)> = None;
    for l in 1..=max_period {
        let cells = (height * l) as i64;
        for bits in 0..1u64 << (height * l) {
            // A pattern can only improve on the incumbent if its raw count
            // does; this skips the sweep's bulk without touching validity.
            if let Some((d, _)) = &best {
                if cmp_frac(bits.count_ones() as i64, cells, d.num(), d.den())
                    != std::cmp::Ordering::Less
                {
                    continue;
                }
            }
            let p = BarPattern::from_packed(height, l, bits);
            if verify_window_oracle(&p).valid {
                best = Some((p.density(), p));
            }
        }
    }
    let (density, pattern) =
        best.expect("the fully occupied pattern is valid at every period, so some pattern wins");
    Ok(SweepResult { density, pattern })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn height_one_period_one_is_the_single_occupied_column() {
        let r = brute_force_min_density(1, 1).unwrap();
        assert_eq!(r.density, Rational::from_integer(1));
        assert_eq!(r.pattern.to_text(), "#");
    }

    #[test]
    fn height_one_halves_at_period_two() {
        let r = brute_force_min_density(1, 4).unwrap();
        assert_eq!(r.density, Rational::new(1, 2));
        assert_eq!(r.pattern.to_text(), "#.");
    }

    #[test]
    fn height_two_needs_period_seven_to_reach_three_sevenths() {
        let shallow = brute_force_min_density(2, 6).unwrap();
        assert!(shallow.density > Rational::new(3, 7));
        let r = brute_force_min_density(2, 7).unwrap();
        assert_eq!(r.density, Rational::new(3, 7));
        assert_eq!(r.pattern.len(), 7);
    }

    #[test]
    fn oversized_sweeps_are_refused_with_sizes() {
        let err = brute_force_with_budget(3, 30, 1 << 20).unwrap_err();
        assert_eq!(err.height, 3);
        assert_eq!(err.budget, 1 << 20);
        assert!(err.candidates > 1 << 20);
    }
}
