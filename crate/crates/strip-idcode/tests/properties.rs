//! Randomized cross-checks: pattern-level invariances driven by proptest,
//! digraph-level agreement between the rolling two-pass solver and a plain
//! full-table reference on seeded random graphs.

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use strip_idcode::mcm::{
    extract_min_cycle, karp_mcm, lambda_feasibility_oracle, solve_mcm, verify_cycle_mean,
    witness_cycle_at, Feasibility, McmError, WeightedDigraph,
};
use strip_idcode::{
    solve, verify_periodic_pattern, verify_window_oracle, BarPattern, ColumnMask, Rational,
    SolveOptions,
};

fn arb_pattern(rows: usize, max_len: usize) -> impl Strategy<Value = BarPattern> {
    (1..=max_len)
        .prop_flat_map(move |len| proptest::collection::vec(0u16..(1 << rows) as u16, len))
        .prop_map(move |cols| {
            BarPattern::new(rows, cols.into_iter().map(|b| ColumnMask::new(b, rows)).collect())
        })
}

fn rotate(p: &BarPattern, shift: usize) -> BarPattern {
    let l = p.len();
    BarPattern::new(p.rows(), (0..l).map(|j| p.column((j + shift) % l)).collect())
}

proptest! {
    /// The two checkers implement one definition via disjoint code paths;
    /// they must agree pattern for pattern.
    #[test]
    fn verifiers_agree_on_random_height_three_patterns(p in arb_pattern(3, 8)) {
        prop_assert_eq!(verify_periodic_pattern(&p).valid, verify_window_oracle(&p).valid);
    }

    /// The strip looks the same upside down and in a mirror, so validity
    /// cannot depend on either.
    #[test]
    fn validity_is_mirror_invariant(p in arb_pattern(3, 7)) {
        let v = verify_window_oracle(&p).valid;
        prop_assert_eq!(verify_window_oracle(&p.mirror_rows()).valid, v);
        prop_assert_eq!(verify_window_oracle(&p.mirror_columns()).valid, v);
    }

    /// Shifting where a period starts does not change the infinite strip.
    #[test]
    fn validity_is_rotation_invariant(p in arb_pattern(2, 8), shift in 0usize..8) {
        let v = verify_periodic_pattern(&p).valid;
        prop_assert_eq!(verify_periodic_pattern(&rotate(&p, shift % p.len())).valid, v);
    }

    /// Occupying more cells never breaks validity: traces only grow, and
    /// grown traces stay nonempty and stay distinguishable.
    #[test]
    fn supersets_of_a_valid_pattern_stay_valid(extra in proptest::collection::vec(0u16..8, 12), shift in 0usize..12) {
        static BASE: std::sync::OnceLock<BarPattern> = std::sync::OnceLock::new();
        let base = BASE.get_or_init(|| solve(3, &SolveOptions::default()).unwrap().pattern);
        let rotated = rotate(base, shift % base.len());
        let cols = (0..rotated.len())
            .map(|j| ColumnMask::new(rotated.column(j).bits() | extra[j], 3))
            .collect();
        let bigger = BarPattern::new(3, cols);
        prop_assert!(verify_window_oracle(&bigger).valid);
        prop_assert!(verify_periodic_pattern(&bigger).valid);
    }
}

/// Plain (n+1)·n table evaluation of the same minimum, kept deliberately
/// naive: no rolling rows, no early exits.
fn full_table_lambda(n: usize, source: u32, edges: &[(u32, u32, i32)]) -> Option<Rational> {
    const INF: i64 = i64::MAX;
    let mut f = vec![vec![INF; n]; n + 1];
    f[0][source as usize] = 0;
    for round in 1..=n {
        for &(u, v, w) in edges {
            if f[round - 1][u as usize] != INF {
                let cand = f[round - 1][u as usize] + w as i64;
                if cand < f[round][v as usize] {
                    f[round][v as usize] = cand;
                }
            }
        }
    }
    let mut best: Option<Rational> = None;
    for (v, &f_n) in f[n].iter().enumerate() {
        if f_n == INF {
            continue;
        }
        let mut worst: Option<Rational> = None;
        for (k, row) in f.iter().take(n).enumerate() {
            if row[v] == INF {
                continue;
            }
            let r = Rational::new(f_n - row[v], (n - k) as i64);
            if worst.as_ref().is_none_or(|w| r > *w) {
                worst = Some(r);
            }
        }
        let w = worst.expect("finite F_n implies a finite prefix row");
        if best.as_ref().is_none_or(|b| w < *b) {
            best = Some(w);
        }
    }
    best
}

/// A digraph guaranteed strongly connected by a random permutation cycle,
/// plus random extra edges (parallels and self-loops included).
fn random_strong_graph(rng: &mut ChaCha8Rng) -> (usize, u32, Vec<(u32, u32, i32)>) {
    let n = rng.random_range(2..=40usize);
    let mut perm: Vec<u32> = (0..n as u32).collect();
    perm.shuffle(rng);
    let mut edges: Vec<(u32, u32, i32)> =
        (0..n).map(|i| (perm[i], perm[(i + 1) % n], rng.random_range(0..=20))).collect();
    for _ in 0..rng.random_range(0..4 * n) {
        edges.push((
            rng.random_range(0..n as u32),
            rng.random_range(0..n as u32),
            rng.random_range(0..=20),
        ));
    }
    (n, perm[0], edges)
}

#[test]
fn rolling_solver_matches_the_full_table_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_cafe);
    for case in 0..200 {
        let (n, source, edges) = random_strong_graph(&mut rng);
        let g = WeightedDigraph::from_edges(n, source, &edges);
        let lambda = karp_mcm(&g).unwrap_or_else(|e| panic!("case {case}: {e}")).lambda;
        let reference = full_table_lambda(n, source, &edges).expect("graph has a cycle");
        assert_eq!(lambda, reference, "case {case}: rolling vs full table");
    }
}

#[test]
fn extracted_cycles_attain_lambda_for_every_window_size() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xd15c_0bee);
    for case in 0..60 {
        let (n, source, edges) = random_strong_graph(&mut rng);
        let g = WeightedDigraph::from_edges(n, source, &edges);
        let r = karp_mcm(&g).unwrap();
        for window in [1usize, 3, n] {
            let c = extract_min_cycle(&g, &r, window)
                .unwrap_or_else(|e| panic!("case {case} window {window}: {e}"));
            assert_eq!(verify_cycle_mean(&g, &c.vertices), r.lambda, "case {case} w {window}");
            assert!(c.vertices.len() <= n);
        }
        let (r2, c2) = solve_mcm(&g, 4, None).unwrap();
        assert_eq!(r2.lambda, r.lambda);
        assert_eq!(verify_cycle_mean(&g, &c2.vertices), r.lambda);
    }
}

#[test]
fn probes_and_witnesses_bracket_lambda_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0b5e_55ed);
    for case in 0..60 {
        let (n, source, edges) = random_strong_graph(&mut rng);
        let g = WeightedDigraph::from_edges(n, source, &edges);
        let lambda = karp_mcm(&g).unwrap().lambda;
        let below = Rational::new(lambda.num() - lambda.den(), lambda.den()); // λ - 1
        let above = Rational::new(lambda.num() + lambda.den(), lambda.den()); // λ + 1
        assert_eq!(lambda_feasibility_oracle(&g, lambda), Feasibility::TightOrAbove, "case {case}");
        assert_eq!(lambda_feasibility_oracle(&g, below), Feasibility::TightOrAbove, "case {case}");
        assert_eq!(lambda_feasibility_oracle(&g, above), Feasibility::Below, "case {case}");

        let w = witness_cycle_at(&g, lambda).unwrap_or_else(|| panic!("case {case}: no witness"));
        assert_eq!(w.mean, lambda);
        assert_eq!(verify_cycle_mean(&g, &w.vertices), lambda);
        assert_eq!(witness_cycle_at(&g, above), None, "case {case}: nothing above");
        if below.num() >= 0 {
            assert_eq!(witness_cycle_at(&g, below), None, "case {case}: nothing below");
        }
    }
}

/// The stats struct serializes with stable field names; downstream JSON
/// consumers key off these exact strings.
#[test]
fn stats_serialize_with_stable_field_names() {
    let stats = strip_idcode::build_automaton(1).unwrap().stats();
    let v = serde_json::to_value(&stats).unwrap();
    let obj = v.as_object().unwrap();
    for field in [
        "height",
        "vertices",
        "edges",
        "min_in_degree",
        "max_in_degree",
        "min_out_degree",
        "max_out_degree",
        "self_loops",
        "strongly_connected",
        "max_dist_from_source",
        "max_dist_to_source",
    ] {
        assert!(obj.contains_key(field), "missing {field}");
    }
    assert_eq!(v["vertices"], 10);
    assert_eq!(v["edges"], 15);
}

#[test]
fn unreachable_and_acyclic_inputs_error_cleanly() {
    // Two components: 0 <-> 1 strongly connected, 2 isolated.
    let g = WeightedDigraph::from_edges(3, 0, &[(0, 1, 1), (1, 0, 1)]);
    assert_eq!(karp_mcm(&g), Err(McmError::Unreachable { vertex: 2 }));
    // A reachable path with no way back.
    let dag = WeightedDigraph::from_edges(3, 0, &[(0, 1, 1), (1, 2, 1)]);
    assert_eq!(karp_mcm(&dag), Err(McmError::NoCycle));
}
