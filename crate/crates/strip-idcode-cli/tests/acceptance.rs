//! Acceptance checklist: ten independent checks, one test and one PASS
//! line each (run with `--nocapture` to see the lines).
//!
//! Checks 1–3 and 10 drive the installed binary end to end; the rest call
//! the library directly. Check 4 (height 5 by the full two-pass solver)
//! runs for hours, so it ships opt-in behind `--ignored`; the same value
//! is proved in seconds by the witness route, which stays in the default
//! run here (check 9) and in the library's own integration tests.

use std::process::{Command, Output};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use strip_idcode::mcm::{
    karp_mcm, lambda_feasibility_oracle, witness_cycle_at, Feasibility, WeightedDigraph,
};
use strip_idcode::{
    brute_force_min_density, build_automaton, solve, verify_periodic_pattern, verify_window_oracle,
    BarPattern, ColumnMask, Rational, SolveOptions,
};

fn run_binary(args: &[&str]) -> (Output, Duration) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_strip-idcode"))
        .args(args)
        .output()
        .expect("binary spawns");
    (out, start.elapsed())
}

fn solve_json(k: &str, extra: &[&str]) -> (serde_json::Value, Duration) {
    let mut args = vec!["solve", k, "--format", "json"];
    args.extend_from_slice(extra);
    let (out, took) = run_binary(&args);
    assert!(out.status.success(), "solve {k}: {}", String::from_utf8_lossy(&out.stderr));
    let v = serde_json::from_slice(&out.stdout).expect("valid json");
    (v, took)
}

fn density_of(v: &serde_json::Value) -> Rational {
    Rational::new(v["density"]["num"].as_i64().unwrap(), v["density"]["den"].as_i64().unwrap())
}

#[test]
fn criterion_01_height_one_in_under_a_second() {
    let (v, took) = solve_json("1", &[]);
    assert_eq!(density_of(&v), Rational::new(1, 2));
    assert_eq!(v["cycle_length"], 2);
    assert!(took < Duration::from_secs(1), "took {took:?}");
    println!("criterion 1: PASS — height 1 gives 1/2 with period 2 in {took:?}");
}

#[test]
fn criterion_02_heights_two_and_three_well_under_a_minute() {
    let (v2, t2) = solve_json("2", &[]);
    assert_eq!(density_of(&v2), Rational::new(3, 7));
    assert_eq!(v2["cycle_length"], 7);
    let (v3, t3) = solve_json("3", &[]);
    assert_eq!(density_of(&v3), Rational::new(7, 18));
    assert_eq!(v3["cycle_length"], 12);
    assert!(t2 + t3 < Duration::from_secs(60), "took {t2:?} + {t3:?}");
    println!(
        "criterion 2: PASS — height 2 gives 3/7 (period 7) in {t2:?}, height 3 gives 7/18 (period 12) in {t3:?}"
    );
}

#[test]
fn criterion_03_height_four_within_ten_minutes() {
    let (v, took) = solve_json("4", &[]);
    assert_eq!(density_of(&v), Rational::new(11, 28));
    assert_eq!(v["cycle_length"], 14);
    assert!(took < Duration::from_secs(600), "took {took:?}");
    println!("criterion 3: PASS — height 4 gives 11/28 with period 14 in {took:?}");
}

/// The full two-pass run at height 5 relaxes thirteen million edges for
/// half a million rounds, twice; expect hours. The value it must produce
/// is already proved in seconds by the witness route (see check 9).
#[test]
#[ignore = "hours of runtime; the witness route proves the same value in the default run"]
fn criterion_04_height_five_full_solver() {
    let report = solve(5, &SolveOptions::default()).expect("height 5 solves");
    assert_eq!(report.density, Rational::new(19, 50));
    assert_eq!(report.cycle_length, 10);
    println!("criterion 4: PASS — height 5 gives 19/50 with period 10 in {:.0} s", report.seconds);
}

#[test]
fn criterion_05_brute_force_sweep_matches_the_digraph_answer() {
    // Height 1: every period up to the digraph's own vertex count.
    let g1 = build_automaton(1).unwrap();
    assert_eq!(g1.vertex_count(), 10);
    let lam1 = karp_mcm(&g1.to_digraph()).unwrap().lambda;
    let sweep1 = brute_force_min_density(1, 10).unwrap();
    assert_eq!(lam1.div_int(1), sweep1.density);
    assert_eq!(sweep1.density, Rational::new(1, 2));

    // Height 2: the optimum's period 7 sits inside the sweep bound 8.
    let lam2 = karp_mcm(&build_automaton(2).unwrap().to_digraph()).unwrap().lambda;
    let sweep2 = brute_force_min_density(2, 8).unwrap();
    assert_eq!(lam2.div_int(2), sweep2.density);
    assert_eq!(sweep2.density, Rational::new(3, 7));
    assert_eq!(sweep2.pattern.len(), 7);
    println!("criterion 5: PASS — exhaustive sweeps reproduce 1/2 (height 1) and 3/7 (height 2)");
}

/// Every simple cycle, by brute force: DFS from each start vertex, visiting
/// only vertices with a larger index so each cycle is counted once, at its
/// smallest vertex. Parallel edges collapse to their minimum first.
fn exhaustive_min_cycle_mean(n: usize, edges: &[(u32, u32, i32)]) -> Option<Rational> {
    let mut adj = vec![vec![None::<i32>; n]; n];
    for &(u, v, w) in edges {
        let slot = &mut adj[u as usize][v as usize];
        if slot.is_none_or(|old| w < old) {
            *slot = Some(w);
        }
    }
    fn dfs(
        adj: &[Vec<Option<i32>>],
        start: usize,
        cur: usize,
        visited: u32,
        weight: i64,
        edges_so_far: i64,
        best: &mut Option<Rational>,
    ) {
        for (next, w) in adj[cur].iter().enumerate().skip(start) {
            let Some(w) = *w else { continue };
            if next == start {
                let mean = Rational::new(weight + w as i64, edges_so_far + 1);
                if best.is_none_or(|b| mean < b) {
                    *best = Some(mean);
                }
            } else if visited & (1 << next) == 0 {
                dfs(
                    adj,
                    start,
                    next,
                    visited | (1 << next),
                    weight + w as i64,
                    edges_so_far + 1,
                    best,
                );
            }
        }
    }
    let mut best = None;
    for s in 0..n {
        dfs(&adj, s, s, 1 << s, 0, 0, &mut best);
    }
    best
}

/// The straightforward (n+1)·n dynamic-programming table, evaluated with no
/// rolling rows and no shortcuts.
fn full_table_reference(n: usize, source: u32, edges: &[(u32, u32, i32)]) -> Option<Rational> {
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
            if worst.is_none_or(|w| r > w) {
                worst = Some(r);
            }
        }
        let w = worst.expect("finite last row implies a finite prefix");
        if best.is_none_or(|b| w < b) {
            best = Some(w);
        }
    }
    best
}

#[test]
fn criterion_06_minimum_cycle_mean_on_five_hundred_random_digraphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_97ed);
    for case in 0..500 {
        let n = rng.random_range(2..=12usize);
        let mut perm: Vec<u32> = (0..n as u32).collect();
        perm.shuffle(&mut rng);
        // A permutation cycle keeps the graph strongly connected whatever
        // else gets added.
        let mut edges: Vec<(u32, u32, i32)> =
            (0..n).map(|i| (perm[i], perm[(i + 1) % n], rng.random_range(0..=9))).collect();
        for _ in 0..rng.random_range(0..=2 * n) {
            edges.push((
                rng.random_range(0..n as u32),
                rng.random_range(0..n as u32),
                rng.random_range(0..=9),
            ));
        }
        let g = WeightedDigraph::from_edges(n, perm[0], &edges);
        let lambda = karp_mcm(&g).unwrap_or_else(|e| panic!("case {case}: {e}")).lambda;
        let exhaustive = exhaustive_min_cycle_mean(n, &edges).expect("a cycle exists");
        let table = full_table_reference(n, perm[0], &edges).expect("a cycle exists");
        assert_eq!(lambda, exhaustive, "case {case}: vs simple-cycle enumeration");
        assert_eq!(lambda, table, "case {case}: vs full table");
    }
    println!(
        "criterion 6: PASS — 500 random strongly connected digraphs agree with both references"
    );
}

#[test]
fn criterion_07_verifiers_agree_on_every_short_height_two_pattern() {
    let mut checked = 0u64;
    for len in 1..=6usize {
        for bits in 0u32..1u32 << (2 * len) {
            let cols =
                (0..len).map(|j| ColumnMask::new(((bits >> (2 * j)) & 3) as u16, 2)).collect();
            let p = BarPattern::new(2, cols);
            let windowed = verify_periodic_pattern(&p);
            let unrolled = verify_window_oracle(&p);
            assert_eq!(windowed.valid, unrolled.valid, "disagreement at len {len} bits {bits:#x}");
            assert_eq!(windowed.valid, windowed.violations.is_empty());
            assert_eq!(unrolled.valid, unrolled.violations.is_empty());
            checked += 1;
        }
    }
    assert_eq!(checked, 4 + 16 + 64 + 256 + 1024 + 4096);
    println!(
        "criterion 7: PASS — both checkers agree on all {checked} height-2 patterns up to period 6"
    );
}

#[test]
fn criterion_08_structural_invariants_of_the_small_digraphs() {
    for (k, expect_n) in [(1usize, 10u64), (2, 169), (3, 2598)] {
        let a = build_automaton(k).unwrap();
        let stats = a.stats();
        assert!(stats.vertices <= 1 << (4 * k), "height {k}: vertex bound");
        assert_eq!(stats.vertices, expect_n, "height {k}: exact count");
        assert!(stats.max_in_degree <= 1 << k, "height {k}: in-degree bound");
        assert!(stats.max_out_degree <= 1 << k, "height {k}: out-degree bound");
        assert!(stats.strongly_connected, "height {k}");
        assert!(stats.max_dist_from_source <= 4, "height {k}: source reaches all in 4");
        assert!(stats.max_dist_to_source <= 4, "height {k}: all reach source in 4");

        // A vertex loops on itself exactly when every row is uniform:
        // all four cells occupied or all four free.
        let col_mask = (1u32 << k) - 1;
        for v in 0..a.vertex_count() as u32 {
            let packed = a.vertex_packed(v);
            let uniform = (0..k).all(|r| {
                let row: u32 = (0..4).map(|c| (packed >> (c * k + r)) & 1).sum();
                row == 0 || row == 4
            });
            assert_eq!(a.edge_between(v, v).is_some(), uniform, "height {k} vertex {v}");
        }

        // Every edge carries the occupancy count of the column it appends,
        // and no ordered pair appears twice.
        let mut dump = Vec::new();
        a.write_edges(&mut dump).unwrap();
        let mut seen = std::collections::HashSet::new();
        let mut edge_lines = 0u64;
        for line in String::from_utf8(dump).unwrap().lines() {
            let f: Vec<&str> = line.split_whitespace().collect();
            let (u, v): (u32, u32) = (f[0].parse().unwrap(), f[1].parse().unwrap());
            let w: u32 = f[2].parse().unwrap();
            let mask = u32::from_str_radix(f[3], 16).unwrap();
            assert!(mask <= col_mask, "height {k}: column fits the height");
            assert_eq!(w, mask.count_ones(), "height {k}: weight counts the new column");
            assert!(seen.insert((u, v)), "height {k}: parallel edge {u}->{v}");
            edge_lines += 1;
        }
        assert_eq!(edge_lines, stats.edges);
    }
    println!("criterion 8: PASS — heights 1..3 satisfy all digraph invariants");
}

#[test]
fn criterion_09_densities_sit_inside_the_published_bounds() {
    // Heights 1..4 by the solver; height 5 by the witness route, which is
    // a complete proof on its own: the feasibility fixpoint shows nothing
    // lies below 19/10, and the returned cycle attains it.
    let mut densities = Vec::new();
    for k in 1..=4usize {
        densities.push(solve(k, &SolveOptions::default()).unwrap().density);
    }
    let g5 = build_automaton(5).unwrap();
    let w5 = witness_cycle_at(&g5.to_digraph(), Rational::new(19, 10))
        .expect("a cycle of mean 19/10 exists at height 5");
    assert_eq!(w5.mean, Rational::new(19, 10));
    densities.push(w5.mean.div_int(5));

    for (i, &d) in densities.iter().enumerate() {
        let k = (i + 1) as i64;
        let lower = Rational::new(7 * k + 2, 20 * k); // 7/20 + 1/(20k)
        let upper = Rational::new(7 * k + 6, 20 * k).min(Rational::new(2, 5));
        assert!(lower <= d, "height {k}: {d} below {lower}");
        if k <= 2 {
            // The 2/5 ceiling genuinely fails below height 3: the proven
            // minima are 1/2 and 3/7, both above it (checks 1, 2, and 5
            // establish them independently). Pin the violation rather than
            // skip it.
            assert!(d > upper, "height {k}: {d} unexpectedly within {upper}");
        } else {
            assert!(d <= upper, "height {k}: {d} above {upper}");
        }
    }
    assert_eq!(
        densities,
        [
            Rational::new(1, 2),
            Rational::new(3, 7),
            Rational::new(7, 18),
            Rational::new(11, 28),
            Rational::new(19, 50),
        ]
    );
    // Width is not monotone: height 4 is denser than both neighbors.
    assert!(densities[3] > densities[2]);
    assert!(densities[3] > densities[4]);
    println!(
        "criterion 9: PASS — the 7/20 + 1/(20k) floor holds at every height; the 2/5 ceiling \
         holds from height 3 up (1/2 and 3/7 genuinely exceed it); height 4 breaks monotonicity"
    );
}

#[test]
fn criterion_10_feasibility_probes_certify_the_small_heights() {
    for k in 1..=3usize {
        // End to end through the binary.
        let (v, _) = solve_json(&k.to_string(), &["--certify"]);
        assert_eq!(v["certified"], true, "height {k}");

        // And at the library level: the probe holds still at the minimum
        // and reports a strictly better cycle one 1/n² step up. One step
        // down nothing changes, because nothing at all lies below the
        // minimum — the probe must stay at its fixpoint there too.
        let g = build_automaton(k).unwrap().to_digraph();
        let lambda = karp_mcm(&g).unwrap().lambda;
        let nn = (g.vertex_count() * g.vertex_count()) as i64;
        let step =
            |dir: i64| Rational::new(lambda.num() * nn + dir * lambda.den(), lambda.den() * nn);
        assert_eq!(lambda_feasibility_oracle(&g, lambda), Feasibility::TightOrAbove);
        assert_eq!(lambda_feasibility_oracle(&g, step(1)), Feasibility::Below);
        assert_eq!(lambda_feasibility_oracle(&g, step(-1)), Feasibility::TightOrAbove);
    }
    assert_eq!(
        karp_mcm(&build_automaton(3).unwrap().to_digraph()).unwrap().lambda,
        Rational::new(7, 6)
    );
    println!("criterion 10: PASS — certification brackets the minimum for heights 1..3");
}
