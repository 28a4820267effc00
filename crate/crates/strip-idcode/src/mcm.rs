//! Minimum cycle mean of a weighted digraph, exactly.
//!
//! For a digraph with `n` vertices and a source `s` from which every vertex
//! is reachable, let `F_k(v)` be the minimum weight of a walk from `s` to
//! `v` with exactly `k` edges (`∞` if none exists). The minimum mean over
//! all cycles reachable from `s` is
//!
//! ```text
//! λ* = min over v with F_n(v) < ∞  of  max over 0 <= k < n with F_k(v) < ∞
//!      of  (F_n(v) - F_k(v)) / (n - k)
//! ```
//!
//! and the recurrence `F_k(v) = min over edges (u,v) of F_{k-1}(u) + w(u,v)`
//! evaluates it in `O(n·m)` time. Only two length-`n` rows of `F` are alive
//! at any moment:
//!
//! * pass 1 rolls the recurrence up to round `n` and records `F_n`;
//! * pass 2 rolls it again, folding each round `k` into a running per-vertex
//!   maximum of `(F_n(v) - F_k(v)) / (n - k)`.
//!
//! Fractions are never divided out: comparisons cross-multiply in 128 bits,
//! so results are exact. Ties break deterministically (lowest vertex index,
//! lowest predecessor index), which makes every output — including the
//! extracted cycle — reproducible run to run and independent of thread
//! count.
//!
//! A cycle attaining λ* is recovered by re-running pass 1 while recording,
//! for the last `W` rounds only, the minimizing predecessor of each vertex.
//! Walking those references back from the minimizing vertex must close a
//! cycle once `W` vertices are visited twice somewhere; every cycle lying on
//! a minimum-weight length-`n` walk to the minimizing vertex has mean
//! exactly λ*, so the first cycle the walk closes is already optimal. If the
//! window holds no repeat yet, it is doubled (capped at `n`, where a repeat
//! is guaranteed by pigeonhole).

use std::cmp::Ordering;

use rayon::prelude::*;
use thiserror::Error;

use crate::rational::{cmp_frac, Rational};

const INF: i64 = i64::MAX;
const INF128: i128 = i128::MAX;
const NO_PRED: u32 = u32::MAX;

/// A digraph with integer edge weights, stored as incoming adjacency in
/// compressed sparse rows: edges into `v` occupy `row_ptr[v]..row_ptr[v+1]`
/// of the `src`/`weight` arrays, sorted by `(src, weight)`.
///
/// Self-loops and parallel edges are allowed. All algorithms here require
/// every vertex to be reachable from `source`.
pub struct WeightedDigraph {
    n: usize,
    source: u32,
    row_ptr: Vec<usize>,
    src: Vec<u32>,
    weight: Vec<i32>,
}

impl WeightedDigraph {
    /// Builds a digraph from an edge list of `(from, to, weight)` triples.
    ///
    /// Panics if `n == 0`, `source >= n`, or an endpoint is out of range.
    pub fn from_edges(n: usize, source: u32, edges: &[(u32, u32, i32)]) -> Self {
        assert!(n > 0, "digraph needs at least one vertex");
        assert!((source as usize) < n, "source out of range");
        let mut incoming: Vec<Vec<(u32, i32)>> = vec![Vec::new(); n];
        for &(u, v, w) in edges {
            assert!((u as usize) < n && (v as usize) < n, "edge endpoint out of range");
            incoming[v as usize].push((u, w));
        }
        let mut row_ptr = Vec::with_capacity(n + 1);
        let mut src = Vec::with_capacity(edges.len());
        let mut weight = Vec::with_capacity(edges.len());
        row_ptr.push(0);
        for list in &mut incoming {
            list.sort_unstable();
            for &(u, w) in list.iter() {
                src.push(u);
                weight.push(w);
            }
            row_ptr.push(src.len());
        }
        WeightedDigraph { n, source, row_ptr, src, weight }
    }

    /// CSR parts straight from a construction that already guarantees the
    /// sort order.
    pub(crate) fn from_csr(
        n: usize,
        source: u32,
        row_ptr: Vec<usize>,
        src: Vec<u32>,
        weight: Vec<i32>,
    ) -> Self {
        debug_assert_eq!(row_ptr.len(), n + 1);
        debug_assert_eq!(*row_ptr.last().unwrap(), src.len());
        debug_assert_eq!(src.len(), weight.len());
        debug_assert!((0..n).all(|v| row_ptr[v] <= row_ptr[v + 1]));
        WeightedDigraph { n, source, row_ptr, src, weight }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.src.len()
    }

    pub fn source(&self) -> u32 {
        self.source
    }

    /// Edges into `v` as `(source, weight)` pairs, sorted by source.
    pub fn incoming(&self, v: u32) -> impl Iterator<Item = (u32, i32)> + '_ {
        let r = self.row_ptr[v as usize]..self.row_ptr[v as usize + 1];
        r.map(move |e| (self.src[e], self.weight[e]))
    }

    /// Minimum weight among parallel `(u, v)` edges, if any edge exists.
    fn min_edge_weight(&self, u: u32, v: u32) -> Option<i32> {
        let lo = self.row_ptr[v as usize];
        let hi = self.row_ptr[v as usize + 1];
        let at = lo + self.src[lo..hi].partition_point(|&s| s < u);
        (at < hi && self.src[at] == u).then(|| self.weight[at])
    }
}

/// Errors from the cycle-mean routines.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum McmError {
    /// A vertex never becomes reachable from the source; the input violates
    /// the reachability contract.
    #[error("vertex {vertex} is not reachable from the source")]
    Unreachable { vertex: u32 },
    /// No cycle is reachable from the source, so no cycle mean exists.
    #[error("the digraph has no reachable cycle")]
    NoCycle,
    /// The back-reference window grew to the full round count and still
    /// closed no cycle of mean λ*. This cannot happen for a correct result;
    /// it indicates a bug rather than bad input.
    #[error("internal error: no minimum-mean cycle found at full window size")]
    WindowExhausted,
}

/// The minimum cycle mean, with the pair of walk weights that witnesses it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct McmResult {
    /// λ* in lowest terms.
    pub lambda: Rational,
    /// Unreduced witness numerator `F_n(v) - F_k(v)` at the minimizing `v`.
    pub certificate_num: i64,
    /// Unreduced witness denominator `n - k`.
    pub certificate_den: i64,
    /// The minimizing vertex (lowest index among ties).
    pub argmin_vertex: u32,
}

/// A cycle attaining the minimum mean.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleSolution {
    /// The cycle as vertex indices; the edge from the last entry back to the
    /// first closes it. No vertex repeats, so the length is at most `n`.
    pub vertices: Vec<u32>,
    /// Total edge weight around the cycle.
    pub total_weight: i64,
    /// `total_weight / vertices.len()`, reduced; equals λ*.
    pub mean: Rational,
}

/// Where a long run currently is; see [`karp_mcm_with_progress`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum McmPass {
    /// Pass 1 and any extraction re-runs: rolling the recurrence forward.
    Forward,
    /// Pass 2: folding rounds into the per-vertex maxima.
    Scan,
}

/// Progress callback: invoked once per round with the pass and the round
/// index out of `total`.
pub type Progress<'a> = Option<&'a (dyn Fn(McmPass, usize, usize) + Sync)>;

/// Back references for the last `rounds` rounds: `data[row * n + v]` is the
/// predecessor of `v` at round `first_round + row`.
struct PredRing {
    n: usize,
    first_round: usize,
    data: Vec<u32>,
}

impl PredRing {
    fn new(n: usize, rounds: usize) -> Self {
        assert!(rounds >= 1 && rounds <= n);
        PredRing { n, first_round: n - rounds + 1, data: vec![NO_PRED; rounds * n] }
    }

    fn rounds(&self) -> usize {
        self.data.len() / self.n
    }

    fn row_mut(&mut self, round: usize) -> &mut [u32] {
        let row = round - self.first_round;
        &mut self.data[row * self.n..(row + 1) * self.n]
    }

    fn pred(&self, round: usize, v: u32) -> u32 {
        let row = round - self.first_round;
        self.data[row * self.n + v as usize]
    }
}

/// One synchronous round of the recurrence: `next[v] = min over edges (u,v)
/// of cur[u] + w`, with `∞` kept out of the arithmetic.
fn relax_round(g: &WeightedDigraph, cur: &[i64], next: &mut [i64]) {
    let (row_ptr, src, weight) = (&g.row_ptr, &g.src, &g.weight);
    next.par_iter_mut().enumerate().with_min_len(1 << 12).for_each(|(v, out)| {
        let mut best = INF;
        for e in row_ptr[v]..row_ptr[v + 1] {
            let c = cur[src[e] as usize];
            if c == INF {
                continue;
            }
            let cand = c + weight[e] as i64;
            if cand < best {
                best = cand;
            }
        }
        *out = best;
    });
}

/// Like [`relax_round`], also recording the minimizing predecessor (lowest
/// source index among ties) of every vertex that is reachable this round.
fn relax_round_preds(g: &WeightedDigraph, cur: &[i64], next: &mut [i64], preds: &mut [u32]) {
    let (row_ptr, src, weight) = (&g.row_ptr, &g.src, &g.weight);
    next.par_iter_mut().zip(preds.par_iter_mut()).enumerate().with_min_len(1 << 12).for_each(
        |(v, (out, pred))| {
            let mut best = INF;
            let mut from = NO_PRED;
            for e in row_ptr[v]..row_ptr[v + 1] {
                let c = cur[src[e] as usize];
                if c == INF {
                    continue;
                }
                let cand = c + weight[e] as i64;
                if cand < best {
                    best = cand;
                    from = src[e];
                }
            }
            *out = best;
            *pred = from;
        },
    );
}

/// Pass 1: rolls the recurrence to round `n`, returning `F_n` and, for each
/// vertex, whether it was reachable at any round (reachability from the
/// source in the ordinary sense). Optionally records predecessors for the
/// rounds a [`PredRing`] covers.
fn forward_pass(
    g: &WeightedDigraph,
    mut ring: Option<&mut PredRing>,
    progress: Progress,
) -> (Vec<i64>, Vec<bool>) {
    let n = g.n;
    let mut cur = vec![INF; n];
    let mut next = vec![INF; n];
    cur[g.source as usize] = 0;
    let mut ever = vec![false; n];
    ever[g.source as usize] = true;
    for round in 1..=n {
        match ring {
            Some(ref mut r) if round >= r.first_round => {
                relax_round_preds(g, &cur, &mut next, r.row_mut(round));
            }
            _ => relax_round(g, &cur, &mut next),
        }
        std::mem::swap(&mut cur, &mut next);
        for (e, &f) in ever.iter_mut().zip(cur.iter()) {
            *e |= f != INF;
        }
        if let Some(cb) = progress {
            cb(McmPass::Forward, round, n);
        }
    }
    (cur, ever)
}

/// Pass 2: folds every round into the per-vertex maxima and takes the
/// minimum. `f_n` must come from [`forward_pass`] on the same digraph.
fn lambda_scan(
    g: &WeightedDigraph,
    f_n: &[i64],
    progress: Progress,
) -> Result<McmResult, McmError> {
    let n = g.n;
    if f_n.iter().all(|&x| x == INF) {
        return Err(McmError::NoCycle);
    }
    let mut cur = vec![INF; n];
    let mut next = vec![INF; n];
    cur[g.source as usize] = 0;
    // (numerator, denominator) of the running maximum; denominator 0 marks
    // "no finite round seen yet".
    let mut lam: Vec<(i64, i64)> = vec![(0, 0); n];
    for k in 0..n {
        let den = (n - k) as i64;
        lam.par_iter_mut().zip(cur.par_iter()).zip(f_n.par_iter()).with_min_len(1 << 12).for_each(
            |((slot, &fk), &fn_v)| {
                if fn_v == INF || fk == INF {
                    return;
                }
                let num = fn_v - fk;
                if slot.1 == 0 || cmp_frac(num, den, slot.0, slot.1) == Ordering::Greater {
                    *slot = (num, den);
                }
            },
        );
        if k + 1 < n {
            relax_round(g, &cur, &mut next);
            std::mem::swap(&mut cur, &mut next);
        }
        if let Some(cb) = progress {
            cb(McmPass::Scan, k + 1, n);
        }
    }
    let mut best: Option<(i64, i64, u32)> = None;
    for (v, &(num, den)) in lam.iter().enumerate() {
        if den == 0 {
            debug_assert_eq!(f_n[v], INF, "finite F_n without any finite F_k");
            continue;
        }
        let better = match best {
            None => true,
            Some((bn, bd, _)) => cmp_frac(num, den, bn, bd) == Ordering::Less,
        };
        if better {
            best = Some((num, den, v as u32));
        }
    }
    let (num, den, v) = best.expect("some vertex has finite F_n");
    Ok(McmResult {
        lambda: Rational::new(num, den),
        certificate_num: num,
        certificate_den: den,
        argmin_vertex: v,
    })
}

fn ensure_reachable(ever: &[bool]) -> Result<(), McmError> {
    match ever.iter().position(|&b| !b) {
        Some(v) => Err(McmError::Unreachable { vertex: v as u32 }),
        None => Ok(()),
    }
}

/// The minimum cycle mean of `g`, exactly.
///
/// Requires every vertex to be reachable from the source; a digraph with no
/// reachable cycle yields [`McmError::NoCycle`].
pub fn karp_mcm(g: &WeightedDigraph) -> Result<McmResult, McmError> {
    karp_mcm_with_progress(g, None)
}

/// [`karp_mcm`] with a per-round progress callback for long runs.
pub fn karp_mcm_with_progress(
    g: &WeightedDigraph,
    progress: Progress,
) -> Result<McmResult, McmError> {
    let (f_n, ever) = forward_pass(g, None, progress);
    ensure_reachable(&ever)?;
    lambda_scan(g, &f_n, progress)
}

/// Walks back references from the minimizing vertex; the first closed cycle
/// whose mean equals λ* is returned.
fn try_extract(g: &WeightedDigraph, result: &McmResult, ring: &PredRing) -> Option<CycleSolution> {
    let n = g.n;
    // walk[i] is the vertex at round n - i; seen[v] its first position.
    let mut seen = vec![u32::MAX; n];
    let mut walk: Vec<u32> = Vec::with_capacity(ring.rounds() + 1);
    let mut v = result.argmin_vertex;
    seen[v as usize] = 0;
    walk.push(v);
    for round in (ring.first_round..=n).rev() {
        let u = ring.pred(round, v);
        debug_assert_ne!(u, NO_PRED, "walk left the reachable region");
        if u == NO_PRED {
            return None;
        }
        let first = seen[u as usize];
        if first != u32::MAX {
            // walk[first] == u: the segment from there to here closes a
            // cycle; forward order is u followed by the segment reversed.
            let mut vertices = Vec::with_capacity(walk.len() - first as usize);
            vertices.push(u);
            vertices.extend(walk[first as usize + 1..].iter().rev());
            let total_weight = walk_weight(g, &vertices);
            let mean = Rational::new(total_weight, vertices.len() as i64);
            if mean == result.lambda {
                return Some(CycleSolution { vertices, total_weight, mean });
            }
        } else {
            seen[u as usize] = walk.len() as u32;
        }
        walk.push(u);
        v = u;
    }
    None
}

/// Finds a cycle of mean exactly λ*, given the result of [`karp_mcm`] on the
/// same digraph.
///
/// `window` is the number of trailing rounds to record back references for;
/// each attempt re-rolls pass 1, and the window doubles until a cycle
/// closes (guaranteed at window `n`).
pub fn extract_min_cycle(
    g: &WeightedDigraph,
    result: &McmResult,
    window: usize,
) -> Result<CycleSolution, McmError> {
    extract_min_cycle_with_progress(g, result, window, None)
}

/// [`extract_min_cycle`] with a per-round progress callback.
pub fn extract_min_cycle_with_progress(
    g: &WeightedDigraph,
    result: &McmResult,
    window: usize,
    progress: Progress,
) -> Result<CycleSolution, McmError> {
    let n = g.n;
    let mut w = window.clamp(1, n);
    loop {
        let mut ring = PredRing::new(n, w);
        forward_pass(g, Some(&mut ring), progress);
        if let Some(cycle) = try_extract(g, result, &ring) {
            debug_assert!(cycle.vertices.len() <= n);
            return Ok(cycle);
        }
        if w == n {
            return Err(McmError::WindowExhausted);
        }
        w = (w * 2).min(n);
    }
}

/// Minimum cycle mean plus a witness cycle in one call, sharing the forward
/// pass between the two whenever the first window already closes a cycle.
pub fn solve_mcm(
    g: &WeightedDigraph,
    window: usize,
    progress: Progress,
) -> Result<(McmResult, CycleSolution), McmError> {
    let n = g.n;
    let w0 = window.clamp(1, n);
    let mut ring = PredRing::new(n, w0);
    let (f_n, ever) = forward_pass(g, Some(&mut ring), progress);
    ensure_reachable(&ever)?;
    let result = lambda_scan(g, &f_n, progress)?;
    if let Some(cycle) = try_extract(g, &result, &ring) {
        return Ok((result, cycle));
    }
    if w0 == n {
        return Err(McmError::WindowExhausted);
    }
    let cycle = extract_min_cycle_with_progress(g, &result, w0 * 2, progress)?;
    Ok((result, cycle))
}

/// Total weight of a closed walk, taking the cheapest edge wherever parallel
/// edges exist (which is the edge every relaxation in this module uses).
///
/// Panics if some consecutive pair — including last back to first — is not
/// an edge of `g`.
fn walk_weight(g: &WeightedDigraph, cycle: &[u32]) -> i64 {
    assert!(!cycle.is_empty(), "empty vertex sequence is not a closed walk");
    let mut total = 0i64;
    for (i, &u) in cycle.iter().enumerate() {
        let v = cycle[(i + 1) % cycle.len()];
        let w = g
            .min_edge_weight(u, v)
            .unwrap_or_else(|| panic!("({u}, {v}) is not an edge: sequence is not a closed walk"));
        total += w as i64;
    }
    total
}

/// Recomputes the mean of a cycle directly from the digraph, independently
/// of how the cycle was found. Panics if the sequence is not a closed walk.
pub fn verify_cycle_mean(g: &WeightedDigraph, cycle: &[u32]) -> Rational {
    Rational::new(walk_weight(g, cycle), cycle.len() as i64)
}

/// Answer of a feasibility probe at a query mean `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Feasibility {
    /// Some reachable cycle has mean strictly below `q`.
    Below,
    /// No reachable cycle has mean below `q`; the minimum mean is `q` or
    /// larger.
    TightOrAbove,
}

/// Decides whether any reachable cycle has mean `< q`, independently of the
/// cycle-mean computation: each edge weight `w` becomes `w·den(q) − num(q)`,
/// making a cycle's reduced total negative exactly when its mean is below
/// `q`; a Bellman–Ford sweep from the source then looks for a negative
/// cycle.
pub fn lambda_feasibility_oracle(g: &WeightedDigraph, q: Rational) -> Feasibility {
    match bellman_ford_reduced(g, q.num() as i128, q.den() as i128) {
        Some(_) => Feasibility::TightOrAbove,
        None => Feasibility::Below,
    }
}

fn feasibility_probe(g: &WeightedDigraph, num: i128, den: i128) -> Feasibility {
    match bellman_ford_reduced(g, num, den) {
        Some(_) => Feasibility::TightOrAbove,
        None => Feasibility::Below,
    }
}

/// Shortest reduced-weight walk distances from the source, or `None` if a
/// reachable negative cycle makes them unbounded. A returned vector is a
/// genuine fixpoint: `dist[v] <= dist[u] + w(u,v)·den − num` for every
/// edge with `dist[u]` finite.
fn bellman_ford_reduced(g: &WeightedDigraph, num: i128, den: i128) -> Option<Vec<i128>> {
    assert!(den > 0);
    let n = g.n;
    let (row_ptr, src, weight) = (&g.row_ptr, &g.src, &g.weight);
    let mut cur = vec![INF128; n];
    let mut next = vec![INF128; n];
    cur[g.source as usize] = 0;
    // Distances settle within n - 1 synchronous rounds unless a negative
    // cycle keeps pulling them down; a round with no change is a fixpoint.
    for _ in 0..n {
        next.par_iter_mut().enumerate().with_min_len(1 << 12).for_each(|(v, out)| {
            let mut best = cur[v];
            for e in row_ptr[v]..row_ptr[v + 1] {
                let c = cur[src[e] as usize];
                if c == INF128 {
                    continue;
                }
                let cand = c + (weight[e] as i128 * den - num);
                if cand < best {
                    best = cand;
                }
            }
            *out = best;
        });
        if cur == next {
            return Some(cur);
        }
        std::mem::swap(&mut cur, &mut next);
    }
    None
}

/// Finds a cycle of mean exactly `q` when `q` is the minimum cycle mean —
/// without computing the minimum.
///
/// Subtracting `q` from every edge (scaled by `den(q)` to stay integral)
/// makes a cycle's reduced weight negative, zero, or positive as its mean
/// sits below, at, or above `q`. If no cycle is negative, shortest-walk
/// distances reach a fixpoint, and an edge is *tight* when it preserves
/// the fixpoint equality; a zero cycle must be tight edge by edge, so any
/// cycle inside the tight subgraph has mean exactly `q`, and a depth-first
/// search finds one in linear time.
///
/// Returns `None` when some cycle has mean strictly below `q`, or when no
/// cycle attains `q`. A returned cycle is therefore a self-contained proof
/// (checkable with [`verify_cycle_mean`] plus one [`lambda_feasibility_oracle`]
/// probe) that the minimum cycle mean equals `q`.
pub fn witness_cycle_at(g: &WeightedDigraph, q: Rational) -> Option<CycleSolution> {
    let (num, den) = (q.num() as i128, q.den() as i128);
    let dist = bellman_ford_reduced(g, num, den)?;
    let n = g.n;

    // Tight edges only, flipped to outgoing adjacency: count, prefix, fill.
    let is_tight = |e: usize, v: usize| {
        let u = g.src[e] as usize;
        dist[u] != INF128 && dist[u] + (g.weight[e] as i128 * den - num) == dist[v]
    };
    let mut out_ptr = vec![0usize; n + 1];
    for v in 0..n {
        for e in g.row_ptr[v]..g.row_ptr[v + 1] {
            if is_tight(e, v) {
                out_ptr[g.src[e] as usize + 1] += 1;
            }
        }
    }
    for u in 0..n {
        out_ptr[u + 1] += out_ptr[u];
    }
    let mut cursor = out_ptr[..n].to_vec();
    let mut out_dst = vec![0u32; out_ptr[n]];
    for v in 0..n {
        for e in g.row_ptr[v]..g.row_ptr[v + 1] {
            if is_tight(e, v) {
                let u = g.src[e] as usize;
                out_dst[cursor[u]] = v as u32;
                cursor[u] += 1;
            }
        }
    }

    // Any back edge of a depth-first search closes a tight cycle.
    let mut color = vec![0u8; n]; // 0 unseen, 1 on stack, 2 done
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for start in 0..n {
        if color[start] != 0 {
            continue;
        }
        color[start] = 1;
        stack.push((start, out_ptr[start]));
        while !stack.is_empty() {
            let (v, e) = {
                let top = stack.last_mut().expect("loop guard");
                let frame = *top;
                top.1 += 1;
                frame
            };
            if e >= out_ptr[v + 1] {
                color[v] = 2;
                stack.pop();
                continue;
            }
            let w = out_dst[e] as usize;
            match color[w] {
                0 => {
                    color[w] = 1;
                    stack.push((w, out_ptr[w]));
                }
                1 => {
                    let pos = stack.iter().position(|&(x, _)| x == w).expect("on stack");
                    let vertices: Vec<u32> = stack[pos..].iter().map(|&(x, _)| x as u32).collect();
                    let total_weight = walk_weight(g, &vertices);
                    let mean = Rational::new(total_weight, vertices.len() as i64);
                    debug_assert_eq!(mean, q, "tight cycle must have mean q");
                    return Some(CycleSolution { vertices, total_weight, mean });
                }
                _ => {}
            }
        }
    }
    None
}

/// Two probes certifying that `lambda` is the exact minimum cycle mean.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Certification {
    /// Probe at λ itself. `TightOrAbove` proves no cycle lies below λ.
    pub at_lambda: Feasibility,
    /// Probe at λ + 1/n². `Below` proves a cycle of mean ≤ λ exists: cycle
    /// means are fractions with denominator at most `n`, so distinct means
    /// differ by more than 1/n², and a cycle under the raised probe cannot
    /// sit strictly between λ and λ + 1/n².
    pub just_above: Feasibility,
}

impl Certification {
    /// Both probes came back as a tight λ* requires.
    pub fn is_tight(&self) -> bool {
        self.at_lambda == Feasibility::TightOrAbove && self.just_above == Feasibility::Below
    }
}

/// Certifies λ* with two feasibility probes.
///
/// Probing *below* λ cannot certify anything: for a correct λ* there is no
/// cycle mean strictly below λ*, so any such probe answers `TightOrAbove`
/// no matter how close to λ* it sits. Tightness from above is established
/// by the `λ + 1/n²` probe instead; a wrong λ (too low by any amount, or
/// too high) flips one of the two answers.
///
/// The separation gap assumes `lambda` has denominator at most `n`, as
/// every actual cycle mean — and hence every λ* the solver reports — does.
/// Candidates with larger denominators can slip between two adjacent means
/// and certify vacuously.
pub fn certify_lambda_star(g: &WeightedDigraph, lambda: Rational) -> Certification {
    let n = g.n as i128;
    let at_lambda = feasibility_probe(g, lambda.num() as i128, lambda.den() as i128);
    let just_above = feasibility_probe(
        g,
        lambda.num() as i128 * n * n + lambda.den() as i128,
        lambda.den() as i128 * n * n,
    );
    Certification { at_lambda, just_above }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// a <-> b with a self-loop at a:
    ///
    /// ```text
    ///   (1)
    ///   ┌─┐
    ///   ▼ │     0
    ///    a ───────▶ b
    ///    ▲          │
    ///    └──────────┘
    ///         1
    /// ```
    fn two_vertex() -> WeightedDigraph {
        WeightedDigraph::from_edges(2, 0, &[(0, 1, 0), (1, 0, 1), (0, 0, 1)])
    }

    fn triangle() -> WeightedDigraph {
        WeightedDigraph::from_edges(3, 0, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)])
    }

    #[test]
    fn single_self_loop() {
        let g = WeightedDigraph::from_edges(1, 0, &[(0, 0, 7)]);
        let r = karp_mcm(&g).unwrap();
        assert_eq!(r.lambda, Rational::from_integer(7));
        let c = extract_min_cycle(&g, &r, 8).unwrap();
        assert_eq!(c.vertices, vec![0]);
        assert_eq!(c.total_weight, 7);
    }

    #[test]
    fn two_vertex_mean_is_one_half() {
        let g = two_vertex();
        let r = karp_mcm(&g).unwrap();
        assert_eq!(r.lambda, Rational::new(1, 2));
        assert_eq!(r.argmin_vertex, 0);
        let c = extract_min_cycle(&g, &r, 4).unwrap();
        assert_eq!(c.mean, r.lambda);
        assert_eq!(c.vertices.len(), 2);
        assert_eq!(verify_cycle_mean(&g, &c.vertices), r.lambda);
    }

    #[test]
    fn triangle_of_ones() {
        let g = triangle();
        let (r, c) = solve_mcm(&g, 8, None).unwrap();
        assert_eq!(r.lambda, Rational::from_integer(1));
        assert_eq!(c.vertices.len(), 3);
        assert_eq!(c.total_weight, 3);
    }

    #[test]
    fn parallel_edges_take_the_cheaper_one() {
        let g = WeightedDigraph::from_edges(2, 0, &[(0, 1, 5), (0, 1, 1), (1, 0, 1)]);
        let r = karp_mcm(&g).unwrap();
        assert_eq!(r.lambda, Rational::from_integer(1));
        assert_eq!(verify_cycle_mean(&g, &[0, 1]), Rational::from_integer(1));
    }

    #[test]
    fn unreachable_vertex_is_an_input_error() {
        let g = WeightedDigraph::from_edges(2, 0, &[(0, 0, 1)]);
        assert_eq!(karp_mcm(&g), Err(McmError::Unreachable { vertex: 1 }));
    }

    #[test]
    fn acyclic_reachable_graph_has_no_cycle() {
        let g = WeightedDigraph::from_edges(2, 0, &[(0, 1, 3)]);
        assert_eq!(karp_mcm(&g), Err(McmError::NoCycle));
        let g1 = WeightedDigraph::from_edges(1, 0, &[]);
        assert_eq!(karp_mcm(&g1), Err(McmError::NoCycle));
    }

    /// A long tail before the cycle: a tiny initial window cannot close it,
    /// so extraction must widen until it can.
    #[test]
    fn window_doubles_until_a_cycle_closes() {
        let mut edges: Vec<(u32, u32, i32)> = (0..9).map(|i| (i, i + 1, 9)).collect();
        edges.push((9, 8, 1)); // cheap 2-cycle at the end
        edges.push((8, 9, 1));
        edges.push((9, 0, 9)); // make it strongly connected
        let g = WeightedDigraph::from_edges(10, 0, &edges);
        let r = karp_mcm(&g).unwrap();
        assert_eq!(r.lambda, Rational::from_integer(1));
        let c = extract_min_cycle(&g, &r, 1).unwrap();
        assert_eq!(c.vertices.len(), 2);
        assert_eq!(c.mean, Rational::from_integer(1));
    }

    #[test]
    fn results_are_deterministic() {
        let g = two_vertex();
        let a = solve_mcm(&g, 4, None).unwrap();
        let b = solve_mcm(&g, 4, None).unwrap();
        assert_eq!(a.0, b.0);
        assert_eq!(a.1, b.1);
    }

    #[test]
    #[should_panic(expected = "not a closed walk")]
    fn verify_rejects_non_walks() {
        let g = triangle();
        verify_cycle_mean(&g, &[0, 2]); // 0 -> 2 is not an edge
    }

    #[test]
    fn feasibility_brackets_the_triangle() {
        let g = triangle();
        assert_eq!(
            lambda_feasibility_oracle(&g, Rational::from_integer(1)),
            Feasibility::TightOrAbove
        );
        assert_eq!(lambda_feasibility_oracle(&g, Rational::from_integer(2)), Feasibility::Below);
        assert_eq!(lambda_feasibility_oracle(&g, Rational::new(1, 2)), Feasibility::TightOrAbove);
    }

    #[test]
    fn witness_cycle_appears_exactly_at_the_minimum() {
        let t = triangle();
        let w = witness_cycle_at(&t, Rational::from_integer(1)).unwrap();
        assert_eq!(w.vertices.len(), 3);
        assert_eq!(w.mean, Rational::from_integer(1));
        // Below the minimum nothing attains it; above it a better cycle exists.
        assert_eq!(witness_cycle_at(&t, Rational::new(1, 2)), None);
        assert_eq!(witness_cycle_at(&t, Rational::from_integer(2)), None);

        let g = two_vertex();
        let w = witness_cycle_at(&g, Rational::new(1, 2)).unwrap();
        assert_eq!(w.vertices.len(), 2);
        assert_eq!(verify_cycle_mean(&g, &w.vertices), Rational::new(1, 2));
    }

    #[test]
    fn certification_accepts_the_truth_and_rejects_lies() {
        let g = two_vertex();
        assert!(certify_lambda_star(&g, Rational::new(1, 2)).is_tight());
        // Overestimate: the probe at λ itself already finds a cycle below.
        assert!(!certify_lambda_star(&g, Rational::from_integer(1)).is_tight());
        let t = triangle();
        assert!(certify_lambda_star(&t, Rational::from_integer(1)).is_tight());
        // Underestimates with in-range denominators: no cycle sits within
        // 1/n² above them, so the raised probe comes back empty.
        assert!(!certify_lambda_star(&t, Rational::new(1, 2)).is_tight());
        assert!(!certify_lambda_star(&t, Rational::new(2, 3)).is_tight());
    }

    #[test]
    fn progress_callback_sees_both_passes() {
        use std::sync::atomic::{AtomicUsize, Ordering as AO};
        let fwd = AtomicUsize::new(0);
        let scan = AtomicUsize::new(0);
        let g = triangle();
        let cb = |pass: McmPass, _round: usize, _total: usize| match pass {
            McmPass::Forward => drop(fwd.fetch_add(1, AO::Relaxed)),
            McmPass::Scan => drop(scan.fetch_add(1, AO::Relaxed)),
        };
        karp_mcm_with_progress(&g, Some(&cb)).unwrap();
        assert_eq!(fwd.load(AO::Relaxed), 3);
        assert_eq!(scan.load(AO::Relaxed), 3);
    }
}
