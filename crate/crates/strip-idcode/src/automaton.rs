//! The transition digraph behind periodic patterns of a fixed height.
//!
//! A vertex is a 4-column barcode; there is an edge from `P` to `Q` exactly
//! when some 5-column barcode has `P` as its first four columns and `Q` as
//! its last four. The edge is labelled with the new (fifth) column — its
//! occupied-cell mask and, as the edge weight, the number of occupied cells
//! in it.
//!
//! Closed walks in this digraph are precisely the periodic patterns that
//! verify as valid, column for column: following a cycle spells out one new
//! column per step, and the cycle's weight is the number of occupied cells
//! per period. The weight of a cycle divided by its length is therefore the
//! pattern's occupied-cells-per-column, and the minimum over all cycles —
//! a minimum cycle mean — gives the densest-free pattern once divided by
//! the height.
//!
//! Construction enumerates candidate columns once per vertex, so it costs
//! `O(n · 2^k)` barcode checks where `n` is the vertex count. Edges are
//! stored as incoming adjacency in compressed sparse rows, sorted by source
//! with no duplicates — the exact layout the cycle-mean solver consumes.

use std::io;

use serde::Serialize;
use thiserror::Error;

use crate::mcm::WeightedDigraph;
use crate::pattern::{BarPattern, ColumnMask, MAX_ROWS};
use crate::verify::BarcodeChecker;

/// Default memory budget for automaton construction, in MiB.
pub const DEFAULT_MEM_BUDGET_MB: u64 = 2048;

/// Why an automaton could not be built.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum BuildError {
    /// Heights outside `1..=MAX_ROWS` have no packed representation here.
    #[error("strip height {k} is out of range (1..={max})")]
    HeightOutOfRange { k: usize, max: usize },
    /// The tables would not fit in the configured budget. Counts are exact
    /// when the stage that produced them had run, worst-case bounds before
    /// that.
    #[error(
        "automaton for height {k} needs about {needed_mb} MiB \
         ({vertices} vertices, {edges} edges), over the {budget_mb} MiB budget"
    )]
    MemoryBudget { k: usize, vertices: u64, edges: u64, needed_mb: u64, budget_mb: u64 },
}

/// All barcodes with `len` columns and `rows` rows, in ascending packed
/// order (see [`BarPattern::to_packed`]).
///
/// This sweeps all `2^(rows·len)` candidate patterns, so `rows · len` is
/// capped at 32.
pub fn enumerate_barcodes(rows: usize, len: usize) -> Vec<BarPattern> {
    enumerate_barcodes_packed(rows, len)
        .into_iter()
        .map(|bits| BarPattern::from_packed(rows, len, bits))
        .collect()
}

pub(crate) fn enumerate_barcodes_packed(rows: usize, len: usize) -> Vec<u64> {
    assert!(rows * len <= 32, "candidate sweep of 2^{} patterns refused", rows * len);
    let checker = BarcodeChecker::new(rows, len);
    (0..1u64 << (rows * len)).filter(|&bits| checker.is_barcode(bits)).collect()
}

/// Structural counts and connectivity facts; see [`StripAutomaton::stats`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AutomatonStats {
    pub height: usize,
    pub vertices: u64,
    pub edges: u64,
    pub min_in_degree: u32,
    pub max_in_degree: u32,
    pub min_out_degree: u32,
    pub max_out_degree: u32,
    pub self_loops: u64,
    pub strongly_connected: bool,
    /// Eccentricity of the source in edge count: every vertex is this close
    /// or closer when walking from the source.
    pub max_dist_from_source: u32,
    /// Same, walking to the source.
    pub max_dist_to_source: u32,
}

/// The transition digraph for height `k`, plus the vertex table that maps
/// indices back to barcodes.
pub struct StripAutomaton {
    k: usize,
    /// Packed 4-column barcodes, ascending; index = vertex id.
    vertices: Vec<u32>,
    source_index: u32,
    /// Incoming CSR: edges into `v` are `row_ptr[v]..row_ptr[v+1]`, sorted
    /// by source, at most one edge per source pair.
    row_ptr: Vec<usize>,
    src: Vec<u32>,
    /// Occupied cells in the edge's new column.
    weight: Vec<u8>,
    /// The new column itself.
    mask: Vec<u16>,
}

/// Builds the automaton for height `k` under the default memory budget.
pub fn build_automaton(k: usize) -> Result<StripAutomaton, BuildError> {
    build_automaton_with_budget(k, DEFAULT_MEM_BUDGET_MB)
}

/// Builds the automaton for height `k`, refusing (with size estimates)
/// rather than allocating past `budget_mb` MiB of table space.
pub fn build_automaton_with_budget(k: usize, budget_mb: u64) -> Result<StripAutomaton, BuildError> {
    if k == 0 || k > MAX_ROWS {
        return Err(BuildError::HeightOutOfRange { k, max: MAX_ROWS });
    }
    let budget_bytes = budget_mb.saturating_mul(1 << 20);
    let vbits = 4 * k;
    let worst_vertices = 1u64 << vbits;
    if worst_vertices * 4 > budget_bytes {
        return Err(BuildError::MemoryBudget {
            k,
            vertices: worst_vertices,
            edges: worst_vertices << k,
            needed_mb: (worst_vertices * 4) >> 20,
            budget_mb,
        });
    }

    let vertices: Vec<u32> =
        enumerate_barcodes_packed(k, 4).into_iter().map(|bits| bits as u32).collect();
    let n = vertices.len();
    let checker = BarcodeChecker::new(k, 5);

    // Count incoming edges exactly, then allocate once and fill. An edge
    // candidate is a vertex extended by one more column; when the 5-column
    // pattern is a barcode, both 4-column windows of it are too, so the
    // target is always present in the vertex table.
    let mut indeg = vec![0u32; n];
    let mut m = 0u64;
    for &p in &vertices {
        for c in 0..1u64 << k {
            let bits5 = p as u64 | c << vbits;
            if checker.is_barcode(bits5) {
                let t = target_index(&vertices, bits5, k);
                indeg[t] += 1;
                m += 1;
            }
        }
    }

    let needed = 24 * n as u64 + 7 * m + 64;
    if needed > budget_bytes {
        return Err(BuildError::MemoryBudget {
            k,
            vertices: n as u64,
            edges: m,
            needed_mb: needed >> 20,
            budget_mb,
        });
    }

    let mut row_ptr = Vec::with_capacity(n + 1);
    row_ptr.push(0usize);
    for &d in &indeg {
        row_ptr.push(row_ptr.last().unwrap() + d as usize);
    }
    let mut cursor: Vec<usize> = row_ptr[..n].to_vec();
    let mut src = vec![0u32; m as usize];
    let mut weight = vec![0u8; m as usize];
    let mut mask = vec![0u16; m as usize];
    for (i, &p) in vertices.iter().enumerate() {
        for c in 0..1u64 << k {
            let bits5 = p as u64 | c << vbits;
            if checker.is_barcode(bits5) {
                let t = target_index(&vertices, bits5, k);
                let e = cursor[t];
                cursor[t] += 1;
                src[e] = i as u32;
                weight[e] = c.count_ones() as u8;
                mask[e] = c as u16;
            }
        }
    }
    debug_assert!((0..n).all(|v| cursor[v] == row_ptr[v + 1]));
    // Sources iterate in ascending vertex order, so each row comes out
    // sorted, and one candidate column per (source, target) pair means no
    // duplicates.
    debug_assert!((0..n).all(|v| row_ptr[v] + 1 >= row_ptr[v + 1]
        || src[row_ptr[v]..row_ptr[v + 1]].windows(2).all(|w| w[0] < w[1])));

    let full = (worst_vertices - 1) as u32;
    let source_index =
        vertices.binary_search(&full).expect("the fully occupied barcode always exists") as u32;
    Ok(StripAutomaton { k, vertices, source_index, row_ptr, src, weight, mask })
}

/// Index of the vertex formed by the last four columns of a 5-column
/// barcode.
fn target_index(vertices: &[u32], bits5: u64, k: usize) -> usize {
    let packed = (bits5 >> k) as u32;
    vertices.binary_search(&packed).expect("windows of a barcode are barcodes")
}

impl StripAutomaton {
    pub fn height(&self) -> usize {
        self.k
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.src.len()
    }

    /// The vertex the solver starts all walks from: the fully occupied
    /// barcode, which reaches (and is reached by) every vertex within four
    /// steps.
    pub fn source_index(&self) -> u32 {
        self.source_index
    }

    /// The packed form of vertex `i`'s barcode.
    pub fn vertex_packed(&self, i: u32) -> u32 {
        self.vertices[i as usize]
    }

    /// Vertex `i`'s barcode as a pattern.
    pub fn vertex_pattern(&self, i: u32) -> BarPattern {
        BarPattern::from_packed(self.k, 4, self.vertices[i as usize] as u64)
    }

    /// The `(weight, new_column_mask)` label of the edge `u -> v`, if that
    /// edge exists.
    pub fn edge_between(&self, u: u32, v: u32) -> Option<(u8, u16)> {
        let lo = self.row_ptr[v as usize];
        let hi = self.row_ptr[v as usize + 1];
        let at = lo + self.src[lo..hi].partition_point(|&s| s < u);
        (at < hi && self.src[at] == u).then(|| (self.weight[at], self.mask[at]))
    }

    /// Spells out the periodic pattern a closed walk describes: column `j`
    /// is the column the edge leaving `cycle[j]` appends, which is the last
    /// column of the next vertex's barcode.
    ///
    /// Panics if consecutive entries (wrapping around) are not edges.
    pub fn cycle_to_pattern(&self, cycle: &[u32]) -> BarPattern {
        assert!(!cycle.is_empty(), "a closed walk has at least one vertex");
        let colmask = (1u32 << self.k) - 1;
        let mut cols = Vec::with_capacity(cycle.len());
        for (j, &u) in cycle.iter().enumerate() {
            let v = cycle[(j + 1) % cycle.len()];
            assert!(
                self.edge_between(u, v).is_some(),
                "({u}, {v}) is not an edge: sequence is not a closed walk"
            );
            let p = self.vertices[v as usize];
            cols.push(ColumnMask::new(((p >> (3 * self.k)) & colmask) as u16, self.k));
        }
        BarPattern::new(self.k, cols)
    }

    /// The weighted digraph the cycle-mean solver runs on: same vertex
    /// indices, same edge order, weights widened to `i32`.
    pub fn to_digraph(&self) -> WeightedDigraph {
        WeightedDigraph::from_csr(
            self.vertices.len(),
            self.source_index,
            self.row_ptr.clone(),
            self.src.clone(),
            self.weight.iter().map(|&w| w as i32).collect(),
        )
    }

    /// Writes one `source target weight column_mask_hex` line per edge.
    pub fn write_edges(&self, out: &mut dyn io::Write) -> io::Result<()> {
        for v in 0..self.vertices.len() {
            for e in self.row_ptr[v]..self.row_ptr[v + 1] {
                writeln!(out, "{} {} {} {:x}", self.src[e], v, self.weight[e], self.mask[e])?;
            }
        }
        Ok(())
    }

    /// Degree counts, self-loops, and connectivity, computed fresh from the
    /// edge tables.
    pub fn stats(&self) -> AutomatonStats {
        let n = self.vertices.len();
        let m = self.src.len();
        let mut outdeg = vec![0u32; n];
        let mut self_loops = 0u64;
        for v in 0..n {
            for e in self.row_ptr[v]..self.row_ptr[v + 1] {
                outdeg[self.src[e] as usize] += 1;
                if self.src[e] as usize == v {
                    self_loops += 1;
                }
            }
        }
        let indeg = |v: usize| (self.row_ptr[v + 1] - self.row_ptr[v]) as u32;

        // Forward distances need outgoing adjacency; counting-sort the edges
        // into it once.
        let mut out_ptr = vec![0usize; n + 1];
        for &u in &self.src {
            out_ptr[u as usize + 1] += 1;
        }
        for v in 0..n {
            out_ptr[v + 1] += out_ptr[v];
        }
        let mut out_cursor = out_ptr[..n].to_vec();
        let mut out_dst = vec![0u32; m];
        for v in 0..n {
            for e in self.row_ptr[v]..self.row_ptr[v + 1] {
                let u = self.src[e] as usize;
                out_dst[out_cursor[u]] = v as u32;
                out_cursor[u] += 1;
            }
        }

        let bfs = |neighbors: &dyn Fn(usize) -> std::ops::Range<usize>, flat: &[u32]| {
            let mut dist = vec![u32::MAX; n];
            let mut queue = std::collections::VecDeque::new();
            dist[self.source_index as usize] = 0;
            queue.push_back(self.source_index as usize);
            let mut max = 0;
            let mut reached = 1usize;
            while let Some(v) = queue.pop_front() {
                for e in neighbors(v) {
                    let w = flat[e] as usize;
                    if dist[w] == u32::MAX {
                        dist[w] = dist[v] + 1;
                        max = max.max(dist[w]);
                        reached += 1;
                        queue.push_back(w);
                    }
                }
            }
            (max, reached)
        };
        let (max_from, reached_fwd) = bfs(&|v| out_ptr[v]..out_ptr[v + 1], &out_dst);
        let (max_to, reached_bwd) = bfs(&|v| self.row_ptr[v]..self.row_ptr[v + 1], &self.src);

        AutomatonStats {
            height: self.k,
            vertices: n as u64,
            edges: m as u64,
            min_in_degree: (0..n).map(indeg).min().unwrap_or(0),
            max_in_degree: (0..n).map(indeg).max().unwrap_or(0),
            min_out_degree: outdeg.iter().copied().min().unwrap_or(0),
            max_out_degree: outdeg.iter().copied().max().unwrap_or(0),
            self_loops,
            strongly_connected: reached_fwd == n && reached_bwd == n,
            max_dist_from_source: max_from,
            max_dist_to_source: max_to,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::is_barcode;

    /// Independent recount of vertices and edges straight from the general,
    /// list-based barcode definition.
    fn brute_counts(k: usize) -> (usize, usize) {
        let count = |len: usize| {
            (0..1u64 << (k * len))
                .filter(|&bits| is_barcode(&BarPattern::from_packed(k, len, bits)))
                .count()
        };
        (count(4), count(5))
    }

    #[test]
    fn height_one_vertex_table_is_the_known_ten() {
        let a = build_automaton(1).unwrap();
        let packed: Vec<u32> = (0..a.vertex_count() as u32).map(|i| a.vertex_packed(i)).collect();
        assert_eq!(packed, vec![3, 5, 7, 9, 10, 11, 12, 13, 14, 15]);
    }

    #[test]
    fn counts_match_the_definition_up_to_height_two() {
        for k in 1..=2 {
            let (n, m) = brute_counts(k);
            let a = build_automaton(k).unwrap();
            assert_eq!(a.vertex_count(), n, "vertex count at height {k}");
            assert_eq!(a.edge_count(), m, "edge count at height {k}");
        }
    }

    #[test]
    fn every_edge_is_a_five_column_barcode_with_consistent_overlap() {
        let a = build_automaton(2).unwrap();
        let k = 2;
        for v in 0..a.vertex_count() as u32 {
            let mut prev_src = None;
            for (u, w) in (0..a.vertex_count() as u32)
                .filter_map(|u| a.edge_between(u, v).map(|lbl| (u, lbl)))
            {
                let (weight, mask) = w;
                let bits5 = a.vertex_packed(u) as u64 | (mask as u64) << (4 * k);
                assert!(is_barcode(&BarPattern::from_packed(k, 5, bits5)));
                assert_eq!(bits5 >> k, a.vertex_packed(v) as u64, "overlap of {u} -> {v}");
                assert_eq!(weight as u32, mask.count_ones());
                assert!(prev_src.is_none_or(|p| p < u), "duplicate or unsorted edge");
                prev_src = Some(u);
            }
        }
    }

    #[test]
    fn self_loops_are_exactly_the_uniform_row_vertices() {
        for k in 1..=2 {
            let a = build_automaton(k).unwrap();
            let mut loops = 0;
            for v in 0..a.vertex_count() as u32 {
                let p = a.vertex_pattern(v);
                let uniform = (0..k)
                    .all(|r| (0..4).all(|c| p.contains(c, r)) || (0..4).all(|c| !p.contains(c, r)));
                assert_eq!(a.edge_between(v, v).is_some(), uniform, "vertex {v} at height {k}");
                loops += u64::from(uniform);
            }
            assert_eq!(a.stats().self_loops, loops);
        }
        assert_eq!(build_automaton(1).unwrap().stats().self_loops, 1);
        assert_eq!(build_automaton(2).unwrap().stats().self_loops, 3);
    }

    #[test]
    fn source_is_the_fully_occupied_barcode() {
        for k in 1..=3 {
            let a = build_automaton(k).unwrap();
            assert_eq!(a.vertex_pattern(a.source_index()), BarPattern::filled(k, 4));
        }
    }

    #[test]
    fn stats_show_a_small_strongly_connected_world() {
        let s = build_automaton(1).unwrap().stats();
        assert_eq!(s.vertices, 10);
        assert!(s.strongly_connected);
        assert!(s.max_dist_from_source <= 4 && s.max_dist_to_source <= 4);
        assert!(s.min_in_degree >= 1 && s.min_out_degree >= 1);
        assert!(s.max_in_degree <= 2 && s.max_out_degree <= 2);
    }

    #[test]
    fn source_self_loop_spells_the_all_occupied_pattern() {
        let a = build_automaton(2).unwrap();
        let p = a.cycle_to_pattern(&[a.source_index()]);
        assert_eq!(p, BarPattern::filled(2, 1));
        assert!(crate::verify::verify_periodic_pattern(&p).valid);
        assert!(crate::verify::verify_window_oracle(&p).valid);
    }

    #[test]
    #[should_panic(expected = "not a closed walk")]
    fn cycle_to_pattern_rejects_non_walks() {
        let a = build_automaton(1).unwrap();
        // Vertex 1 holds packed barcode 5 = .#.#, whose first three columns
        // are not fully occupied, so no edge leaves the source for it.
        a.cycle_to_pattern(&[a.source_index(), 1]);
    }

    #[test]
    fn builds_are_deterministic() {
        let a = build_automaton(2).unwrap();
        let b = build_automaton(2).unwrap();
        assert_eq!(a.vertices, b.vertices);
        assert_eq!(a.row_ptr, b.row_ptr);
        assert_eq!(a.src, b.src);
        assert_eq!(a.weight, b.weight);
        assert_eq!(a.mask, b.mask);
    }

    #[test]
    fn tiny_budget_is_refused_with_sizes() {
        let err = build_automaton_with_budget(3, 0).map(|_| ()).unwrap_err();
        match err {
            BuildError::MemoryBudget { k: 3, budget_mb: 0, .. } => {}
            other => panic!("expected a budget refusal, got {other:?}"),
        }
    }

    #[test]
    fn height_zero_and_nine_are_rejected() {
        assert!(matches!(build_automaton(0), Err(BuildError::HeightOutOfRange { .. })));
        assert!(matches!(build_automaton(9), Err(BuildError::HeightOutOfRange { .. })));
    }

    #[test]
    fn digraph_conversion_preserves_shape() {
        let a = build_automaton(2).unwrap();
        let g = a.to_digraph();
        assert_eq!(g.vertex_count(), a.vertex_count());
        assert_eq!(g.edge_count(), a.edge_count());
        assert_eq!(g.source(), a.source_index());
        let v = a.source_index();
        let from_graph: Vec<(u32, i32)> = g.incoming(v).collect();
        let from_automaton: Vec<(u32, i32)> = (0..a.vertex_count() as u32)
            .filter_map(|u| a.edge_between(u, v).map(|(w, _)| (u, w as i32)))
            .collect();
        assert_eq!(from_graph, from_automaton);
    }

    #[test]
    fn edge_dump_lines_match_edge_count() {
        let a = build_automaton(1).unwrap();
        let mut buf = Vec::new();
        a.write_edges(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), a.edge_count());
        // Every line parses back into a real edge.
        for line in text.lines() {
            let parts: Vec<&str> = line.split(' ').collect();
            let (u, v): (u32, u32) = (parts[0].parse().unwrap(), parts[1].parse().unwrap());
            let w: u8 = parts[2].parse().unwrap();
            let mask = u16::from_str_radix(parts[3], 16).unwrap();
            assert_eq!(a.edge_between(u, v), Some((w, mask)));
        }
    }
}
