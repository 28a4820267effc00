//! Neighborhood geometry on a bar of the strip.
//!
//! Vertices are `(column, row)` pairs. Within a bar of `len` columns and
//! `rows` rows there is no wraparound: neighbors falling outside the bar are
//! simply absent, exactly as row neighbors are absent at the top and bottom
//! of the strip itself.

/// The closed neighborhood of `v = (col, row)` inside a `rows x len` bar:
/// `v` plus its horizontal and vertical neighbors, truncated at the bar
/// boundary. Sorted by `(col, row)`; between 1 and 5 vertices.
///
/// Panics if `v` lies outside the bar.
pub fn closed_neighborhood(rows: usize, len: usize, v: (usize, usize)) -> Vec<(usize, usize)> {
    let (col, row) = v;
    assert!(col < len && row < rows, "vertex outside the bar");
    let mut out = Vec::with_capacity(5);
    if col > 0 {
        out.push((col - 1, row));
    }
    if row > 0 {
        out.push((col, row - 1));
    }
    out.push((col, row));
    if row + 1 < rows {
        out.push((col, row + 1));
    }
    if col + 1 < len {
        out.push((col + 1, row));
    }
    out
}

/// Precomputed closed neighborhoods of a `rows x len` bar, as bitmasks over
/// the packed cell order (bit `col * rows + row`). Small bars only:
/// `rows * len <= 64`.
pub(crate) struct NeighborMasks {
    masks: Vec<u64>,
}

impl NeighborMasks {
    pub fn new(rows: usize, len: usize) -> Self {
        assert!(rows * len <= 64);
        let masks = (0..rows * len)
            .map(|i| {
                let v = (i / rows, i % rows);
                closed_neighborhood(rows, len, v)
                    .into_iter()
                    .map(|(c, r)| 1u64 << (c * rows + r))
                    .sum()
            })
            .collect();
        NeighborMasks { masks }
    }

    /// Bitmask of the closed neighborhood of the cell at packed index `i`.
    #[inline]
    pub fn mask(&self, i: usize) -> u64 {
        self.masks[i]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interior_vertex_has_five_neighbors() {
        assert_eq!(closed_neighborhood(3, 5, (2, 1)), vec![(1, 1), (2, 0), (2, 1), (2, 2), (3, 1)]);
    }

    #[test]
    fn truncation_at_bar_and_strip_boundaries() {
        // Height-1 bar: no vertical neighbors, and the left border cuts
        // the horizontal one.
        assert_eq!(closed_neighborhood(1, 4, (0, 0)), vec![(0, 0), (1, 0)]);
        // Top-left corner of a taller bar.
        assert_eq!(closed_neighborhood(4, 4, (0, 0)), vec![(0, 0), (0, 1), (1, 0)]);
        // A 1x1 bar collapses to the vertex itself.
        assert_eq!(closed_neighborhood(1, 1, (0, 0)), vec![(0, 0)]);
    }

    #[test]
    fn sizes_stay_in_range() {
        for rows in 1..=4 {
            for len in 1..=6 {
                for col in 0..len {
                    for row in 0..rows {
                        let n = closed_neighborhood(rows, len, (col, row));
                        assert!((1..=5).contains(&n.len()));
                        assert!(n.contains(&(col, row)));
                        // Sorted and free of duplicates.
                        assert!(n.windows(2).all(|w| w[0] < w[1]));
                    }
                }
            }
        }
    }

    #[test]
    fn masks_match_the_list_form() {
        for (rows, len) in [(1, 5), (2, 4), (3, 5), (8, 5)] {
            let nm = NeighborMasks::new(rows, len);
            for col in 0..len {
                for row in 0..rows {
                    let expect: u64 = closed_neighborhood(rows, len, (col, row))
                        .into_iter()
                        .map(|(c, r)| 1u64 << (c * rows + r))
                        .sum();
                    assert_eq!(nm.mask(col * rows + row), expect);
                }
            }
        }
    }

    #[test]
    #[should_panic(expected = "outside the bar")]
    fn out_of_range_vertex_panics() {
        closed_neighborhood(2, 4, (4, 0));
    }
}
