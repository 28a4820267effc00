//! Column masks, bar patterns, and the pattern text format.
//!
//! A *strip* of height `k` is the grid graph on `Z x {0..k-1}`: vertices are
//! `(column, row)` pairs, edges join horizontal and vertical neighbors. A
//! *bar* is a window of `l` consecutive columns. Code patterns over a bar are
//! stored column-major: one k-bit mask per column, bit `i` = row `i`.
//!
//! Text form: `k` lines of `l` characters each, `#` for a code vertex and
//! `.` for a non-code vertex. Line `i` is row `i`, character `j` is column
//! `j`. So
//!
//! ```text
//! ##.#...
//! .#...##
//! ```
//!
//! is a 2-row, 7-column pattern.

use std::fmt;

use thiserror::Error;

use crate::rational::Rational;

/// Maximum strip height supported anywhere in the crate.
///
/// Columns pack into 16 bits and five-column windows into 64, so heights up
/// to 8 cover everything the solver can enumerate in practice.
pub const MAX_ROWS: usize = 8;

/// One column of a pattern: a set of rows, bit `i` = row `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ColumnMask(u16);

impl ColumnMask {
    pub const EMPTY: ColumnMask = ColumnMask(0);

    /// A mask from raw bits. Panics if a bit at row `>= rows` is set.
    pub fn new(bits: u16, rows: usize) -> Self {
        assert!((1..=MAX_ROWS).contains(&rows), "rows out of range");
        assert!(bits >> rows == 0, "mask has bits above row {}", rows - 1);
        ColumnMask(bits)
    }

    /// The full column for a strip of the given height.
    pub fn full(rows: usize) -> Self {
        assert!((1..=MAX_ROWS).contains(&rows));
        ColumnMask(((1u32 << rows) - 1) as u16)
    }

    pub fn bits(self) -> u16 {
        self.0
    }

    pub fn contains(self, row: usize) -> bool {
        self.0 >> row & 1 == 1
    }

    /// Number of code vertices in the column.
    pub fn count(self) -> u32 {
        self.0.count_ones()
    }
}

impl fmt::Debug for ColumnMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ColumnMask({:#06b})", self.0)
    }
}

/// A rectangular code pattern over a bar: `rows` x `len()` cells.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BarPattern {
    rows: usize,
    columns: Vec<ColumnMask>,
}

/// Why a pattern text failed to parse. Positions are 1-based.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("empty input: expected at least one line of '#'/'.' characters")]
    Empty,
    #[error("line {line}: unexpected character {found:?} at column {col} (expected '#' or '.')")]
    BadChar { line: usize, col: usize, found: char },
    #[error("line {line}: length {found} does not match line 1 length {expected}")]
    RaggedLine { line: usize, expected: usize, found: usize },
    #[error("{found} rows exceed the supported maximum of {max}")]
    TooManyRows { found: usize, max: usize },
}

impl BarPattern {
    /// Builds a pattern from columns. Panics on empty dimensions, more than
    /// [`MAX_ROWS`] rows, or a mask with bits above `rows`.
    pub fn new(rows: usize, columns: Vec<ColumnMask>) -> Self {
        assert!((1..=MAX_ROWS).contains(&rows), "rows out of range");
        assert!(!columns.is_empty(), "pattern must have at least one column");
        for c in &columns {
            assert!(c.bits() >> rows == 0, "column mask has bits above row {}", rows - 1);
        }
        BarPattern { rows, columns }
    }

    /// The empty pattern (no code vertices) of the given shape.
    pub fn empty(rows: usize, len: usize) -> Self {
        BarPattern::new(rows, vec![ColumnMask::EMPTY; len])
    }

    /// The full pattern (every vertex in the code) of the given shape.
    pub fn filled(rows: usize, len: usize) -> Self {
        BarPattern::new(rows, vec![ColumnMask::full(rows); len])
    }

    /// Parses the text format: `rows` lines of equal length over `#`/`.`.
    pub fn parse_text(text: &str) -> Result<Self, ParseError> {
        let mut columns: Vec<ColumnMask> = Vec::new();
        let mut rows = 0usize;
        let mut width = 0usize;
        for (i, line) in text.lines().enumerate() {
            let n = line.chars().count();
            if i == 0 {
                width = n;
                columns = vec![ColumnMask::EMPTY; n];
            } else if n != width {
                return Err(ParseError::RaggedLine { line: i + 1, expected: width, found: n });
            }
            if i == MAX_ROWS {
                return Err(ParseError::TooManyRows { found: text.lines().count(), max: MAX_ROWS });
            }
            for (j, ch) in line.chars().enumerate() {
                match ch {
                    '#' => columns[j] = ColumnMask(columns[j].0 | 1 << i),
                    '.' => {}
                    found => return Err(ParseError::BadChar { line: i + 1, col: j + 1, found }),
                }
            }
            rows = i + 1;
        }
        if rows == 0 || width == 0 {
            return Err(ParseError::Empty);
        }
        Ok(BarPattern { rows, columns })
    }

    /// Renders the text format, one line per row, no trailing newline.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.rows * (self.len() + 1));
        for r in 0..self.rows {
            if r > 0 {
                out.push('\n');
            }
            for c in &self.columns {
                out.push(if c.contains(r) { '#' } else { '.' });
            }
        }
        out
    }

    /// Strip height `k`.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns `l`. Never zero: the constructors reject empty
    /// patterns, so there is no `is_empty` to pair with.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[ColumnMask] {
        &self.columns
    }

    pub fn column(&self, j: usize) -> ColumnMask {
        self.columns[j]
    }

    /// Is `(col, row)` a code vertex?
    pub fn contains(&self, col: usize, row: usize) -> bool {
        self.columns[col].contains(row)
    }

    /// Total number of code vertices.
    pub fn code_count(&self) -> u32 {
        self.columns.iter().map(|c| c.count()).sum()
    }

    /// Fraction of vertices in the code: `code_count / (len * rows)`,
    /// reduced. Always in `[0, 1]`.
    pub fn density(&self) -> Rational {
        let cells = (self.len() * self.rows) as i64;
        let d = Rational::new(self.code_count() as i64, cells);
        debug_assert!(d >= Rational::ZERO && d <= Rational::from_integer(1));
        d
    }

    /// The pattern with column order reversed.
    pub fn mirror_columns(&self) -> Self {
        let mut columns = self.columns.clone();
        columns.reverse();
        BarPattern { rows: self.rows, columns }
    }

    /// The pattern with row order reversed.
    pub fn mirror_rows(&self) -> Self {
        let k = self.rows;
        let columns = self
            .columns
            .iter()
            .map(|c| {
                let mut bits = 0u16;
                for r in 0..k {
                    if c.contains(r) {
                        bits |= 1 << (k - 1 - r);
                    }
                }
                ColumnMask(bits)
            })
            .collect();
        BarPattern { rows: k, columns }
    }

    /// Packs the pattern into one word, column 0 in the least significant
    /// bits. Panics if `rows * len > 64`.
    pub fn to_packed(&self) -> u64 {
        let k = self.rows;
        assert!(k * self.len() <= 64, "pattern too large to pack into 64 bits");
        let mut bits = 0u64;
        for (j, c) in self.columns.iter().enumerate() {
            bits |= (c.bits() as u64) << (j * k);
        }
        bits
    }

    /// Inverse of [`to_packed`](Self::to_packed) for the given shape.
    pub fn from_packed(rows: usize, len: usize, bits: u64) -> Self {
        assert!((1..=MAX_ROWS).contains(&rows) && len >= 1 && rows * len <= 64);
        assert!(len * rows == 64 || bits >> (len * rows) == 0, "stray bits beyond the pattern");
        let col_mask = (1u64 << rows) - 1;
        let columns =
            (0..len).map(|j| ColumnMask((bits >> (j * rows) & col_mask) as u16)).collect();
        BarPattern { rows, columns }
    }
}

impl fmt::Display for BarPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for BarPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BarPattern({}x{})", self.rows, self.len())?;
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trips() {
        let text = "##.#...\n.#...##";
        let p = BarPattern::parse_text(text).unwrap();
        assert_eq!(p.rows(), 2);
        assert_eq!(p.len(), 7);
        assert_eq!(p.to_text(), text);
        // Trailing newline is accepted and not preserved.
        assert_eq!(BarPattern::parse_text("##.#...\n.#...##\n").unwrap(), p);
        assert!(p.contains(0, 0) && p.contains(1, 1) && !p.contains(2, 0));
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert_eq!(BarPattern::parse_text(""), Err(ParseError::Empty));
        assert_eq!(BarPattern::parse_text("\n\n"), Err(ParseError::Empty));
        assert_eq!(
            BarPattern::parse_text("#.\n#x"),
            Err(ParseError::BadChar { line: 2, col: 2, found: 'x' })
        );
        assert_eq!(
            BarPattern::parse_text("##\n#"),
            Err(ParseError::RaggedLine { line: 2, expected: 2, found: 1 })
        );
        assert!(matches!(
            BarPattern::parse_text(&"#\n".repeat(9)),
            Err(ParseError::TooManyRows { found: 9, max: 8 })
        ));
    }

    #[test]
    fn density_counts_code_cells() {
        let p = BarPattern::parse_text("##.#...\n.#...##").unwrap();
        assert_eq!(p.code_count(), 6);
        assert_eq!(p.density(), Rational::new(3, 7));
        assert_eq!(BarPattern::empty(2, 7).density(), Rational::ZERO);
        assert_eq!(BarPattern::filled(2, 7).density(), Rational::from_integer(1));
    }

    #[test]
    fn packing_round_trips() {
        let p = BarPattern::parse_text("#.#\n##.").unwrap();
        // Column masks: {rows 0,1}, {row 1}, {row 0} -> bits 0b01_10_11.
        assert_eq!(p.to_packed(), 0b01_10_11);
        assert_eq!(BarPattern::from_packed(2, 3, p.to_packed()), p);
        for bits in 0u64..1 << 6 {
            let q = BarPattern::from_packed(2, 3, bits);
            assert_eq!(q.to_packed(), bits);
        }
    }

    #[test]
    fn mirrors_flip_the_grid() {
        let p = BarPattern::parse_text("#..\n.#.").unwrap();
        assert_eq!(p.mirror_columns().to_text(), "..#\n.#.");
        assert_eq!(p.mirror_rows().to_text(), ".#.\n#..");
        assert_eq!(p.mirror_columns().mirror_columns(), p);
        assert_eq!(p.mirror_rows().mirror_rows(), p);
    }

    #[test]
    fn column_mask_bounds_are_enforced() {
        assert_eq!(ColumnMask::full(3).bits(), 0b111);
        assert_eq!(ColumnMask::new(0b101, 3).count(), 2);
        let err = std::panic::catch_unwind(|| ColumnMask::new(0b100, 2));
        assert!(err.is_err());
    }
}
