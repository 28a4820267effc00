//! Pattern renderers: terminal text and standalone SVG.
//!
//! Both draw a configurable number of consecutive periods so the eye can
//! follow the pattern across the seam, which is where hand-checking a
//! periodic pattern usually goes wrong.

use std::fmt::Write;

use crate::pattern::BarPattern;

/// Fill color for occupied cells in SVG output.
pub const SVG_OCCUPIED: &str = "#1f2430";
/// Fill color for free cells.
pub const SVG_FREE: &str = "#f4f1ea";
/// Stroke color for the period seams.
pub const SVG_SEAM: &str = "#c0392b";

const CELL: usize = 22;

/// Rows of `#`/`.` with a `|` at every period seam:
///
/// ```text
/// ##.#|##.#|##.#
/// #..#|#..#|#..#
/// ```
pub fn render_ascii(pattern: &BarPattern, periods: usize) -> String {
    assert!(periods >= 1);
    let mut out = String::new();
    for row in 0..pattern.rows() {
        for rep in 0..periods {
            if rep > 0 {
                out.push('|');
            }
            for col in 0..pattern.len() {
                out.push(if pattern.contains(col, row) { '#' } else { '.' });
            }
        }
        out.push('\n');
    }
    out
}

/// A self-contained SVG document: one rect per cell, plus a dashed seam
/// line between consecutive periods.
pub fn render_svg(pattern: &BarPattern, periods: usize) -> String {
    assert!(periods >= 1);
    let (rows, len) = (pattern.rows(), pattern.len());
    let width = periods * len * CELL;
    let height = rows * CELL;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width} {height}" width="{width}" height="{height}">"#
    );
    for rep in 0..periods {
        for col in 0..len {
            for row in 0..rows {
                let x = (rep * len + col) * CELL;
                let y = row * CELL;
                let fill = if pattern.contains(col, row) { SVG_OCCUPIED } else { SVG_FREE };
                let _ = writeln!(
                    out,
                    r##"  <rect x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="{fill}" stroke="#999" stroke-width="1"/>"##
                );
            }
        }
    }
    for rep in 1..periods {
        let x = rep * len * CELL;
        let _ = writeln!(
            out,
            r#"  <line x1="{x}" y1="0" x2="{x}" y2="{height}" stroke="{SVG_SEAM}" stroke-width="2" stroke-dasharray="4 3"/>"#
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ascii_repeats_with_seams() {
        let p = BarPattern::parse_text("##.#\n#..#").unwrap();
        let s = render_ascii(&p, 3);
        assert_eq!(s, "##.#|##.#|##.#\n#..#|#..#|#..#\n");
    }

    #[test]
    fn ascii_single_period_has_no_seam() {
        let p = BarPattern::parse_text("#.").unwrap();
        assert_eq!(render_ascii(&p, 1), "#.\n");
    }

    #[test]
    fn svg_has_one_rect_per_cell_and_one_seam_per_joint() {
        let p = BarPattern::parse_text("#.#\n.#.").unwrap();
        let s = render_svg(&p, 4);
        assert_eq!(s.matches("<rect").count(), 4 * 3 * 2);
        assert_eq!(s.matches("<line").count(), 3);
        assert_eq!(s.matches(SVG_OCCUPIED).count(), 4 * p.code_count() as usize);
        assert!(s.starts_with("<svg ") && s.trim_end().ends_with("</svg>"));
    }
}
