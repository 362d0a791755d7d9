//! Deterministic SVG drawings of braid words: strands as vertical lines,
//! one crossing glyph per letter with an over/under gap. All coordinates
//! are integers, so identical inputs give byte-identical output.

use crate::braid::BraidWord;
use std::fmt::Write;

const MARGIN: i64 = 20;
const COL_W: i64 = 40;
const ROW_H: i64 = 40;
const STROKE: &str = r##"stroke="#000" stroke-width="2""##;
/// Fraction of the under-strand diagonal drawn before and after the gap,
/// in fortieths.
const GAP_IN: i64 = 14;
const GAP_OUT: i64 = 26;

fn line(out: &mut String, x1: i64, y1: i64, x2: i64, y2: i64) {
    writeln!(out, r#"  <line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" {STROKE}/>"#).unwrap();
}

/// Renders the braid word as an SVG document string.
pub fn render_svg(w: &BraidWord) -> String {
    let strands = w.strands() as i64;
    let rows = w.len() as i64;
    let width = 2 * MARGIN + (strands - 1) * COL_W;
    let height = 2 * MARGIN + rows.max(1) * ROW_H;
    let x = |pos: i64| MARGIN + (pos - 1) * COL_W;
    let y = |row: i64| MARGIN + row * ROW_H;

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    )
    .unwrap();
    writeln!(out, r##"  <rect width="{width}" height="{height}" fill="#fff"/>"##).unwrap();

    if rows == 0 {
        for pos in 1..=strands {
            line(&mut out, x(pos), y(0), x(pos), y(1));
        }
    }
    for (row, &m) in w.letters().iter().enumerate() {
        let row = row as i64;
        let g = m.unsigned_abs() as i64;
        let (y0, y1) = (y(row), y(row + 1));
        for pos in 1..=strands {
            if pos != g && pos != g + 1 {
                line(&mut out, x(pos), y0, x(pos), y1);
            }
        }
        let (xl, xr) = (x(g), x(g + 1));
        // positive letter: the strand from the left position crosses over
        let (over, under) = if m > 0 { ((xl, xr), (xr, xl)) } else { ((xr, xl), (xl, xr)) };
        line(&mut out, over.0, y0, over.1, y1);
        let dx = under.1 - under.0;
        line(&mut out, under.0, y0, under.0 + dx * GAP_IN / COL_W, y0 + ROW_H * GAP_IN / COL_W);
        line(&mut out, under.0 + dx * GAP_OUT / COL_W, y0 + ROW_H * GAP_OUT / COL_W, under.1, y1);
    }
    out.push_str("</svg>\n");
    out
}
