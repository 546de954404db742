//! Deterministic SVG rendering of ranges and polytopes on the integer grid.

use std::fmt::Write;

use cohiggs::{Error, LatticeVec, Result};

const CELL: i64 = 48;
const MARGIN: i64 = 24;

/// Labelled lattice points with an optional outline (counterclockwise
/// vertices), drawn over a grid that covers them, the origin and one
/// extra cell on each side.
pub struct Figure<'a> {
    pub points: &'a [(LatticeVec, Option<usize>)],
    pub outline: &'a [LatticeVec],
}

pub fn render(fig: &Figure) -> Result<String> {
    let all = fig.points.iter().map(|(p, _)| p).chain(fig.outline);
    let mut coords: Vec<(i64, i64)> = Vec::new();
    for p in all {
        if p.rank() != 2 {
            return Err(Error::Unsupported(format!("SVG output needs 2-D data, got {p}")));
        }
        coords.push((p.0[0], p.0[1]));
    }
    let (mut x0, mut x1, mut y0, mut y1) = (-3, 3, -3, 3);
    if !coords.is_empty() {
        x0 = coords.iter().map(|c| c.0).min().unwrap().min(0) - 1;
        x1 = coords.iter().map(|c| c.0).max().unwrap().max(0) + 1;
        y0 = coords.iter().map(|c| c.1).min().unwrap().min(0) - 1;
        y1 = coords.iter().map(|c| c.1).max().unwrap().max(0) + 1;
    }
    let (w, h) = ((x1 - x0) * CELL + 2 * MARGIN, (y1 - y0) * CELL + 2 * MARGIN);
    let px = |x: i64| MARGIN + (x - x0) * CELL;
    let py = |y: i64| MARGIN + (y1 - y) * CELL;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(s, r##"<g stroke="#d0d0d0" stroke-width="1">"##);
    for x in x0..=x1 {
        let _ = writeln!(s, r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, px(x), py(y1), px(x), py(y0));
    }
    for y in y0..=y1 {
        let _ = writeln!(s, r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, px(x0), py(y), px(x1), py(y));
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(
        s,
        r##"<circle cx="{}" cy="{}" r="9" fill="none" stroke="#2a9d3a" stroke-width="2"/>"##,
        px(0),
        py(0)
    );
    if !fig.outline.is_empty() {
        let pts: Vec<String> = fig.outline.iter().map(|p| format!("{},{}", px(p.0[0]), py(p.0[1]))).collect();
        let _ = writeln!(
            s,
            r##"<polygon points="{}" fill="#f4e9a8" fill-opacity="0.5" stroke="#555555" stroke-width="2"/>"##,
            pts.join(" ")
        );
    }
    for (p, label) in fig.points {
        let (cx, cy) = (px(p.0[0]), py(p.0[1]));
        let _ = writeln!(s, r#"<circle cx="{cx}" cy="{cy}" r="4" fill="black"/>"#);
        if let Some(d) = label {
            let _ = writeln!(
                s,
                r#"<text x="{}" y="{}" font-family="sans-serif" font-size="14" text-anchor="middle">{d}</text>"#,
                cx,
                cy - 10
            );
        }
    }
    s.push_str("</svg>\n");
    Ok(s)
}
