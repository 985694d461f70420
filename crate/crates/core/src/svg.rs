//! SVG rendering of a layout. Level 0 is drawn at the bottom.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::layout::VisibilityLayout;

/// Pixels per quarter unit and per level.
const QUARTER: i64 = 10;
const LEVEL: i64 = 40;
const MARGIN: i64 = 30;
const BAR: i64 = LEVEL / 4;

#[derive(Debug, Clone, Copy, Default)]
pub struct SvgOptions {
    /// Draw hidden helper edges dashed instead of leaving them out.
    pub show_hidden: bool,
}

pub fn render_svg(layout: &VisibilityLayout, opts: SvgOptions) -> String {
    let x0 = layout.vertices.iter().map(|b| b.x_lo).chain(layout.edges.iter().map(|e| e.x)).min().unwrap_or(0);
    let x1 = layout.vertices.iter().map(|b| b.x_hi).chain(layout.edges.iter().map(|e| e.x)).max().unwrap_or(0);
    let y0 = layout.vertices.iter().map(|b| b.y).min().unwrap_or(0);
    let y1 = layout.vertices.iter().map(|b| b.y).max().unwrap_or(0);
    let px = |x: i64| MARGIN + (x - x0) * QUARTER;
    let py = |y: i64| MARGIN + (y1 - y) * LEVEL;
    let (w, h) = (2 * MARGIN + (x1 - x0) * QUARTER, 2 * MARGIN + (y1 - y0) * LEVEL);

    let crossed_edges: BTreeSet<_> = layout.crossings.iter().map(|c| c.edge).collect();
    let crossed_vertices: BTreeSet<_> = layout.crossings.iter().map(|c| c.vertex).collect();

    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#);
    let _ = writeln!(
        s,
        "<style>rect{{fill:#9ab}} rect.crossed{{fill:#e96}} line{{stroke:#222;stroke-width:1}} \
         line.crossed{{stroke:#c30}} line.hidden{{stroke:#999;stroke-dasharray:4 3}} \
         text{{font:10px sans-serif}}</style>"
    );
    for e in &layout.edges {
        if e.hidden && !opts.show_hidden {
            continue;
        }
        let class = if e.hidden {
            "hidden"
        } else if crossed_edges.contains(&e.id) {
            "crossed"
        } else {
            "edge"
        };
        let _ = writeln!(
            s,
            r#"<line class="{class}" data-id="{}" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            e.id,
            px(e.x),
            py(e.y_lo),
            px(e.x),
            py(e.y_hi)
        );
    }
    for b in &layout.vertices {
        let class = if crossed_vertices.contains(&b.id) { "crossed" } else { "vertex" };
        // a point bar still gets a visible width
        let width = ((b.x_hi - b.x_lo) * QUARTER).max(QUARTER / 2);
        let _ = writeln!(
            s,
            r#"<rect class="{class}" data-id="{}" x="{}" y="{}" width="{width}" height="{BAR}"/>"#,
            b.id,
            px(b.x_lo) - if b.x_hi == b.x_lo { QUARTER / 4 } else { 0 },
            py(b.y) - BAR / 2
        );
        let _ = writeln!(s, r#"<text x="{}" y="{}">{}</text>"#, px(b.x_lo) + 2, py(b.y) - BAR / 2 - 2, b.id);
    }
    s.push_str("</svg>\n");
    s
}
