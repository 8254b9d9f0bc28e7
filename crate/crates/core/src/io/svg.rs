//! Crease pattern drawings.

use std::fmt::Write as _;
use std::path::Path;

use super::fold::{assignments, Assignment};
use crate::error::Result;
use crate::kinematics::{planar_positions, FoldedState};
use crate::pattern::{Board, CreaseGraph};

/// Pixels per board unit.
const SCALE: f64 = 40.0;
const MARGIN: f64 = 20.0;

/// Mountain creases are dash-dot red, valley creases dashed blue. Creases
/// without a fold angle are drawn in a neutral grey.
pub fn render_svg(graph: &CreaseGraph, board: &Board, state: Option<&FoldedState>, grid: bool) -> String {
    let w = (board.width - 1) as f64 * SCALE + 2.0 * MARGIN;
    let h = (board.height - 1) as f64 * SCALE + 2.0 * MARGIN;
    let half = [(board.width - 1) as f64 / 2.0, (board.height - 1) as f64 / 2.0];
    // board y points up, SVG y points down
    let px = |p: [f64; 2]| (MARGIN + (p[0] + half[0]) * SCALE, MARGIN + (half[1] - p[1]) * SCALE);
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#);
    s.push_str("<style>\n");
    s.push_str(".mountain{stroke:#d62728;stroke-width:2;stroke-dasharray:8 3 2 3}\n");
    s.push_str(".valley{stroke:#1f77b4;stroke-width:2;stroke-dasharray:6 4}\n");
    s.push_str(".unassigned{stroke:#7f7f7f;stroke-width:2}\n");
    s.push_str(".grid{fill:#bbbbbb}\n");
    s.push_str("</style>\n");
    if grid {
        s.push_str("<g class=\"grid\">\n");
        for c in board.cells() {
            let (x, y) = px(board.world_xy(c));
            let _ = writeln!(s, r#"<circle cx="{x}" cy="{y}" r="1.5"/>"#);
        }
        s.push_str("</g>\n");
    }
    let xy = planar_positions(graph, board);
    for (c, a) in graph.creases.iter().zip(assignments(graph, state)) {
        let class = match a {
            Assignment::Mountain => "mountain",
            Assignment::Valley => "valley",
            Assignment::Flat | Assignment::Unassigned => "unassigned",
        };
        let (x1, y1) = px(xy[c.from]);
        let (x2, y2) = px(xy[c.to]);
        let _ = writeln!(s, r#"<line class="{class}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>"#);
    }
    s.push_str("</svg>\n");
    s
}

pub fn export_svg(graph: &CreaseGraph, board: &Board, state: Option<&FoldedState>, path: &Path) -> Result<()> {
    std::fs::write(path, render_svg(graph, board, state, true))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinematics::fold_graph;
    use crate::pattern::{seed_square, Symmetry};

    #[test]
    fn seed_square_drawing() {
        let b = Board::new(9, 9, Symmetry::XY, None).unwrap();
        let g = seed_square(&b, 2, b.center()).unwrap();
        let mut st = fold_graph(&g, &b, 1.0).unwrap();
        st.rho[0] = -st.rho[0];
        let svg = render_svg(&g, &b, Some(&st), false);
        assert_eq!(svg.matches("<line ").count(), 4);
        assert_eq!(svg.matches("class=\"mountain\"").count(), 1);
        assert_eq!(svg.matches("class=\"valley\"").count(), 3);
        assert_eq!(svg, render_svg(&g, &b, Some(&st), false));
    }
}
