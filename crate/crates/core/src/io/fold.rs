//! FOLD 1.1 export and import.
//!
//! Standard fields carry the crease pattern as drawn on the board: planar
//! vertex coordinates, edges, mountain/valley assignment and fold angles in
//! degrees (positive is valley), and the bounded panels as faces. Fields under
//! the `rori:` namespace keep what the game needs to rebuild the exact graph.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kinematics::{planar_positions, stars, trace_faces, FoldedState};
use crate::pattern::{Board, Cell, CreaseGraph, CreaseKind, Mode, Symmetry, VertexKind};

pub const FOLD_SPEC: f64 = 1.1;
pub const FOLD_CREATOR: &str = "rori";

/// Mountain/valley label of one crease at an exported angle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Assignment {
    Mountain,
    Valley,
    Flat,
    Unassigned,
}

impl Assignment {
    pub fn from_rho(rho: f64) -> Assignment {
        if rho > 0.0 {
            Assignment::Valley
        } else if rho < 0.0 {
            Assignment::Mountain
        } else {
            Assignment::Flat
        }
    }

    pub fn code(self) -> &'static str {
        match self {
            Assignment::Mountain => "M",
            Assignment::Valley => "V",
            Assignment::Flat => "F",
            Assignment::Unassigned => "U",
        }
    }
}

/// Per-crease labels; every crease is unassigned without a folded state.
pub fn assignments(graph: &CreaseGraph, state: Option<&FoldedState>) -> Vec<Assignment> {
    match state {
        Some(s) => s.rho.iter().map(|&r| Assignment::from_rho(r)).collect(),
        None => vec![Assignment::Unassigned; graph.creases.len()],
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FoldFile {
    pub file_spec: f64,
    pub file_creator: String,
    pub file_classes: Vec<String>,
    pub frame_classes: Vec<String>,
    pub frame_attributes: Vec<String>,
    #[serde(rename = "frame_unit")]
    pub frame_unit: String,
    pub vertices_coords: Vec<[f64; 2]>,
    pub edges_vertices: Vec<[usize; 2]>,
    pub edges_assignment: Vec<String>,
    #[serde(rename = "edges_foldAngle", default, skip_serializing_if = "Option::is_none")]
    pub edges_fold_angle: Option<Vec<f64>>,
    pub faces_vertices: Vec<Vec<usize>>,
    #[serde(rename = "rori:board")]
    pub board: [i32; 2],
    #[serde(rename = "rori:symmetry")]
    pub symmetry: String,
    #[serde(rename = "rori:cl_max")]
    pub cl_max: Option<f64>,
    /// Driving angle the assignment was taken at, in radians.
    #[serde(rename = "rori:rho0")]
    pub rho0: Option<f64>,
    #[serde(rename = "rori:vertices_cell")]
    pub vertices_cell: Vec<[i32; 2]>,
    /// `"source"` or `"interior"`.
    #[serde(rename = "rori:vertices_kind")]
    pub vertices_kind: Vec<String>,
    /// `-1`, `1`, or `0` when the vertex has no mode yet.
    #[serde(rename = "rori:vertices_mode")]
    pub vertices_mode: Vec<i8>,
    #[serde(rename = "rori:vertices_extended")]
    pub vertices_extended: Vec<bool>,
    /// `"driving"` or `"folded"`; folded edges point from parent to child.
    #[serde(rename = "rori:edges_kind")]
    pub edges_kind: Vec<String>,
}

impl FoldFile {
    pub fn from_pattern(graph: &CreaseGraph, board: &Board, state: Option<&FoldedState>) -> Result<FoldFile> {
        if let Some(s) = state {
            if s.rho.len() != graph.creases.len() {
                return Err(Error::InvalidPattern("folded state does not match the graph".into()));
            }
        }
        let xy = planar_positions(graph, board);
        let faces = trace_faces(&stars(graph), &xy);
        Ok(FoldFile {
            file_spec: FOLD_SPEC,
            file_creator: FOLD_CREATOR.into(),
            file_classes: vec!["singleModel".into()],
            frame_classes: vec!["creasePattern".into()],
            frame_attributes: vec!["2D".into()],
            frame_unit: "unit".into(),
            vertices_coords: xy,
            edges_vertices: graph.creases.iter().map(|c| [c.from, c.to]).collect(),
            edges_assignment: assignments(graph, state).iter().map(|a| a.code().to_string()).collect(),
            edges_fold_angle: state.map(|s| s.rho.iter().map(|r| r.to_degrees()).collect()),
            faces_vertices: faces.faces.into_iter().filter(|f| f.bounded()).map(|f| f.vertices).collect(),
            board: [board.width, board.height],
            symmetry: board.symmetry.label(),
            cl_max: board.max_crease_length,
            rho0: state.map(|s| s.rho0),
            vertices_cell: graph.vertices.iter().map(|v| [v.cell.i, v.cell.j]).collect(),
            vertices_kind: graph
                .vertices
                .iter()
                .map(|v| match v.kind {
                    VertexKind::Source => "source".into(),
                    VertexKind::Interior => "interior".into(),
                })
                .collect(),
            vertices_mode: graph.vertices.iter().map(|v| v.mode.map_or(0, Mode::sign)).collect(),
            vertices_extended: graph.vertices.iter().map(|v| v.extended).collect(),
            edges_kind: graph
                .creases
                .iter()
                .map(|c| match c.kind {
                    CreaseKind::Driving => "driving".into(),
                    CreaseKind::Folded => "folded".into(),
                })
                .collect(),
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("FOLD documents serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<FoldFile> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("FOLD: {e}")))
    }

    pub fn board(&self) -> Result<Board> {
        Board::new(self.board[0], self.board[1], Symmetry::parse(&self.symmetry)?, self.cl_max)
    }

    /// Rebuilds the crease graph and checks it against the board.
    pub fn graph(&self) -> Result<CreaseGraph> {
        let n = self.vertices_cell.len();
        let m = self.edges_vertices.len();
        if [self.vertices_kind.len(), self.vertices_mode.len(), self.vertices_extended.len()].iter().any(|&k| k != n)
            || self.edges_kind.len() != m
        {
            return Err(Error::Parse("FOLD: per-vertex or per-edge arrays differ in length".into()));
        }
        let board = self.board()?;
        let mut g = CreaseGraph::new();
        for k in 0..n {
            let kind = match self.vertices_kind[k].as_str() {
                "source" => VertexKind::Source,
                "interior" => VertexKind::Interior,
                other => return Err(Error::Parse(format!("FOLD: vertex kind `{other}`"))),
            };
            let [i, j] = self.vertices_cell[k];
            let v = g.add_vertex(board.check(Cell::new(i, j))?, kind)?;
            g.vertices[v].extended = self.vertices_extended[k];
            g.vertices[v].mode = match self.vertices_mode[k] {
                0 => None,
                s => Some(Mode::from_sign(s).ok_or_else(|| Error::Parse(format!("FOLD: vertex mode {s}")))?),
            };
        }
        for (e, &[a, b]) in self.edges_vertices.iter().enumerate() {
            let kind = match self.edges_kind[e].as_str() {
                "driving" => CreaseKind::Driving,
                "folded" => CreaseKind::Folded,
                other => return Err(Error::Parse(format!("FOLD: edge kind `{other}`"))),
            };
            if a >= n || b >= n {
                return Err(Error::Parse(format!("FOLD: edge {e} names a missing vertex")));
            }
            g.add_crease(a, b, kind)?;
        }
        g.validate(&board)?;
        Ok(g)
    }
}

pub fn export_fold(graph: &CreaseGraph, board: &Board, state: Option<&FoldedState>, path: &Path) -> Result<()> {
    std::fs::write(path, FoldFile::from_pattern(graph, board, state)?.to_json())?;
    Ok(())
}

/// Reads a FOLD file written by [`export_fold`].
pub fn import_fold(path: &Path) -> Result<(FoldFile, Board, CreaseGraph)> {
    let file = FoldFile::from_json(&std::fs::read_to_string(path)?)?;
    let board = file.board()?;
    let graph = file.graph()?;
    Ok((file, board, graph))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinematics::fold_graph;
    use crate::pattern::seed_square;

    #[test]
    fn seed_square_document() {
        let b = Board::new(9, 9, Symmetry::XY, None).unwrap();
        let g = seed_square(&b, 2, b.center()).unwrap();
        let f = FoldFile::from_pattern(&g, &b, None).unwrap();
        assert_eq!(f.vertices_coords.len(), 4);
        assert_eq!(f.edges_vertices.len(), 4);
        assert_eq!(f.faces_vertices.len(), 1);
        assert!(f.edges_assignment.iter().all(|a| a == "U"));
        assert!(!f.to_json().contains("edges_foldAngle"));
    }

    #[test]
    fn labels_follow_the_sign_convention() {
        let b = Board::new(9, 9, Symmetry::XY, None).unwrap();
        let g = seed_square(&b, 2, b.center()).unwrap();
        let mut s = fold_graph(&g, &b, 1.0).unwrap();
        let v = FoldFile::from_pattern(&g, &b, Some(&s)).unwrap();
        assert!(v.edges_assignment.iter().all(|a| a == "V"));
        s.rho.iter_mut().for_each(|r| *r = -*r);
        let m = FoldFile::from_pattern(&g, &b, Some(&s)).unwrap();
        assert!(m.edges_assignment.iter().all(|a| a == "M"));
    }
}
