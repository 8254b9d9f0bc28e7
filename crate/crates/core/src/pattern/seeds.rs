//! Starting patterns.

use super::board::{Board, Cell, Symmetry};
use super::graph::{CreaseGraph, CreaseKind, Mode, VertexKind};
use crate::error::{Error, Result};

/// Four source vertices on the corners of a square joined by driving creases.
///
/// Corners are numbered counterclockwise starting bottom-left; creases run
/// along the directed path 0 -> 1 -> 2 -> 3 plus 0 -> 3.
pub fn seed_square(board: &Board, half_size: i32, center: Cell) -> Result<CreaseGraph> {
    if half_size < 1 {
        return Err(Error::InvalidConfig(format!("square half size {half_size}")));
    }
    let h = half_size;
    let corners = [
        Cell::new(center.i - h, center.j - h),
        Cell::new(center.i + h, center.j - h),
        Cell::new(center.i + h, center.j + h),
        Cell::new(center.i - h, center.j + h),
    ];
    for c in corners {
        board.check(c)?;
    }
    let mut g = CreaseGraph::new();
    for c in corners {
        g.add_vertex(c, VertexKind::Source)?;
    }
    for (a, b) in [(0, 1), (1, 2), (2, 3), (0, 3)] {
        g.add_crease(a, b, CreaseKind::Driving)?;
    }
    Ok(g)
}

/// Two source vertices joined by one driving crease.
pub fn seed_single_crease(board: &Board, p1: Cell, p2: Cell) -> Result<CreaseGraph> {
    board.check(p1)?;
    board.check(p2)?;
    if p1 == p2 {
        return Err(Error::InvalidPattern("single crease needs two distinct cells".into()));
    }
    let mut g = CreaseGraph::new();
    let a = g.add_vertex(p1, VertexKind::Source)?;
    let b = g.add_vertex(p2, VertexKind::Source)?;
    g.add_crease(a, b, CreaseKind::Driving)?;
    Ok(g)
}

/// Accepts a caller-supplied pattern after checking every invariant.
pub fn seed_from_graph(board: &Board, mut graph: CreaseGraph) -> Result<CreaseGraph> {
    graph.reindex();
    graph.validate(board)?;
    if graph.sources().next().is_none() {
        return Err(Error::InvalidPattern("seed has no source vertex".into()));
    }
    Ok(graph)
}

/// Seed for the chair objective on a 13x13 board mirrored across the y axis.
///
/// The seat is a fixed square of half size 2. Both back corners are already
/// extended backwards so the first fold lifts a pair of flaps behind the
/// seat, which later extensions can turn into a backrest.
pub fn chair_seed() -> Result<(Board, CreaseGraph)> {
    let board = Board::new(13, 13, Symmetry::Y, None)?;
    let mut g = seed_square(&board, 2, board.center())?;
    // back corners: (4, 8) and (8, 8)
    for (corner, targets) in [
        (Cell::new(4, 8), [Cell::new(3, 10), Cell::new(4, 10), Cell::new(2, 8)]),
        (Cell::new(8, 8), [Cell::new(9, 10), Cell::new(8, 10), Cell::new(10, 8)]),
    ] {
        let v = g.vertex_at(corner).expect("corner exists");
        for t in targets {
            let w = g.add_vertex(t, VertexKind::Interior)?;
            g.add_crease(v, w, CreaseKind::Folded)?;
        }
        g.vertices[v].extended = true;
        g.vertices[v].mode = Some(Mode::Plus);
    }
    let g = seed_from_graph(&board, g)?;
    Ok((board, g))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_on_nine_board() {
        let b = Board::new(9, 9, Symmetry::XY, None).unwrap();
        let g = seed_square(&b, 1, Cell::new(4, 4)).unwrap();
        let mut cells: Vec<_> = g.vertices.iter().map(|v| v.cell).collect();
        cells.sort();
        assert_eq!(cells, vec![Cell::new(3, 3), Cell::new(3, 5), Cell::new(5, 3), Cell::new(5, 5)]);
        assert_eq!(g.creases.len(), 4);
        g.validate(&b).unwrap();
        assert!(g.topological_order().is_some());
    }

    #[test]
    fn square_out_of_bounds() {
        let b = Board::new(9, 9, Symmetry::XY, None).unwrap();
        assert!(matches!(seed_square(&b, 5, Cell::new(4, 4)), Err(Error::OutOfBounds(..))));
    }

    #[test]
    fn single_crease() {
        let b = Board::new(25, 25, Symmetry::Y, Some(2.9)).unwrap();
        let g = seed_single_crease(&b, Cell::new(10, 12), Cell::new(14, 12)).unwrap();
        assert_eq!((g.vertices.len(), g.creases.len()), (2, 1));
        assert!(seed_single_crease(&b, Cell::new(3, 3), Cell::new(3, 3)).is_err());
    }

    #[test]
    fn chair_seed_is_valid() {
        let (board, g) = chair_seed().unwrap();
        g.validate(&board).unwrap();
    }

    #[test]
    fn crossing_seed_rejected() {
        let b = Board::new(5, 5, Symmetry::NONE, None).unwrap();
        let mut g = CreaseGraph::new();
        let p: Vec<_> = [(0, 0), (2, 2), (0, 2), (2, 0)]
            .into_iter()
            .map(|c| g.add_vertex(c.into(), VertexKind::Source).unwrap())
            .collect();
        g.add_crease(p[0], p[1], CreaseKind::Driving).unwrap();
        g.add_crease(p[2], p[3], CreaseKind::Driving).unwrap();
        let err = seed_from_graph(&b, g).unwrap_err();
        assert!(err.to_string().contains("planarity"), "{err}");
    }
}
