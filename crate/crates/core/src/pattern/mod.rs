//! The grid board and the crease-pattern graph.

mod board;
mod graph;
mod seeds;

pub use board::{Board, Cell, Reflection, Symmetry};
pub use graph::{segment_interior_cells, Crease, CreaseGraph, CreaseKind, Mode, Vertex, VertexKind};
pub use seeds::{chair_seed, seed_from_graph, seed_single_crease, seed_square};
