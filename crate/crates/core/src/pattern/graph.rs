use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::board::{Board, Cell};
use crate::error::{Error, Result};
use crate::geom::seg_seg_intersect_2d;

/// Rigid body mode selecting one of the two kinematic branches of a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    Minus,
    Plus,
}

impl Mode {
    pub fn sign(self) -> i8 {
        match self {
            Mode::Minus => -1,
            Mode::Plus => 1,
        }
    }

    pub fn from_sign(s: i8) -> Option<Mode> {
        match s {
            -1 => Some(Mode::Minus),
            1 => Some(Mode::Plus),
            _ => None,
        }
    }

    pub fn flip(self) -> Mode {
        match self {
            Mode::Minus => Mode::Plus,
            Mode::Plus => Mode::Minus,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VertexKind {
    Source,
    Interior,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: usize,
    pub cell: Cell,
    /// Assigned when the vertex is extended (or given by a seed).
    pub mode: Option<Mode>,
    pub kind: VertexKind,
    pub extended: bool,
}

/// Driving creases carry the actuated angle directly; folded creases are
/// solved by the kinematics and point from parent to child.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CreaseKind {
    Driving,
    Folded,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Crease {
    pub from: usize,
    pub to: usize,
    pub kind: CreaseKind,
    pub planar_length: f64,
}

/// The crease pattern: vertices on board cells joined by straight creases.
///
/// Vertex ids follow insertion order.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CreaseGraph {
    pub vertices: Vec<Vertex>,
    pub creases: Vec<Crease>,
    #[serde(skip)]
    by_cell: HashMap<Cell, usize>,
    #[serde(skip)]
    incident: Vec<Vec<usize>>,
}

impl CreaseGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Rebuilds lookup tables after deserialization.
    pub fn reindex(&mut self) {
        self.by_cell = self.vertices.iter().map(|v| (v.cell, v.id)).collect();
        self.incident = vec![vec![]; self.vertices.len()];
        for (k, c) in self.creases.iter().enumerate() {
            self.incident[c.from].push(k);
            self.incident[c.to].push(k);
        }
    }

    pub fn add_vertex(&mut self, cell: Cell, kind: VertexKind) -> Result<usize> {
        if self.by_cell.contains_key(&cell) {
            return Err(Error::InvalidPattern(format!("cell ({}, {}) already occupied", cell.i, cell.j)));
        }
        let id = self.vertices.len();
        self.vertices.push(Vertex { id, cell, mode: None, kind, extended: false });
        self.by_cell.insert(cell, id);
        self.incident.push(vec![]);
        Ok(id)
    }

    pub fn add_crease(&mut self, from: usize, to: usize, kind: CreaseKind) -> Result<usize> {
        if from == to || from >= self.vertices.len() || to >= self.vertices.len() {
            return Err(Error::InvalidPattern(format!("bad crease {from} -> {to}")));
        }
        if self.crease_between(from, to).is_some() {
            return Err(Error::InvalidPattern(format!("duplicate crease {from} -> {to}")));
        }
        let planar_length = self.vertices[from].cell.dist(self.vertices[to].cell);
        let k = self.creases.len();
        self.creases.push(Crease { from, to, kind, planar_length });
        self.incident[from].push(k);
        self.incident[to].push(k);
        Ok(k)
    }

    pub fn vertex_at(&self, cell: Cell) -> Option<usize> {
        self.by_cell.get(&cell).copied()
    }

    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    pub fn crease_between(&self, a: usize, b: usize) -> Option<usize> {
        self.incident[a]
            .iter()
            .copied()
            .find(|&k| self.creases[k].other(a) == b)
    }

    /// Folded creases leaving `v`.
    pub fn outgoing(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.incident[v]
            .iter()
            .copied()
            .filter(move |&k| self.creases[k].kind == CreaseKind::Folded && self.creases[k].from == v)
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.outgoing(v).count()
    }

    pub fn sources(&self) -> impl Iterator<Item = usize> + '_ {
        self.vertices.iter().filter(|v| v.kind == VertexKind::Source).map(|v| v.id)
    }

    /// Whether `to` can be reached from `from` along folded creases.
    pub fn reaches(&self, from: usize, to: usize) -> bool {
        let mut seen = vec![false; self.vertices.len()];
        let mut stack = vec![from];
        while let Some(v) = stack.pop() {
            if v == to {
                return true;
            }
            if std::mem::replace(&mut seen[v], true) {
                continue;
            }
            stack.extend(self.outgoing(v).map(|k| self.creases[k].to));
        }
        false
    }

    /// Kahn order over folded creases; `None` on a directed cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for c in self.creases.iter().filter(|c| c.kind == CreaseKind::Folded) {
            indeg[c.to] += 1;
        }
        let mut ready: BTreeSet<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop_first() {
            order.push(v);
            for k in self.outgoing(v) {
                let w = self.creases[k].to;
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready.insert(w);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    /// First pair of creases that cross, if any.
    pub fn first_crossing(&self) -> Option<(usize, usize)> {
        for a in 0..self.creases.len() {
            for b in a + 1..self.creases.len() {
                if self.creases_cross(a, b) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    fn creases_cross(&self, a: usize, b: usize) -> bool {
        let (ca, cb) = (&self.creases[a], &self.creases[b]);
        let p = |v: usize| self.vertices[v].cell.as_i64();
        seg_seg_intersect_2d(p(ca.from), p(ca.to), p(cb.from), p(cb.to)).unwrap_or(true)
    }

    /// Vertex cells lying strictly inside a crease.
    pub fn crease_passes_vertex(&self, k: usize) -> bool {
        let c = &self.creases[k];
        segment_interior_cells(self.vertices[c.from].cell, self.vertices[c.to].cell)
            .any(|cell| self.by_cell.contains_key(&cell))
    }

    /// Structural invariants: bounds, crease length, acyclicity, planarity,
    /// out-degree, and closure under the board's reflections.
    pub fn validate(&self, board: &Board) -> Result<()> {
        for v in &self.vertices {
            board.check(v.cell)?;
        }
        for (k, c) in self.creases.iter().enumerate() {
            if c.from == c.to {
                return Err(Error::InvalidPattern(format!("crease {k} is a loop")));
            }
            if let (Some(max), CreaseKind::Folded) = (board.max_crease_length, c.kind) {
                if c.planar_length > max + 1e-9 {
                    return Err(Error::InvalidPattern(format!("crease {k} longer than {max}")));
                }
            }
            if self.crease_passes_vertex(k) {
                return Err(Error::InvalidPattern(format!("planarity: crease {k} passes through a vertex")));
            }
        }
        if self.topological_order().is_none() {
            return Err(Error::InvalidPattern("acyclicity: directed cycle".into()));
        }
        if let Some((a, b)) = self.first_crossing() {
            return Err(Error::InvalidPattern(format!("planarity: creases {a} and {b} cross")));
        }
        for v in &self.vertices {
            let out = self.out_degree(v.id);
            let ok = if v.extended { out == 3 } else { out == 0 };
            if !ok {
                return Err(Error::InvalidPattern(format!(
                    "out-degree: vertex {} has {out} outgoing creases (extended = {})",
                    v.id, v.extended
                )));
            }
        }
        self.check_symmetry(board)
    }

    fn check_symmetry(&self, board: &Board) -> Result<()> {
        for g in board.group().into_iter().skip(1) {
            for v in &self.vertices {
                let w = self
                    .vertex_at(board.apply(g, v.cell))
                    .ok_or_else(|| Error::InvalidPattern(format!("symmetry: vertex {} has no mirror", v.id)))?;
                let w = &self.vertices[w];
                if w.extended != v.extended || w.mode != v.mode || w.kind != v.kind {
                    return Err(Error::InvalidPattern(format!("symmetry: vertex {} differs from its mirror {}", v.id, w.id)));
                }
            }
            for c in &self.creases {
                let a = self.vertex_at(board.apply(g, self.vertices[c.from].cell));
                let b = self.vertex_at(board.apply(g, self.vertices[c.to].cell));
                let mirrored = match (a, b) {
                    (Some(a), Some(b)) => self.crease_between(a, b).map(|k| &self.creases[k]),
                    _ => None,
                };
                let ok = match mirrored {
                    Some(m) if c.kind == CreaseKind::Driving => m.kind == CreaseKind::Driving,
                    Some(m) => m.kind == CreaseKind::Folded && Some(m.from) == a,
                    None => false,
                };
                if !ok {
                    return Err(Error::InvalidPattern(format!("symmetry: crease {} -> {} has no mirror", c.from, c.to)));
                }
            }
        }
        Ok(())
    }
}

impl Crease {
    pub fn other(&self, v: usize) -> usize {
        if self.from == v {
            self.to
        } else {
            self.from
        }
    }
}

/// Lattice points strictly between two cells.
pub fn segment_interior_cells(a: Cell, b: Cell) -> impl Iterator<Item = Cell> {
    let di = b.i - a.i;
    let dj = b.j - a.j;
    let g = gcd(di.abs(), dj.abs()).max(1);
    let (si, sj) = (di / g, dj / g);
    (1..g).map(move |t| Cell::new(a.i + si * t, a.j + sj * t))
}

fn gcd(a: i32, b: i32) -> i32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::board::Symmetry;

    #[test]
    fn interior_cells() {
        let pts: Vec<_> = segment_interior_cells(Cell::new(0, 0), Cell::new(4, 2)).collect();
        assert_eq!(pts, vec![Cell::new(2, 1)]);
        assert_eq!(segment_interior_cells(Cell::new(0, 0), Cell::new(1, 2)).count(), 0);
    }

    #[test]
    fn cycle_rejected() {
        let board = Board::new(5, 5, Symmetry::NONE, None).unwrap();
        let mut g = CreaseGraph::new();
        let a = g.add_vertex(Cell::new(0, 0), VertexKind::Interior).unwrap();
        let b = g.add_vertex(Cell::new(2, 0), VertexKind::Interior).unwrap();
        let c = g.add_vertex(Cell::new(1, 2), VertexKind::Interior).unwrap();
        g.add_crease(a, b, CreaseKind::Folded).unwrap();
        g.add_crease(b, c, CreaseKind::Folded).unwrap();
        g.add_crease(c, a, CreaseKind::Folded).unwrap();
        assert!(g.topological_order().is_none());
        let err = g.validate(&board).unwrap_err();
        assert!(err.to_string().contains("acyclicity"), "{err}");
        assert!(g.reaches(a, c));
    }
}
