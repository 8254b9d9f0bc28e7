use super::game::{GameState, Phase};
use crate::pattern::Board;

/// `w x h x (w*h + 2)` tensor with entries in {-1, 0, 1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Observation {
    pub width: usize,
    pub height: usize,
    pub depth: usize,
    pub data: Vec<i8>,
}

impl Observation {
    fn zeros(width: usize, height: usize) -> Self {
        let depth = width * height + 2;
        Observation { width, height, depth, data: vec![0; width * height * depth] }
    }

    fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.height + j) * self.depth + k
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> i8 {
        self.data[self.index(i, j, k)]
    }

    fn set(&mut self, i: usize, j: usize, k: usize, value: i8) {
        let idx = self.index(i, j, k);
        self.data[idx] = value;
    }
}

/// Slice 0 holds the rigid body mode of each vertex; slice `1 + n` marks the
/// adjacency to the `n`-th vertex placed (+1 outgoing, -1 incoming); the last
/// slice marks the vertex being extended.
pub fn encode_observation(state: &GameState, board: &Board) -> Observation {
    let mut o = Observation::zeros(board.width as usize, board.height as usize);
    let g = &state.graph;
    let at = |v: usize| {
        let c = g.vertices[v].cell;
        (c.i as usize, c.j as usize)
    };
    for v in &g.vertices {
        if let Some(m) = v.mode {
            let (i, j) = at(v.id);
            o.set(i, j, 0, m.sign());
        }
    }
    for c in &g.creases {
        let (fi, fj) = at(c.from);
        let (ti, tj) = at(c.to);
        o.set(fi, fj, 1 + c.to, 1);
        o.set(ti, tj, 1 + c.from, -1);
    }
    if let Phase::PlaceEdge { vertex } = state.phase {
        let (i, j) = at(vertex);
        let last = o.depth - 1;
        o.set(i, j, last, 1);
    }
    o
}
