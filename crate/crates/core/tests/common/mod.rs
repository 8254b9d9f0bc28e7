#![allow(dead_code)]

pub mod fuzz;

use rigid_origami::pattern::{seed_square, Board, CreaseGraph, CreaseKind, Mode, Symmetry, VertexKind};

/// Square seed on a 9x9 board with every corner extended to both
/// neighbouring edge midpoints three cells out and along its diagonal.
pub fn pyramid_pattern(mode: Mode, diag: i32) -> (Board, CreaseGraph) {
    let board = Board::new(9, 9, Symmetry::XY, None).unwrap();
    let mut g = seed_square(&board, 1, board.center()).unwrap();
    let corners = [(3, 3), (5, 3), (5, 5), (3, 5)];
    let sx = [-1, 1, 1, -1];
    let sy = [-1, -1, 1, 1];
    for k in 0..4 {
        let v = g.vertex_at(corners[k].into()).unwrap();
        let (x, y) = corners[k];
        for t in [(4, 4 + sy[k] * 3), (4 + sx[k] * 3, 4), (x + sx[k] * diag, y + sy[k] * diag)] {
            let w = match g.vertex_at(t.into()) {
                Some(w) => w,
                None => g.add_vertex(t.into(), VertexKind::Interior).unwrap(),
            };
            g.add_crease(v, w, CreaseKind::Folded).unwrap();
        }
        g.vertices[v].extended = true;
        g.vertices[v].mode = Some(mode);
    }
    g.validate(&board).unwrap();
    (board, g)
}

pub type M3 = [[f64; 3]; 3];

/// Rodrigues rotation about a unit axis, written out by hand.
pub fn rodrigues(axis: [f64; 3], t: f64) -> M3 {
    let [x, y, z] = axis;
    let (s, c) = t.sin_cos();
    let v = 1.0 - c;
    [
        [c + x * x * v, x * y * v - z * s, x * z * v + y * s],
        [y * x * v + z * s, c + y * y * v, y * z * v - x * s],
        [z * x * v - y * s, z * y * v + x * s, c + z * z * v],
    ]
}

pub fn mul(a: &M3, b: &M3) -> M3 {
    let mut m = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    m
}

pub fn apply(a: &M3, v: [f64; 3]) -> [f64; 3] {
    [0, 1, 2].map(|i| (0..3).map(|k| a[i][k] * v[k]).sum())
}

pub const IDENTITY: M3 = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];

/// 5x5 board with x,y symmetry and the pyramid target halved in size.
pub fn tiny_pyramid_config() -> std::sync::Arc<rigid_origami::env::EnvConfig> {
    use rigid_origami::env::{EnvConfig, SeedSpec};
    use rigid_origami::geom::{Point3, Triangle3};
    use rigid_origami::objectives::{ShapeObjective, TargetShape};
    let board = Board::new(5, 5, Symmetry::parse("x,y").unwrap(), None).unwrap();
    let apex = Point3::new(0.0, 0.0, 2f64.sqrt());
    let base = [(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)].map(|(x, y)| Point3::new(x, y, 0.0));
    let mut mesh: Vec<Triangle3> = (0..4).map(|k| Triangle3::new(base[k], base[(k + 1) % 4], apex)).collect();
    mesh.push(Triangle3::new(base[0], base[2], base[1]));
    mesh.push(Triangle3::new(base[0], base[3], base[2]));
    let target = TargetShape::new("tiny-pyramid", mesh, true, 1024, 1).unwrap();
    let obj = ShapeObjective::new(target);
    std::sync::Arc::new(EnvConfig::new(board, SeedSpec::Square { half_size: Some(1) }, std::sync::Arc::new(obj)))
}

/// Full game-tree enumeration: the best final value over every legal action
/// sequence, and the number of states visited.
pub fn exhaustive_optimum(config: std::sync::Arc<rigid_origami::env::EnvConfig>) -> (f64, u64) {
    use rigid_origami::env::Env;
    fn walk(env: &Env, nodes: &mut u64) -> f64 {
        *nodes += 1;
        let mut best = f64::NEG_INFINITY;
        for &a in env.legal_actions() {
            let mut child = env.clone();
            child.step(a).unwrap();
            let v = if child.is_done() { child.state().final_value.unwrap() } else { walk(&child, nodes) };
            best = best.max(v);
        }
        best
    }
    let (env, _) = Env::reset(config).unwrap();
    let mut nodes = 0;
    let best = walk(&env, &mut nodes);
    (best, nodes)
}
