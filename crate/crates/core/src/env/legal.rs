//! Action masking.

use super::game::{Env, Phase};
use super::Action;
use crate::geom::seg_seg_intersect_2d;
use crate::kinematics::{spherical_triangle_ok, star_unit_angles, StarCrease};
use crate::pattern::{segment_interior_cells, Cell, CreaseGraph, Mode};

pub(crate) fn compute(env: &Env) -> Vec<Action> {
    let state = &env.state;
    let board = &env.config.board;
    match state.phase {
        Phase::SeedChoice => {
            let c = board.center();
            (1..)
                .map(|h| (Cell::new(c.i - h, c.j - h), Cell::new(c.i + h, c.j + h)))
                .take_while(|(lo, hi)| board.contains(*lo) && board.contains(*hi))
                .filter(|(lo, _)| board.in_playable_area(*lo))
                .map(|(lo, _)| Action::PlaceEndpoint { cell: lo })
                .collect()
        }
        Phase::SelectVertex => {
            let g = &state.graph;
            let mut out = Vec::new();
            for &c in env.playable.iter() {
                if let Some(v) = g.vertex_at(c) {
                    if !g.vertices[v].extended {
                        out.push(Action::SelectVertex { cell: c, mode: Mode::Minus });
                        out.push(Action::SelectVertex { cell: c, mode: Mode::Plus });
                    }
                }
            }
            if env.config.allow_sources {
                out.extend(
                    env.playable
                        .iter()
                        .filter(|&&c| g.vertex_at(c).is_none() && !on_any_crease(g, c))
                        .map(|&c| Action::Source { cell: c }),
                );
            }
            out.push(Action::Terminate);
            out
        }
        Phase::PlaceEdge { vertex } => env
            .playable
            .iter()
            .filter(|&&c| endpoint_plan(env, vertex, c).is_some())
            .map(|&c| Action::PlaceEndpoint { cell: c })
            .collect(),
    }
}

fn strictly_inside(p: Cell, a: Cell, b: Cell) -> bool {
    let [px, py] = p.as_i64();
    let [ax, ay] = a.as_i64();
    let [bx, by] = b.as_i64();
    let cross = (bx - ax) * (py - ay) - (by - ay) * (px - ax);
    let dot = (px - ax) * (bx - ax) + (py - ay) * (by - ay);
    let len2 = (bx - ax).pow(2) + (by - ay).pow(2);
    cross == 0 && dot > 0 && dot < len2
}

fn on_any_crease(g: &CreaseGraph, c: Cell) -> bool {
    g.creases.iter().any(|k| strictly_inside(c, g.vertices[k.from].cell, g.vertices[k.to].cell))
}

fn crosses(a: Cell, b: Cell, c: Cell, d: Cell) -> bool {
    seg_seg_intersect_2d(a.as_i64(), b.as_i64(), c.as_i64(), d.as_i64()).unwrap_or(true)
}

/// The creases a `PlaceEndpoint(c)` would add for selected vertex `v`, over
/// the whole symmetry orbit, or `None` when the placement breaks a rule.
pub(crate) fn endpoint_plan(env: &Env, v: usize, c: Cell) -> Option<Vec<(Cell, Cell)>> {
    let g = &env.state.graph;
    let board = &env.config.board;
    let vc = g.vertices[v].cell;
    if c == vc || !board.in_playable_area(c) {
        return None;
    }
    let mut pairs: Vec<(Cell, Cell)> = Vec::new();
    for &r in env.group.iter() {
        let p = (board.apply(r, vc), board.apply(r, c));
        if !pairs.contains(&p) {
            pairs.push(p);
        }
    }
    if pairs.iter().any(|&(a, b)| pairs.contains(&(b, a))) {
        return None;
    }
    let out = g.out_degree(v) + pairs.iter().filter(|p| p.0 == vc).count();
    if out > 3 {
        return None;
    }
    let mut touches_existing = false;
    for &(a, b) in &pairs {
        if let Some(w) = g.vertex_at(b) {
            touches_existing = true;
            if g.vertices[w].extended || g.crease_between(g.vertex_at(a)?, w).is_some() {
                return None;
            }
        }
        if let Some(max) = board.max_crease_length {
            if a.dist(b) > max + 1e-9 {
                return None;
            }
        }
        if segment_interior_cells(a, b).any(|m| g.vertex_at(m).is_some() || pairs.iter().any(|p| p.1 == m)) {
            return None;
        }
        if g.creases.iter().any(|k| crosses(a, b, g.vertices[k.from].cell, g.vertices[k.to].cell)) {
            return None;
        }
    }
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            let ((a, b), (p, q)) = (pairs[i], pairs[j]);
            if crosses(a, b, p, q) {
                return None;
            }
        }
    }
    if touches_existing {
        let mut t = g.clone();
        for &(a, b) in &pairs {
            let from = t.vertex_at(a)?;
            let to = t.vertex_at(b)?;
            if t.reaches(to, from) {
                return None;
            }
            let _ = t.add_crease(from, to, crate::pattern::CreaseKind::Folded);
        }
    }
    if out == 3 && !triangle_ok(env, v, &pairs) {
        return None;
    }
    Some(pairs)
}

/// Spherical triangle inequality for the completed star of `v` at every alive angle.
fn triangle_ok(env: &Env, v: usize, pairs: &[(Cell, Cell)]) -> bool {
    let g = &env.state.graph;
    let Some(cache) = env.state.folds.as_deref() else { return false };
    let vc = g.vertices[v].cell;
    let dir = |w: Cell| f64::from(w.j - vc.j).atan2(f64::from(w.i - vc.i)).rem_euclid(std::f64::consts::TAU);
    for i in env.state.angles.alive_indices() {
        let Some(fold) = cache.states[i].as_ref() else { return false };
        let mut star: Vec<StarCrease> = g
            .incident(v)
            .iter()
            .map(|&k| {
                let cr = &g.creases[k];
                let outgoing = cr.from == v && cr.kind == crate::pattern::CreaseKind::Folded;
                StarCrease {
                    angle: dir(g.vertices[cr.other(v)].cell),
                    rho: if outgoing { None } else { fold.rho.get(k).copied() },
                }
            })
            .collect();
        star.extend(pairs.iter().filter(|p| p.0 == vc).map(|p| StarCrease { angle: dir(p.1), rho: None }));
        star.sort_by(|a, b| a.angle.total_cmp(&b.angle));
        match star_unit_angles(&star) {
            Ok(u) if spherical_triangle_ok(&u) => {}
            _ => return false,
        }
    }
    true
}
