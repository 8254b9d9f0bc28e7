//! Whole-pattern folding at a driving angle.

use std::collections::VecDeque;

use nalgebra::Matrix3;

use super::faces::{planar_positions, stars, trace_faces, triangulate, Faces, StarEntry};
use super::vertex::{closure_residual, crease_rotation, solve_vertex, StarCrease};
use crate::error::{Error, Result};
use crate::geom::{Point3, Triangle3, Vec3};
use crate::pattern::{Board, CreaseGraph, CreaseKind, Mode};

/// Interior vertices that are not extended must close to this residual.
pub const CLOSURE_TOLERANCE: f64 = 1e-8;
/// Two placements of the same vertex must agree to this distance.
pub const PLACEMENT_TOLERANCE: f64 = 1e-7;

/// Everything about a pattern that does not depend on the driving angle.
#[derive(Clone, Debug)]
pub struct FoldPlan {
    xy: Vec<[f64; 2]>,
    stars: Vec<Vec<StarEntry>>,
    faces: Faces,
    order: Vec<usize>,
    driving: Vec<bool>,
    modes: Vec<Option<Mode>>,
    extended: Vec<bool>,
    /// (vertex ids, face id) per triangle of a bounded face.
    triangles: Vec<([usize; 3], usize)>,
    /// Vertices whose every sector lies in a bounded face.
    interior: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FoldedState {
    pub rho0: f64,
    /// Dihedral angle per crease; positive is valley.
    pub rho: Vec<f64>,
    pub positions: Vec<Point3>,
}

impl FoldPlan {
    pub fn new(graph: &CreaseGraph, board: &Board) -> Result<FoldPlan> {
        let order = graph
            .topological_order()
            .ok_or_else(|| Error::InvalidPattern("directed cycle among folded creases".into()))?;
        let xy = planar_positions(graph, board);
        let stars = stars(graph);
        let faces = trace_faces(&stars, &xy);
        let mut triangles = Vec::new();
        for (id, f) in faces.faces.iter().enumerate() {
            if f.bounded() {
                triangles.extend(triangulate(f, &xy).into_iter().map(|t| (t, id)));
            }
        }
        let interior = faces
            .sector_face
            .iter()
            .map(|s| !s.is_empty() && s.iter().all(|&f| faces.faces[f].bounded()))
            .collect();
        Ok(FoldPlan {
            xy,
            stars,
            faces,
            order,
            driving: graph.creases.iter().map(|c| c.kind == CreaseKind::Driving).collect(),
            modes: graph.vertices.iter().map(|v| v.mode).collect(),
            extended: graph.vertices.iter().map(|v| v.extended).collect(),
            triangles,
            interior,
        })
    }

    pub fn crease_count(&self) -> usize {
        self.driving.len()
    }

    pub fn faces(&self) -> &Faces {
        &self.faces
    }

    pub fn triangles(&self) -> &[([usize; 3], usize)] {
        &self.triangles
    }

    pub fn planar(&self) -> &[[f64; 2]] {
        &self.xy
    }

    /// Dihedral angles of every crease, solved vertex by vertex in topological order.
    pub fn crease_angles(&self, rho0: f64) -> Result<Vec<f64>> {
        let mut rho: Vec<Option<f64>> = self.driving.iter().map(|&d| d.then_some(rho0)).collect();
        for &v in &self.order {
            if !self.extended[v] {
                continue;
            }
            let star: Vec<StarCrease> = self.stars[v]
                .iter()
                .map(|e| StarCrease { angle: e.angle, rho: rho[e.crease] })
                .collect();
            let unknown = star.iter().filter(|c| c.rho.is_none()).count();
            if unknown != 3 {
                return Err(Error::UnsolvedIncoming(v));
            }
            let mode = self.modes[v].ok_or_else(|| Error::InvalidPattern(format!("vertex {v} has no mode")))?;
            let solved = solve_vertex(&star, mode).map_err(|e| match e {
                Error::FoldInfeasible { reason, .. } => Error::FoldInfeasible { vertex: v, reason },
                other => other,
            })?;
            let slots = self.stars[v].iter().filter(|e| rho[e.crease].is_none()).map(|e| e.crease).collect::<Vec<_>>();
            for (k, r) in slots.into_iter().zip(solved) {
                rho[k] = Some(r);
            }
        }
        // creases behind unextended vertices stay flat
        Ok(rho.into_iter().map(|r| r.unwrap_or(0.0)).collect())
    }

    /// Frames of the two panels at star entry `k` of `v`, as (clockwise side, counterclockwise side).
    fn hinge_frames(&self, v: usize, rho: &[f64]) -> Vec<(Matrix3<f64>, Matrix3<f64>)> {
        let star = &self.stars[v];
        let n = star.len();
        let rot = |k: usize| crease_rotation(star[k].angle, rho[star[k].crease]);
        let tear = if self.interior[v] {
            None
        } else {
            (0..n).find(|&i| !self.faces.faces[self.faces.sector_face[v][i]].bounded())
        };
        let start = tear.map_or(0, |t| (t + 1) % n);
        let mut frame = vec![Matrix3::identity(); n];
        for step in 1..n {
            let s = (start + step) % n;
            frame[s] = frame[(s + n - 1) % n] * rot(s);
        }
        (0..n)
            .map(|k| {
                let ccw = frame[k];
                let cw = if tear.is_some() && k == start { frame[k] * rot(k).transpose() } else { frame[(k + n - 1) % n] };
                (cw, ccw)
            })
            .collect()
    }

    pub fn fold(&self, rho0: f64) -> Result<FoldedState> {
        let rho = self.crease_angles(rho0)?;
        for v in 0..self.stars.len() {
            if self.interior[v] && !self.extended[v] {
                let star: Vec<StarCrease> =
                    self.stars[v].iter().map(|e| StarCrease { angle: e.angle, rho: Some(rho[e.crease]) }).collect();
                if closure_residual(&star) > CLOSURE_TOLERANCE {
                    return Err(Error::FoldInfeasible { vertex: v, reason: "interior vertex does not close".into() });
                }
            }
        }
        let hinges: Vec<_> = (0..self.stars.len()).map(|v| self.hinge_frames(v, &rho)).collect();
        let n = self.stars.len();
        let mut pose: Vec<Option<(Matrix3<f64>, Vec3)>> = vec![None; n];
        let flat = |u: usize, w: usize| Vec3::new(self.xy[w][0] - self.xy[u][0], self.xy[w][1] - self.xy[u][1], 0.0);
        for root in 0..n {
            if pose[root].is_some() {
                continue;
            }
            // the panel left of the root's first crease stays in the sheet plane
            let r0 = hinges[root].first().map_or(Matrix3::identity(), |h| h.1.transpose());
            pose[root] = Some((r0, Vec3::new(self.xy[root][0], self.xy[root][1], 0.0)));
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                let (ru, pu) = pose[u].expect("queued vertices are placed");
                for (ku, e) in self.stars[u].iter().enumerate() {
                    let w = e.other;
                    let kw = self.stars[w].iter().position(|x| x.crease == e.crease).expect("star is symmetric");
                    let panel = ru * hinges[u][ku].1;
                    let rw = panel * hinges[w][kw].0.transpose();
                    let pw = pu + panel * flat(u, w);
                    match pose[w] {
                        None => {
                            pose[w] = Some((rw, pw));
                            queue.push_back(w);
                        }
                        Some((rw_old, pw_old)) => {
                            if (pw_old - pw).norm() > PLACEMENT_TOLERANCE || (rw_old - rw).norm() > PLACEMENT_TOLERANCE {
                                return Err(Error::FoldInfeasible { vertex: w, reason: "panels do not meet".into() });
                            }
                        }
                    }
                }
            }
        }
        let positions = pose.into_iter().map(|p| Point3::from(p.expect("all vertices placed").1)).collect();
        Ok(FoldedState { rho0, rho, positions })
    }
}

impl FoldedState {
    pub fn triangle(&self, t: [usize; 3]) -> Triangle3 {
        Triangle3::new(self.positions[t[0]], self.positions[t[1]], self.positions[t[2]])
    }
}

/// Folds `graph` at driving angle `rho0`.
pub fn fold_graph(graph: &CreaseGraph, board: &Board, rho0: f64) -> Result<FoldedState> {
    FoldPlan::new(graph, board)?.fold(rho0)
}
