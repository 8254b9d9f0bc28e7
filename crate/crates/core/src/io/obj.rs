//! Folding motions as numbered Wavefront OBJ meshes.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::kinematics::{FoldPlan, FoldedState};
use crate::pattern::{Board, CreaseGraph};

/// One OBJ mesh: every vertex of the pattern and the panel triangles.
pub fn render_obj(plan: &FoldPlan, state: &FoldedState) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# rho0 {}", state.rho0);
    for p in &state.positions {
        let _ = writeln!(s, "v {} {} {}", p.x, p.y, p.z);
    }
    for (t, _) in plan.triangles() {
        let _ = writeln!(s, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1);
    }
    s
}

/// Driving angles of a `frames`-long motion: flat first, `rho0` last.
pub fn frame_angles(rho0: f64, frames: usize) -> Vec<f64> {
    match frames {
        0 => vec![],
        1 => vec![rho0],
        n => (0..n).map(|k| rho0 * k as f64 / (n - 1) as f64).collect(),
    }
}

/// Writes `frame_000.obj`, `frame_001.obj`, ... into `dir`.
pub fn export_obj_sequence(graph: &CreaseGraph, board: &Board, rho0: f64, frames: usize, dir: &Path) -> Result<Vec<PathBuf>> {
    let plan = FoldPlan::new(graph, board)?;
    std::fs::create_dir_all(dir)?;
    let mut out = vec![];
    for (k, rho) in frame_angles(rho0, frames).into_iter().enumerate() {
        let state = plan.fold(rho)?;
        let path = dir.join(format!("frame_{k:03}.obj"));
        std::fs::write(&path, render_obj(&plan, &state))?;
        out.push(path);
    }
    Ok(out)
}

struct ObjMesh {
    vertices: Vec<[f64; 3]>,
    faces: Vec<[usize; 3]>,
}

fn read_obj(path: &Path) -> Result<ObjMesh> {
    let text = std::fs::read_to_string(path)?;
    let mut m = ObjMesh { vertices: vec![], faces: vec![] };
    let bad = |n: usize| Error::Parse(format!("{}: line {}", path.display(), n + 1));
    for (n, line) in text.lines().enumerate() {
        let mut it = line.split_whitespace();
        match it.next() {
            Some("v") => {
                let c: Vec<f64> = it.map(|x| x.parse().map_err(|_| bad(n))).collect::<Result<_>>()?;
                m.vertices.push(c.try_into().map_err(|_| bad(n))?);
            }
            Some("f") => {
                let c: Vec<usize> = it.map(|x| x.parse::<usize>().map_err(|_| bad(n))).collect::<Result<_>>()?;
                let f: [usize; 3] = c.try_into().map_err(|_| bad(n))?;
                if f.iter().any(|&i| i == 0 || i > m.vertices.len()) {
                    return Err(bad(n));
                }
                m.faces.push(f.map(|i| i - 1));
            }
            _ => {}
        }
    }
    Ok(m)
}

/// Largest change of any triangle edge length between the first frame and
/// any later one. Fails when frames disagree on vertex count or faces.
pub fn sequence_rigidity(paths: &[PathBuf]) -> Result<f64> {
    let meshes: Vec<ObjMesh> = paths.iter().map(|p| read_obj(p)).collect::<Result<_>>()?;
    let Some(first) = meshes.first() else { return Ok(0.0) };
    let len = |m: &ObjMesh, a: usize, b: usize| {
        let (p, q) = (m.vertices[a], m.vertices[b]);
        ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2) + (p[2] - q[2]).powi(2)).sqrt()
    };
    let mut worst: f64 = 0.0;
    for m in &meshes[1..] {
        if m.vertices.len() != first.vertices.len() || m.faces != first.faces {
            return Err(Error::InvalidPattern("frames differ in topology".into()));
        }
        for f in &first.faces {
            for (a, b) in [(f[0], f[1]), (f[1], f[2]), (f[2], f[0])] {
                worst = worst.max((len(m, a, b) - len(first, a, b)).abs());
            }
        }
    }
    Ok(worst)
}

/// Whether the first frame lies in the sheet plane.
pub fn first_frame_planar(paths: &[PathBuf]) -> Result<bool> {
    match paths.first() {
        Some(p) => Ok(read_obj(p)?.vertices.iter().all(|v| v[2] == 0.0)),
        None => Ok(true),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frame_angles_span_the_motion() {
        assert_eq!(frame_angles(2.0, 5), vec![0.0, 0.5, 1.0, 1.5, 2.0]);
        assert_eq!(frame_angles(2.0, 1), vec![2.0]);
    }
}
