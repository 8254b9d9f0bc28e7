//! Planar faces of a crease graph and their triangulation.

use std::f64::consts::TAU;

use crate::pattern::{Board, CreaseGraph};

/// One crease seen from a vertex.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StarEntry {
    pub crease: usize,
    pub other: usize,
    pub angle: f64,
}

/// Creases around each vertex sorted counterclockwise by planar direction.
pub fn stars(graph: &CreaseGraph) -> Vec<Vec<StarEntry>> {
    (0..graph.vertices.len())
        .map(|v| {
            let c = graph.vertices[v].cell;
            let mut star: Vec<StarEntry> = graph
                .incident(v)
                .iter()
                .map(|&k| {
                    let w = graph.creases[k].other(v);
                    let d = graph.vertices[w].cell;
                    let angle = f64::from(d.j - c.j).atan2(f64::from(d.i - c.i)).rem_euclid(TAU);
                    StarEntry { crease: k, other: w, angle }
                })
                .collect();
            star.sort_by(|a, b| a.angle.total_cmp(&b.angle));
            star
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct Face {
    /// Boundary walk, counterclockwise for bounded faces. Slits repeat vertices.
    pub vertices: Vec<usize>,
    pub area: f64,
}

impl Face {
    pub fn bounded(&self) -> bool {
        self.area > 1e-9
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Faces {
    pub faces: Vec<Face>,
    /// `sector_face[v][i]` is the face holding the sector between star entries `i` and `i + 1`.
    pub sector_face: Vec<Vec<usize>>,
}

pub fn trace_faces(stars: &[Vec<StarEntry>], xy: &[[f64; 2]]) -> Faces {
    let mut sector_face: Vec<Vec<usize>> = stars.iter().map(|s| vec![usize::MAX; s.len()]).collect();
    let mut faces = Vec::new();
    for v0 in 0..stars.len() {
        for i0 in 0..stars[v0].len() {
            if sector_face[v0][i0] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut walk = Vec::new();
            let (mut v, mut i) = (v0, i0);
            while sector_face[v][i] == usize::MAX {
                sector_face[v][i] = id;
                walk.push(v);
                let e = stars[v][i];
                let w = e.other;
                let j = stars[w].iter().position(|x| x.crease == e.crease).expect("star is symmetric");
                let n = stars[w].len();
                (v, i) = (w, (j + n - 1) % n);
            }
            let area = shoelace(&walk, xy);
            faces.push(Face { vertices: walk, area });
        }
    }
    Faces { faces, sector_face }
}

fn shoelace(walk: &[usize], xy: &[[f64; 2]]) -> f64 {
    let n = walk.len();
    0.5 * (0..n)
        .map(|k| {
            let a = xy[walk[k]];
            let b = xy[walk[(k + 1) % n]];
            a[0] * b[1] - a[1] * b[0]
        })
        .sum::<f64>()
}

fn cross(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn strictly_inside(p: [f64; 2], a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> bool {
    cross(a, b, p) > 1e-12 && cross(b, c, p) > 1e-12 && cross(c, a, p) > 1e-12
}

/// Ear-clips a counterclockwise face walk, starting from its lowest vertex id.
/// Collinear and slit vertices are dropped, so every triangle has positive area.
pub fn triangulate(face: &Face, xy: &[[f64; 2]]) -> Vec<[usize; 3]> {
    let mut poly = face.vertices.clone();
    if let Some(start) = (0..poly.len()).min_by_key(|&k| poly[k]) {
        poly.rotate_left(start);
    }
    let mut out = Vec::new();
    let mut guard = 0;
    while poly.len() >= 3 && guard < 4 * face.vertices.len() * face.vertices.len() + 16 {
        guard += 1;
        let n = poly.len();
        // drop a flat or spiked corner first
        if let Some(k) = (0..n).find(|&k| {
            let (a, b, c) = (xy[poly[(k + n - 1) % n]], xy[poly[k]], xy[poly[(k + 1) % n]]);
            cross(a, b, c).abs() <= 1e-12
        }) {
            poly.remove(k);
            continue;
        }
        let ear = (0..n).find(|&k| {
            let (ia, ib, ic) = (poly[(k + n - 1) % n], poly[k], poly[(k + 1) % n]);
            let (a, b, c) = (xy[ia], xy[ib], xy[ic]);
            cross(a, b, c) > 1e-12
                && poly
                    .iter()
                    .filter(|&&p| xy[p] != a && xy[p] != b && xy[p] != c)
                    .all(|&p| !strictly_inside(xy[p], a, b, c))
        });
        match ear {
            Some(k) => {
                out.push([poly[(k + n - 1) % n], poly[k], poly[(k + 1) % n]]);
                poly.remove(k);
            }
            None => break,
        }
    }
    out
}

/// Planar coordinates of every vertex, centered on the board.
pub fn planar_positions(graph: &CreaseGraph, board: &Board) -> Vec<[f64; 2]> {
    graph.vertices.iter().map(|v| board.world_xy(v.cell)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::{seed_square, Symmetry};

    #[test]
    fn square_has_two_faces() {
        let board = Board::new(7, 7, Symmetry::NONE, None).unwrap();
        let g = seed_square(&board, 1, board.center()).unwrap();
        let xy = planar_positions(&g, &board);
        let f = trace_faces(&stars(&g), &xy);
        assert_eq!(f.faces.len(), 2);
        let bounded: Vec<_> = f.faces.iter().filter(|f| f.bounded()).collect();
        assert_eq!(bounded.len(), 1);
        assert!((bounded[0].area - 4.0).abs() < 1e-12);
        let tris = triangulate(bounded[0], &xy);
        assert_eq!(tris.len(), 2);
        assert_eq!(tris[0][1], 0);
    }

    #[test]
    fn triangulates_concave_with_collinear() {
        let xy = vec![[0.0, 0.0], [1.0, 0.0], [2.0, 0.0], [2.0, 2.0], [1.0, 1.0], [0.0, 2.0]];
        let face = Face { vertices: (0..6).collect(), area: shoelace(&(0..6).collect::<Vec<_>>(), &xy) };
        let tris = triangulate(&face, &xy);
        let area: f64 = tris.iter().map(|t| 0.5 * cross(xy[t[0]], xy[t[1]], xy[t[2]])).sum();
        assert!((area - face.area).abs() < 1e-12);
        assert!(tris.iter().all(|t| cross(xy[t[0]], xy[t[1]], xy[t[2]]) > 0.0));
    }
}
