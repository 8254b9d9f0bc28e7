use std::f64::consts::TAU;
use std::path::Path;

use crate::error::{Error, Result};
use crate::geom::{sample_surface, Point3, PointSet, Provenance, Triangle3};

/// Target surface with a fixed sample set.
#[derive(Clone, Debug, PartialEq)]
pub struct TargetShape {
    pub name: String,
    pub mesh: Vec<Triangle3>,
    /// Mesh vertices followed by area-weighted surface samples.
    pub samples: PointSet,
    pub closed: bool,
}

impl TargetShape {
    pub fn new(name: &str, mesh: Vec<Triangle3>, closed: bool, sample_count: usize, seed: u64) -> Result<Self> {
        let mut points: Vec<Point3> = Vec::new();
        for t in &mesh {
            for p in t.vertices() {
                if !points.contains(&p) {
                    points.push(p);
                }
            }
        }
        points.extend(sample_surface(&mesh, sample_count, seed)?.points);
        Ok(TargetShape { name: name.into(), mesh, samples: PointSet::new(points, Provenance::TargetSample), closed })
    }
}

fn p(x: f64, y: f64, z: f64) -> Point3 {
    Point3::new(x, y, z)
}

fn quad(a: Point3, b: Point3, c: Point3, d: Point3) -> [Triangle3; 2] {
    [Triangle3::new(a, b, c), Triangle3::new(a, c, d)]
}

/// Square pyramid with a 4x4 base at z = 0 and apex at height sqrt(8).
pub fn build_pyramid(sample_count: usize, seed: u64) -> Result<TargetShape> {
    let base = [p(2.0, 2.0, 0.0), p(-2.0, 2.0, 0.0), p(-2.0, -2.0, 0.0), p(2.0, -2.0, 0.0)];
    let apex = p(0.0, 0.0, 8f64.sqrt());
    let mut mesh = Vec::new();
    for k in 0..4 {
        mesh.push(Triangle3::new(base[k], base[(k + 1) % 4], apex));
    }
    mesh.extend(quad(base[3], base[2], base[1], base[0]));
    TargetShape::new("pyramid", mesh, true, sample_count, seed)
}

/// Cube of edge 2 standing on the board center.
pub fn build_cube(sample_count: usize, seed: u64) -> Result<TargetShape> {
    let v = |i: u8| p(if i & 1 == 0 { -1.0 } else { 1.0 }, if i & 2 == 0 { -1.0 } else { 1.0 }, if i & 4 == 0 { 0.0 } else { 2.0 });
    let faces = [[0, 2, 3, 1], [4, 5, 7, 6], [0, 1, 5, 4], [2, 6, 7, 3], [0, 4, 6, 2], [1, 3, 7, 5]];
    let mesh = faces.iter().flat_map(|f| quad(v(f[0]), v(f[1]), v(f[2]), v(f[3]))).collect();
    TargetShape::new("cube", mesh, true, sample_count, seed)
}

pub const BOWL_INNER: f64 = 1.6;
pub const BOWL_OUTER: f64 = 5.0;

pub fn bowl_height(r: f64) -> f64 {
    0.2 * r * r - 0.6
}

/// Paraboloid annulus z = 0.2 r^2 - 0.6 for r in (1.6, 5) closed by a flat disk.
pub fn build_bowl(sample_count: usize, seed: u64) -> Result<TargetShape> {
    const SEGMENTS: usize = 64;
    const RINGS: usize = 24;
    let ring = |r: f64, k: usize| {
        let a = TAU * k as f64 / SEGMENTS as f64;
        p(r * a.cos(), r * a.sin(), bowl_height(r))
    };
    let mut mesh = Vec::new();
    let center = p(0.0, 0.0, bowl_height(BOWL_INNER));
    for k in 0..SEGMENTS {
        mesh.push(Triangle3::new(center, ring(BOWL_INNER, k), ring(BOWL_INNER, k + 1)));
    }
    for i in 0..RINGS {
        let r0 = BOWL_INNER + (BOWL_OUTER - BOWL_INNER) * i as f64 / RINGS as f64;
        let r1 = BOWL_INNER + (BOWL_OUTER - BOWL_INNER) * (i + 1) as f64 / RINGS as f64;
        for k in 0..SEGMENTS {
            mesh.extend(quad(ring(r0, k), ring(r1, k), ring(r1, k + 1), ring(r0, k + 1)));
        }
    }
    TargetShape::new("bowl", mesh, false, sample_count, seed)
}

/// Triangles from Wavefront OBJ text; polygons are fan-split.
pub fn parse_obj(text: &str) -> Result<Vec<Triangle3>> {
    let mut verts: Vec<Point3> = Vec::new();
    let mut mesh = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let bad = |what: &str| Error::Parse(format!("line {}: {what}", n + 1));
        let mut it = line.split_whitespace();
        match it.next() {
            Some("v") => {
                let c: Vec<f64> = it.take(3).map(|s| s.parse::<f64>().map_err(|_| bad("bad coordinate"))).collect::<Result<_>>()?;
                if c.len() != 3 {
                    return Err(bad("vertex needs three coordinates"));
                }
                verts.push(p(c[0], c[1], c[2]));
            }
            Some("f") => {
                let idx: Vec<usize> = it
                    .map(|s| {
                        let i: i64 = s.split('/').next().unwrap_or("").parse().map_err(|_| bad("bad index"))?;
                        let k = if i < 0 { verts.len() as i64 + i } else { i - 1 };
                        usize::try_from(k).ok().filter(|&k| k < verts.len()).ok_or_else(|| bad("index out of range"))
                    })
                    .collect::<Result<_>>()?;
                if idx.len() < 3 {
                    return Err(bad("face needs three vertices"));
                }
                for k in 1..idx.len() - 1 {
                    mesh.push(Triangle3::new(verts[idx[0]], verts[idx[k]], verts[idx[k + 1]]));
                }
            }
            _ => {}
        }
    }
    Ok(mesh)
}

pub fn load_target_mesh(path: &Path, sample_count: usize, seed: u64) -> Result<TargetShape> {
    let text = std::fs::read_to_string(path)?;
    let mesh = parse_obj(&text)?;
    let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("mesh");
    TargetShape::new(name, mesh, false, sample_count, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::signed_volume;

    #[test]
    fn pyramid_shape() {
        let t = build_pyramid(64, 1).unwrap();
        let top = t.mesh.iter().flat_map(|t| t.vertices()).map(|p| p.z).fold(0.0, f64::max);
        assert!((top - 2.828427).abs() < 1e-6);
        let v = signed_volume(&t.mesh);
        assert!((v - 16.0 * 8f64.sqrt() / 3.0).abs() < 1e-9);
        assert_eq!(t.samples.len(), 5 + 64);
    }

    #[test]
    fn cube_shape() {
        let t = build_cube(16, 1).unwrap();
        assert_eq!(t.mesh.len(), 12);
        assert!((signed_volume(&t.mesh) - 8.0).abs() < 1e-12);
    }

    #[test]
    fn bowl_heights() {
        assert!((bowl_height(5.0) - 4.4).abs() < 1e-12);
        assert!((bowl_height(1.6) + 0.088).abs() < 1e-12);
        let t = build_bowl(16, 1).unwrap();
        assert!(!t.closed);
    }

    #[test]
    fn obj_parsing() {
        let m = parse_obj("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 3\n").unwrap();
        assert_eq!(m.len(), 1);
        let m = parse_obj("v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf 1/1 2/2 3/3 -1\n").unwrap();
        assert_eq!(m.len(), 2);
        assert!(parse_obj("v 0 0\n").is_err());
        assert!(parse_obj("v 0 0 0\nf 1 2 3\n").is_err());
    }
}
