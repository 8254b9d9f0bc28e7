use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Point3, Triangle3, Vec3};

const RAY_RETRIES: usize = 8;
const EDGE_EPSILON: f64 = 1e-9;

enum Hit {
    Miss,
    Hit,
    /// Ray grazes an edge or vertex, or starts on the surface.
    Ambiguous,
}

fn ray_hit(origin: &Point3, dir: &Vec3, t: &Triangle3) -> Hit {
    let e1 = t.b - t.a;
    let e2 = t.c - t.a;
    let p = dir.cross(&e2);
    let det = e1.dot(&p);
    if det.abs() < 1e-14 {
        return Hit::Miss;
    }
    let inv = 1.0 / det;
    let s = origin - t.a;
    let u = s.dot(&p) * inv;
    let q = s.cross(&e1);
    let v = dir.dot(&q) * inv;
    let dist = e2.dot(&q) * inv;
    if u < -EDGE_EPSILON || v < -EDGE_EPSILON || u + v > 1.0 + EDGE_EPSILON || dist < -EDGE_EPSILON {
        return Hit::Miss;
    }
    if u < EDGE_EPSILON || v < EDGE_EPSILON || u + v > 1.0 - EDGE_EPSILON || dist < EDGE_EPSILON {
        return Hit::Ambiguous;
    }
    Hit::Hit
}

/// Ray-parity containment for a watertight mesh.
///
/// Points on the surface are not strictly inside. Non-watertight meshes give
/// unspecified answers.
pub fn point_in_closed_mesh(p: &Point3, mesh: &[Triangle3]) -> bool {
    if !in_bounds(p, mesh) || mesh.iter().any(|t| on_triangle(p, t)) {
        return false;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    'retry: for _ in 0..RAY_RETRIES {
        let dir = Vec3::new(
            rng.random::<f64>() - 0.5,
            rng.random::<f64>() - 0.5,
            rng.random::<f64>() - 0.5,
        )
        .normalize();
        let mut crossings = 0usize;
        for t in mesh {
            match ray_hit(p, &dir, t) {
                Hit::Miss => {}
                Hit::Hit => crossings += 1,
                Hit::Ambiguous => continue 'retry,
            }
        }
        return crossings % 2 == 1;
    }
    false
}

fn in_bounds(p: &Point3, mesh: &[Triangle3]) -> bool {
    (0..3).all(|k| {
        let lo = mesh.iter().flat_map(|t| t.vertices()).map(|v| v[k]).fold(f64::INFINITY, f64::min);
        let hi = mesh.iter().flat_map(|t| t.vertices()).map(|v| v[k]).fold(f64::NEG_INFINITY, f64::max);
        p[k] > lo - EDGE_EPSILON && p[k] < hi + EDGE_EPSILON
    })
}

/// Within `EDGE_EPSILON` of the triangle's plane and inside its closure.
fn on_triangle(p: &Point3, t: &Triangle3) -> bool {
    let n = t.normal();
    let len = n.norm();
    if len <= 0.0 || (n.dot(&(p - t.a)) / len).abs() > EDGE_EPSILON {
        return false;
    }
    let side = |a: &Point3, b: &Point3| (b - a).cross(&(p - a)).dot(&n) / len >= -EDGE_EPSILON * (b - a).norm();
    side(&t.a, &t.b) && side(&t.b, &t.c) && side(&t.c, &t.a)
}
