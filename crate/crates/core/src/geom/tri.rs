use super::{Point3, Triangle3, Vec3};
use crate::error::Result;

/// Contact within this distance of a shared vertex or crease is not a collision.
pub const DEFAULT_SHARED_TOLERANCE: f64 = 1e-7;

const PLANE_EPSILON: f64 = 1e-9;

/// Möller-style triangle/triangle test.
///
/// Reports `true` only for intersections of positive extent: crossing
/// segments longer than `shared_tol`, or coplanar overlap of positive area.
/// Triangles meeting along a shared edge or at a shared vertex (within
/// `shared_tol`) do not count, which is how adjacent panels hinge.
pub fn tri_tri_intersect(t1: &Triangle3, t2: &Triangle3, shared_tol: f64) -> Result<bool> {
    let t1 = t1.checked()?;
    let t2 = t2.checked()?;

    let shared = count_shared(&t1, &t2, shared_tol);

    let n2 = t2.normal().normalize();
    let d1 = t1.vertices().map(|p| n2.dot(&(p - t2.a)));
    if same_strict_side(&d1) {
        return Ok(false);
    }
    let n1 = t1.normal().normalize();
    let d2 = t2.vertices().map(|p| n1.dot(&(p - t1.a)));
    if same_strict_side(&d2) {
        return Ok(false);
    }

    if d1.iter().all(|d| d.abs() <= PLANE_EPSILON) {
        return Ok(coplanar_overlap(&t1, &t2, &n1, shared_tol));
    }
    if shared >= 2 {
        // Non-coplanar triangles hinged on a common edge meet only along it.
        return Ok(false);
    }

    let line = n1.cross(&n2);
    let Some((a0, a1)) = plane_section(&t1, &d1, &line) else {
        return Ok(false);
    };
    let Some((b0, b1)) = plane_section(&t2, &d2, &line) else {
        return Ok(false);
    };
    let overlap = a1.min(b1) - a0.max(b0);
    Ok(overlap > shared_tol * line.norm())
}

fn count_shared(t1: &Triangle3, t2: &Triangle3, tol: f64) -> usize {
    let tol2 = tol * tol;
    t1.vertices()
        .iter()
        .filter(|p| t2.vertices().iter().any(|q| (*p - q).norm_squared() <= tol2))
        .count()
}

fn same_strict_side(d: &[f64; 3]) -> bool {
    d.iter().all(|&x| x > PLANE_EPSILON) || d.iter().all(|&x| x < -PLANE_EPSILON)
}

/// Interval covered by the triangle on the planes' intersection line,
/// measured along `line` (unnormalized).
fn plane_section(t: &Triangle3, d: &[f64; 3], line: &Vec3) -> Option<(f64, f64)> {
    let v = t.vertices();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut push = |p: Point3| {
        let s = line.dot(&p.coords);
        lo = lo.min(s);
        hi = hi.max(s);
    };
    for i in 0..3 {
        if d[i].abs() <= PLANE_EPSILON {
            push(v[i]);
        }
    }
    for (i, j) in [(0, 1), (1, 2), (2, 0)] {
        let (di, dj) = (d[i], d[j]);
        if (di > PLANE_EPSILON && dj < -PLANE_EPSILON) || (di < -PLANE_EPSILON && dj > PLANE_EPSILON) {
            let s = di / (di - dj);
            push(v[i] + (v[j] - v[i]) * s);
        }
    }
    (lo <= hi).then_some((lo, hi))
}

/// Separating-axis test in the common plane; touching does not count.
fn coplanar_overlap(t1: &Triangle3, t2: &Triangle3, normal: &Vec3, tol: f64) -> bool {
    let u = (t1.b - t1.a).normalize();
    let w = normal.cross(&u);
    let flat = |t: &Triangle3| t.vertices().map(|p| [u.dot(&p.coords), w.dot(&p.coords)]);
    let a = flat(t1);
    let b = flat(t2);
    for tri in [&a, &b] {
        for i in 0..3 {
            let p = tri[i];
            let q = tri[(i + 1) % 3];
            let axis = [-(q[1] - p[1]), q[0] - p[0]];
            let len = (axis[0] * axis[0] + axis[1] * axis[1]).sqrt();
            let axis = [axis[0] / len, axis[1] / len];
            let proj = |pts: &[[f64; 2]; 3]| {
                let vals = pts.map(|x| x[0] * axis[0] + x[1] * axis[1]);
                (vals.iter().cloned().fold(f64::INFINITY, f64::min), vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max))
            };
            let (amin, amax) = proj(&a);
            let (bmin, bmax) = proj(&b);
            if amax <= bmin + tol || bmax <= amin + tol {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> Triangle3 {
        Triangle3::new(a.into(), b.into(), c.into())
    }

    #[test]
    fn far_apart_coplanar() {
        let a = t([0., 0., 0.], [1., 0., 0.], [0., 1., 0.]);
        let b = t([10., 0., 0.], [11., 0., 0.], [10., 1., 0.]);
        assert!(!tri_tri_intersect(&a, &b, DEFAULT_SHARED_TOLERANCE).unwrap());
    }

    #[test]
    fn copy_overlaps() {
        let a = t([0., 0., 0.], [1., 0., 0.], [0., 1., 0.]);
        assert!(tri_tri_intersect(&a, &a, DEFAULT_SHARED_TOLERANCE).unwrap());
    }

    #[test]
    fn hinged_panels_do_not_collide() {
        let a = t([0., 0., 0.], [1., 0., 0.], [0., 1., 0.]);
        let b = t([0., 0., 0.], [1., 0., 0.], [0.5, -0.5, 0.7]);
        assert!(!tri_tri_intersect(&a, &b, DEFAULT_SHARED_TOLERANCE).unwrap());
        // folded flat onto each other: same side of the hinge
        let c = t([0., 0., 0.], [1., 0., 0.], [0.2, 0.5, 0.]);
        assert!(tri_tri_intersect(&a, &c, DEFAULT_SHARED_TOLERANCE).unwrap());
        // flat and unfolded: opposite sides
        let d = t([0., 0., 0.], [1., 0., 0.], [0.2, -0.5, 0.]);
        assert!(!tri_tri_intersect(&a, &d, DEFAULT_SHARED_TOLERANCE).unwrap());
    }

    #[test]
    fn shared_vertex_penetration() {
        let a = t([0., 0., 0.], [2., 0., 0.], [0., 2., 0.]);
        let touching = t([0., 0., 0.], [-1., -1., 1.], [-1., -1., -1.]);
        assert!(!tri_tri_intersect(&a, &touching, DEFAULT_SHARED_TOLERANCE).unwrap());
        let piercing = t([0., 0., 0.], [1., 1., 1.], [1., 1., -1.]);
        assert!(tri_tri_intersect(&a, &piercing, DEFAULT_SHARED_TOLERANCE).unwrap());
    }

    #[test]
    fn degenerate_rejected() {
        let a = t([0., 0., 0.], [1., 0., 0.], [2., 0., 0.]);
        let b = t([0., 0., 0.], [1., 0., 0.], [0., 1., 0.]);
        assert!(tri_tri_intersect(&a, &b, DEFAULT_SHARED_TOLERANCE).is_err());
        assert!(tri_tri_intersect(&b, &a, DEFAULT_SHARED_TOLERANCE).is_err());
    }
}
