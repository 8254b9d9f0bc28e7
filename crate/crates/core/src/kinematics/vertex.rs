//! Single-vertex kinematics.
//!
//! A vertex with three outgoing creases splits its star into three rigid
//! units, the fans of panels between consecutive outgoing creases. Folding
//! the known incoming creases fixes each unit's shape, so the three outgoing
//! crease rays span a spherical triangle whose sides are the unit angles.
//! The triangle is rigid up to reflection, and the rigid body mode picks
//! the reflection.

use std::f64::consts::TAU;

use nalgebra::{Matrix3, Rotation3, Unit};

use crate::error::{Error, Result};
use crate::geom::Vec3;
use crate::pattern::Mode;

/// Admit `U_min + U_med >= U_max - TRIANGLE_SLACK`.
pub const TRIANGLE_SLACK: f64 = 1e-9;

/// Planar angles between consecutive creases around a vertex, counterclockwise.
#[derive(Clone, Debug, PartialEq)]
pub struct SectorAngles(pub Vec<f64>);

impl SectorAngles {
    pub fn from_directions(sorted_angles: &[f64]) -> SectorAngles {
        let n = sorted_angles.len();
        SectorAngles(
            (0..n)
                .map(|i| {
                    if n == 1 {
                        TAU
                    } else {
                        (sorted_angles[(i + 1) % n] - sorted_angles[i]).rem_euclid(TAU)
                    }
                })
                .collect(),
        )
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }
}

/// The three sides of the spherical triangle spanned by the outgoing creases,
/// in counterclockwise order starting at the unit after the first outgoing crease.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitAngles(pub [f64; 3]);

impl UnitAngles {
    pub fn sorted(&self) -> [f64; 3] {
        let mut u = self.0;
        u.sort_by(f64::total_cmp);
        u
    }
}

pub fn spherical_triangle_ok(u: &UnitAngles) -> bool {
    let [min, med, max] = u.sorted();
    min + med >= max - TRIANGLE_SLACK
}

/// One crease around a vertex: its planar direction and, for incoming or
/// driving creases, the known dihedral angle. `None` marks an outgoing crease.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StarCrease {
    pub angle: f64,
    pub rho: Option<f64>,
}

/// Unit vector in the sheet plane.
pub fn flat_dir(angle: f64) -> Vec3 {
    Vec3::new(angle.cos(), angle.sin(), 0.0)
}

/// Rotation by `rho` about the in-plane axis at `angle`. Positive `rho`
/// lifts the counterclockwise side toward +z (valley).
pub fn crease_rotation(angle: f64, rho: f64) -> Matrix3<f64> {
    Rotation3::from_axis_angle(&Unit::new_unchecked(flat_dir(angle)), rho).into_inner()
}

/// Signed rotation angle of `m` about the in-plane axis at `angle`.
pub fn rotation_about(m: &Matrix3<f64>, angle: f64) -> f64 {
    let n = Vec3::new(-angle.sin(), angle.cos(), 0.0);
    let mn = m * n;
    mn.z.atan2(n.dot(&mn))
}

fn angle_between(a: &Vec3, b: &Vec3) -> f64 {
    a.cross(b).norm().atan2(a.dot(b))
}

/// Star sorted counterclockwise; indexes of the three outgoing creases.
fn outgoing_slots(star: &[StarCrease]) -> Result<[usize; 3]> {
    let out: Vec<usize> = (0..star.len()).filter(|&i| star[i].rho.is_none()).collect();
    if out.len() != 3 {
        return Err(Error::InvalidPattern(format!("vertex has {} unknown creases, expected 3", out.len())));
    }
    Ok([out[0], out[1], out[2]])
}

/// Product of incoming crease rotations strictly between slots `a` and `b`
/// going counterclockwise.
fn unit_transform(star: &[StarCrease], a: usize, b: usize) -> Matrix3<f64> {
    let n = star.len();
    let mut q = Matrix3::<f64>::identity();
    let mut k = (a + 1) % n;
    while k != b {
        let c = star[k];
        q *= crease_rotation(c.angle, c.rho.expect("incoming crease is known"));
        k = (k + 1) % n;
    }
    q
}

struct Units {
    slots: [usize; 3],
    /// (ray of the unit's first crease, ray of its last crease, fan rotation),
    /// in the unit's own frame.
    rays: [(Vec3, Vec3, Matrix3<f64>); 3],
}

fn units(star: &[StarCrease]) -> Result<Units> {
    let slots = outgoing_slots(star)?;
    let rays = [0, 1, 2].map(|u| {
        let (a, b) = (slots[u], slots[(u + 1) % 3]);
        let q = unit_transform(star, a, b);
        (flat_dir(star[a].angle), q * flat_dir(star[b].angle), q)
    });
    Ok(Units { slots, rays })
}

/// Unit angles for a star whose incoming creases are all known.
pub fn star_unit_angles(star: &[StarCrease]) -> Result<UnitAngles> {
    let u = units(star)?;
    Ok(UnitAngles(u.rays.map(|(a, b, _)| angle_between(&a, &b))))
}

/// Orthonormal frame from a primary ray and a secondary direction.
fn frame(e1: &Vec3, hint: &Vec3) -> Option<Matrix3<f64>> {
    let e2 = hint - e1 * e1.dot(hint);
    let len = e2.norm();
    if len < 1e-12 {
        return None;
    }
    let e2 = e2 / len;
    Some(Matrix3::from_columns(&[*e1, e2, e1.cross(&e2)]))
}

/// Outgoing dihedral angles, in the star order of the outgoing creases.
///
/// `star` must be sorted counterclockwise and hold exactly three unknown creases.
pub fn solve_vertex(star: &[StarCrease], mode: Mode) -> Result<[f64; 3]> {
    let infeasible = |reason: &str| Error::FoldInfeasible { vertex: usize::MAX, reason: reason.into() };
    let units = units(star)?;
    if star.iter().all(|c| c.rho.map_or(true, |r| r == 0.0)) {
        return Ok([0.0; 3]);
    }
    let unit_angles = UnitAngles(units.rays.map(|(a, b, _)| angle_between(&a, &b)));
    if !spherical_triangle_ok(&unit_angles) {
        return Err(infeasible("spherical triangle inequality violated"));
    }
    let [o0, o1, o2] = units.slots;
    let (a, b, q01) = units.rays[0];
    let (p, q, q12) = units.rays[1];
    let (r, s, q20) = units.rays[2];

    // Unit 1 holds the reference frame; unit 2 hinges on ray b.
    let to_b = Rotation3::rotation_between(&p, &b)
        .map(|r| r.into_inner())
        .unwrap_or_else(|| crease_rotation(star[o1].angle + std::f64::consts::FRAC_PI_2, std::f64::consts::PI));
    let c0 = to_b * q;
    let c_par = b * b.dot(&c0);
    let c_perp = c0 - c_par;
    let coef_a = a.dot(&c_par);
    let coef_cos = a.dot(&c_perp);
    let coef_sin = a.dot(&b.cross(&c_perp));
    let amp = coef_cos.hypot(coef_sin);
    if amp < 1e-12 {
        return Err(infeasible("degenerate unit: outgoing rays collinear"));
    }
    let target = angle_between(&r, &s).cos();
    let ratio = ((target - coef_a) / amp).clamp(-1.0, 1.0);
    let phase = coef_sin.atan2(coef_cos);
    let spread = ratio.acos();

    let place = |phi: f64| {
        let spin = Rotation3::from_axis_angle(&Unit::new_normalize(b), phi).into_inner();
        let w2 = spin * to_b;
        (w2, w2 * q)
    };
    let (w2p, cp) = place(phase + spread);
    let (w2m, cm) = place(phase - spread);
    let orient = |c: &Vec3| a.dot(&b.cross(c));
    let plus_first = orient(&cp) >= orient(&cm);
    let (w2, c) = match (mode, plus_first) {
        (Mode::Plus, true) | (Mode::Minus, false) => (w2p, cp),
        _ => (w2m, cm),
    };

    let src = frame(&r, &s).ok_or_else(|| infeasible("degenerate unit: closing unit is straight"))?;
    let dst = frame(&c, &a).ok_or_else(|| infeasible("degenerate triangle"))?;
    let w3 = dst * src.transpose();

    let rho1 = rotation_about(&(q01.transpose() * w2), star[o1].angle);
    let rho2 = rotation_about(&((w2 * q12).transpose() * w3), star[o2].angle);
    let rho0 = rotation_about(&((w3 * q20).transpose()), star[o0].angle);
    Ok(polish(star, units.slots, [rho0, rho1, rho2]))
}

fn closure_product(star: &[StarCrease], slots: [usize; 3], out: [f64; 3]) -> (Matrix3<f64>, [Vec3; 3]) {
    let mut m = Matrix3::<f64>::identity();
    let mut axes = [Vec3::zeros(); 3];
    for (k, c) in star.iter().enumerate() {
        let rho = match slots.iter().position(|&s| s == k) {
            Some(u) => {
                axes[u] = m * flat_dir(c.angle);
                out[u]
            }
            None => c.rho.expect("incoming crease is known"),
        };
        m *= crease_rotation(c.angle, rho);
    }
    (m, axes)
}

/// Gauss-Newton on the closure residual. The closed-form solve loses about
/// half the digits when a unit angle is near 0 or pi (folded flat); a few
/// least-squares steps recover them. Steps that do not help are dropped.
fn polish(star: &[StarCrease], slots: [usize; 3], mut out: [f64; 3]) -> [f64; 3] {
    let (mut m, mut axes) = closure_product(star, slots, out);
    let mut res = (m - Matrix3::identity()).norm();
    for _ in 0..4 {
        if res < 1e-14 {
            break;
        }
        let skew = (m - m.transpose()) * 0.5;
        let omega = Vec3::new(skew[(2, 1)], skew[(0, 2)], skew[(1, 0)]);
        let jac = Matrix3::from_columns(&axes);
        let Ok(step) = jac.svd(true, true).solve(&omega, 1e-10) else { break };
        let next = [0, 1, 2].map(|u| out[u] - step[u]);
        let (m2, axes2) = closure_product(star, slots, next);
        let res2 = (m2 - Matrix3::identity()).norm();
        if res2 >= res {
            break;
        }
        (out, m, axes, res) = (next, m2, axes2, res2);
    }
    out
}

/// Frobenius norm of `prod_k R(d_k, rho_k) - I` around a fully known star.
pub fn closure_residual(star: &[StarCrease]) -> f64 {
    let mut m = Matrix3::<f64>::identity();
    for c in star {
        m *= crease_rotation(c.angle, c.rho.unwrap_or(0.0));
    }
    (m - Matrix3::identity()).norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn sector_examples() {
        let s = SectorAngles::from_directions(&[0.0, FRAC_PI_2, PI, 1.5 * PI]);
        for a in &s.0 {
            assert!((a - FRAC_PI_2).abs() < 1e-12);
        }
        let s = SectorAngles::from_directions(&[0.0, PI / 3.0, PI, 1.5 * PI]);
        let want = [PI / 3.0, 2.0 * PI / 3.0, FRAC_PI_2, FRAC_PI_2];
        for (a, b) in s.0.iter().zip(want) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!((s.sum() - TAU).abs() < 1e-12);
    }

    #[test]
    fn triangle_inequality() {
        assert!(spherical_triangle_ok(&UnitAngles([FRAC_PI_2; 3])));
        assert!(!spherical_triangle_ok(&UnitAngles([0.1, 0.1, 1.0])));
        assert!(spherical_triangle_ok(&UnitAngles([0.3, 0.7, 1.0])));
    }

    #[test]
    fn flat_stays_flat() {
        let star = [
            StarCrease { angle: 0.0, rho: None },
            StarCrease { angle: 1.0, rho: None },
            StarCrease { angle: 2.5, rho: Some(0.0) },
            StarCrease { angle: 4.0, rho: None },
        ];
        assert_eq!(solve_vertex(&star, Mode::Plus).unwrap(), [0.0; 3]);
    }

    #[test]
    fn source_unit_angles_are_sectors() {
        let star = [
            StarCrease { angle: 0.0, rho: None },
            StarCrease { angle: 2.0, rho: None },
            StarCrease { angle: 4.0, rho: None },
        ];
        let u = star_unit_angles(&star).unwrap();
        let want = [2.0, 2.0, TAU - 4.0];
        for (a, b) in u.0.iter().zip(want) {
            assert!((a - b.min(TAU - b)).abs() < 1e-12);
        }
    }
}
