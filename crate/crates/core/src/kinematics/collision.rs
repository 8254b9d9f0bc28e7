//! Self-intersection checks on folded states and along a folding motion.

use super::plan::{FoldPlan, FoldedState};
use crate::error::{Error, Result};
use crate::geom::{tri_tri_intersect, Triangle3, AREA_EPSILON, DEFAULT_SHARED_TOLERANCE};

/// Sample count along a motion from flat to the driving angle.
pub const DEFAULT_MOTION_STEPS: usize = 20;
/// A crease turning further than this between consecutive samples means the
/// solver switched branches through a degenerate vertex.
pub const MAX_BRANCH_STEP: f64 = std::f64::consts::FRAC_PI_2;

fn bbox(t: &Triangle3) -> ([f64; 3], [f64; 3]) {
    let mut lo = [f64::INFINITY; 3];
    let mut hi = [f64::NEG_INFINITY; 3];
    for p in t.vertices() {
        for k in 0..3 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    (lo, hi)
}

/// First pair of triangles from different faces that intersect.
pub fn first_collision(plan: &FoldPlan, state: &FoldedState) -> Result<Option<(usize, usize)>> {
    let tris = plan.triangles();
    let geo: Vec<Triangle3> = tris.iter().map(|(t, _)| state.triangle(*t)).collect();
    let boxes: Vec<_> = geo.iter().map(bbox).collect();
    let pad = DEFAULT_SHARED_TOLERANCE;
    for a in 0..tris.len() {
        if geo[a].area() <= AREA_EPSILON {
            continue;
        }
        for b in a + 1..tris.len() {
            if tris[a].1 == tris[b].1 || geo[b].area() <= AREA_EPSILON {
                continue;
            }
            let ((la, ha), (lb, hb)) = (boxes[a], boxes[b]);
            if (0..3).any(|k| la[k] > hb[k] + pad || lb[k] > ha[k] + pad) {
                continue;
            }
            if tri_tri_intersect(&geo[a], &geo[b], DEFAULT_SHARED_TOLERANCE)? {
                return Ok(Some((a, b)));
            }
        }
    }
    Ok(None)
}

pub fn is_self_intersecting(plan: &FoldPlan, state: &FoldedState) -> Result<bool> {
    Ok(first_collision(plan, state)?.is_some())
}

/// Largest prefix of `angles` (sorted ascending) reachable from flat without
/// a kinematic failure or a collision, sampling `steps` evenly up to the last
/// angle plus every requested angle. Sampling starts from the flat state.
pub fn reachable_prefix(plan: &FoldPlan, angles: &[f64], steps: usize) -> usize {
    let Some(&top) = angles.last() else { return 0 };
    let mut samples: Vec<f64> = (1..=steps).map(|s| top * s as f64 / steps as f64).chain(angles.iter().copied()).collect();
    samples.sort_by(f64::total_cmp);
    samples.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    let mut prev: Option<Vec<f64>> = Some(vec![0.0; plan.crease_count()]);
    for g in samples {
        let ok = match plan.fold(g) {
            Ok(state) => {
                let smooth = prev.as_ref().map_or(true, |p| {
                    p.iter().zip(&state.rho).all(|(a, b)| (a - b).abs() <= MAX_BRANCH_STEP)
                });
                let clear = matches!(first_collision(plan, &state), Ok(None));
                prev = Some(state.rho);
                smooth && clear
            }
            Err(_) => false,
        };
        if !ok {
            return angles.iter().take_while(|&&a| a < g - 1e-12).count();
        }
    }
    angles.len()
}

/// Whether the motion from flat to `rho0` stays valid at every sample.
pub fn motion_collision_free(plan: &FoldPlan, rho0: f64, steps: usize) -> bool {
    reachable_prefix(plan, &[rho0], steps) == 1
}

/// Fold and insist on a valid, collision-free state.
pub fn fold_checked(plan: &FoldPlan, rho0: f64) -> Result<FoldedState> {
    let state = plan.fold(rho0)?;
    if let Some((a, b)) = first_collision(plan, &state)? {
        let v = plan.triangles()[a].0[0].min(plan.triangles()[b].0[0]);
        return Err(Error::FoldInfeasible { vertex: v, reason: "self-intersection".into() });
    }
    Ok(state)
}
