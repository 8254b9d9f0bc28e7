//! Objectives scored on folded states: shape approximation against a target
//! surface and the abstract furniture objectives.

mod furniture;
mod shape;
mod target;

pub use furniture::{Bucket, Chair, Shelf, Table, DISCARD};
pub use shape::{ShapeObjective, DEFAULT_SAMPLE_COUNT, DEFAULT_SAMPLE_SEED};
pub use target::{build_bowl, build_cube, build_pyramid, load_target_mesh, parse_obj, TargetShape};

use std::fmt::Debug;

use crate::geom::{Point3, Triangle3, AREA_EPSILON};
use crate::kinematics::{FoldPlan, FoldedState};
use crate::pattern::CreaseGraph;

/// A pattern folded at one driving angle.
#[derive(Clone, Copy, Debug)]
pub struct FoldView<'a> {
    pub graph: &'a CreaseGraph,
    pub plan: &'a FoldPlan,
    pub state: &'a FoldedState,
}

impl FoldView<'_> {
    pub fn positions(&self) -> &[Point3] {
        &self.state.positions
    }

    /// Non-degenerate triangles of the folded panels.
    pub fn triangles(&self) -> Vec<Triangle3> {
        self.plan
            .triangles()
            .iter()
            .map(|(t, _)| self.state.triangle(*t))
            .filter(|t| t.area() > AREA_EPSILON)
            .collect()
    }
}

pub trait Objective: Debug + Send + Sync {
    fn name(&self) -> &str;

    /// Shaping potential; the per-step reward is its change.
    fn potential(&self, view: &FoldView) -> f64;

    /// Objective value of a finished pattern.
    fn terminal(&self, view: &FoldView) -> f64;

    /// Cheap upper bound on `terminal`, used to skip angles that cannot win.
    fn terminal_bound(&self, _view: &FoldView) -> f64 {
        f64::INFINITY
    }

    /// Whether every shaped reward is non-positive, which branch-and-bound
    /// pruning relies on.
    fn non_positive_rewards(&self) -> bool;
}
