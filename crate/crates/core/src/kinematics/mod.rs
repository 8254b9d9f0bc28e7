//! Forward kinematics for rigid crease patterns.

mod collision;
mod faces;
mod plan;
mod vertex;

pub use collision::{first_collision, fold_checked, is_self_intersecting, motion_collision_free, reachable_prefix, DEFAULT_MOTION_STEPS, MAX_BRANCH_STEP};
pub use faces::{planar_positions, stars, trace_faces, triangulate, Face, Faces, StarEntry};
pub use plan::{fold_graph, FoldPlan, FoldedState, CLOSURE_TOLERANCE, PLACEMENT_TOLERANCE};
pub use vertex::{
    closure_residual, crease_rotation, flat_dir, rotation_about, solve_vertex, spherical_triangle_ok, star_unit_angles,
    SectorAngles, StarCrease, UnitAngles, TRIANGLE_SLACK,
};
