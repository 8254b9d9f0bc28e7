use std::sync::Arc;

use super::{FoldView, Objective, TargetShape};
use crate::geom::{directed_hausdorff_indexed, directed_hausdorff_lazy, point_in_closed_mesh, sample_surface, Point3, PointIndex, PointSet, Provenance};

pub const DEFAULT_SAMPLE_COUNT: usize = 4096;
pub const DEFAULT_SAMPLE_SEED: u64 = 0x0416;
const BOUND_STRIDE: usize = 64;

/// Hausdorff shape approximation with the vertex-distance potential.
#[derive(Clone, Debug)]
pub struct ShapeObjective {
    pub target: Arc<TargetShape>,
    pub sample_count: usize,
    pub seed: u64,
    index: Arc<PointIndex>,
}

impl ShapeObjective {
    pub fn new(target: TargetShape) -> Self {
        let index = Arc::new(PointIndex::new(&target.samples).expect("targets have samples"));
        ShapeObjective { target: Arc::new(target), sample_count: DEFAULT_SAMPLE_COUNT, seed: DEFAULT_SAMPLE_SEED, index }
    }

    /// Drops points strictly inside a closed target.
    fn visible(&self, points: impl IntoIterator<Item = Point3>) -> Vec<Point3> {
        let closed = self.target.closed;
        points.into_iter().filter(|p| !closed || !point_in_closed_mesh(p, &self.target.mesh)).collect()
    }

    /// `d(P, Y)` for the folded vertices; zero when every vertex is hidden.
    pub fn vertex_distance(&self, view: &FoldView) -> f64 {
        let p = PointSet::new(self.visible(view.positions().iter().copied()), Provenance::VertexPositions);
        directed_hausdorff_indexed(&p, &self.index).unwrap_or(0.0)
    }

    /// Fold samples before hidden points are dropped.
    fn fold_samples(&self, view: &FoldView) -> Vec<Point3> {
        let mut x: Vec<Point3> = view.positions().to_vec();
        if let Ok(s) = sample_surface(&view.triangles(), self.sample_count, self.seed) {
            x.extend(s.points);
        }
        x
    }

    /// `d(Y, X)` for surface samples of the folded mesh plus its vertices. If the
/// whole fold hides inside a closed target, nothing is excluded.
    pub fn coverage_distance(&self, view: &FoldView) -> f64 {
        let x = self.fold_samples(view);
        let shown = self.visible(x.iter().copied());
        let x = PointSet::new(if shown.is_empty() { x } else { shown }, Provenance::SurfaceSample);
        directed_hausdorff_lazy(&self.target.samples, &x).unwrap_or(f64::INFINITY)
    }
}

impl Objective for ShapeObjective {
    fn name(&self) -> &str {
        &self.target.name
    }

    fn potential(&self, view: &FoldView) -> f64 {
        -self.vertex_distance(view)
    }

    fn terminal(&self, view: &FoldView) -> f64 {
        -self.vertex_distance(view).max(self.coverage_distance(view))
    }

    /// Coverage over every `BOUND_STRIDE`-th target sample against the
    /// unfiltered fold samples never exceeds the true coverage distance.
    fn terminal_bound(&self, view: &FoldView) -> f64 {
        let vd = self.vertex_distance(view);
        let x = self.fold_samples(view);
        let coarse = self.target.samples.points.iter().step_by(BOUND_STRIDE).map(|y| {
            x.iter().map(|p| (p - y).norm_squared()).fold(f64::INFINITY, f64::min)
        });
        -vd.max(coarse.fold(0.0, f64::max).sqrt())
    }

    fn non_positive_rewards(&self) -> bool {
        true
    }
}
