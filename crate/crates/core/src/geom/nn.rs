//! KD-tree index for exact nearest-neighbour queries.

use kiddo::{ImmutableKdTree, SquaredEuclidean};

use super::{Point3, PointSet};
use crate::error::{Error, Result};

pub struct PointIndex {
    tree: ImmutableKdTree<f64, 3>,
}

impl std::fmt::Debug for PointIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PointIndex").field("size", &self.tree.size()).finish()
    }
}

impl PointIndex {
    pub fn new(set: &PointSet) -> Result<Self> {
        if set.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        let entries: Vec<[f64; 3]> = set.points.iter().map(|p| [p.x, p.y, p.z]).collect();
        let tree = ImmutableKdTree::new_from_slice(&entries).map_err(|_| Error::EmptyPointSet)?;
        Ok(PointIndex { tree })
    }

    /// Squared distance to the nearest indexed point.
    pub fn nearest2(&self, p: &Point3) -> f64 {
        self.tree.query(&[p.x, p.y, p.z]).nearest_one::<SquaredEuclidean<f64>>().execute().distance
    }
}

/// `max_{x in X} min_{y in Y} |x - y|` using an index built over `Y`.
pub fn directed_hausdorff_indexed(x: &PointSet, y: &PointIndex) -> Result<f64> {
    if x.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let cmax2 = x.points.iter().map(|p| y.nearest2(p)).fold(0.0f64, f64::max);
    Ok(cmax2.sqrt())
}

/// Candidates checked before falling back to the tree.
const PROBE_COUNT: usize = 64;

/// `max_{x in X} min_{y in Y} |x - y|` without a prebuilt index.
///
/// Each `x` first tries a spread of `PROBE_COUNT` points of `Y`; if one is
/// already within the running maximum, `x` cannot raise the result. The
/// tree over `Y` is only built for points that survive the probe.
pub fn directed_hausdorff_lazy(x: &PointSet, y: &PointSet) -> Result<f64> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let n = y.len();
    let probe: Vec<Point3> = (0..PROBE_COUNT.min(n)).map(|i| y.points[i * n / PROBE_COUNT.min(n)]).collect();
    let mut index: Option<PointIndex> = None;
    let mut cmax2 = 0.0f64;
    for p in &x.points {
        let near = probe.iter().map(|q| (p - q).norm_squared()).fold(f64::INFINITY, f64::min);
        if near <= cmax2 {
            continue;
        }
        let d2 = if probe.len() == n {
            near
        } else {
            if index.is_none() {
                index = Some(PointIndex::new(y)?);
            }
            index.as_ref().map_or(near, |t| t.nearest2(p))
        };
        cmax2 = cmax2.max(d2);
    }
    Ok(cmax2.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{directed_hausdorff, Provenance};
    use rand::{Rng, SeedableRng};

    #[test]
    fn matches_brute_force() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for trial in 0..40 {
            let n = rng.random_range(1..300);
            let m = rng.random_range(1..300);
            let scale = if trial % 2 == 0 { 1.0 } else { 10.0 };
            let mut pts = |k: usize, flat: bool| {
                let v: Vec<Point3> = (0..k)
                    .map(|_| {
                        Point3::new(
                            rng.random_range(-scale..scale),
                            rng.random_range(-scale..scale),
                            if flat { 0.0 } else { rng.random_range(-scale..scale) },
                        )
                    })
                    .collect();
                PointSet::new(v, Provenance::SurfaceSample)
            };
            let x = pts(n, false);
            let y = pts(m, trial % 3 == 0);
            let want = directed_hausdorff(&x, &y).unwrap();
            let got = directed_hausdorff_indexed(&x, &PointIndex::new(&y).unwrap()).unwrap();
            assert!((directed_hausdorff_lazy(&x, &y).unwrap() - want).abs() < 1e-12);
            assert!((want - got).abs() < 1e-12, "{want} vs {got}");
        }
    }
}
