use super::PointSet;
use crate::error::{Error, Result};

/// `max_{x in X} min_{y in Y} |x - y|`.
///
/// Exact, with the usual early break: once a candidate `x` is closer to some
/// `y` than the running maximum, it cannot raise the result.
pub fn directed_hausdorff(x: &PointSet, y: &PointSet) -> Result<f64> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let mut cmax2 = 0.0f64;
    for p in &x.points {
        let mut cmin2 = f64::INFINITY;
        for q in &y.points {
            let d2 = (p - q).norm_squared();
            if d2 < cmin2 {
                cmin2 = d2;
                if cmin2 <= cmax2 {
                    break;
                }
            }
        }
        if cmin2 > cmax2 {
            cmax2 = cmin2;
        }
    }
    Ok(cmax2.sqrt())
}

pub fn hausdorff(x: &PointSet, y: &PointSet) -> Result<f64> {
    Ok(directed_hausdorff(x, y)?.max(directed_hausdorff(y, x)?))
}
