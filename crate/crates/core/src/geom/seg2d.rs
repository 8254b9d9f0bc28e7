use crate::error::{Error, Result};

fn orient(a: [i64; 2], b: [i64; 2], c: [i64; 2]) -> i64 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

fn on_segment(p: [i64; 2], a: [i64; 2], b: [i64; 2]) -> bool {
    p[0] >= a[0].min(b[0]) && p[0] <= a[0].max(b[0]) && p[1] >= a[1].min(b[1]) && p[1] <= a[1].max(b[1])
}

/// Exact crossing test for lattice segments.
///
/// True when the segments cross, overlap, or one touches the other anywhere
/// other than at an endpoint common to both.
pub fn seg_seg_intersect_2d(p1: [i64; 2], p2: [i64; 2], q1: [i64; 2], q2: [i64; 2]) -> Result<bool> {
    if p1 == p2 || q1 == q2 {
        return Err(Error::ZeroLengthSegment);
    }
    let o1 = orient(p1, p2, q1);
    let o2 = orient(p1, p2, q2);
    let o3 = orient(q1, q2, p1);
    let o4 = orient(q1, q2, p2);

    if o1 == 0 && o2 == 0 {
        // collinear: compare extents along the dominant axis
        let axis = if p1[0] != p2[0] { 0 } else { 1 };
        let (pa, pb) = (p1[axis].min(p2[axis]), p1[axis].max(p2[axis]));
        let (qa, qb) = (q1[axis].min(q2[axis]), q1[axis].max(q2[axis]));
        return Ok(pb.min(qb) > pa.max(qa));
    }
    if o1.signum() * o2.signum() < 0 && o3.signum() * o4.signum() < 0 {
        return Ok(true);
    }
    let shared = |x: [i64; 2]| x == p1 || x == p2;
    let touches = [
        (o1 == 0 && on_segment(q1, p1, p2), q1),
        (o2 == 0 && on_segment(q2, p1, p2), q2),
        (o3 == 0 && on_segment(p1, q1, q2), p1),
        (o4 == 0 && on_segment(p2, q1, q2), p2),
    ];
    Ok(touches
        .iter()
        .any(|&(hit, pt)| hit && !(shared(pt) && (pt == q1 || pt == q2))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x_crossing() {
        assert!(seg_seg_intersect_2d([0, 0], [1, 1], [0, 1], [1, 0]).unwrap());
    }

    #[test]
    fn shared_endpoint_only() {
        assert!(!seg_seg_intersect_2d([0, 0], [1, 0], [1, 0], [2, 0]).unwrap());
        assert!(!seg_seg_intersect_2d([0, 0], [1, 0], [1, 0], [1, 5]).unwrap());
    }

    #[test]
    fn t_junction_and_overlap() {
        assert!(seg_seg_intersect_2d([0, 0], [2, 0], [1, 0], [1, 3]).unwrap());
        assert!(seg_seg_intersect_2d([0, 0], [2, 0], [0, 0], [1, 0]).unwrap());
        assert!(seg_seg_intersect_2d([0, 0], [2, 0], [1, 0], [3, 0]).unwrap());
        assert!(!seg_seg_intersect_2d([0, 0], [2, 0], [3, 0], [4, 0]).unwrap());
    }

    #[test]
    fn zero_length() {
        assert_eq!(seg_seg_intersect_2d([0, 0], [0, 0], [0, 1], [1, 0]), Err(Error::ZeroLengthSegment));
    }
}
