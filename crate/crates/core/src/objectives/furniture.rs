//! Abstract objectives: the reward only arrives at the end of an episode.

use super::{FoldView, Objective};
use crate::geom::{Point3, Triangle3};

/// Value of a fold that violates an objective's side conditions.
pub const DISCARD: f64 = -1e6;

/// Maximize the lowest rim vertex, keeping the rim compact.
#[derive(Clone, Copy, Debug, Default)]
pub struct Bucket;

impl Bucket {
    pub fn evaluate(rim: &[Point3]) -> f64 {
        if rim.is_empty() {
            return DISCARD;
        }
        let zmin = rim.iter().map(|p| p.z).fold(f64::INFINITY, f64::min);
        let zmax = rim.iter().map(|p| p.z).fold(f64::NEG_INFINITY, f64::max);
        let norms = rim.iter().map(|p| p.x.hypot(p.y));
        let (nmin, nmax) = norms.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), n| (a.min(n), b.max(n)));
        if zmax > 2.0 * zmin + 1e-9 || nmax > 2.0 * nmin + 1e-9 {
            return DISCARD;
        }
        zmin
    }
}

impl Objective for Bucket {
    fn name(&self) -> &str {
        "bucket"
    }
    fn potential(&self, _: &FoldView) -> f64 {
        0.0
    }
    fn terminal(&self, view: &FoldView) -> f64 {
        let rim: Vec<Point3> = view
            .graph
            .vertices
            .iter()
            .filter(|v| !v.extended)
            .map(|v| view.positions()[v.id])
            .collect();
        Bucket::evaluate(&rim)
    }
    fn non_positive_rewards(&self) -> bool {
        false
    }
}

/// Maximize the smallest of at least three parallel shelf levels.
#[derive(Clone, Copy, Debug)]
pub struct Shelf {
    pub parallel_cos: f64,
    pub level_gap: f64,
}

impl Default for Shelf {
    fn default() -> Self {
        Shelf { parallel_cos: 0.99, level_gap: 0.25 }
    }
}

impl Shelf {
    pub fn evaluate(&self, tris: &[Triangle3]) -> f64 {
        // (reference normal, [(offset, area)])
        let mut groups: Vec<(nalgebra::Vector3<f64>, Vec<(f64, f64)>)> = Vec::new();
        for t in tris {
            let n = t.normal();
            let area = 0.5 * n.norm();
            if area <= 0.0 {
                continue;
            }
            let n = n / n.norm();
            let centroid = (t.a.coords + t.b.coords + t.c.coords) / 3.0;
            match groups.iter_mut().find(|(r, _)| r.dot(&n).abs() >= self.parallel_cos) {
                Some((r, members)) => members.push((r.dot(&centroid), area)),
                None => groups.push((n, vec![(n.dot(&centroid), area)])),
            }
        }
        let mut best = DISCARD;
        for (_, mut members) in groups {
            members.sort_by(|a, b| a.0.total_cmp(&b.0));
            let mut levels: Vec<f64> = Vec::new();
            let mut last = f64::NEG_INFINITY;
            for (offset, area) in members {
                if offset - last >= self.level_gap || levels.is_empty() {
                    levels.push(0.0);
                }
                *levels.last_mut().unwrap() += area;
                last = offset;
            }
            if levels.len() >= 3 {
                best = best.max(levels.iter().copied().fold(f64::INFINITY, f64::min));
            }
        }
        best
    }
}

impl Objective for Shelf {
    fn name(&self) -> &str {
        "shelf"
    }
    fn potential(&self, _: &FoldView) -> f64 {
        0.0
    }
    fn terminal(&self, view: &FoldView) -> f64 {
        self.evaluate(&view.triangles())
    }
    fn non_positive_rewards(&self) -> bool {
        false
    }
}

/// Four legs at a target height, everything else on the floor.
#[derive(Clone, Copy, Debug)]
pub struct Table {
    pub leg_height: f64,
}

impl Default for Table {
    fn default() -> Self {
        Table { leg_height: 2.5 }
    }
}

impl Table {
    pub fn evaluate(&self, points: &[Point3]) -> f64 {
        if points.len() < 4 {
            return DISCARD;
        }
        let mut z: Vec<f64> = points.iter().map(|p| p.z).collect();
        z.sort_by(|a, b| b.total_cmp(a));
        let legs = z[..4].iter().map(|h| (h - self.leg_height).abs()).sum::<f64>() / 4.0;
        let rest = &z[4..];
        let floor = if rest.is_empty() { 0.0 } else { rest.iter().map(|h| h.abs()).sum::<f64>() / rest.len() as f64 };
        -legs - floor
    }
}

impl Objective for Table {
    fn name(&self) -> &str {
        "table"
    }
    fn potential(&self, _: &FoldView) -> f64 {
        0.0
    }
    fn terminal(&self, view: &FoldView) -> f64 {
        self.evaluate(view.positions())
    }
    fn non_positive_rewards(&self) -> bool {
        false
    }
}

/// Three legs below the seat and a backrest beside one seat edge.
#[derive(Clone, Copy, Debug)]
pub struct Chair {
    pub extent: f64,
    pub leg_spread: f64,
    pub edge_y: f64,
    pub leg_z: f64,
    pub rest_z: f64,
}

impl Default for Chair {
    fn default() -> Self {
        Chair { extent: 4.0, leg_spread: 0.3, edge_y: 2.1, leg_z: -4.0, rest_z: 4.0 }
    }
}

impl Chair {
    pub fn evaluate(&self, points: &[Point3]) -> f64 {
        if points.len() < 3 || points.iter().any(|p| p.x.abs() > self.extent || p.y.abs() > self.extent) {
            return DISCARD;
        }
        let mut by_z: Vec<&Point3> = points.iter().collect();
        by_z.sort_by(|a, b| a.z.total_cmp(&b.z));
        let legs = &by_z[..3];
        if legs[2].z - legs[0].z > self.leg_spread {
            return DISCARD;
        }
        let one_side = |f: fn(&Point3) -> f64| legs.iter().all(|p| f(p) >= 0.0) || legs.iter().all(|p| f(p) <= 0.0);
        if one_side(|p| p.x) || one_side(|p| p.y) {
            return DISCARD;
        }
        let l_legs = legs.iter().map(|p| (p.z - self.leg_z).abs() + (p.y.abs() - self.edge_y).abs()).sum::<f64>() / 3.0;
        let zmax = by_z.last().expect("non-empty").z;
        let rest: Vec<&&Point3> = by_z.iter().filter(|p| p.z > 0.0).collect();
        let rest_y = if rest.is_empty() {
            0.0
        } else {
            rest.iter().map(|p| (p.y.abs() - self.edge_y).abs()).sum::<f64>() / rest.len() as f64
        };
        -l_legs - ((zmax - self.rest_z).abs() + rest_y)
    }
}

impl Objective for Chair {
    fn name(&self) -> &str {
        "chair"
    }
    fn potential(&self, _: &FoldView) -> f64 {
        0.0
    }
    fn terminal(&self, view: &FoldView) -> f64 {
        self.evaluate(view.positions())
    }
    fn non_positive_rewards(&self) -> bool {
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64, z: f64) -> Point3 {
        Point3::new(x, y, z)
    }

    #[test]
    fn table_examples() {
        let t = Table::default();
        let mut pts = vec![p(0.0, 0.0, 2.5); 4];
        pts.extend([p(1.0, 0.0, 0.0), p(2.0, 0.0, 0.0)]);
        assert_eq!(t.evaluate(&pts), 0.0);
        let flat = vec![p(0.0, 0.0, 0.0); 8];
        assert!((t.evaluate(&flat) + 2.5).abs() < 1e-12);
    }

    #[test]
    fn chair_optimum() {
        let c = Chair::default();
        let pts = [p(-1.0, -2.1, -4.0), p(1.0, -2.1, -4.0), p(0.0, 2.1, -4.0), p(0.0, 2.1, 4.0), p(0.0, 0.0, 0.0)];
        assert!(c.evaluate(&pts).abs() < 1e-12);
        let flat = [p(-2.0, -2.0, 0.0), p(2.0, -2.0, 0.0), p(2.0, 2.0, 0.0), p(-2.0, 2.0, 0.0)];
        assert!(c.evaluate(&flat) < -4.0);
        assert_eq!(c.evaluate(&[p(5.0, 0.0, 0.0), p(0.0, 0.0, 0.0), p(1.0, 1.0, 0.0)]), DISCARD);
    }

    #[test]
    fn shelf_plates() {
        let plate = |z: f64| {
            [
                Triangle3::new(p(0.0, 0.0, z), p(1.0, 0.0, z), p(1.0, 1.0, z)),
                Triangle3::new(p(0.0, 0.0, z), p(1.0, 1.0, z), p(0.0, 1.0, z)),
            ]
        };
        let tris: Vec<_> = [0.0, 1.0, 2.0].into_iter().flat_map(plate).collect();
        assert!((Shelf::default().evaluate(&tris) - 1.0).abs() < 1e-12);
        assert_eq!(Shelf::default().evaluate(&plate(0.0)), DISCARD);
    }

    #[test]
    fn bucket_examples() {
        let rim: Vec<_> = (0..8).map(|k| {
            let a = k as f64 * std::f64::consts::TAU / 8.0;
            p(2.0 * a.cos(), 2.0 * a.sin(), 1.5)
        }).collect();
        assert!((Bucket::evaluate(&rim) - 1.5).abs() < 1e-12);
        let mut lopsided = rim.clone();
        lopsided[0].z = 4.0;
        assert_eq!(Bucket::evaluate(&lopsided), DISCARD);
        assert_eq!(Bucket::evaluate(&[p(1.0, 0.0, 0.0), p(0.0, 1.0, 0.0)]), 0.0);
    }
}
