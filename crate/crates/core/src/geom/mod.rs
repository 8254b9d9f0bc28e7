//! Geometry kernel: triangle and segment intersection, surface sampling,
//! point-in-mesh queries and Hausdorff distances.
//!
//! Everything here is a pure function over immutable inputs.

mod nn;
mod hausdorff;
mod inside;
mod sample;
mod seg2d;
mod tri;

pub use nn::{directed_hausdorff_indexed, directed_hausdorff_lazy, PointIndex};
pub use hausdorff::{directed_hausdorff, hausdorff};
pub use inside::point_in_closed_mesh;
pub use sample::sample_surface;
pub use seg2d::seg_seg_intersect_2d;
pub use tri::{tri_tri_intersect, DEFAULT_SHARED_TOLERANCE};

use crate::error::{Error, Result};

pub type Point3 = nalgebra::Point3<f64>;
pub type Vec3 = nalgebra::Vector3<f64>;

/// Triangles with area at or below this are rejected by collision queries.
pub const AREA_EPSILON: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Triangle3 {
    pub a: Point3,
    pub b: Point3,
    pub c: Point3,
}

impl Triangle3 {
    pub fn new(a: Point3, b: Point3, c: Point3) -> Self {
        Self { a, b, c }
    }

    pub fn vertices(&self) -> [Point3; 3] {
        [self.a, self.b, self.c]
    }

    /// Unnormalized normal (twice the area in length).
    pub fn normal(&self) -> Vec3 {
        (self.b - self.a).cross(&(self.c - self.a))
    }

    pub fn area(&self) -> f64 {
        0.5 * self.normal().norm()
    }

    /// Fails if the triangle is too thin for intersection queries.
    pub fn checked(self) -> Result<Self> {
        let area = self.area();
        if !(area > AREA_EPSILON) {
            return Err(Error::DegenerateTriangle(area));
        }
        Ok(self)
    }
}

/// Where a point set came from; informational only.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    TargetSample,
    VertexPositions,
    SurfaceSample,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PointSet {
    pub points: Vec<Point3>,
    pub provenance: Provenance,
}

impl PointSet {
    pub fn new(points: Vec<Point3>, provenance: Provenance) -> Self {
        Self { points, provenance }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Volume enclosed by a closed, consistently oriented mesh.
pub fn signed_volume(mesh: &[Triangle3]) -> f64 {
    mesh.iter()
        .map(|t| t.a.coords.dot(&t.b.coords.cross(&t.c.coords)) / 6.0)
        .sum()
}
