use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{PointSet, Provenance, Triangle3};
use crate::error::{Error, Result};

/// Area-weighted uniform samples on a triangle mesh, deterministic per seed.
pub fn sample_surface(mesh: &[Triangle3], count: usize, seed: u64) -> Result<PointSet> {
    if count == 0 {
        return Err(Error::EmptyPointSet);
    }
    let mut cumulative = Vec::with_capacity(mesh.len());
    let mut total = 0.0;
    for t in mesh {
        total += t.area();
        cumulative.push(total);
    }
    if mesh.is_empty() || !(total > 0.0) {
        return Err(Error::EmptyMesh);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = (0..count)
        .map(|_| {
            let u = rng.random::<f64>() * total;
            let idx = cumulative.partition_point(|&c| c <= u).min(mesh.len() - 1);
            let t = &mesh[idx];
            let r1 = rng.random::<f64>().sqrt();
            let r2 = rng.random::<f64>();
            let a = 1.0 - r1;
            let b = r1 * (1.0 - r2);
            let c = r1 * r2;
            (t.a.coords * a + t.b.coords * b + t.c.coords * c).into()
        })
        .collect();
    Ok(PointSet::new(points, Provenance::SurfaceSample))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_on_plane() {
        let t = Triangle3::new([0., 0., 1.].into(), [1., 0., 1.].into(), [0., 1., 2.].into());
        let n = t.normal().normalize();
        let s = sample_surface(&[t], 1000, 7).unwrap();
        assert_eq!(s.len(), 1000);
        for p in &s.points {
            assert!(n.dot(&(p - t.a)).abs() < 1e-12);
        }
    }

    #[test]
    fn deterministic() {
        let t = Triangle3::new([0., 0., 0.].into(), [1., 0., 0.].into(), [0., 1., 0.].into());
        assert_eq!(sample_surface(&[t], 50, 3).unwrap(), sample_surface(&[t], 50, 3).unwrap());
    }

    #[test]
    fn empty_mesh() {
        assert_eq!(sample_surface(&[], 10, 0), Err(Error::EmptyMesh));
    }
}
