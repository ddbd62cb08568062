use num_complex::Complex64;
use serde::Serialize;

use crate::roots::{segment_distance, Path};

/// Generator loops based at a common point far from every puncture.
#[derive(Clone, Debug, Serialize)]
pub struct LoopPlan {
    pub base: Complex64,
    /// Indices into the puncture list, in loop order.
    pub order: Vec<usize>,
    /// Circle radius about each puncture, indexed like the punctures.
    pub radii: Vec<f64>,
    /// Keyhole loops in loop order.
    pub paths: Vec<Path>,
    /// Smallest ratio between the distance from a segment to another
    /// puncture and that puncture's radius.
    pub clearance: f64,
}

/// Plans whose segments come closer than this fraction of a radius to
/// another puncture are refused.
pub const MIN_CLEARANCE: f64 = 0.05;

fn nearest(p: Complex64, others: impl Iterator<Item = Complex64>) -> f64 {
    others.map(|q| (p - q).norm()).fold(f64::INFINITY, f64::min)
}

/// Keyhole loops around `points` from a base point at angle `theta` on a
/// circle enclosing everything. Loops avoid the `obstacles` without
/// encircling them. Returns `None` when some segment passes closer than
/// [`MIN_CLEARANCE`] radii to another puncture; a different angle usually
/// cures that. Only hitting a puncture would change the homotopy class of
/// a loop, so near passes cost tracking effort but not correctness.
///
/// Loops are ordered by the angle at which their puncture is seen from the
/// base point, so that the product of their permutations is the monodromy
/// of one large counterclockwise circle.
pub fn plan_loops(points: &[Complex64], obstacles: &[Complex64], theta: f64) -> Option<LoopPlan> {
    let far = points
        .iter()
        .chain(obstacles)
        .map(|z| 2.0 * z.norm())
        .fold(1.0f64, f64::max);
    let base = Complex64::from_polar(far, theta);
    let radius = |i: usize, z: Complex64, own: &[Complex64], other: &[Complex64]| {
        let a = nearest(z, own.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &q)| q));
        let b = nearest(z, other.iter().copied());
        0.5 * a.min(b).min((base - z).norm())
    };
    let radii: Vec<f64> = points
        .iter()
        .enumerate()
        .map(|(i, &z)| radius(i, z, points, obstacles))
        .collect();
    let obstacle_radii: Vec<f64> = obstacles
        .iter()
        .enumerate()
        .map(|(i, &z)| radius(i, z, obstacles, points))
        .collect();
    let mut clearance = f64::INFINITY;
    for (i, &b) in points.iter().enumerate() {
        for (j, (&q, &r)) in points.iter().zip(&radii).enumerate() {
            if j != i {
                clearance = clearance.min(segment_distance(base, b, q) / r);
            }
        }
        for (&q, &r) in obstacles.iter().zip(&obstacle_radii) {
            clearance = clearance.min(segment_distance(base, b, q) / r);
        }
    }
    if !(clearance >= MIN_CLEARANCE) {
        return None;
    }
    let toward_origin = -base;
    let angle = |z: Complex64| ((z - base) / toward_origin).arg();
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| angle(points[a]).total_cmp(&angle(points[b])));
    let paths = order
        .iter()
        .map(|&i| Path::keyhole(base, points[i], radii[i]))
        .collect();
    Some(LoopPlan {
        base,
        order,
        radii,
        paths,
        clearance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn loops_are_ordered_counterclockwise_from_the_base() {
        // base on the positive real axis: i is passed before -i
        let plan = plan_loops(&[c(0.0, -1.0), c(0.0, 1.0)], &[], 0.0).unwrap();
        assert_eq!(plan.order, vec![1, 0]);
        assert!((plan.base - c(2.0, 0.0)).norm() < 1e-15);
        for p in &plan.paths {
            assert!(p.is_closed());
        }
    }

    #[test]
    fn radii_keep_disks_apart() {
        let pts = [c(0.0, 0.0), c(1.0, 0.0), c(0.0, 3.0)];
        let plan = plan_loops(&pts, &[c(-1.0, 0.0)], 1.0).unwrap();
        assert!((plan.radii[0] - 0.5).abs() < 1e-15);
        for (i, p) in plan.order.iter().zip(&plan.paths) {
            for (j, &q) in pts.iter().enumerate() {
                if j != *i {
                    assert!(p.distance_to(q) >= plan.clearance.min(1.0) * plan.radii[j] - 1e-12);
                }
            }
        }
    }

    #[test]
    fn collinear_punctures_are_rejected() {
        // from the base at angle 0 the point 1 hides behind 2
        assert!(plan_loops(&[c(1.0, 0.0), c(2.0, 0.0)], &[], 0.0).is_none());
    }
}
