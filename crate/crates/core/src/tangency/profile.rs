use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::monodromy::Hypersurface;
use crate::pencil::{LineFamily, LineProfile};
use crate::poly::{rank, rat, ProjectivePoint};

/// One point of a line meeting the hypersurface.
#[derive(Clone, Debug, Serialize)]
pub struct IntersectionPoint {
    pub coords: Vec<Complex64>,
    /// Intersection multiplicity `m_i`.
    pub multiplicity: usize,
    /// Multiplicity of the hypersurface at the point.
    pub point_multiplicity: u32,
    pub singular: bool,
    /// The line lies in the tangent cone at this (singular) point.
    pub line_in_cone: bool,
    pub is_center: bool,
}

impl IntersectionPoint {
    /// `m_i − 1`.
    pub fn contact_order(&self) -> usize {
        self.multiplicity - 1
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IntersectionProfile {
    pub points: Vec<IntersectionPoint>,
    /// Intersection multiplicities, decreasing.
    pub partition: Vec<usize>,
    pub beta: usize,
}

impl IntersectionProfile {
    /// Numeric points of an exact profile on the line of `lines` over `t`.
    pub(crate) fn from_exact(lines: &LineFamily, profile: &LineProfile, t: Complex64) -> Result<Self> {
        let mut points = Vec::new();
        for class in &profile.classes {
            let mu = class.point_multiplicity.unwrap_or(1);
            for coords in lines.class_points(class, t)? {
                points.push(IntersectionPoint {
                    coords,
                    multiplicity: class.multiplicity,
                    point_multiplicity: mu,
                    singular: class.is_singular(),
                    line_in_cone: class.line_in_cone(),
                    is_center: class.is_center,
                });
            }
        }
        if points.len() != profile.classes.iter().map(|c| c.count).sum::<usize>() {
            return Err(Error::Degenerate("numeric points disagree with the exact profile".into()));
        }
        points.sort_by(|a, b| b.multiplicity.cmp(&a.multiplicity).then(b.singular.cmp(&a.singular)));
        Ok(IntersectionProfile {
            points,
            partition: profile.intersection_partition(),
            beta: profile.beta(),
        })
    }

    pub fn distinct_points(&self) -> usize {
        self.points.len()
    }

    pub fn singular_points(&self) -> impl Iterator<Item = &IntersectionPoint> {
        self.points.iter().filter(|p| p.singular)
    }
}

fn line_family(x: &Hypersurface, a: &ProjectivePoint, b: &ProjectivePoint) -> Result<LineFamily> {
    x.check_point(a)?;
    x.check_point(b)?;
    LineFamily::line(x.poly(), a, b)
}

fn exact_profile(lines: &LineFamily) -> Result<LineProfile> {
    let profile = lines.profile_at(&rat(0), true);
    if profile.contained {
        return Err(Error::LineContained);
    }
    Ok(profile)
}

/// Points of the line through `a` and `b` on `x` with their exact
/// intersection multiplicities and singularity flags.
pub fn intersection_profile(x: &Hypersurface, a: &ProjectivePoint, b: &ProjectivePoint) -> Result<IntersectionProfile> {
    let lines = line_family(x, a, b)?;
    let profile = exact_profile(&lines)?;
    let mut out = IntersectionProfile::from_exact(&lines, &profile, Complex64::new(0.0, 0.0))?;
    // `b` plays the center of the line family but is not a projection center
    for p in &mut out.points {
        p.is_center = false;
    }
    Ok(out)
}

/// Total contact order `β = Σ (m_i − 1)` of the line through `a` and `b`.
pub fn beta(x: &Hypersurface, a: &ProjectivePoint, b: &ProjectivePoint) -> Result<usize> {
    Ok(exact_profile(&line_family(x, a, b)?)?.beta())
}

/// Contact order `m − 1` of the line through `a` and `b` at its point `q`.
pub fn contact_order(x: &Hypersurface, a: &ProjectivePoint, b: &ProjectivePoint, q: &ProjectivePoint) -> Result<usize> {
    x.check_point(q)?;
    if a == b {
        return Err(Error::InvalidInput("line needs two distinct points".into()));
    }
    let on_line = rank(&[a.coords().to_vec(), b.coords().to_vec(), q.coords().to_vec()]) == 2;
    if !on_line || !x.contains(q) {
        return Err(Error::Precondition(format!("{q} is not a point of the line on the hypersurface")));
    }
    let other = if q == a { b } else { a };
    let g = x.poly().restrict_to_line(q, other)?;
    if g.is_zero() {
        return Err(Error::LineContained);
    }
    Ok(g.root_multiplicity(&rat(0)) - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(c: &[i64]) -> ProjectivePoint {
        ProjectivePoint::from_i64(c).unwrap()
    }

    fn curve(f: &str) -> Hypersurface {
        Hypersurface::parse(f).unwrap()
    }

    #[test]
    fn circle_lines() {
        let c = curve("x^2+y^2-z^2");
        let tangent = intersection_profile(&c, &pt(&[0, 1, 1]), &pt(&[1, 1, 1])).unwrap();
        assert_eq!((tangent.partition.clone(), tangent.beta), (vec![2], 1));
        let secant = intersection_profile(&c, &pt(&[1, 0, 0]), &pt(&[0, 0, 1])).unwrap();
        assert_eq!((secant.partition.clone(), secant.beta), (vec![1, 1], 0));
        for p in &secant.points {
            let norm = p.coords[2].norm();
            assert!((p.coords[0].norm() / norm - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn cusp_line() {
        let c = curve("z*y^2 - x^3");
        let p = intersection_profile(&c, &pt(&[0, 0, 1]), &pt(&[1, 0, 0])).unwrap();
        assert_eq!((p.partition.clone(), p.beta), (vec![3], 2));
        assert!(p.points[0].singular && p.points[0].line_in_cone);
    }

    #[test]
    fn nodal_cubic_line_through_node() {
        let c = curve("z*y^2 - x^3 - x^2*z");
        let p = intersection_profile(&c, &pt(&[0, 0, 1]), &pt(&[1, 2, 0])).unwrap();
        assert_eq!(p.partition, vec![2, 1]);
        assert_eq!(p.beta, 1);
        assert_eq!(p.singular_points().count(), 1);
        assert!(!p.points[0].line_in_cone);
        assert_eq!(beta(&c, &pt(&[0, 0, 1]), &pt(&[1, 2, 0])).unwrap(), 1);
    }

    #[test]
    fn line_joining_two_nodes() {
        let c = curve("y^2*z^2 - x^2*y^2 - x^2*z^2 + x^3*y + 2*x^3*z");
        assert!(c.is_singular_at(&pt(&[0, 0, 1])) && c.is_singular_at(&pt(&[0, 1, 0])));
        let p = intersection_profile(&c, &pt(&[0, 0, 1]), &pt(&[0, 1, 0])).unwrap();
        assert_eq!(p.partition, vec![2, 2]);
        assert_eq!(p.beta, 2);
        assert_eq!(p.singular_points().count(), 2);
    }

    #[test]
    fn contact_orders() {
        let c = curve("x^2+y^2-z^2");
        let (a, b) = (pt(&[0, 1, 1]), pt(&[1, 1, 1]));
        assert_eq!(contact_order(&c, &a, &b, &a).unwrap(), 1);
        assert!(contact_order(&c, &a, &b, &b).is_err());
        let cusp = curve("z*y^2 - x^3");
        assert_eq!(contact_order(&cusp, &pt(&[1, 0, 0]), &pt(&[0, 0, 1]), &pt(&[0, 0, 1])).unwrap(), 2);
    }

    #[test]
    fn contained_line_is_an_error() {
        let c = curve("x*(x^2+y^2-z^2)");
        assert!(matches!(
            intersection_profile(&c, &pt(&[0, 1, 0]), &pt(&[0, 0, 1])),
            Err(Error::LineContained)
        ));
    }
}
