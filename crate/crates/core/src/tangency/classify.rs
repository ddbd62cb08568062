use rand::Rng;
use serde::Serialize;

use super::IntersectionProfile;
use crate::error::{Error, Result};
use crate::monodromy::Hypersurface;
use crate::poly::{rank, rat, restrict_to_plane, tangent_cone, ProjectivePoint, Rational};
use crate::seeded_rng;

/// Kinds of multitangent lines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum LineClass {
    /// Bitangent or asymptotic tangent at smooth points only.
    C1,
    /// Through exactly one singular point and tangent at a smooth point.
    C2,
    /// Through at least two singular points.
    C3,
    /// In the tangent cone at a singular point.
    C4,
}

impl std::fmt::Display for LineClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Class of a multitangent line from its exact profile. `None` when the
/// line fits none of the classes, for instance a line through one singular
/// point outside its cone with no other tangency.
pub fn classify_line(profile: &IntersectionProfile) -> Option<LineClass> {
    let singular: Vec<_> = profile.singular_points().collect();
    let smooth_tangency: usize = profile
        .points
        .iter()
        .filter(|p| !p.singular)
        .map(|p| p.contact_order())
        .sum();
    if singular.len() >= 2 {
        Some(LineClass::C3)
    } else if singular.iter().any(|p| p.line_in_cone) {
        Some(LineClass::C4)
    } else if singular.len() == 1 && smooth_tangency >= 1 {
        Some(LineClass::C2)
    } else if singular.is_empty() && smooth_tangency >= 2 {
        Some(LineClass::C1)
    } else {
        None
    }
}

/// Checks that a section of `x` by a plane `K` with `ℓ ⊂ K ⊂ H` has a
/// branch at `p` tangent to `ℓ = span(p, dir)`, where `ℓ` lies in the
/// tangent cone of `x` at the singular point `p`. `hyperplane` holds the
/// coefficients of the linear form of `H`; `None` means the whole space,
/// which is the only choice for curves.
pub fn tangent_cone_section_check(
    x: &Hypersurface,
    p: &ProjectivePoint,
    hyperplane: Option<&[Rational]>,
    dir: &ProjectivePoint,
    seed: u64,
) -> Result<bool> {
    x.check_point(p)?;
    x.check_point(dir)?;
    if !x.is_singular_at(p) {
        return Err(Error::Precondition(format!("{p} is not a singular point")));
    }
    if p == dir {
        return Err(Error::InvalidInput("line needs two distinct points".into()));
    }
    let n = x.nvars();
    let on = |h: &[Rational], q: &ProjectivePoint| {
        h.iter().zip(q.coords()).map(|(a, b)| a * b).sum::<Rational>() == rat(0)
    };
    if let Some(h) = hyperplane {
        if h.len() != n || h.iter().all(|c| *c == rat(0)) {
            return Err(Error::Dimension("hyperplane form must have one nonzero coefficient per variable".into()));
        }
        if !on(h, p) || !on(h, dir) {
            return Err(Error::Precondition("the line is not in the hyperplane".into()));
        }
    }
    if !tangent_cone(x.poly(), p)?.contains_direction(dir) {
        return Err(Error::Precondition(format!("the line through {p} and {dir} is not in the tangent cone")));
    }
    let mut rng = seeded_rng(seed, 5);
    for _ in 0..64 {
        let coords: Vec<Rational> = (0..n).map(|_| rat(rng.gen_range(-5..=5))).collect();
        let r = ProjectivePoint::new(coords.clone());
        let Ok(mut r) = r else { continue };
        if let Some(h) = hyperplane {
            // project into H along a coordinate where the form is nonzero
            let k = h.iter().position(|c| *c != rat(0)).expect("nonzero form");
            let value: Rational = h.iter().zip(&coords).map(|(a, b)| a * b).sum();
            let mut c = coords;
            c[k] -= value / &h[k];
            let Ok(q) = ProjectivePoint::new(c) else { continue };
            r = q;
        }
        if rank(&[p.coords().to_vec(), dir.coords().to_vec(), r.coords().to_vec()]) < 3 {
            continue;
        }
        let section = match restrict_to_plane(x.poly(), &[p.clone(), dir.clone(), r]) {
            Ok(g) => g,
            Err(Error::PlaneContained) => continue,
            Err(err) => return Err(err),
        };
        let origin = ProjectivePoint::from_i64(&[1, 0, 0])?;
        let line = ProjectivePoint::from_i64(&[0, 1, 0])?;
        return Ok(tangent_cone(&section, &origin)?.contains_direction(&line));
    }
    Err(Error::Degenerate("no plane section through the line".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tangency::intersection_profile;

    fn pt(c: &[i64]) -> ProjectivePoint {
        ProjectivePoint::from_i64(c).unwrap()
    }

    fn curve(f: &str) -> Hypersurface {
        Hypersurface::parse(f).unwrap()
    }

    #[test]
    fn classes_on_fixture_lines() {
        let nodal = curve("z*y^2 - x^3 - x^2*z");
        let cone_line = intersection_profile(&nodal, &pt(&[0, 0, 1]), &pt(&[1, 1, 0])).unwrap();
        assert_eq!(classify_line(&cone_line), Some(LineClass::C4));
        let plain = intersection_profile(&nodal, &pt(&[0, 0, 1]), &pt(&[1, 2, 0])).unwrap();
        assert_eq!(classify_line(&plain), None);
        let two_nodes = curve("y^2*z^2 - x^2*y^2 - x^2*z^2 + x^3*y + 2*x^3*z");
        let joining = intersection_profile(&two_nodes, &pt(&[0, 0, 1]), &pt(&[0, 1, 0])).unwrap();
        assert_eq!(classify_line(&joining), Some(LineClass::C3));
        // x^4 + y^4 - z^4 meets z = 0... a flex-free bitangent: y = z on x^4 - 2 y^2 z^2 + ...
        let fermat = curve("x^4+y^4+z^4");
        let flex = intersection_profile(&fermat, &pt(&[1, 0, 0]), &pt(&[0, 1, 0])).unwrap();
        assert_eq!(flex.beta, 0);
    }

    #[test]
    fn cone_lines_of_cubic_singularities() {
        let nodal = curve("z*y^2 - x^3 - x^2*z");
        let node = pt(&[0, 0, 1]);
        for dir in [pt(&[1, 1, 0]), pt(&[1, -1, 0])] {
            assert!(tangent_cone_section_check(&nodal, &node, None, &dir, 1).unwrap());
        }
        assert!(matches!(
            tangent_cone_section_check(&nodal, &node, None, &pt(&[1, 2, 0]), 1),
            Err(Error::Precondition(_))
        ));
        let cusp = curve("z*y^2 - x^3");
        assert!(tangent_cone_section_check(&cusp, &node, None, &pt(&[1, 0, 0]), 1).unwrap());
    }

    #[test]
    fn cone_line_on_a_surface_section() {
        // an A1 point at (0:0:0:1) with cone x*y - z^2
        let s = curve("w*(x*y - z^2) + x^3 + y^3 + z^3");
        let p = pt(&[0, 0, 0, 1]);
        let h = [rat(0), rat(1), rat(0), rat(0)];
        for seed in 0..5 {
            assert!(tangent_cone_section_check(&s, &p, Some(&h), &pt(&[1, 0, 0, 0]), seed).unwrap());
        }
    }
}
