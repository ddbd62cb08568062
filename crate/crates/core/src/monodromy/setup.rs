use rand::Rng;

use super::Hypersurface;
use crate::error::{Error, Result};
use crate::pencil::LineFamily;
use crate::poly::{discriminant_in_s, rank, rat, Discriminant, MultiPoly, ProjectivePoint, Rational, UniPoly};
use crate::seeded_rng;

const FRAME_ATTEMPTS: usize = 64;

/// Projection of a plane curve from a point, in a seeded frame.
///
/// The lines through the center are `{c1 + t·c2 + s·P}`; the center sits
/// at `s = ∞` and `t = ∞` is the line through `c2`, which the frame keeps
/// unramified.
#[derive(Clone, Debug)]
pub struct ProjectionSetup {
    pub curve: Hypersurface,
    pub center: ProjectivePoint,
    pub inner: bool,
    pub degree: usize,
    /// `d` for a center off the curve, `d − 1` for a smooth point of it.
    pub covering_degree: usize,
    pub c1: Vec<Rational>,
    pub c2: Vec<Rational>,
    pub lines: LineFamily,
    pub discriminant: Discriminant,
    /// Pencil parameter of the tangent line at an inner center.
    pub tangent_parameter: Option<Rational>,
    pub seed: u64,
}

fn random_vector(rng: &mut impl Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| rat(rng.gen_range(-4..=4))).collect()
}

/// Seeded candidate frames `(c1, c2)` completing `p` to a basis.
pub(crate) fn candidate_frames(p: &ProjectivePoint, seed: u64) -> impl Iterator<Item = (Vec<Rational>, Vec<Rational>)> + '_ {
    let mut rng = seeded_rng(seed, 0);
    (0..FRAME_ATTEMPTS)
        .map(move |_| (random_vector(&mut rng, 3), random_vector(&mut rng, 3)))
        .filter(|(c1, c2)| rank(&[p.coords().to_vec(), c1.clone(), c2.clone()]) == 3)
}

/// The line at `t = ∞` meets the curve in `e` distinct points away from
/// the center.
pub(crate) fn line_at_infinity_is_generic(f: &MultiPoly, p: &ProjectivePoint, c2: &[Rational], e: usize) -> Result<bool> {
    let at_infinity = f.restrict_to_line(&ProjectivePoint::new(c2.to_vec())?, p)?;
    Ok(at_infinity.degree() == Some(e) && at_infinity.gcd(&at_infinity.derivative()).is_constant())
}

pub fn setup_projection(x: &Hypersurface, p: &ProjectivePoint, seed: u64) -> Result<ProjectionSetup> {
    x.check_point(p)?;
    if x.dimension() != 1 {
        return Err(Error::Dimension(
            "projections are set up on plane curves; restrict surfaces to planes first".into(),
        ));
    }
    let mult = x.multiplicity_at(p) as usize;
    if mult >= 2 {
        return Err(Error::SingularCenter(p.to_string()));
    }
    let d = x.degree();
    let e = d - mult;
    if e == 0 {
        return Err(Error::Precondition("projecting a line from one of its points".into()));
    }
    let f = x.poly();
    for (c1, c2) in candidate_frames(p, seed) {
        let lines = LineFamily::pencil(f, p, &c1, &c2)?;
        if !lines.content().is_constant() {
            return Err(Error::Reducible(format!(
                "the curve contains a line through {p}"
            )));
        }
        if lines.leading().is_zero() {
            continue;
        }
        let discriminant = discriminant_in_s(lines.family(), e)?;
        if !line_at_infinity_is_generic(f, p, &c2, e)? {
            continue;
        }
        let tangent_parameter = if mult == 1 {
            let lead = lines.leading();
            // linear by the choice of c2
            Some(-lead.coeff(0) / lead.coeff(1))
        } else {
            None
        };
        return Ok(ProjectionSetup {
            curve: x.clone(),
            center: p.clone(),
            inner: mult == 1,
            degree: d,
            covering_degree: e,
            c1,
            c2,
            lines,
            discriminant,
            tangent_parameter,
            seed,
        });
    }
    Err(Error::Degenerate(format!(
        "no admissible frame in {FRAME_ATTEMPTS} attempts"
    )))
}

impl ProjectionSetup {
    /// Numeric coefficient data of the fibre family.
    pub fn family(&self) -> &[UniPoly] {
        self.lines.family()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(c: &[i64]) -> ProjectivePoint {
        ProjectivePoint::from_i64(c).unwrap()
    }

    #[test]
    fn covering_degrees() {
        let circle = Hypersurface::parse("x^2+y^2-z^2").unwrap();
        let s = setup_projection(&circle, &pt(&[0, 0, 1]), 1).unwrap();
        assert_eq!((s.covering_degree, s.inner), (2, false));
        assert_eq!(s.discriminant.squarefree.degree(), Some(2));
        let s = setup_projection(&circle, &pt(&[0, 1, 1]), 1).unwrap();
        assert_eq!((s.covering_degree, s.inner), (1, true));
        assert!(s.tangent_parameter.is_some());
    }

    #[test]
    fn singular_center_is_rejected() {
        let nodal = Hypersurface::parse("z*y^2 - x^3 - x^2*z").unwrap();
        assert!(matches!(
            setup_projection(&nodal, &pt(&[0, 0, 1]), 3),
            Err(Error::SingularCenter(_))
        ));
    }

    #[test]
    fn fermat_vertex_discriminant_is_quartic() {
        let fermat = Hypersurface::parse("x^4+y^4+z^4").unwrap();
        let s = setup_projection(&fermat, &pt(&[1, 0, 0]), 11).unwrap();
        assert_eq!(s.covering_degree, 4);
        assert_eq!(s.discriminant.squarefree.degree(), Some(4));
        // the full discriminant is the cube of the square-free part
        assert_eq!(s.discriminant.discriminant.degree(), Some(12));
    }

    #[test]
    fn frame_depends_on_seed_only() {
        let fermat = Hypersurface::parse("x^4+y^4+z^4").unwrap();
        let a = setup_projection(&fermat, &pt(&[1, 2, 3]), 5).unwrap();
        let b = setup_projection(&fermat, &pt(&[1, 2, 3]), 5).unwrap();
        assert_eq!((a.c1, a.c2), (b.c1, b.c2));
    }

    #[test]
    fn reducible_and_nonreduced_curves() {
        let line_and_conic = Hypersurface::parse("x*(x^2+y^2-z^2)").unwrap();
        assert!(matches!(
            setup_projection(&line_and_conic, &pt(&[0, 1, 0]), 2),
            Err(Error::Reducible(_))
        ));
        let double_conic = Hypersurface::parse("(x^2+y^2-z^2)^2").unwrap();
        assert!(matches!(
            setup_projection(&double_conic, &pt(&[2, 3, 1]), 2),
            Err(Error::NonReduced)
        ));
    }
}
