use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{gradient_at, parse_poly_auto, point_multiplicity, MultiPoly, ProjectivePoint};

/// A hypersurface `{f = 0}` in projective space of dimension `nvars − 1`.
#[derive(Clone, Debug)]
pub struct Hypersurface {
    f: MultiPoly,
}

impl Hypersurface {
    pub fn new(f: MultiPoly) -> Result<Self> {
        if !(3..=6).contains(&f.nvars()) {
            return Err(Error::Dimension(format!(
                "{} variables; hypersurfaces need 3 to 6",
                f.nvars()
            )));
        }
        match f.degree() {
            None => return Err(Error::InvalidInput("the zero polynomial".into())),
            Some(0) => return Err(Error::InvalidInput("a nonzero constant defines the empty set".into())),
            Some(_) => {}
        }
        if !f.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        Ok(Hypersurface { f })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::new(parse_poly_auto(text)?)
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.f
    }

    pub fn degree(&self) -> usize {
        self.f.degree().unwrap_or(0) as usize
    }

    pub fn nvars(&self) -> usize {
        self.f.nvars()
    }

    /// Dimension `n` of the hypersurface: 1 for plane curves.
    pub fn dimension(&self) -> usize {
        self.f.nvars() - 2
    }

    pub fn check_point(&self, p: &ProjectivePoint) -> Result<()> {
        if p.nvars() != self.nvars() {
            return Err(Error::Dimension(format!(
                "point {p} has {} coordinates, expected {}",
                p.nvars(),
                self.nvars()
            )));
        }
        Ok(())
    }

    pub fn contains(&self, p: &ProjectivePoint) -> bool {
        self.f.eval(p.coords()).is_zero()
    }

    pub fn is_singular_at(&self, p: &ProjectivePoint) -> bool {
        self.contains(p) && gradient_at(&self.f, p).iter().all(Zero::is_zero)
    }

    pub fn is_smooth_at(&self, p: &ProjectivePoint) -> bool {
        self.contains(p) && !self.is_singular_at(p)
    }

    pub fn multiplicity_at(&self, p: &ProjectivePoint) -> u32 {
        point_multiplicity(&self.f, p)
    }
}

impl fmt::Display for Hypersurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(c: &[i64]) -> ProjectivePoint {
        ProjectivePoint::from_i64(c).unwrap()
    }

    #[test]
    fn point_predicates() {
        let nodal = Hypersurface::parse("z*y^2 - x^3 - x^2*z").unwrap();
        assert_eq!((nodal.degree(), nodal.dimension()), (3, 1));
        assert!(nodal.is_singular_at(&pt(&[0, 0, 1])));
        assert!(nodal.is_smooth_at(&pt(&[-1, 0, 1])));
        assert!(!nodal.contains(&pt(&[1, 1, 1])));
        assert_eq!(nodal.multiplicity_at(&pt(&[0, 0, 1])), 2);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(Hypersurface::parse("x^2 + y"), Err(Error::NotHomogeneous)));
        assert!(matches!(Hypersurface::parse("x - x"), Err(Error::InvalidInput(_))));
        assert!(Hypersurface::parse("x0^2 + x6^2").is_err());
        let s = Hypersurface::parse("x^4+y^4+z^4+w^4").unwrap();
        assert_eq!(s.dimension(), 2);
        assert!(s.check_point(&pt(&[1, 0, 0])).is_err());
    }
}
