use std::fmt;
use std::hash::{Hash, Hasher};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::{fmt_rational, parse_rational, rat, to_complex, Rational};
use crate::error::{Error, Result};

/// A point of projective space with rational homogeneous coordinates.
///
/// Equality is up to a nonzero scalar; the stored representative is
/// normalized so that the first nonzero coordinate equals one.
#[derive(Clone)]
pub struct ProjectivePoint {
    coords: Vec<Rational>,
}

impl ProjectivePoint {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        let Some(lead) = coords.iter().find(|c| !c.is_zero()).cloned() else {
            return Err(Error::InvalidPoint("all coordinates are zero".into()));
        };
        let inv = lead.recip();
        Ok(ProjectivePoint {
            coords: coords.into_iter().map(|c| c * &inv).collect(),
        })
    }

    pub fn from_i64(coords: &[i64]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| rat(c)).collect())
    }

    /// Coordinate vector `e_i` in `n` variables.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut c = vec![Rational::zero(); n];
        c[i] = Rational::one();
        ProjectivePoint { coords: c }
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn nvars(&self) -> usize {
        self.coords.len()
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.coords.iter().map(to_complex).collect()
    }

    /// Index of a coordinate that is nonzero, preferring the last one so
    /// that plane points stay in the usual `z = 1` chart when possible.
    pub fn chart(&self) -> usize {
        (0..self.coords.len())
            .rev()
            .find(|&i| !self.coords[i].is_zero())
            .expect("nonzero point")
    }
}

impl PartialEq for ProjectivePoint {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords
    }
}

impl Eq for ProjectivePoint {}

impl Hash for ProjectivePoint {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl PartialOrd for ProjectivePoint {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ProjectivePoint {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coords.cmp(&other.coords)
    }
}

impl serde::Serialize for ProjectivePoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(fmt_rational).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_string().replace(',', ":"))
    }
}

/// Parses `"1,0,0"` or `"1/2,3,-1"`.
pub fn parse_point(text: &str) -> Result<ProjectivePoint> {
    let coords = text
        .split(',')
        .map(|part| {
            parse_rational(part)
                .ok_or_else(|| Error::InvalidPoint(format!("`{}` is not a rational number", part.trim())))
        })
        .collect::<Result<Vec<_>>>()?;
    if coords.len() < 2 {
        return Err(Error::InvalidPoint("need at least two coordinates".into()));
    }
    ProjectivePoint::new(coords)
}
