//! Families of lines through a fixed point and their exact intersection
//! profiles.
//!
//! A [`LineFamily`] parametrizes the lines joining a moving point `A(t)` to
//! a fixed center `B`; the line over `t` is `{A(t) + s·B}` with `B` at
//! `s = ∞`. Intersection data is computed over `Q[t]/(q)` for a square-free
//! `q`, so it holds exactly at every root of `q`.

use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::residue::{eval_at, split_evaluate, Dyn, RPoly, ResidueRing};
use crate::poly::{multi_indices, point_multiplicity, BiPoly, MultiPoly, ProjectivePoint, Rational, UniPoly};
use crate::roots::{all_roots, total_cmp};

/// Points of one line sharing intersection multiplicity and point
/// multiplicity.
#[derive(Clone, Debug)]
pub struct PointClass {
    /// Intersection multiplicity of the line with the hypersurface.
    pub multiplicity: usize,
    /// Multiplicity of the hypersurface at the point; `None` when it was
    /// not computed.
    pub point_multiplicity: Option<u32>,
    pub count: usize,
    pub is_center: bool,
    /// Monic square-free polynomial in `s` whose roots are the points.
    pub poly: RPoly,
}

impl PointClass {
    pub fn is_singular(&self) -> bool {
        self.point_multiplicity.is_some_and(|m| m >= 2)
    }

    /// A singular point whose tangent cone contains the line.
    pub fn line_in_cone(&self) -> bool {
        self.is_singular() && self.multiplicity > self.point_multiplicity.unwrap_or(0) as usize
    }
}

#[derive(Clone, Debug)]
pub struct LineProfile {
    pub contained: bool,
    pub classes: Vec<PointClass>,
}

impl LineProfile {
    /// Intersection multiplicities of all points, decreasing.
    pub fn intersection_partition(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .classes
            .iter()
            .flat_map(|c| std::iter::repeat(c.multiplicity).take(c.count))
            .collect();
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    /// Fibre of the projection from the center: the finite points, plus
    /// the center counted `m − μ` times.
    pub fn fibre_partition(&self) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        for c in &self.classes {
            let m = if c.is_center {
                c.multiplicity - c.point_multiplicity.unwrap_or(0) as usize
            } else {
                c.multiplicity
            };
            if m > 0 {
                out.extend(std::iter::repeat(m).take(c.count));
            }
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    pub fn beta(&self) -> usize {
        self.classes.iter().map(|c| c.count * (c.multiplicity - 1)).sum()
    }

    pub fn beta_without_center(&self) -> usize {
        self.classes
            .iter()
            .filter(|c| !c.is_center)
            .map(|c| c.count * (c.multiplicity - 1))
            .sum()
    }

    pub fn center_class(&self) -> Option<&PointClass> {
        self.classes.iter().find(|c| c.is_center)
    }
}

fn bi_mul(a: &[UniPoly], b: &[UniPoly]) -> BiPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![UniPoly::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

fn bi_trim(mut p: BiPoly) -> BiPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

/// `f(A(t) + s·B)` regrouped by powers of `s`.
pub fn substitute_line(f: &MultiPoly, base: &[UniPoly], center: &[Rational]) -> BiPoly {
    let d = f.degree().unwrap_or(0) as usize;
    let powers: Vec<Vec<BiPoly>> = base
        .iter()
        .zip(center)
        .map(|(a, b)| {
            let lin = vec![a.clone(), UniPoly::constant(b.clone())];
            let mut pw: Vec<BiPoly> = vec![vec![UniPoly::one()]];
            for k in 1..=d {
                let next = bi_mul(&pw[k - 1], &lin);
                pw.push(next);
            }
            pw
        })
        .collect();
    let mut out: BiPoly = Vec::new();
    for (e, c) in f.terms() {
        let mut term: BiPoly = vec![UniPoly::constant(c.clone())];
        for (i, &k) in e.iter().enumerate() {
            if k > 0 {
                term = bi_mul(&term, &powers[i][k as usize]);
            }
        }
        if out.len() < term.len() {
            out.resize(term.len(), UniPoly::zero());
        }
        for (k, c) in term.into_iter().enumerate() {
            out[k] = &out[k] + &c;
        }
    }
    bi_trim(out)
}

/// Lines joining `A(t)` to a fixed center.
#[derive(Clone, Debug)]
pub struct LineFamily {
    f: MultiPoly,
    base: Vec<UniPoly>,
    center: ProjectivePoint,
    center_multiplicity: u32,
    family: BiPoly,
    partials: OnceLock<Vec<Vec<BiPoly>>>,
}

impl LineFamily {
    pub fn new(f: &MultiPoly, base: Vec<UniPoly>, center: &ProjectivePoint) -> Result<Self> {
        if base.len() != f.nvars() || center.nvars() != f.nvars() {
            return Err(Error::Dimension("line data must match the variable count".into()));
        }
        let family = substitute_line(f, &base, center.coords());
        Ok(LineFamily {
            center_multiplicity: point_multiplicity(f, center),
            f: f.clone(),
            base,
            center: center.clone(),
            family,
            partials: OnceLock::new(),
        })
    }

    /// The pencil `A(t) = c1 + t·c2` through `center`.
    pub fn pencil(f: &MultiPoly, center: &ProjectivePoint, c1: &[Rational], c2: &[Rational]) -> Result<Self> {
        let base = c1
            .iter()
            .zip(c2)
            .map(|(a, b)| UniPoly::linear(a.clone(), b.clone()))
            .collect();
        Self::new(f, base, center)
    }

    /// The single line through `a` and `center`, with `t` unused.
    pub fn line(f: &MultiPoly, a: &ProjectivePoint, center: &ProjectivePoint) -> Result<Self> {
        if a == center {
            return Err(Error::InvalidInput("line needs two distinct points".into()));
        }
        let base = a.coords().iter().map(|c| UniPoly::constant(c.clone())).collect();
        Self::new(f, base, center)
    }

    pub fn family(&self) -> &BiPoly {
        &self.family
    }

    pub fn center(&self) -> &ProjectivePoint {
        &self.center
    }

    pub fn center_multiplicity(&self) -> u32 {
        self.center_multiplicity
    }

    /// Degree of the fibre binary form: `d − mult_center`.
    pub fn formal_degree(&self) -> usize {
        self.f.degree().unwrap_or(0) as usize - self.center_multiplicity as usize
    }

    /// Coefficient of `s^e` with `e` the formal degree; it vanishes exactly
    /// on lines lying in the tangent cone at the center.
    pub fn leading(&self) -> UniPoly {
        self.family
            .get(self.formal_degree())
            .cloned()
            .unwrap_or_else(UniPoly::zero)
    }

    /// Gcd of all coefficients: its roots are lines contained in the
    /// hypersurface.
    pub fn content(&self) -> UniPoly {
        self.family
            .iter()
            .fold(UniPoly::zero(), |acc, c| if acc.is_zero() { c.monic() } else { acc.gcd(c) })
    }

    pub fn point_at(&self, t: Complex64, s: Complex64) -> Vec<Complex64> {
        self.base
            .iter()
            .zip(self.center.to_complex())
            .map(|(a, b)| a.eval_complex(t) + s * b)
            .collect()
    }

    pub fn base_at(&self, t: Complex64) -> Vec<Complex64> {
        self.base.iter().map(|a| a.eval_complex(t)).collect()
    }

    fn partials(&self) -> &[Vec<BiPoly>] {
        self.partials.get_or_init(|| {
            let d = self.f.degree().unwrap_or(0);
            (1..d)
                .map(|j| {
                    multi_indices(self.f.nvars(), j)
                        .iter()
                        .map(|alpha| substitute_line(&self.f.derivative(alpha), &self.base, self.center.coords()))
                        .collect()
                })
                .collect()
        })
    }

    fn profile_in(&self, ring: &ResidueRing, with_singularity: bool) -> Dyn<LineProfile> {
        let g = ring.trim(&self.family)?;
        if g.is_empty() {
            return Ok(LineProfile {
                contained: true,
                classes: Vec::new(),
            });
        }
        let d = self.f.degree().unwrap_or(0) as usize;
        let mut classes = Vec::new();
        let dec = ring.squarefree_decomposition(&g)?;
        for (k, factor) in dec.iter().enumerate() {
            let count = factor.len().saturating_sub(1);
            if count == 0 {
                continue;
            }
            let m = k + 1;
            if m == 1 {
                classes.push(PointClass {
                    multiplicity: 1,
                    point_multiplicity: Some(1),
                    count,
                    is_center: false,
                    poly: factor.clone(),
                });
                continue;
            }
            if !with_singularity {
                classes.push(PointClass {
                    multiplicity: m,
                    point_multiplicity: None,
                    count,
                    is_center: false,
                    poly: factor.clone(),
                });
                continue;
            }
            // split the points by how many orders of partials vanish there
            let mut current = factor.clone();
            for j in 1..m {
                let mut next = current.clone();
                for h in &self.partials()[j - 1] {
                    if next.len() <= 1 {
                        break;
                    }
                    next = ring.gcd(&next, &ring.reduce_poly(h))?;
                }
                let lost = current.len() - next.len();
                if lost > 0 {
                    classes.push(PointClass {
                        multiplicity: m,
                        point_multiplicity: Some(j as u32),
                        count: lost,
                        is_center: false,
                        poly: ring.div_exact(&current, &next),
                    });
                }
                current = next;
                if current.len() <= 1 {
                    break;
                }
            }
            if current.len() > 1 {
                classes.push(PointClass {
                    multiplicity: m,
                    point_multiplicity: Some(m as u32),
                    count: current.len() - 1,
                    is_center: false,
                    poly: current,
                });
            }
        }
        let at_center = d - (g.len() - 1);
        if at_center > 0 {
            classes.push(PointClass {
                multiplicity: at_center,
                point_multiplicity: Some(self.center_multiplicity),
                count: 1,
                is_center: true,
                poly: Vec::new(),
            });
        }
        Ok(LineProfile {
            contained: false,
            classes,
        })
    }

    /// Profiles of the lines over the roots of `modulus`, grouped by the
    /// factors of `modulus` found along the way.
    pub fn profiles(&self, modulus: &UniPoly, with_singularity: bool) -> Vec<(UniPoly, LineProfile)> {
        let mut out = split_evaluate(modulus, |ring| self.profile_in(ring, with_singularity));
        out.sort_by_key(|(q, _)| (q.degree(), q.to_string()));
        out
    }

    /// Profile of a line with a rational parameter.
    pub fn profile_at(&self, t: &Rational, with_singularity: bool) -> LineProfile {
        let modulus = UniPoly::linear(-t.clone(), Rational::from_integer(1.into()));
        self.profiles(&modulus, with_singularity)
            .pop()
            .expect("a linear modulus does not split")
            .1
    }

    /// Homogeneous coordinates of the points of a class on the line over
    /// the numeric parameter `t` (a root of the class modulus).
    pub fn class_points(&self, class: &PointClass, t: Complex64) -> Result<Vec<Vec<Complex64>>> {
        if class.is_center {
            return Ok(vec![self.center.to_complex()]);
        }
        let coeffs = eval_at(&class.poly, t);
        let mut s = all_roots(&coeffs, 1e-8, 1e-12)?.values();
        s.sort_by(total_cmp);
        Ok(s.into_iter().map(|s| self.point_at(t, s)).collect())
    }
}
