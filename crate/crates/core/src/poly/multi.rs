use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::{fmt_rational, rank, rat, to_complex, ProjectivePoint, Rational, UniPoly};
use crate::error::{Error, Result};

/// Default variable names, in order.
pub const STANDARD_VARS: [&str; 6] = ["x", "y", "z", "w", "v", "u"];

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are keyed by exponent vector; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MultiPoly {
    pub fn zero(vars: &[&str]) -> Self {
        MultiPoly {
            vars: vars.iter().map(|v| v.to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub(crate) fn zero_like(&self) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[&str], c: Rational) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars.len()], c);
        p
    }

    /// The `i`-th variable as a polynomial.
    pub fn var(vars: &[&str], i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        let mut p = Self::zero(vars);
        p.add_term(e, Rational::one());
        p
    }

    /// Linear form `Σ c_i x_i`.
    pub fn linear_form(vars: &[&str], coeffs: &[Rational]) -> Self {
        let mut p = Self::zero(vars);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; vars.len()];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn from_terms(vars: &[&str], terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> Vec<&str> {
        self.vars.iter().map(String::as_str).collect()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree() == self.min_degree()
    }

    /// Sum of the terms of total degree exactly `k`.
    pub fn homogeneous_part(&self, k: u32) -> Self {
        let mut p = self.zero_like();
        for (e, c) in &self.terms {
            if e.iter().sum::<u32>() == k {
                p.terms.insert(e.clone(), c.clone());
            }
        }
        p
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars());
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    term *= num_traits::pow(x.clone(), k as usize);
                }
            }
            acc += term;
        }
        acc
    }

    pub fn eval_complex(&self, point: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::zero();
        for (e, c) in &self.terms {
            let mut term = to_complex(c);
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    term *= x.powu(k);
                }
            }
            acc += term;
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut p = self.zero_like();
        if !c.is_zero() {
            for (e, a) in &self.terms {
                p.terms.insert(e.clone(), a * c);
            }
        }
        p
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(e.clone(), -c.clone());
        }
        p
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut p = self.zero_like();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(e, c1 * c2);
            }
        }
        p
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = MultiPoly::constant(&self.vars(), Rational::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> Self {
        let mut p = self.zero_like();
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                p.add_term(e2, c * rat(e[i] as i64));
            }
        }
        p
    }

    /// Mixed partial `∂^α f` for a multi-index `α`.
    pub fn derivative(&self, alpha: &[u32]) -> Self {
        let mut p = self.clone();
        for (i, &k) in alpha.iter().enumerate() {
            for _ in 0..k {
                p = p.partial(i);
            }
        }
        p
    }

    /// Substitutes `subs[i]` for the `i`-th variable. All substitutes must
    /// share one variable set, which becomes the variable set of the result.
    pub fn compose(&self, subs: &[MultiPoly]) -> MultiPoly {
        assert_eq!(subs.len(), self.nvars(), "one substitute per variable");
        let target = subs[0].vars();
        let d = self.degree().unwrap_or(0) as usize;
        let powers: Vec<Vec<MultiPoly>> = subs
            .iter()
            .map(|s| {
                let mut pw = vec![MultiPoly::constant(&target, Rational::one())];
                for k in 1..=d {
                    let next = pw[k - 1].mul(s);
                    pw.push(next);
                }
                pw
            })
            .collect();
        let mut out = MultiPoly::zero(&target);
        for (e, c) in &self.terms {
            let mut term = MultiPoly::constant(&target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    term = term.mul(&powers[i][k as usize]);
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// `g(s) = f(base + s·dir)`, computed directly in univariate arithmetic.
    pub fn restrict_to_line(&self, base: &ProjectivePoint, dir: &ProjectivePoint) -> Result<UniPoly> {
        if base.nvars() != self.nvars() || dir.nvars() != self.nvars() {
            return Err(Error::Dimension("line points must match the variable count".into()));
        }
        if base == dir {
            return Err(Error::InvalidInput("line needs two distinct points".into()));
        }
        let lin: Vec<UniPoly> = base
            .coords()
            .iter()
            .zip(dir.coords())
            .map(|(b, d)| UniPoly::linear(b.clone(), d.clone()))
            .collect();
        Ok(self.compose_univariate(&lin))
    }

    /// Substitution of univariate polynomials for every variable.
    pub fn compose_univariate(&self, subs: &[UniPoly]) -> UniPoly {
        let d = self.degree().unwrap_or(0) as usize;
        let powers: Vec<Vec<UniPoly>> = subs
            .iter()
            .map(|s| {
                let mut pw = vec![UniPoly::one()];
                for k in 1..=d {
                    let next = &pw[k - 1] * s;
                    pw.push(next);
                }
                pw
            })
            .collect();
        let mut out = UniPoly::zero();
        for (e, c) in &self.terms {
            let mut term = UniPoly::constant(c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    term = &term * &powers[i][k as usize];
                }
            }
            out = &out + &term;
        }
        out
    }

    /// Bivariate polynomial in `(t, s)` (variables 0 and 1) regrouped as
    /// coefficients in `s` that are polynomials in `t`.
    pub fn to_family(&self) -> Vec<UniPoly> {
        assert_eq!(self.nvars(), 2, "family needs exactly two variables");
        let ds = self.terms.keys().map(|e| e[1]).max().unwrap_or(0) as usize;
        let dt = self.terms.keys().map(|e| e[0]).max().unwrap_or(0) as usize;
        let mut grid = vec![vec![Rational::zero(); dt + 1]; ds + 1];
        for (e, c) in &self.terms {
            grid[e[1] as usize][e[0] as usize] = c.clone();
        }
        let mut fam: Vec<UniPoly> = grid.into_iter().map(UniPoly::new).collect();
        while fam.last().is_some_and(|p| p.is_zero()) {
            fam.pop();
        }
        fam
    }

    /// Graded-lex descending order used for printing.
    fn grlex(a: &[u32], b: &[u32]) -> Ordering {
        let da: u32 = a.iter().sum();
        let db: u32 = b.iter().sum();
        db.cmp(&da).then_with(|| b.cmp(a))
    }

    pub fn sorted_terms(&self) -> Vec<(&Vec<u32>, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| Self::grlex(a.0, b.0));
        v
    }
}

/// Pullback of `f` to the plane spanned by three points: the result is a
/// polynomial in the plane's homogeneous coordinates `(x, y, z)`, with
/// `points[0]` at `(1:0:0)`, `points[1]` at `(0:1:0)`, `points[2]` at `(0:0:1)`.
pub fn restrict_to_plane(f: &MultiPoly, points: &[ProjectivePoint; 3]) -> Result<MultiPoly> {
    for p in points {
        if p.nvars() != f.nvars() {
            return Err(Error::Dimension("plane points must match the variable count".into()));
        }
    }
    let rows: Vec<Vec<Rational>> = points.iter().map(|p| p.coords().to_vec()).collect();
    if rank(&rows) < 3 {
        return Err(Error::DegenerateSpan);
    }
    let vars = &STANDARD_VARS[..3];
    let subs: Vec<MultiPoly> = (0..f.nvars())
        .map(|i| {
            let coeffs: Vec<Rational> = points.iter().map(|p| p.coords()[i].clone()).collect();
            MultiPoly::linear_form(vars, &coeffs)
        })
        .collect();
    let pulled = f.compose(&subs);
    if pulled.is_zero() {
        return Err(Error::PlaneContained);
    }
    Ok(pulled)
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c < &Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        self.vars[i].clone()
                    } else {
                        format!("{}^{k}", self.vars[i])
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", fmt_rational(&abs), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({self})", self.vars.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly_auto, ProjectivePoint};

    fn pt(c: &[i64]) -> ProjectivePoint {
        ProjectivePoint::from_i64(c).unwrap()
    }

    #[test]
    fn restrict_to_line_examples() {
        let circle = parse_poly_auto("x^2+y^2-z^2").unwrap();
        let g = circle.restrict_to_line(&pt(&[0, 1, 1]), &pt(&[1, 0, 0])).unwrap();
        assert_eq!(g, UniPoly::from_i64(&[0, 0, 1]));
        let g = circle.restrict_to_line(&pt(&[0, 0, 1]), &pt(&[1, 0, 0])).unwrap();
        assert_eq!(g, UniPoly::from_i64(&[-1, 0, 1]));
        let cusp = parse_poly_auto("z*y^2-x^3").unwrap();
        let g = cusp.restrict_to_line(&pt(&[0, 0, 1]), &pt(&[1, 0, 0])).unwrap();
        assert_eq!(g, UniPoly::from_i64(&[0, 0, 0, -1]));
    }

    #[test]
    fn line_inside_hypersurface_gives_zero() {
        let f = parse_poly_auto("x*y").unwrap();
        let g = f.restrict_to_line(&pt(&[0, 1, 0]), &pt(&[0, 0, 1])).unwrap();
        assert!(g.is_zero());
    }

    #[test]
    fn restrict_to_plane_examples() {
        let fermat = parse_poly_auto("x^4+y^4+z^4+w^4").unwrap();
        let h = restrict_to_plane(
            &fermat,
            &[pt(&[1, 0, 0, 0]), pt(&[0, 1, 0, 0]), pt(&[0, 0, 1, 0])],
        )
        .unwrap();
        assert_eq!(h.to_string(), "x^4 + y^4 + z^4");

        // hand substitution: x=a, y=b, z=c, w=c  ⇒  a c - b c
        let quadric = parse_poly_auto("x*w-y*z").unwrap();
        let h = restrict_to_plane(
            &quadric,
            &[pt(&[1, 0, 0, 0]), pt(&[0, 1, 0, 0]), pt(&[0, 0, 1, 1])],
        )
        .unwrap();
        assert_eq!(h.to_string(), "x*z - y*z");
        assert_eq!(h.degree(), Some(2));
    }

    #[test]
    fn restrict_to_plane_errors() {
        let quadric = parse_poly_auto("x*w-y*z").unwrap();
        let err = restrict_to_plane(
            &quadric,
            &[pt(&[0, 0, 1, 0]), pt(&[0, 0, 0, 1]), pt(&[0, 0, 1, 1])],
        )
        .unwrap_err();
        assert!(matches!(err, Error::DegenerateSpan));
        // the plane x = 0 is a component of x*w = 0
        let reducible = parse_poly_auto("x*w").unwrap();
        let err = restrict_to_plane(
            &reducible,
            &[pt(&[0, 1, 0, 0]), pt(&[0, 0, 1, 0]), pt(&[0, 0, 0, 1])],
        )
        .unwrap_err();
        assert!(matches!(err, Error::PlaneContained));
    }

    #[test]
    fn compose_matches_pointwise_evaluation() {
        let f = parse_poly_auto("x^3 - 2*x*y*z + 5*z^3").unwrap();
        let vars = ["t", "s"];
        let subs = vec![
            MultiPoly::linear_form(&vars, &[rat(1), rat(2)]),
            MultiPoly::linear_form(&vars, &[rat(-1), rat(0)]),
            MultiPoly::linear_form(&vars, &[rat(3), rat(1)]),
        ];
        let g = f.compose(&subs);
        let (t, s) = (rat(2), rat(-3));
        let direct = f.eval(&[&t + &(&s * rat(2)), -t.clone(), &t * rat(3) + &s]);
        assert_eq!(g.eval(&[t, s]), direct);
    }
}
