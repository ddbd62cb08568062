use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Rational, UniPoly};
use crate::error::{Error, Result};

/// Integral domain with exact division, enough for fraction-free
/// elimination.
pub trait Domain: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `self / rhs`, known to be exact.
    fn div_exact(&self, rhs: &Self) -> Self;
}

impl Domain for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, rhs: &Self) -> Self {
        debug_assert!(Zero::is_zero(&(self % rhs)));
        self / rhs
    }
}

impl Domain for UniPoly {
    fn zero() -> Self {
        UniPoly::zero()
    }
    fn one() -> Self {
        UniPoly::one()
    }
    fn is_zero(&self) -> bool {
        UniPoly::is_zero(self)
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, rhs: &Self) -> Self {
        UniPoly::div_exact(self, rhs).expect("Bareiss division is exact")
    }
}

/// Determinant by fraction-free Bareiss elimination.
pub fn determinant_bareiss<T: Domain>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    if n == 0 {
        return T::one();
    }
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return T::zero();
            };
            m.swap(k, r);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.div_exact(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        det.neg()
    } else {
        det
    }
}

/// Sylvester matrix of `a` (degree `da`) and `b` (degree `db`), both given
/// by coefficients from the constant term upwards.
fn sylvester<T: Domain>(a: &[T], b: &[T]) -> Vec<Vec<T>> {
    let da = a.len() - 1;
    let db = b.len() - 1;
    let n = da + db;
    let mut m = vec![vec![T::zero(); n]; n];
    for i in 0..db {
        for (j, c) in a.iter().rev().enumerate() {
            m[i][i + j] = c.clone();
        }
    }
    for i in 0..da {
        for (j, c) in b.iter().rev().enumerate() {
            m[db + i][i + j] = c.clone();
        }
    }
    m
}

/// Integer coefficients `c·p` together with the scale `c`.
fn clear_denominators(p: &UniPoly) -> (Vec<BigInt>, BigInt) {
    let lcm = p
        .coeffs()
        .iter()
        .fold(<BigInt as One>::one(), |acc, c| acc.lcm(c.denom()));
    let ints = p
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    (ints, lcm)
}

/// Resultant of two univariate polynomials, by Bareiss elimination of the
/// Sylvester matrix over the integers. Zero when either input is zero.
pub fn resultant(a: &UniPoly, b: &UniPoly) -> Rational {
    let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
        return Rational::zero();
    };
    if da == 0 {
        return num_traits::pow(a.lc(), db);
    }
    if db == 0 {
        return num_traits::pow(b.lc(), da);
    }
    let (ai, ca) = clear_denominators(a);
    let (bi, cb) = clear_denominators(b);
    let det = determinant_bareiss(sylvester(&ai, &bi));
    let scale = num_traits::pow(ca, db) * num_traits::pow(cb, da);
    Rational::new(det, scale)
}

/// Discriminant data of a family `g(t, s)` with formal degree `e` in `s`.
#[derive(Clone, Debug)]
pub struct Discriminant {
    /// `Res_s(g, ∂g/∂s)` with the Sylvester matrix of formal size `2e - 1`.
    pub resultant: UniPoly,
    /// Coefficient of `s^e`.
    pub leading: UniPoly,
    /// `resultant / leading`: vanishes exactly where the degree-`e` binary
    /// form has a repeated root, counting a root at `s = ∞`.
    pub discriminant: UniPoly,
    /// Monic square-free part of `discriminant`.
    pub squarefree: UniPoly,
}

/// Discriminant in `s` of `g(t, s) = Σ_k family[k](t) s^k` taken with
/// formal degree `e`. Errors when it vanishes identically (non-reduced
/// family) or when the coefficient of `s^e` is zero.
pub fn discriminant_in_s(family: &[UniPoly], e: usize) -> Result<Discriminant> {
    if family.len() > e + 1 {
        return Err(Error::InvalidInput(format!(
            "family has degree {} in s, above the formal degree {e}",
            family.len() - 1
        )));
    }
    let coeff = |k: usize| family.get(k).cloned().unwrap_or_else(UniPoly::zero);
    let leading = coeff(e);
    if leading.is_zero() {
        return Err(Error::InvalidInput("coefficient of s^e vanishes identically".into()));
    }
    if e == 0 {
        let one = UniPoly::one();
        return Ok(Discriminant {
            resultant: one.clone(),
            leading,
            discriminant: one.clone(),
            squarefree: one,
        });
    }
    let g: Vec<UniPoly> = (0..=e).map(coeff).collect();
    let gs: Vec<UniPoly> = (1..=e)
        .map(|k| coeff(k).scale(&Rational::from_integer(BigInt::from(k))))
        .collect();
    let res = determinant_bareiss(sylvester(&g, &gs));
    let disc = res.div_exact(&leading).expect("leading coefficient divides the resultant");
    if disc.is_zero() {
        return Err(Error::NonReduced);
    }
    let squarefree = disc.squarefree_part();
    Ok(Discriminant {
        resultant: res,
        leading,
        discriminant: disc,
        squarefree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_i64(c)
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(resultant(&p(&[-1, 0, 1]), &p(&[-1, 1])), rat(0));
        // Sylvester rows (1 0 1), (1 -1 0), (0 1 -1): determinant 2
        assert_eq!(resultant(&p(&[1, 0, 1]), &p(&[-1, 1])), rat(2));
        assert_eq!(resultant(&p(&[0, 0, 1]), &p(&[0, 0, 0, 1])), rat(0));
    }

    #[test]
    fn resultant_with_rational_coefficients() {
        // Res(s - 1/2, s - 1/3) = 1/3 - 1/2 up to sign
        let a = UniPoly::new(vec![crate::poly::ratio(-1, 2), rat(1)]);
        let b = UniPoly::new(vec![crate::poly::ratio(-1, 3), rat(1)]);
        let r = resultant(&a, &b);
        assert_eq!(r, crate::poly::ratio(1, 6));
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let m: Vec<Vec<BigInt>> = [[2, -1, 0], [-1, 2, -1], [0, -1, 2]]
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        assert_eq!(determinant_bareiss(m), BigInt::from(4));
        // zero pivot forces a row swap
        let m: Vec<Vec<BigInt>> = [[0, 1], [1, 0]]
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        assert_eq!(determinant_bareiss(m), BigInt::from(-1));
    }

    #[test]
    fn circle_family_discriminant() {
        // s^2 + t^2 - 1: hand resultant with 2s is 4(t^2 - 1)
        let fam = vec![p(&[-1, 0, 1]), p(&[]), p(&[1])];
        let d = discriminant_in_s(&fam, 2).unwrap();
        assert_eq!(d.resultant, p(&[-4, 0, 4]));
        assert_eq!(d.squarefree, p(&[-1, 0, 1]));
    }

    #[test]
    fn fermat_family_discriminant() {
        // s^4 + t^4 + 1
        let fam = vec![p(&[1, 0, 0, 0, 1]), p(&[]), p(&[]), p(&[]), p(&[1])];
        let d = discriminant_in_s(&fam, 4).unwrap();
        let base = p(&[1, 0, 0, 0, 1]);
        let cube = base.pow(3);
        assert!(d.discriminant.div_exact(&cube).is_some_and(|q| q.is_constant()));
        assert_eq!(d.squarefree, base);
    }

    #[test]
    fn simple_branch_family() {
        // s^2 - t
        let fam = vec![p(&[0, -1]), p(&[]), p(&[1])];
        let d = discriminant_in_s(&fam, 2).unwrap();
        assert_eq!(d.squarefree, p(&[0, 1]));
    }

    #[test]
    fn non_reduced_family_is_rejected() {
        // (s - t)^2
        let fam = vec![p(&[0, 0, 1]), p(&[0, -2]), p(&[1])];
        assert!(matches!(discriminant_in_s(&fam, 2), Err(Error::NonReduced)));
    }
}
