//! Exact polynomial arithmetic over the rationals.
//!
//! Everything that decides discrete structure (multiplicities, branch
//! fibres, singularity of points) is computed here without rounding.
//! Floating point only enters through [`UniPoly::to_complex`] and the
//! `eval_complex` helpers, which hand data over to the root finder.

mod cone;
mod multi;
mod parse;
mod point;
pub mod residue;
mod resultant;
mod uni;

pub use cone::{gradient_at, point_multiplicity, tangent_cone, TangentCone};
pub(crate) use cone::multi_indices;
pub use multi::{restrict_to_plane, MultiPoly, STANDARD_VARS};
pub use parse::{parse_poly, parse_poly_auto};
pub use point::{parse_point, ProjectivePoint};
pub use resultant::{determinant_bareiss, discriminant_in_s, resultant, Discriminant};
pub use uni::{squarefree_multiplicity_profile, UniPoly};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// Arbitrary-precision rational; always kept in lowest terms with a
/// positive denominator by `num_rational`.
pub type Rational = BigRational;

/// A family `g(t, s) = Σ_k c_k(t) s^k`, stored as the coefficient
/// polynomials in `t`, indexed by the power of `s`.
pub type BiPoly = Vec<UniPoly>;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // numerator or denominator overflow f64 on its own
        let n = q.numer().bits() as i64;
        let d = q.denom().bits() as i64;
        let shift = (n - d).clamp(-1000, 1000);
        let scaled = if shift > 0 {
            q / Rational::from_integer(BigInt::from(1) << shift as usize)
        } else {
            q * Rational::from_integer(BigInt::from(1) << (-shift) as usize)
        };
        scaled.to_f64().unwrap_or(0.0) * 2f64.powi(shift as i32)
    })
}

pub fn to_complex(q: &Rational) -> Complex64 {
    Complex64::new(to_f64(q), 0.0)
}

/// Formats a rational as `p` or `p/q`.
pub fn fmt_rational(q: &Rational) -> String {
    if q.denom() == &BigInt::from(1) {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p` or `p/q` with optional sign.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = den.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

/// Best rational approximation with bounded denominator, by continued
/// fractions. Used to propose exact candidates that are then verified.
pub fn rationalize(x: f64, max_den: i64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut y = x;
    for _ in 0..64 {
        let a = y.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = y - a;
        if frac.abs() < 1e-12 {
            break;
        }
        y = 1.0 / frac;
    }
    if k1 == 0 {
        return None;
    }
    Some(Rational::new(BigInt::from(h1), BigInt::from(k1)))
}

/// Exact rank of a rational matrix given by rows.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let factor = &m[r][col] / &m[rank][col];
                for c in col..ncols {
                    let delta = &factor * &m[rank][c];
                    m[r][c] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}
