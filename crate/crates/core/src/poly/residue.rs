//! Exact arithmetic at the roots of a square-free polynomial `q(t)`.
//!
//! Computations run in `Q[t]/(q)`, which is a product of number fields
//! when `q` is square-free. Whenever a zero test or an inversion meets a
//! zero divisor, the computation stops with a [`Split`] carrying a proper
//! factor of `q`; [`split_evaluate`] then restarts on both factors. A
//! result returned for a factor holds uniformly at every root of that
//! factor, so discrete data (multiplicities, degrees) computed this way is
//! exact even when the roots themselves are irrational.

use num_complex::Complex64;
use super::{rat, UniPoly};

/// A proper factor of the modulus, found at a zero divisor.
#[derive(Clone, Debug)]
pub struct Split(pub UniPoly);

pub type Dyn<T> = std::result::Result<T, Split>;

/// Polynomial in `s` with coefficients in `Q[t]/(q)`, low degree first.
pub type RPoly = Vec<UniPoly>;

#[derive(Clone, Debug)]
pub struct ResidueRing {
    modulus: UniPoly,
}

impl ResidueRing {
    pub fn new(modulus: &UniPoly) -> Self {
        assert!(
            modulus.degree().is_some_and(|d| d >= 1),
            "modulus must be nonconstant"
        );
        ResidueRing {
            modulus: modulus.monic(),
        }
    }

    pub fn modulus(&self) -> &UniPoly {
        &self.modulus
    }

    pub fn reduce(&self, a: &UniPoly) -> UniPoly {
        a.rem(&self.modulus)
    }

    pub fn mul(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        self.reduce(&(a * b))
    }

    /// Zero test; a nonzero zero divisor splits the modulus.
    pub fn is_zero(&self, a: &UniPoly) -> Dyn<bool> {
        let r = self.reduce(a);
        if r.is_zero() {
            return Ok(true);
        }
        let g = r.gcd(&self.modulus);
        if g.is_constant() {
            Ok(false)
        } else {
            Err(Split(g))
        }
    }

    /// Inverse of an element that is nonzero modulo `q`.
    pub fn inverse(&self, a: &UniPoly) -> Dyn<UniPoly> {
        let r = self.reduce(a);
        assert!(!r.is_zero(), "inverting zero");
        let (g, u, _) = r.ext_gcd(&self.modulus);
        if g.is_constant() {
            Ok(self.reduce(&u))
        } else {
            Err(Split(g))
        }
    }

    pub fn reduce_poly(&self, p: &[UniPoly]) -> RPoly {
        p.iter().map(|c| self.reduce(c)).collect()
    }

    /// Drops vanishing leading coefficients; afterwards the leading
    /// coefficient is a unit (or the polynomial is empty).
    pub fn trim(&self, p: &[UniPoly]) -> Dyn<RPoly> {
        let mut out = self.reduce_poly(p);
        while let Some(last) = out.last() {
            if self.is_zero(last)? {
                out.pop();
            } else {
                break;
            }
        }
        Ok(out)
    }

    pub fn degree(&self, p: &[UniPoly]) -> Dyn<Option<usize>> {
        Ok(self.trim(p)?.len().checked_sub(1))
    }

    pub fn monic(&self, p: &[UniPoly]) -> Dyn<RPoly> {
        let p = self.trim(p)?;
        let Some(lc) = p.last() else { return Ok(p) };
        let inv = self.inverse(lc)?;
        Ok(p.iter().map(|c| self.mul(c, &inv)).collect())
    }

    pub fn sub(&self, a: &[UniPoly], b: &[UniPoly]) -> RPoly {
        let n = a.len().max(b.len());
        let zero = UniPoly::zero();
        (0..n)
            .map(|k| self.reduce(&(a.get(k).unwrap_or(&zero) - b.get(k).unwrap_or(&zero))))
            .collect()
    }

    pub fn derivative(&self, p: &[UniPoly]) -> RPoly {
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scale(&rat(k as i64)))
            .collect()
    }

    /// Division by a monic divisor.
    pub fn div_rem(&self, a: &[UniPoly], monic_divisor: &[UniPoly]) -> (RPoly, RPoly) {
        let db = monic_divisor.len() - 1;
        let mut rem: RPoly = self.reduce_poly(a);
        while rem.last().is_some_and(|c| c.is_zero()) {
            rem.pop();
        }
        if rem.len() <= db {
            return (Vec::new(), rem);
        }
        let mut quot = vec![UniPoly::zero(); rem.len() - db];
        for k in (0..quot.len()).rev() {
            let c = rem[k + db].clone();
            if !c.is_zero() {
                for (j, d) in monic_divisor.iter().enumerate() {
                    rem[k + j] = self.reduce(&(&rem[k + j] - &(&c * d)));
                }
            }
            quot[k] = c;
        }
        rem.truncate(db);
        while rem.last().is_some_and(|c| c.is_zero()) {
            rem.pop();
        }
        (quot, rem)
    }

    /// Monic gcd over every field factor simultaneously.
    pub fn gcd(&self, a: &[UniPoly], b: &[UniPoly]) -> Dyn<RPoly> {
        let mut a = self.monic(a)?;
        let mut b = self.monic(b)?;
        while !b.is_empty() {
            let (_, r) = self.div_rem(&a, &b);
            a = b;
            b = self.monic(&r)?;
        }
        Ok(a)
    }

    /// Exact quotient by a monic divisor.
    pub fn div_exact(&self, a: &[UniPoly], monic_divisor: &[UniPoly]) -> RPoly {
        let (q, r) = self.div_rem(a, monic_divisor);
        debug_assert!(r.is_empty(), "division is not exact");
        q
    }

    /// Yun's square-free decomposition; entry `k` collects the roots of
    /// multiplicity `k + 1`.
    pub fn squarefree_decomposition(&self, p: &[UniPoly]) -> Dyn<Vec<RPoly>> {
        let f = self.monic(p)?;
        if f.len() <= 1 {
            return Ok(Vec::new());
        }
        let df = self.derivative(&f);
        let a = self.gcd(&f, &df)?;
        let mut b = self.div_exact(&f, &a);
        let mut c = self.div_exact(&df, &a);
        let mut out = Vec::new();
        loop {
            let d = self.sub(&c, &self.derivative(&b));
            if b.len() <= 1 {
                break;
            }
            let factor = self.gcd(&b, &d)?;
            b = self.div_exact(&b, &factor);
            c = self.div_exact(&d, &factor);
            out.push(factor);
        }
        while out.last().is_some_and(|p: &RPoly| p.len() <= 1) {
            out.pop();
        }
        Ok(out)
    }
}

/// Runs `f` over `Q[t]/(modulus)`, splitting on zero divisors until each
/// factor evaluates without one. The returned factors are monic and
/// multiply to the monic modulus.
pub fn split_evaluate<T>(
    modulus: &UniPoly,
    mut f: impl FnMut(&ResidueRing) -> Dyn<T>,
) -> Vec<(UniPoly, T)> {
    let mut work = vec![modulus.monic()];
    let mut out = Vec::new();
    while let Some(q) = work.pop() {
        if q.is_constant() {
            continue;
        }
        let ring = ResidueRing::new(&q);
        match f(&ring) {
            Ok(v) => out.push((q, v)),
            Err(Split(g)) => {
                let g = g.monic();
                let h = q.div_exact(&g).expect("split factor divides the modulus").monic();
                work.push(h);
                work.push(g);
            }
        }
    }
    out
}

/// Numeric coefficients of an `RPoly` at a root `t` of the modulus.
pub fn eval_at(p: &[UniPoly], t: Complex64) -> Vec<Complex64> {
    p.iter().map(|c| c.eval_complex(t)).collect()
}

/// Lifts rational constants into an `RPoly`.
pub fn constant_poly(coeffs: &UniPoly) -> RPoly {
    coeffs
        .coeffs()
        .iter()
        .map(|c| UniPoly::constant(c.clone()))
        .collect()
}

/// The modulus `t` used to run residue computations over the rationals.
pub fn rational_modulus() -> UniPoly {
    UniPoly::x()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_i64(c)
    }

    #[test]
    fn zero_divisor_splits_modulus() {
        // q = t (t - 1); the element t is zero at one root only
        let ring = ResidueRing::new(&p(&[0, -1, 1]));
        let err = ring.is_zero(&p(&[0, 1])).unwrap_err();
        assert!(err.0.degree() == Some(1));
        assert_eq!(ring.is_zero(&p(&[0, -1, 1])).unwrap(), true);
        assert_eq!(ring.is_zero(&p(&[1])).unwrap(), false);
    }

    #[test]
    fn profile_of_parametric_family_splits() {
        // g = s^2 - t over q = t (t - 1): double root at t = 0, simple at t = 1
        let family = vec![p(&[0, -1]), p(&[]), p(&[1])];
        let out = split_evaluate(&p(&[0, -1, 1]), |ring| {
            let dec = ring.squarefree_decomposition(&family)?;
            Ok(dec.iter().map(|f| f.len() - 1).collect::<Vec<_>>())
        });
        let mut out: Vec<(String, Vec<usize>)> =
            out.into_iter().map(|(q, v)| (q.to_string(), v)).collect();
        out.sort();
        assert_eq!(
            out,
            vec![("s".to_string(), vec![0, 1]), ("s - 1".to_string(), vec![2])]
        );
    }

    #[test]
    fn irrational_parameters_stay_uniform() {
        // g = s^4 + t^4 + 1 at the roots of t^4 + 1: a single root of multiplicity 4
        let family = vec![p(&[1, 0, 0, 0, 1]), p(&[]), p(&[]), p(&[]), p(&[1])];
        let out = split_evaluate(&p(&[1, 0, 0, 0, 1]), |ring| {
            let dec = ring.squarefree_decomposition(&family)?;
            Ok(dec.iter().map(|f| f.len() - 1).collect::<Vec<_>>())
        });
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].1, vec![0, 0, 0, 1]);
    }
}
