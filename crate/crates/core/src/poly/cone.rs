use num_traits::{One, Zero};

use super::{MultiPoly, ProjectivePoint, Rational};
use crate::error::{Error, Result};

/// Exact gradient of `f` at `p`.
pub fn gradient_at(f: &MultiPoly, p: &ProjectivePoint) -> Vec<Rational> {
    (0..f.nvars()).map(|i| f.partial(i).eval(p.coords())).collect()
}

/// All multi-indices of total order `k` in `n` variables.
pub(crate) fn multi_indices(n: usize, k: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, k: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == n - 1 {
            prefix.push(k);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for a in (0..=k).rev() {
            prefix.push(a);
            rec(n, k - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, &mut Vec::new(), &mut out);
    out
}

/// Multiplicity of `p` on `{f = 0}`: the least order `k` of a partial
/// derivative of `f` that does not vanish at `p` (0 when `f(p) ≠ 0`).
pub fn point_multiplicity(f: &MultiPoly, p: &ProjectivePoint) -> u32 {
    let d = f.degree().unwrap_or(0);
    for k in 0..=d {
        let hit = multi_indices(f.nvars(), k)
            .iter()
            .any(|alpha| !f.derivative(alpha).eval(p.coords()).is_zero());
        if hit {
            return k;
        }
    }
    d
}

/// Tangent cone of `{f = 0}` at a point on it.
#[derive(Clone, Debug)]
pub struct TangentCone {
    /// `mult_P(X)`; equals one exactly at smooth points.
    pub multiplicity: u32,
    /// Coordinate set to one for the affine chart around the point.
    pub chart: usize,
    /// Lowest-degree part `f_m` in translated coordinates centered at the
    /// point (the chart variable does not occur).
    pub affine: MultiPoly,
    /// `f_m` rewritten in the original homogeneous coordinates; it vanishes
    /// on the direction of every line through the point lying in the cone.
    pub cone: MultiPoly,
}

impl TangentCone {
    /// Whether the line through the center and `dir` lies in the cone.
    pub fn contains_direction(&self, dir: &ProjectivePoint) -> bool {
        self.cone.eval(dir.coords()).is_zero()
    }
}

pub fn tangent_cone(f: &MultiPoly, p: &ProjectivePoint) -> Result<TangentCone> {
    if p.nvars() != f.nvars() {
        return Err(Error::Dimension("point and polynomial disagree on the variable count".into()));
    }
    if !f.eval(p.coords()).is_zero() {
        return Err(Error::PointNotOnHypersurface(p.to_string()));
    }
    let n = f.nvars();
    let k = p.chart();
    let scale = p.coords()[k].recip();
    let center: Vec<Rational> = p.coords().iter().map(|c| c * &scale).collect();
    let vars = f.vars();

    // x_i -> X_i + P_i X_k for i != k, x_k -> X_k
    let shift: Vec<MultiPoly> = (0..n)
        .map(|i| {
            let mut lin = vec![Rational::zero(); n];
            lin[i] = Rational::one();
            if i != k {
                lin[k] = center[i].clone();
            }
            MultiPoly::linear_form(&vars, &lin)
        })
        .collect();
    let moved = f.compose(&shift);
    let m = moved
        .terms()
        .map(|(e, _)| e.iter().sum::<u32>() - e[k])
        .min()
        .expect("nonzero polynomial");
    let affine = MultiPoly::from_terms(
        &vars,
        moved
            .terms()
            .filter(|(e, _)| e.iter().sum::<u32>() - e[k] == m)
            .map(|(e, c)| {
                let mut e = e.clone();
                e[k] = 0;
                (e, c.clone())
            }),
    );
    // X_i = x_i - P_i x_k
    let unshift: Vec<MultiPoly> = (0..n)
        .map(|i| {
            let mut lin = vec![Rational::zero(); n];
            lin[i] = Rational::one();
            if i != k {
                lin[k] = -center[i].clone();
            }
            MultiPoly::linear_form(&vars, &lin)
        })
        .collect();
    let cone = affine.compose(&unshift);
    Ok(TangentCone {
        multiplicity: m,
        chart: k,
        affine,
        cone,
    })
}
