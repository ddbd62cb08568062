use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

const MAX_ITERATIONS: usize = 2000;

/// A group of numerically coincident roots.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Cluster {
    pub value: Complex64,
    pub multiplicity: usize,
}

/// All roots of a univariate polynomial, clustered by multiplicity.
#[derive(Clone, Debug, Serialize)]
pub struct RootSet {
    pub clusters: Vec<Cluster>,
    /// Worst backward error `|g(r)| / Σ|a_k||r|^k` over the clusters.
    pub residual: f64,
    pub cluster_tol: f64,
}

impl RootSet {
    pub fn degree(&self) -> usize {
        self.clusters.iter().map(|c| c.multiplicity).sum()
    }

    pub fn is_simple(&self) -> bool {
        self.clusters.iter().all(|c| c.multiplicity == 1)
    }

    pub fn values(&self) -> Vec<Complex64> {
        self.clusters.iter().map(|c| c.value).collect()
    }

    /// Multiplicity partition in decreasing order.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m: Vec<usize> = self.clusters.iter().map(|c| c.multiplicity).collect();
        m.sort_unstable_by(|a, b| b.cmp(a));
        m
    }
}

/// Value and derivative by Horner's rule; coefficients low degree first.
pub fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// `|g(z)| / Σ |a_k| |z|^k`.
pub fn backward_error(coeffs: &[Complex64], z: Complex64) -> f64 {
    let r = z.norm();
    let scale = coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm());
    if scale == 0.0 {
        return 0.0;
    }
    horner(coeffs, z).0.norm() / scale
}

pub fn total_cmp(a: &Complex64, b: &Complex64) -> std::cmp::Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

fn trimmed(coeffs: &[Complex64]) -> Result<&[Complex64]> {
    let norm = coeffs.iter().fold(0.0f64, |m, c| m.max(c.norm()));
    if norm == 0.0 || !norm.is_finite() {
        return Err(Error::Degenerate("zero or non-finite polynomial".into()));
    }
    let n = coeffs.len() - 1;
    if n == 0 {
        return Err(Error::Degenerate("constant polynomial has no roots".into()));
    }
    if coeffs[n].norm() <= 1e-14 * norm {
        return Err(Error::Degenerate("leading coefficient is negligible".into()));
    }
    Ok(coeffs)
}

/// Simultaneous Aberth–Ehrlich iteration (Gauss–Seidel sweep). Returns the
/// raw approximations, one per root counted with multiplicity.
pub fn aberth(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let coeffs = trimmed(coeffs)?;
    let n = coeffs.len() - 1;
    let lead = coeffs[n].norm();
    let radius = (0..n)
        .filter(|&k| coeffs[k].norm() > 0.0)
        .map(|k| (coeffs[k].norm() / lead).powf(1.0 / (n - k) as f64))
        .fold(0.0f64, f64::max);
    let radius = if radius > 0.0 { radius } else { 1.0 };
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, TAU * k as f64 / n as f64 + 0.7))
        .collect();
    for _ in 0..MAX_ITERATIONS {
        let mut moving = false;
        for i in 0..n {
            let (p, dp) = horner(coeffs, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..n)
                .filter(|&j| j != i && z[j] != z[i])
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if !w.is_finite() {
                continue;
            }
            z[i] -= w;
            if w.norm() > 4.0 * f64::EPSILON * z[i].norm() {
                moving = true;
            }
        }
        if !moving {
            break;
        }
    }
    Ok(z)
}

/// Newton refinement of a simple root.
pub fn polish(coeffs: &[Complex64], mut z: Complex64, steps: usize) -> Complex64 {
    for _ in 0..steps {
        let (p, dp) = horner(coeffs, z);
        let dz = p / dp;
        if !dz.is_finite() {
            break;
        }
        z -= dz;
        if dz.norm() <= f64::EPSILON * z.norm().max(1.0) {
            break;
        }
    }
    z
}

/// Groups approximations closer than `cluster_tol · max(1, |z|)`.
pub fn cluster(values: &[Complex64], cluster_tol: f64) -> Vec<Cluster> {
    let n = values.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut a: usize) -> usize {
        while parent[a] != a {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        a
    }
    for i in 0..n {
        for j in i + 1..n {
            let scale = values[i].norm().max(values[j].norm()).max(1.0);
            if (values[i] - values[j]).norm() <= cluster_tol * scale {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: Vec<(usize, Complex64, usize)> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        match groups.iter_mut().find(|g| g.0 == r) {
            Some(g) => {
                g.1 += values[i];
                g.2 += 1;
            }
            None => groups.push((r, values[i], 1)),
        }
    }
    let mut out: Vec<Cluster> = groups
        .into_iter()
        .map(|(_, sum, m)| Cluster {
            value: sum / m as f64,
            multiplicity: m,
        })
        .collect();
    out.sort_by(|a, b| total_cmp(&a.value, &b.value));
    out
}

/// All complex roots of `Σ coeffs[k] s^k`, clustered at `cluster_tol`.
/// Fails when the backward error of a simple root exceeds `tol`.
pub fn all_roots(coeffs: &[Complex64], tol: f64, cluster_tol: f64) -> Result<RootSet> {
    let raw = aberth(coeffs)?;
    let mut clusters = cluster(&raw, cluster_tol);
    let mut residual = 0.0f64;
    let mut worst_simple = 0.0f64;
    for c in &mut clusters {
        if c.multiplicity == 1 {
            c.value = polish(coeffs, c.value, 8);
            let r = backward_error(coeffs, c.value);
            worst_simple = worst_simple.max(r);
            residual = residual.max(r);
        } else {
            residual = residual.max(backward_error(coeffs, c.value));
        }
    }
    if !(worst_simple <= tol) {
        return Err(Error::NonConvergence {
            worst_residual: worst_simple,
        });
    }
    clusters.sort_by(|a, b| total_cmp(&a.value, &b.value));
    Ok(RootSet {
        clusters,
        residual,
        cluster_tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: &[f64]) -> Vec<Complex64> {
        v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
    }

    #[test]
    fn simple_quadratic() {
        let rs = all_roots(&c(&[-1.0, 0.0, 1.0]), 1e-12, 1e-6).unwrap();
        assert_eq!(rs.multiplicities(), vec![1, 1]);
        let v = rs.values();
        assert!((v[0] - Complex64::new(-1.0, 0.0)).norm() < 1e-14);
        assert!((v[1] - Complex64::new(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn quadruple_root_clusters() {
        let rs = all_roots(&c(&[0.0, 0.0, 0.0, 0.0, 1.0]), 1e-12, 1e-6).unwrap();
        assert_eq!(rs.clusters.len(), 1);
        assert_eq!(rs.clusters[0].multiplicity, 4);
        assert!(rs.clusters[0].value.norm() < 1e-6);
    }

    #[test]
    fn cubic_with_golden_roots() {
        // (s - 1)(s^2 + s - 1)
        let rs = all_roots(&c(&[1.0, -2.0, 0.0, 1.0]), 1e-12, 1e-6).unwrap();
        let expected = [(-1.0 - 5f64.sqrt()) / 2.0, (-1.0 + 5f64.sqrt()) / 2.0, 1.0];
        for (r, e) in rs.values().iter().zip(expected) {
            assert!((r - Complex64::new(e, 0.0)).norm() < 1e-13, "{r} vs {e}");
        }
        assert!(rs.residual < 1e-14);
    }

    #[test]
    fn complex_roots_of_unity() {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); 7];
        coeffs[0] = Complex64::new(-1.0, 0.0);
        coeffs[6] = Complex64::new(1.0, 0.0);
        let rs = all_roots(&coeffs, 1e-12, 1e-6).unwrap();
        assert!(rs.is_simple());
        for r in rs.values() {
            assert!((r.powu(6) - 1.0).norm() < 1e-13);
        }
    }

    #[test]
    fn degenerate_inputs() {
        assert!(all_roots(&c(&[1.0, 1.0, 1e-20]), 1e-12, 1e-6).is_err());
        assert!(all_roots(&c(&[3.0]), 1e-12, 1e-6).is_err());
    }
}
