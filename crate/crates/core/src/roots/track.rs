use std::time::Instant;

use num_complex::Complex64;
use serde::Serialize;

use super::aberth::horner;
use super::Path;
use crate::error::{Error, Result};
use crate::permgroup::Permutation;
use crate::poly::UniPoly;

/// Floating-point copy of a family `g(t, s) = Σ_k c_k(t) s^k`.
#[derive(Clone, Debug)]
pub struct NumericFamily {
    /// `coeffs[k]` holds the coefficients of `c_k(t)`, low degree first.
    coeffs: Vec<Vec<Complex64>>,
}

impl NumericFamily {
    pub fn from_exact(family: &[UniPoly]) -> Self {
        NumericFamily {
            coeffs: family.iter().map(UniPoly::to_complex).collect(),
        }
    }

    pub fn degree_s(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Coefficients in `s` of `g(t, ·)`.
    pub fn at(&self, t: Complex64) -> Vec<Complex64> {
        self.coeffs.iter().map(|c| horner(c, t).0).collect()
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct TrackOptions {
    /// Relative Newton tolerance.
    pub tol: f64,
    /// Trajectories closer than `delta_min · max(1, |s|)` force a smaller step.
    pub delta_min: f64,
    /// Tolerance for matching end roots to start roots.
    pub cluster_tol: f64,
    /// Newton iterations allowed per step before the step is halved.
    pub max_newton: usize,
    /// First step, as a fraction of the current piece.
    pub initial_step: f64,
    pub max_step: f64,
    pub min_step: f64,
    /// Keep every accepted step in [`TrackedPath::samples`].
    pub keep_samples: bool,
    /// Tracking stops with [`Error::Timeout`] past this instant.
    #[serde(skip)]
    pub deadline: Option<Instant>,
}

impl Default for TrackOptions {
    fn default() -> Self {
        TrackOptions {
            tol: 1e-12,
            delta_min: 1e-6,
            cluster_tol: 1e-6,
            max_newton: 3,
            initial_step: 1.0 / 32.0,
            max_step: 0.125,
            min_step: 1e-12,
            keep_samples: false,
            deadline: None,
        }
    }
}

/// Result of continuing a fibre along a path.
#[derive(Clone, Debug)]
pub struct TrackedPath {
    pub path: Path,
    pub start: Vec<Complex64>,
    pub end: Vec<Complex64>,
    /// `(t, roots)` after each accepted step, when requested.
    pub samples: Vec<(Complex64, Vec<Complex64>)>,
    pub steps: usize,
    pub rejected_steps: usize,
    /// Smallest separation between trajectories seen at an accepted step.
    pub min_separation: f64,
    pub cluster_tol: f64,
}

fn newton(coeffs: &[Complex64], mut z: Complex64, tol: f64, max_iter: usize) -> Option<(Complex64, usize)> {
    for k in 1..=max_iter {
        let (p, dp) = horner(coeffs, z);
        let dz = p / dp;
        if !dz.is_finite() {
            return None;
        }
        z -= dz;
        if dz.norm() <= tol * z.norm().max(1.0) {
            return Some((z, k));
        }
    }
    None
}

fn separations(z: &[Complex64]) -> Vec<f64> {
    (0..z.len())
        .map(|i| {
            (0..z.len())
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).norm())
                .fold(f64::INFINITY, f64::min)
        })
        .collect()
}

/// One corrector attempt at parameter `t`; `None` asks for a smaller step.
fn corrector(
    family: &NumericFamily,
    t: Complex64,
    z: &[Complex64],
    sep: &[f64],
    opts: &TrackOptions,
) -> Option<(Vec<Complex64>, usize)> {
    let coeffs = family.at(t);
    let mut out = Vec::with_capacity(z.len());
    let mut worst = 0;
    for (i, &zi) in z.iter().enumerate() {
        let (w, k) = newton(&coeffs, zi, opts.tol, opts.max_newton)?;
        if (w - zi).norm() >= 0.3 * sep[i] {
            return None;
        }
        worst = worst.max(k);
        out.push(w);
    }
    let scale = out.iter().fold(1.0f64, |m, w| m.max(w.norm()));
    let min_sep = separations(&out).into_iter().fold(f64::INFINITY, f64::min);
    if min_sep < opts.delta_min * scale {
        return None;
    }
    Some((out, worst))
}

/// Continues the simple roots `start` of `g(path.start(), s)` along `path`
/// with a zero-order predictor and a Newton corrector. The step is halved
/// when Newton is slow, when a root moves too far relative to its
/// neighbours, or when two trajectories come within `delta_min`.
pub fn track_roots(
    family: &NumericFamily,
    path: &Path,
    start: &[Complex64],
    opts: &TrackOptions,
) -> Result<TrackedPath> {
    let e = family.degree_s();
    if start.len() != e {
        return Err(Error::Dimension(format!(
            "{} start roots for a family of degree {e}",
            start.len()
        )));
    }
    let coeffs = family.at(path.start());
    let mut z: Vec<Complex64> = Vec::with_capacity(e);
    for &s in start {
        let (w, _) = newton(&coeffs, s, opts.tol, 8)
            .ok_or_else(|| Error::PathFailure("start root does not converge".into()))?;
        z.push(w);
    }
    let start_roots = z.clone();
    let mut samples = Vec::new();
    if opts.keep_samples {
        samples.push((path.start(), z.clone()));
    }
    let mut steps = 0;
    let mut rejected = 0;
    let mut min_separation = separations(&z).into_iter().fold(f64::INFINITY, f64::min);
    for piece in path.pieces() {
        let mut u = 0.0;
        let mut h = opts.initial_step;
        while u < 1.0 {
            if opts.deadline.is_some_and(|d| Instant::now() >= d) {
                return Err(Error::Timeout);
            }
            let next = (u + h).min(1.0);
            let t = piece.at(next);
            let sep = separations(&z);
            match corrector(family, t, &z, &sep, opts) {
                Some((w, iterations)) => {
                    z = w;
                    u = next;
                    steps += 1;
                    min_separation =
                        min_separation.min(separations(&z).into_iter().fold(f64::INFINITY, f64::min));
                    if opts.keep_samples {
                        samples.push((t, z.clone()));
                    }
                    let grow = if iterations <= 2 { 2.0 } else { 1.25 };
                    h = (grow * h).min(opts.max_step);
                }
                None => {
                    rejected += 1;
                    h /= 2.0;
                    if h < opts.min_step {
                        return Err(Error::PathFailure(format!(
                            "step size underflow near t = {:.6}{:+.6}i",
                            t.re, t.im
                        )));
                    }
                }
            }
        }
    }
    let coeffs = family.at(path.end());
    let end = z
        .iter()
        .map(|&w| newton(&coeffs, w, 1e-15, 4).map_or(w, |(v, _)| v))
        .collect();
    Ok(TrackedPath {
        path: path.clone(),
        start: start_roots,
        end,
        samples,
        steps,
        rejected_steps: rejected,
        min_separation,
        cluster_tol: opts.cluster_tol,
    })
}

/// Permutation of a closed path: trajectory `i` ends at start root `σ(i)`.
pub fn loop_permutation(tracked: &TrackedPath) -> Result<Permutation> {
    if !tracked.path.is_closed() {
        return Err(Error::AmbiguousMatching("path is not closed".into()));
    }
    let mut images = Vec::with_capacity(tracked.end.len());
    let mut taken = vec![false; tracked.start.len()];
    for (i, w) in tracked.end.iter().enumerate() {
        let (j, dist) = tracked
            .start
            .iter()
            .enumerate()
            .map(|(j, s)| (j, (w - s).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("nonempty fibre");
        if dist > tracked.cluster_tol * w.norm().max(1.0) {
            return Err(Error::AmbiguousMatching(format!(
                "trajectory {i} ends {dist:e} away from every start root"
            )));
        }
        if taken[j] {
            return Err(Error::AmbiguousMatching(format!(
                "two trajectories end at start root {j}"
            )));
        }
        taken[j] = true;
        images.push(j);
    }
    Permutation::new(images)
}

/// Largest relative distance between an end root and the start root it is
/// matched to.
pub fn closure_error(tracked: &TrackedPath, perm: &Permutation) -> f64 {
    tracked
        .end
        .iter()
        .enumerate()
        .map(|(i, w)| (w - tracked.start[perm.image(i)]).norm() / w.norm().max(1.0))
        .fold(0.0, f64::max)
}
