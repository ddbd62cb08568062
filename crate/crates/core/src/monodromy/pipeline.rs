use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::branch::check_separation;
use super::{branch_points, obstacles, plan_loops, section_monodromy, setup_projection, BranchPoint};
use super::{Hypersurface, ProjectionSetup, SectionCertificate, Verdict};
use crate::error::{Error, Result};
use crate::permgroup::{classify, Classification, GeneratedGroup, GroupClass, Permutation};
use crate::poly::{ProjectivePoint, Rational};
use crate::roots::{all_roots, closure_error, loop_permutation, track_roots, NumericFamily, TrackOptions};
use crate::seeded_rng;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct MonodromyOptions {
    pub track: TrackOptions,
    /// Fresh frames tried after a numeric failure.
    pub max_reframes: usize,
    /// Base-point angles tried per frame.
    pub max_reangles: usize,
    /// Relative distance below which two branch points count as colliding.
    pub collision_tol: f64,
    /// Plane sections sampled for hypersurfaces of dimension at least 2.
    pub trials: usize,
}

impl Default for MonodromyOptions {
    fn default() -> Self {
        MonodromyOptions {
            track: TrackOptions::default(),
            max_reframes: 3,
            max_reangles: 8,
            collision_tol: 1e-9,
            trials: 5,
        }
    }
}

#[derive(Clone, Debug)]
pub struct MonodromyResult {
    pub center: ProjectivePoint,
    pub inner: bool,
    pub degree: usize,
    pub covering_degree: usize,
    /// Pencil frame `(c1, c2)` of the analysed plane curve.
    pub frame: (Vec<Rational>, Vec<Rational>),
    pub base_point: Complex64,
    pub base_fibre: Vec<Complex64>,
    /// Branch points in loop order, each with its generator.
    pub branch_points: Vec<BranchPoint>,
    pub obstacles: Vec<Complex64>,
    pub group: GeneratedGroup,
    pub classification: Classification,
    pub verdict: Verdict,
    /// The group is regular: the projection is Galois.
    pub galois: bool,
    /// Covering degree at most 2, where every covering is Galois.
    pub degenerate_galois: bool,
    /// A nontrivial block system when the group is imprimitive.
    pub decomposable_witness: Option<Vec<Vec<usize>>>,
    pub product_is_identity: bool,
    /// Largest relative mismatch between loop end roots and start roots.
    pub closure_error: f64,
    pub seed: u64,
    /// Frames and base points tried before success.
    pub attempts: usize,
    pub options: MonodromyOptions,
    /// Present when the result comes from a plane section.
    pub section: Option<SectionCertificate>,
}

impl MonodromyResult {
    pub fn generators(&self) -> Vec<Permutation> {
        self.branch_points
            .iter()
            .filter_map(|b| b.permutation.clone())
            .collect()
    }

    pub fn order(&self) -> &num_bigint::BigUint {
        self.group.order()
    }
}

/// Every generator's cycle type equals the exact fibre partition of its
/// branch point, up to refinement at singular fibres.
pub fn verify_cycle_structure(result: &MonodromyResult) -> bool {
    result
        .branch_points
        .iter()
        .all(BranchPoint::cycle_type_matches)
}

fn verdict_for(class: &Classification) -> Verdict {
    if class.class == GroupClass::Symmetric {
        Verdict::Uniform
    } else {
        Verdict::NonUniform
    }
}

/// Tracks generator loops for a prepared projection. Numeric trouble at one
/// base point moves the base point; the frame is kept.
pub fn monodromy_group(setup: &ProjectionSetup, opts: &MonodromyOptions) -> Result<MonodromyResult> {
    let e = setup.covering_degree;
    let bps = branch_points(setup, opts.collision_tol)?;
    let obst = obstacles(setup);
    let mut all: Vec<Complex64> = bps.iter().map(|b| b.t).collect();
    all.extend(&obst);
    check_separation(&all, opts.collision_tol)?;
    let family = NumericFamily::from_exact(setup.family());
    if family.degree_s() != e {
        return Err(Error::Degenerate(format!(
            "fibre family has degree {} in s, expected {e}",
            family.degree_s()
        )));
    }
    let points: Vec<Complex64> = bps.iter().map(|b| b.t).collect();
    let mut rng = seeded_rng(setup.seed, 1);
    let mut plans: Vec<_> = (0..opts.max_reangles.max(1))
        .filter_map(|_| plan_loops(&points, &obst, rng.gen::<f64>() * TAU))
        .collect();
    plans.sort_by(|a, b| b.clearance.min(1.0).total_cmp(&a.clearance.min(1.0)));
    let mut last = Error::Degenerate("every base point leaves a loop too close to a branch point".into());
    for (attempt, plan) in (1..).zip(plans) {
        let fibre = match all_roots(&family.at(plan.base), 1e-10, opts.track.cluster_tol) {
            Ok(rs) if rs.is_simple() && rs.degree() == e => rs.values(),
            Ok(_) => {
                last = Error::Degenerate("base fibre is not simple".into());
                continue;
            }
            Err(err) => {
                last = err;
                continue;
            }
        };
        let tracked: Result<Vec<_>> = plan
            .paths
            .par_iter()
            .map(|path| {
                let t = track_roots(&family, path, &fibre, &opts.track)?;
                let perm = loop_permutation(&t)?;
                let err = closure_error(&t, &perm);
                Ok((perm, err))
            })
            .collect();
        let tracked = match tracked {
            Ok(t) => t,
            Err(err) if err.is_numeric() => {
                last = err;
                continue;
            }
            Err(err) => return Err(err),
        };
        let mut ordered: Vec<BranchPoint> = Vec::with_capacity(bps.len());
        for (&i, (perm, _)) in plan.order.iter().zip(&tracked) {
            let mut b = bps[i].clone();
            b.permutation = Some(perm.clone());
            ordered.push(b);
        }
        let product = ordered
            .iter()
            .filter_map(|b| b.permutation.as_ref())
            .fold(Permutation::identity(e), |acc, p| acc.then(p));
        if !product.is_identity() {
            last = Error::Degenerate(format!("loop product is {product}, not the identity"));
            continue;
        }
        if !ordered.iter().all(BranchPoint::cycle_type_matches) {
            last = Error::Degenerate("a generator's cycle type differs from its fibre".into());
            continue;
        }
        let gens: Vec<Permutation> = ordered.iter().filter_map(|b| b.permutation.clone()).collect();
        let group = GeneratedGroup::new(e, &gens)?;
        if !group.is_transitive() {
            return Err(Error::Reducible(format!(
                "monodromy has orbits {:?}",
                orbits(&group)
            )));
        }
        let classification = classify(&group);
        let decomposable_witness = group.primitivity().1;
        return Ok(MonodromyResult {
            center: setup.center.clone(),
            inner: setup.inner,
            degree: setup.degree,
            covering_degree: e,
            frame: (setup.c1.clone(), setup.c2.clone()),
            base_point: plan.base,
            base_fibre: fibre,
            branch_points: ordered,
            obstacles: obst,
            verdict: verdict_for(&classification),
            galois: classification.flags.regular,
            degenerate_galois: e <= 2,
            decomposable_witness,
            product_is_identity: true,
            closure_error: tracked.iter().map(|(_, err)| *err).fold(0.0, f64::max),
            group,
            classification,
            seed: setup.seed,
            attempts: attempt,
            options: *opts,
            section: None,
        });
    }
    Err(last)
}

fn orbits(g: &GeneratedGroup) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.degree()];
    let mut out = Vec::new();
    for i in 0..g.degree() {
        if !seen[i] {
            let orbit = g.orbit(i);
            for &j in &orbit {
                seen[j] = true;
            }
            out.push(orbit);
        }
    }
    out
}

/// Seed of the `k`-th frame derived from a user seed.
pub(crate) fn frame_seed(seed: u64, k: usize) -> u64 {
    seed.wrapping_add((k as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// Monodromy of a plane curve with fresh frames after numeric failures.
pub(crate) fn curve_monodromy(x: &Hypersurface, p: &ProjectivePoint, seed: u64, opts: &MonodromyOptions) -> Result<MonodromyResult> {
    let mut last = None;
    for k in 0..=opts.max_reframes {
        let setup = setup_projection(x, p, frame_seed(seed, k))?;
        match monodromy_group(&setup, opts) {
            Ok(mut r) => {
                r.seed = seed;
                r.attempts += k * opts.max_reangles;
                return Ok(r);
            }
            Err(err) if err.is_numeric() => last = Some(err),
            Err(err) => return Err(err),
        }
    }
    Err(last.expect("at least one frame"))
}

/// Decides the projection from `p`: plane curves directly, higher
/// dimensions through plane sections.
pub fn analyze_point(x: &Hypersurface, p: &ProjectivePoint, seed: u64, opts: &MonodromyOptions) -> Result<MonodromyResult> {
    x.check_point(p)?;
    if x.dimension() == 1 {
        curve_monodromy(x, p, seed, opts)
    } else {
        section_monodromy(x, p, seed, opts.trials, opts).map(|s| s.result)
    }
}
