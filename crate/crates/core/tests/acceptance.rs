//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit status
//! if any criterion fails.

use std::collections::HashSet;
use std::f64::consts::TAU;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use galpoint::fixtures::{self, load};
use galpoint::monodromy::{
    analyze_point, branch_points, obstacles, plan_loops, section_monodromy, setup_projection, verify_cycle_structure,
    Hypersurface, MonodromyOptions, MonodromyResult, Verdict,
};
use galpoint::permgroup::{GeneratedGroup, GroupClass, Permutation};
use galpoint::poly::{tangent_cone, to_complex, ProjectivePoint};
use galpoint::roots::{all_roots, loop_permutation, track_roots, NumericFamily, TrackOptions};
use galpoint::scan::{scan_region, ScanOptions, ScanRegion, ScanReport};
use galpoint::tangency::{lines_through, multitangent_lines_through, tangent_cone_section_check, LineClass};

/// Closed-loop endpoint tolerance.
const CLOSURE_TOL: f64 = 1e-8;

type Outcome = Result<String, String>;

fn pt(c: &[i64]) -> ProjectivePoint {
    ProjectivePoint::from_i64(c).unwrap()
}

fn analyze(x: &Hypersurface, p: &ProjectivePoint, seed: u64) -> MonodromyResult {
    analyze_point(x, p, seed, &MonodromyOptions::default()).unwrap_or_else(|e| panic!("{p}: {e}"))
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn product_of_generators(r: &MonodromyResult) -> Permutation {
    r.generators()
        .iter()
        .fold(Permutation::identity(r.covering_degree), |acc, g| acc.then(g))
}

/// Runs used by several criteria: curves and centers with known behaviour.
fn fixture_runs() -> Vec<(String, MonodromyResult)> {
    let cases: &[(&str, &[i64])] = &[
        (fixtures::CIRCLE, &[0, 0, 1]),
        (fixtures::CIRCLE, &[3, 4, 5]),
        (fixtures::FERMAT_QUARTIC, &[1, 0, 0]),
        (fixtures::FERMAT_QUARTIC, &[1, 1, 0]),
        (fixtures::FERMAT_QUARTIC, &[1, 1, 1]),
        (fixtures::SMOOTH_CUBIC, &[3, 7, 2]),
        (fixtures::SMOOTH_CUBIC, &[1, -1, 0]),
        (fixtures::NODAL_CUBIC, &[2, 5, 3]),
        (fixtures::NODAL_QUARTIC, &[3, 7, 2]),
        (fixtures::TWO_NODE_QUARTIC, &[2, -3, 5]),
    ];
    cases
        .iter()
        .map(|(f, p)| {
            let x = load(f);
            let p = pt(p);
            (format!("{f} from {p}"), analyze(&x, &p, 11))
        })
        .collect()
}

// 1
fn fermat_galois_points() -> Outcome {
    let x = load(fixtures::FERMAT_QUARTIC);
    let mut slowest = Duration::ZERO;
    for (k, v) in [[1, 0, 0], [0, 1, 0], [0, 0, 1]].iter().enumerate() {
        let p = pt(v);
        let start = Instant::now();
        let r = analyze(&x, &p, 1 + k as u64);
        slowest = slowest.max(start.elapsed());
        ensure(r.order() == &BigUint::from(4u32), || format!("{p}: order {}", r.order()))?;
        ensure(r.classification.class == GroupClass::CyclicRegular, || format!("{p}: {}", r.classification.class))?;
        ensure(r.classification.flags.regular && r.galois, || format!("{p}: not regular"))?;
        ensure(r.verdict == Verdict::NonUniform, || format!("{p}: uniform"))?;
        ensure(r.branch_points.len() == 4, || format!("{p}: {} branch points", r.branch_points.len()))?;
        for b in &r.branch_points {
            ensure(b.partition == vec![4], || format!("{p}: partition {:?}", b.partition))?;
            ensure(b.cycle_type() == Some(vec![4]), || format!("{p}: generator {:?}", b.permutation))?;
            // the fibre over a line is s^4 = −(u^4 + v^4) in the two other
            // coordinates (u, v) of the line's second point c1 + t·c2
            let (c1, c2) = (&r.frame.0, &r.frame.1);
            let others: Vec<usize> = (0..3).filter(|&i| i != k).collect();
            let coord = |i: usize| to_complex(&c1[i]) + b.t * to_complex(&c2[i]);
            let value = coord(others[0]).powu(4) + coord(others[1]).powu(4);
            let scale = coord(others[0]).norm().powi(4) + coord(others[1]).norm().powi(4);
            ensure(value.norm() < 1e-8 * scale.max(1.0), || format!("{p}: u^4 + v^4 = {value} at t = {}", b.t))?;
        }
    }
    ensure(slowest < Duration::from_secs(1), || format!("slowest vertex took {slowest:?}"))?;
    Ok(format!("3 vertices, order 4 cyclic regular, slowest {slowest:.2?}"))
}

// 2
fn generic_quartics() -> Outcome {
    let mut slowest = Duration::ZERO;
    for seed in 0..20u64 {
        let x = fixtures::random_plane_curve(4, seed);
        let p = fixtures::random_outer_point(&x, seed);
        let start = Instant::now();
        let r = analyze(&x, &p, seed);
        slowest = slowest.max(start.elapsed());
        let setup = setup_projection(&x, &p, seed).map_err(|e| e.to_string())?;
        let disc = &setup.discriminant;
        ensure(disc.discriminant.degree() == Some(12), || format!("seed {seed}: discriminant degree {:?}", disc.discriminant.degree()))?;
        ensure(disc.squarefree.degree() == Some(12), || format!("seed {seed}: discriminant not squarefree"))?;
        ensure(r.branch_points.len() == 12, || format!("seed {seed}: {} branch points", r.branch_points.len()))?;
        // second route: tangent lines through the center
        let lines = multitangent_lines_through(&x, &p, seed).map_err(|e| e.to_string())?;
        ensure(lines.records.len() == 12 && lines.records.iter().all(|l| l.beta == 1), || {
            format!("seed {seed}: {} tangent lines", lines.records.len())
        })?;
        ensure(r.branch_points.iter().all(|b| b.partition == vec![2, 1, 1]), || format!("seed {seed}: partitions"))?;
        ensure(r.order() == &BigUint::from(24u32), || format!("seed {seed}: order {}", r.order()))?;
        ensure(r.verdict == Verdict::Uniform, || format!("seed {seed}: non-uniform"))?;
    }
    ensure(slowest < Duration::from_secs(5), || format!("slowest quartic took {slowest:?}"))?;
    Ok(format!("20 quartics, 12 simple branch points each, S4, slowest {slowest:.2?}"))
}

// 3
fn cycle_structure(runs: &[(String, MonodromyResult)]) -> Outcome {
    for (name, r) in runs {
        ensure(verify_cycle_structure(r), || format!("{name}: cycle types"))?;
        ensure(product_of_generators(r).is_identity(), || format!("{name}: product is not the identity"))?;
    }
    Ok(format!("{} fixture runs", runs.len()))
}

fn scan_with_cross_check(f: &str, region: ScanRegion, seed: u64) -> ScanReport {
    let opts = ScanOptions {
        cross_check: 1.0,
        ..ScanOptions::default()
    };
    scan_region(&load(f), &region, seed, &opts).unwrap_or_else(|e| panic!("{f}: {e}"))
}

// 4
fn multitangent_lemma() -> Outcome {
    let mut conic = ScanRegion::grid(Some(2), "-10:10:21".parse().unwrap());
    conic.inner = 50;
    let mut quartic = ScanRegion::grid(None, "-1:1:3".parse().unwrap());
    quartic.random = 6;
    let reports = [
        scan_with_cross_check(fixtures::CIRCLE, conic, 1),
        scan_with_cross_check(fixtures::SMOOTH_CUBIC, ScanRegion::grid(Some(2), "-3:3:7".parse().unwrap()), 2),
        scan_with_cross_check(fixtures::FERMAT_QUARTIC, quartic, 3),
        scan_with_cross_check(fixtures::NODAL_QUARTIC, ScanRegion::grid(None, "-1:1:3".parse().unwrap()), 4),
    ];
    let mut checked = 0;
    let mut non_uniform = 0;
    for report in &reports {
        ensure(report.summary.failed == 0 && report.summary.undecided == 0, || format!("{}: {:?}", report.polynomial, report.summary))?;
        for r in &report.records {
            if r.is_non_uniform() {
                non_uniform += 1;
                ensure(r.v_p.is_some_and(|v| v >= 2), || format!("{} at {}: |V_P| = {:?}", report.polynomial, r.point, r.v_p))?;
            }
            if let Some(c) = &r.cross_check {
                checked += 1;
                ensure(c.sound && c.error.is_none(), || format!("{} at {}: cross-check {c:?}", report.polynomial, r.point))?;
            }
        }
    }
    ensure(checked >= 500, || format!("only {checked} rejected points cross-checked"))?;
    Ok(format!("{non_uniform} non-uniform points all with |V_P| >= 2, {checked} rejected points cross-checked, 0 violations"))
}

// 5
fn conic_scan() -> Outcome {
    let mut region = ScanRegion::grid(Some(2), "-10:10:21".parse().unwrap());
    region.inner = 50;
    let report = scan_region(&load(fixtures::CIRCLE), &region, 5, &ScanOptions::default()).map_err(|e| e.to_string())?;
    let inner = report.records.iter().filter(|r| r.kind == galpoint::scan::PointKind::Inner).count();
    ensure(report.summary.points == 491, || format!("{} points", report.summary.points))?;
    ensure(inner == 54, || format!("{inner} inner points"))?;
    ensure(report.non_uniform.is_empty(), || format!("W = {:?}", report.non_uniform))?;
    ensure(report.records.iter().all(|r| r.verdict == Some(Verdict::Uniform)), || "a point without a uniform verdict".into())?;
    Ok("491 points (441 grid, 50 sampled inner), W empty".into())
}

// 6
fn seed_invariance() -> Outcome {
    let cases: &[(&str, &[i64])] = &[
        (fixtures::CIRCLE, &[0, 0, 1]),
        (fixtures::CIRCLE, &[3, 4, 5]),
        (fixtures::FERMAT_QUARTIC, &[1, 0, 0]),
        (fixtures::FERMAT_QUARTIC, &[1, 1, 0]),
        (fixtures::FERMAT_QUARTIC, &[1, 1, 1]),
        (fixtures::SMOOTH_CUBIC, &[3, 7, 2]),
        (fixtures::SMOOTH_CUBIC, &[1, -1, 0]),
        (fixtures::NODAL_CUBIC, &[2, 5, 3]),
        (fixtures::NODAL_QUARTIC, &[3, 7, 2]),
        (fixtures::QUADRIC_SURFACE, &[1, 2, 3, 5]),
    ];
    for (f, p) in cases {
        let x = load(f);
        let p = pt(p);
        let (a, b) = (analyze(&x, &p, 101), analyze(&x, &p, 202));
        ensure(a.frame != b.frame || x.dimension() > 1, || format!("{f} from {p}: seeds gave the same frame"))?;
        ensure(a.order() == b.order(), || format!("{f} from {p}: orders {} and {}", a.order(), b.order()))?;
        ensure(a.classification.class == b.classification.class, || format!("{f} from {p}: classes differ"))?;
        ensure(a.verdict == b.verdict, || format!("{f} from {p}: verdicts differ"))?;
    }
    Ok(format!("{} fixtures, seeds 101 and 202", cases.len()))
}

fn closure_order(degree: usize, gens: &[Permutation]) -> usize {
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let id = Permutation::identity(degree);
    let mut frontier = vec![id.clone()];
    seen.insert(id.images().to_vec());
    while let Some(g) = frontier.pop() {
        for s in gens {
            let h = g.then(s);
            if seen.insert(h.images().to_vec()) {
                frontier.push(h);
            }
        }
    }
    seen.len()
}

// 7
fn bsgs_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut largest = 0;
    for case in 0..50 {
        let degree = rng.gen_range(2..=7);
        let count = rng.gen_range(1..=3);
        let gens: Vec<Permutation> = (0..count)
            .map(|_| {
                let mut images: Vec<usize> = (0..degree).collect();
                for i in (1..degree).rev() {
                    images.swap(i, rng.gen_range(0..=i));
                }
                Permutation::new(images).unwrap()
            })
            .collect();
        let group = GeneratedGroup::new(degree, &gens).map_err(|e| e.to_string())?;
        let brute = closure_order(degree, &gens);
        largest = largest.max(brute);
        ensure(group.order() == &BigUint::from(brute), || format!("case {case}: {} vs {brute}", group.order()))?;
    }
    Ok(format!("50 generator sets, largest order {largest}"))
}

// 8
fn tangent_cone_lemma() -> Outcome {
    let node = pt(&[0, 0, 1]);
    let mut checked = 0;
    for (f, expected) in [(fixtures::NODAL_CUBIC, 2), (fixtures::CUSPIDAL_CUBIC, 1)] {
        let x = load(f);
        // cone lines through the point are the lines of class C4 in the pencil
        let lines = lines_through(&x, &node, 3).map_err(|e| e.to_string())?;
        let cone: Vec<_> = lines.records.iter().filter(|r| r.class == Some(LineClass::C4)).collect();
        ensure(cone.len() == expected, || format!("{f}: {} cone lines", cone.len()))?;
        let tc = tangent_cone(x.poly(), &node).map_err(|e| e.to_string())?;
        for r in cone {
            let t = r.exact_t.clone().ok_or_else(|| format!("{f}: irrational cone line"))?;
            let dir: Vec<_> = lines.c1.iter().zip(&lines.c2).map(|(a, b)| a + &t * b).collect();
            let dir = ProjectivePoint::new(dir).map_err(|e| e.to_string())?;
            ensure(tc.contains_direction(&dir), || format!("{f}: {dir} not in the cone"))?;
            for seed in 0..3 {
                let ok = tangent_cone_section_check(&x, &node, None, &dir, seed).map_err(|e| e.to_string())?;
                ensure(ok, || format!("{f}: section check fails for {dir}"))?;
                checked += 1;
            }
        }
    }
    // hand oracle: y^2 − x^2 and y^2 are the cones of the two cubics at the origin
    let nodal = load(fixtures::NODAL_CUBIC);
    for dir in [pt(&[1, 1, 0]), pt(&[1, -1, 0])] {
        ensure(tangent_cone_section_check(&nodal, &node, None, &dir, 9).map_err(|e| e.to_string())?, || format!("{dir}"))?;
    }
    Ok(format!("{checked} section checks on 3 cone lines"))
}

fn reversal_check(x: &Hypersurface, p: &ProjectivePoint, seed: u64) -> Result<(usize, f64), String> {
    let setup = setup_projection(x, p, seed).map_err(|e| e.to_string())?;
    let bps = branch_points(&setup, 1e-9).map_err(|e| e.to_string())?;
    let points: Vec<Complex64> = bps.iter().map(|b| b.t).collect();
    let obst = obstacles(&setup);
    let family = NumericFamily::from_exact(setup.family());
    let opts = TrackOptions::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let plan = (0..16)
        .find_map(|_| plan_loops(&points, &obst, rng.gen::<f64>() * TAU))
        .ok_or("no loop plan")?;
    let fibre = all_roots(&family.at(plan.base), 1e-10, 1e-6).map_err(|e| e.to_string())?.values();
    let mut worst = 0.0f64;
    for path in &plan.paths {
        let forward = track_roots(&family, path, &fibre, &opts).map_err(|e| e.to_string())?;
        let backward = track_roots(&family, &path.reversed(), &fibre, &opts).map_err(|e| e.to_string())?;
        let (sigma, tau) = (
            loop_permutation(&forward).map_err(|e| e.to_string())?,
            loop_permutation(&backward).map_err(|e| e.to_string())?,
        );
        ensure(tau == sigma.inverse(), || format!("{p}: reversed loop gives {tau}, forward {sigma}"))?;
        for tracked in [&forward, &backward] {
            let perm = loop_permutation(tracked).map_err(|e| e.to_string())?;
            for (i, end) in tracked.end.iter().enumerate() {
                let start = tracked.start[perm.image(i)];
                worst = worst.max((end - start).norm() / start.norm().max(1.0));
            }
        }
    }
    Ok((plan.paths.len(), worst))
}

// 9
fn root_tracking(runs: &[(String, MonodromyResult)]) -> Outcome {
    let mut worst = 0.0f64;
    for (name, r) in runs {
        ensure(r.closure_error <= CLOSURE_TOL, || format!("{name}: closure error {:e}", r.closure_error))?;
        worst = worst.max(r.closure_error);
    }
    let mut loops = 0;
    let cases = [
        (load(fixtures::CIRCLE), pt(&[0, 0, 1])),
        (load(fixtures::FERMAT_QUARTIC), pt(&[1, 0, 0])),
        (load(fixtures::SMOOTH_CUBIC), pt(&[3, 7, 2])),
        (load(fixtures::NODAL_QUARTIC), pt(&[3, 7, 2])),
        (fixtures::random_plane_curve(4, 0), fixtures::random_outer_point(&fixtures::random_plane_curve(4, 0), 0)),
    ];
    for (x, p) in &cases {
        let (n, err) = reversal_check(x, p, 5)?;
        ensure(err <= CLOSURE_TOL, || format!("{p}: endpoint mismatch {err:e}"))?;
        loops += n;
        worst = worst.max(err);
    }
    Ok(format!("worst endpoint mismatch {worst:.1e}, {loops} loops reversed to inverse permutations"))
}

// 10
fn surface_sections() -> Outcome {
    let start = Instant::now();
    let opts = MonodromyOptions::default();
    let fermat = load(fixtures::FERMAT_QUARTIC_SURFACE);
    let s = section_monodromy(&fermat, &pt(&[1, 0, 0, 0]), 7, 5, &opts).map_err(|e| e.to_string())?;
    ensure(s.certificate.planes_used == 5, || format!("{} planes used", s.certificate.planes_used))?;
    ensure(s.certificate.section_orders.iter().all(|o| o == "4"), || format!("orders {:?}", s.certificate.section_orders))?;
    ensure(s.result.verdict == Verdict::NonUniform && s.certificate.monte_carlo, || "Fermat surface verdict".into())?;
    ensure(s.result.classification.class == GroupClass::CyclicRegular, || format!("class {}", s.result.classification.class))?;
    let fermat_time = start.elapsed();
    let cubic = load(fixtures::CUBIC_SURFACE);
    let p = pt(&[2, -1, 3, 1]);
    ensure(!cubic.contains(&p), || "center on the cubic".into())?;
    let c = section_monodromy(&cubic, &p, 11, 5, &opts).map_err(|e| e.to_string())?;
    ensure(c.result.verdict == Verdict::Uniform, || "cubic surface non-uniform".into())?;
    ensure(c.result.order() == &BigUint::from(6u32), || format!("cubic order {}", c.result.order()))?;
    ensure(c.certificate.planes_tried == 1, || format!("{} planes tried", c.certificate.planes_tried))?;
    let total = start.elapsed();
    ensure(total < Duration::from_secs(10), || format!("took {total:?}"))?;
    Ok(format!("Fermat 5/5 planes order 4 ({fermat_time:.2?}), cubic S3 on the first plane, total {total:.2?}"))
}

fn run(n: usize, title: &str, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|panic| {
        let msg = panic
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    let elapsed = start.elapsed();
    match &outcome {
        Ok(detail) => println!("criterion {n:>2} PASS  {title}: {detail} [{elapsed:.2?}]"),
        Err(detail) => println!("criterion {n:>2} FAIL  {title}: {detail} [{elapsed:.2?}]"),
    }
    outcome.is_ok()
}

fn main() {
    let runs = fixture_runs();
    let results = [
        run(1, "Fermat quartic Galois points", fermat_galois_points),
        run(2, "generic quartic uniformity", generic_quartics),
        run(3, "cycle structure and product relation", || cycle_structure(&runs)),
        run(4, "two multitangent lines", multitangent_lemma),
        run(5, "conic scan", conic_scan),
        run(6, "seed invariance", seed_invariance),
        run(7, "Schreier-Sims against closure", bsgs_oracle),
        run(8, "tangent cone sections", tangent_cone_lemma),
        run(9, "root tracking", || root_tracking(&runs)),
        run(10, "surface sections", surface_sections),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
