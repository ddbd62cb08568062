use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::pipeline::{curve_monodromy, frame_seed};
use super::{Hypersurface, MonodromyOptions, MonodromyResult, Verdict};
use crate::error::{Error, Result};
use crate::poly::{rank, rat, restrict_to_plane, ProjectivePoint};
use crate::seeded_rng;

/// How a verdict for a hypersurface of dimension at least 2 was reached.
#[derive(Clone, Debug, Serialize)]
pub struct SectionCertificate {
    /// The plane of the reported section, spanned by the center and two
    /// further points.
    pub plane: [ProjectivePoint; 3],
    pub planes_tried: usize,
    /// Planes whose section could be analysed.
    pub planes_used: usize,
    /// Group orders of the analysed sections, in plane order.
    pub section_orders: Vec<String>,
    /// A uniform section decides uniformity; agreement of non-uniform
    /// sections is only evidence.
    pub monte_carlo: bool,
}

#[derive(Clone, Debug)]
pub struct SectionResult {
    pub result: MonodromyResult,
    pub certificate: SectionCertificate,
}

/// Monodromy of the section of `x` by the plane through `points`, whose
/// first point must be the center.
pub fn section_monodromy_in_plane(
    x: &Hypersurface,
    points: &[ProjectivePoint; 3],
    seed: u64,
    opts: &MonodromyOptions,
) -> Result<MonodromyResult> {
    let p = &points[0];
    x.check_point(p)?;
    if x.is_singular_at(p) {
        return Err(Error::SingularCenter(p.to_string()));
    }
    let section = Hypersurface::new(restrict_to_plane(x.poly(), points)?)?;
    let q = ProjectivePoint::from_i64(&[1, 0, 0])?;
    let mut r = curve_monodromy(&section, &q, seed, opts)?;
    r.center = p.clone();
    Ok(r)
}

fn random_plane(p: &ProjectivePoint, rng: &mut impl Rng) -> [ProjectivePoint; 3] {
    let n = p.nvars();
    loop {
        let mut v = || (0..n).map(|_| rat(rng.gen_range(-5..=5))).collect::<Vec<_>>();
        let (a, b) = (v(), v());
        if rank(&[p.coords().to_vec(), a.clone(), b.clone()]) == 3 {
            return [
                p.clone(),
                ProjectivePoint::new(a).expect("rank 3"),
                ProjectivePoint::new(b).expect("rank 3"),
            ];
        }
    }
}

/// Whether a failed plane is simply unsuitable rather than a failure of
/// the run.
fn skippable(err: &Error) -> bool {
    matches!(
        err,
        Error::PlaneContained | Error::Reducible(_) | Error::NonReduced | Error::SingularCenter(_)
    ) || err.is_numeric()
}

/// Projection of a hypersurface of dimension at least 2 through seeded
/// plane sections containing the center. One uniform section proves the
/// point uniform; otherwise `trials` sections are analysed and a unanimous
/// non-uniform outcome is reported as Monte Carlo evidence.
pub fn section_monodromy(
    x: &Hypersurface,
    p: &ProjectivePoint,
    seed: u64,
    trials: usize,
    opts: &MonodromyOptions,
) -> Result<SectionResult> {
    x.check_point(p)?;
    if x.dimension() < 2 {
        return Err(Error::Dimension("plane sections need a hypersurface of dimension at least 2".into()));
    }
    if x.is_singular_at(p) {
        return Err(Error::SingularCenter(p.to_string()));
    }
    let trials = trials.max(1);
    let mut rng = seeded_rng(seed, 2);
    let planes: Vec<[ProjectivePoint; 3]> = (0..trials).map(|_| random_plane(p, &mut rng)).collect();
    let run = |k: usize| section_monodromy_in_plane(x, &planes[k], frame_seed(seed, 16 + k), opts);

    let first = run(0);
    let mut outcomes = vec![first];
    let decided = matches!(&outcomes[0], Ok(r) if r.verdict == Verdict::Uniform);
    if !decided {
        outcomes.extend((1..trials).into_par_iter().map(run).collect::<Vec<_>>());
    }

    let mut used = Vec::new();
    let mut numeric = None;
    for (k, o) in outcomes.into_iter().enumerate() {
        match o {
            Ok(r) => used.push((k, r)),
            Err(err) if skippable(&err) => {
                if err.is_numeric() {
                    numeric.get_or_insert(err);
                }
            }
            Err(err) => return Err(err),
        }
    }
    let section_orders = used.iter().map(|(_, r)| r.order().to_string()).collect();
    let planes_used = used.len();
    let pick = used
        .iter()
        .position(|(_, r)| r.verdict == Verdict::Uniform)
        .or(if used.is_empty() { None } else { Some(0) });
    let Some(i) = pick else {
        return Err(numeric.unwrap_or(Error::SectionsDegenerate(trials)));
    };
    let (k, mut result) = used.swap_remove(i);
    let monte_carlo = result.verdict == Verdict::NonUniform;
    let certificate = SectionCertificate {
        plane: planes[k].clone(),
        planes_tried: planes.len().min(if decided { 1 } else { trials }),
        planes_used,
        section_orders,
        monte_carlo,
    };
    result.degree = x.degree();
    result.seed = seed;
    result.section = Some(certificate.clone());
    Ok(SectionResult { result, certificate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::GroupClass;
    use num_bigint::BigUint;

    fn pt(c: &[i64]) -> ProjectivePoint {
        ProjectivePoint::from_i64(c).unwrap()
    }

    #[test]
    fn fermat_surface_vertex() {
        let x = Hypersurface::parse("x^4+y^4+z^4+w^4").unwrap();
        let s = section_monodromy(&x, &pt(&[1, 0, 0, 0]), 7, 5, &MonodromyOptions::default()).unwrap();
        assert_eq!(s.result.verdict, Verdict::NonUniform);
        assert!(s.certificate.monte_carlo);
        assert_eq!(s.certificate.planes_used, 5);
        assert!(s.certificate.section_orders.iter().all(|o| o == "4"));
        assert_eq!(s.result.classification.class, GroupClass::CyclicRegular);
    }

    #[test]
    fn coordinate_section_of_fermat_surface() {
        let x = Hypersurface::parse("x^4+y^4+z^4+w^4").unwrap();
        let plane = [pt(&[1, 0, 0, 0]), pt(&[0, 1, 0, 0]), pt(&[0, 0, 1, 0])];
        let r = section_monodromy_in_plane(&x, &plane, 1, &MonodromyOptions::default()).unwrap();
        assert_eq!(r.order(), &BigUint::from(4u32));
    }

    #[test]
    fn quadric_surface_is_uniform() {
        let x = Hypersurface::parse("x*w - y*z").unwrap();
        let s = section_monodromy(&x, &pt(&[1, 2, 3, 5]), 3, 5, &MonodromyOptions::default()).unwrap();
        assert_eq!(s.result.verdict, Verdict::Uniform);
        assert_eq!(s.result.covering_degree, 2);
        assert!(!s.certificate.monte_carlo);
        assert_eq!(s.certificate.planes_tried, 1);
    }

    #[test]
    fn generic_cubic_surface_is_uniform() {
        let x = Hypersurface::parse(
            "x^3 + 2*y^3 - z^3 + 3*w^3 + x*y*z - 2*x*z*w + y^2*w + 4*x^2*z - y*z*w",
        )
        .unwrap();
        let s = section_monodromy(&x, &pt(&[2, -1, 3, 1]), 11, 5, &MonodromyOptions::default()).unwrap();
        assert_eq!(s.result.order(), &BigUint::from(6u32));
        assert_eq!(s.result.verdict, Verdict::Uniform);
    }

    #[test]
    fn curves_are_not_sectioned() {
        let x = Hypersurface::parse("x^2+y^2-z^2").unwrap();
        assert!(matches!(
            section_monodromy(&x, &pt(&[0, 0, 1]), 1, 5, &MonodromyOptions::default()),
            Err(Error::Dimension(_))
        ));
    }
}
