use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::{classify_line, IntersectionProfile, LineClass};
use crate::error::{Error, Result};
use crate::monodromy::{candidate_frames, line_at_infinity_is_generic, simple_roots, Hypersurface};
use crate::pencil::{LineFamily, LineProfile};
use crate::poly::{discriminant_in_s, fmt_rational, ProjectivePoint, Rational, UniPoly};
use crate::roots::total_cmp;

fn serialize_opt_rational<S: serde::Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.serialize_some(&fmt_rational(q)),
        None => s.serialize_none(),
    }
}

fn serialize_rationals<S: serde::Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(fmt_rational))
}

/// A special line through the center of a pencil.
#[derive(Clone, Debug, Serialize)]
pub struct TangencyRecord {
    /// Pencil parameter of the line.
    pub t: Complex64,
    #[serde(serialize_with = "serialize_opt_rational")]
    pub exact_t: Option<Rational>,
    /// A second point of the line, `c1 + t·c2`.
    pub direction: Vec<Complex64>,
    /// The line lies on the hypersurface; such lines are never in `V_P`.
    pub contained: bool,
    pub profile: Option<IntersectionProfile>,
    /// `m_P − 1` when the center is on the hypersurface.
    pub center_contribution: usize,
    pub beta: usize,
    /// Contact order of the line away from the center.
    pub beta_minus_p: usize,
    /// Total contact `Σ (m − 1)` of the fibre of the projection from the
    /// center over this line; at least 2 on every line whose generator
    /// can be a non-transposition.
    pub fibre_contact: usize,
    pub in_v_p: bool,
    pub class: Option<LineClass>,
}

/// Special lines through one center in a seeded frame.
#[derive(Clone, Debug, Serialize)]
pub struct PencilTangency {
    pub center: ProjectivePoint,
    pub center_multiplicity: u32,
    #[serde(serialize_with = "serialize_rationals")]
    pub c1: Vec<Rational>,
    #[serde(serialize_with = "serialize_rationals")]
    pub c2: Vec<Rational>,
    pub records: Vec<TangencyRecord>,
}

impl PencilTangency {
    /// Lines of `V_P`.
    pub fn v_p(&self) -> impl Iterator<Item = &TangencyRecord> {
        self.records.iter().filter(|r| r.in_v_p)
    }

    pub fn v_p_count(&self) -> usize {
        self.v_p().count()
    }
}

/// Pencil through `p` whose special lines are the roots of the returned
/// modulus: tangent lines away from `p`, lines tangent to the curve at `p`
/// (the tangent cone when `p` is singular) and lines lying on the curve.
fn tangency_pencil(x: &Hypersurface, p: &ProjectivePoint, seed: u64) -> Result<(Vec<Rational>, Vec<Rational>, LineFamily, UniPoly)> {
    let f = x.poly();
    let mult = x.multiplicity_at(p) as usize;
    let e = x.degree() - mult;
    if e == 0 {
        return Err(Error::Precondition(format!(
            "every line through {p} meets the curve only there"
        )));
    }
    for (c1, c2) in candidate_frames(p, seed) {
        let lines = LineFamily::pencil(f, p, &c1, &c2)?;
        if lines.leading().is_zero() || !line_at_infinity_is_generic(f, p, &c2, e)? {
            continue;
        }
        let content = lines.content();
        let reduced: Vec<UniPoly> = lines
            .family()
            .iter()
            .map(|c| c.div_exact(&content).expect("content divides every coefficient"))
            .collect();
        let disc = discriminant_in_s(&reduced, e)?;
        let lead = reduced.get(e).cloned().unwrap_or_else(UniPoly::zero);
        let modulus = (&(&lead * &disc.squarefree) * &content).squarefree_part();
        return Ok((c1, c2, lines, modulus));
    }
    Err(Error::Degenerate("no admissible frame for the pencil".into()))
}

fn is_special(profile: &LineProfile) -> bool {
    profile.contained
        || profile.beta_without_center() >= 1
        || profile
            .center_class()
            .is_some_and(|c| c.multiplicity > c.point_multiplicity.unwrap_or(1) as usize)
}

fn record(lines: &LineFamily, profile: &LineProfile, t: Complex64, exact_t: Option<Rational>) -> Result<TangencyRecord> {
    let direction = lines.base_at(t);
    if profile.contained {
        return Ok(TangencyRecord {
            t,
            exact_t,
            direction,
            contained: true,
            profile: None,
            center_contribution: 0,
            beta: 0,
            beta_minus_p: 0,
            fibre_contact: 0,
            in_v_p: false,
            class: None,
        });
    }
    let ip = IntersectionProfile::from_exact(lines, profile, t)?;
    let beta = profile.beta();
    let beta_minus_p = profile.beta_without_center();
    let class = if beta > 1 { classify_line(&ip) } else { None };
    Ok(TangencyRecord {
        t,
        exact_t,
        direction,
        contained: false,
        profile: Some(ip),
        center_contribution: profile.center_class().map_or(0, |c| c.multiplicity - 1),
        beta,
        beta_minus_p,
        fibre_contact: profile.fibre_partition().iter().map(|m| m - 1).sum(),
        in_v_p: beta_minus_p > 1,
        class,
    })
}

/// Every line through `p` that is tangent to the curve away from `p`, is
/// tangent at `p` itself, or lies on the curve. `p` may be any point,
/// singular points included.
pub fn lines_through(x: &Hypersurface, p: &ProjectivePoint, seed: u64) -> Result<PencilTangency> {
    x.check_point(p)?;
    if x.dimension() != 1 {
        return Err(Error::Dimension("tangent lines are enumerated on plane curves".into()));
    }
    let (c1, c2, lines, modulus) = tangency_pencil(x, p, seed)?;
    let mut jobs = Vec::new();
    if !modulus.is_constant() {
        for (factor, profile) in lines.profiles(&modulus, true) {
            if !is_special(&profile) {
                continue;
            }
            for (t, exact) in simple_roots(&factor)? {
                jobs.push((t, exact, profile.clone()));
            }
        }
    }
    let mut records = jobs
        .into_par_iter()
        .map(|(t, exact, profile)| record(&lines, &profile, t, exact))
        .collect::<Result<Vec<_>>>()?;
    records.sort_by(|a, b| total_cmp(&a.t, &b.t));
    Ok(PencilTangency {
        center: p.clone(),
        center_multiplicity: lines.center_multiplicity(),
        c1,
        c2,
        records,
    })
}

/// Tangent and multitangent lines through a point that is off the curve
/// or smooth on it, with the `V_P` subset flagged.
pub fn multitangent_lines_through(x: &Hypersurface, p: &ProjectivePoint, seed: u64) -> Result<PencilTangency> {
    x.check_point(p)?;
    if x.is_singular_at(p) {
        return Err(Error::SingularCenter(p.to_string()));
    }
    lines_through(x, p, seed)
}
