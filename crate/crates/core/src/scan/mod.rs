//! Scans for non-uniform and Galois points over a region of candidate
//! centers. Each point is first screened by counting lines through it that
//! could carry a non-transposition generator; points with at most one such
//! line are uniform without any path tracking. The rest are certified by
//! monodromy.

mod region;

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::monodromy::{analyze_point, Hypersurface, MonodromyOptions, Verdict};
use crate::permgroup::{factorial, GroupClass};
use crate::poly::ProjectivePoint;
use crate::report::{input_hash, TOOL_VERSION};
use crate::seeded_rng;
use crate::tangency::multitangent_lines_through;

pub use region::{region_points, GridSpec, PointFilter, PointKind, ScanRegion};

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ScanOptions {
    pub monodromy: MonodromyOptions,
    /// Per-point time budget in seconds; points over budget are undecided.
    pub time_cap: f64,
    /// Fraction of prefilter-rejected points re-run through monodromy.
    pub cross_check: f64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            monodromy: MonodromyOptions::default(),
            time_cap: 5.0,
            cross_check: 0.05,
        }
    }
}

/// Outcome of the line-count screen at one point of a plane curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Prefilter {
    pub pass: bool,
    /// `|V_P|`.
    pub v_p: usize,
    /// Lines whose fibre has total contact at least 2.
    pub multitangent: usize,
    pub covering_degree: usize,
}

/// Screens `p` on a plane curve. A non-uniform point has at least two
/// lines through it whose fibres have total contact at least 2, since a
/// line of contact 1 gives a transposition or nothing. Fewer such lines
/// certify `p` uniform. For points off the curve these are exactly the
/// lines of `V_P`.
pub fn prefilter_point(x: &Hypersurface, p: &ProjectivePoint, seed: u64) -> Result<Prefilter> {
    let lines = multitangent_lines_through(x, p, seed)?;
    let multitangent = lines.records.iter().filter(|r| r.fibre_contact >= 2).count();
    Ok(Prefilter {
        pass: multitangent >= 2,
        v_p: lines.v_p_count(),
        multitangent,
        covering_degree: x.degree() - lines.center_multiplicity as usize,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PointStatus {
    /// Uniform by the prefilter.
    Rejected,
    /// Decided by monodromy.
    Certified,
    /// Over the time budget.
    Undecided,
    Failed,
    /// Singular points of the hypersurface are not centers.
    Skipped,
}

/// Monodromy re-run on a prefilter-rejected point.
#[derive(Clone, Debug, Serialize)]
pub struct CrossCheck {
    pub verdict: Option<Verdict>,
    /// The run did not contradict the prefilter.
    pub sound: bool,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanRecord {
    pub point: ProjectivePoint,
    pub kind: PointKind,
    pub status: PointStatus,
    pub covering_degree: Option<usize>,
    pub v_p: Option<usize>,
    pub multitangent: Option<usize>,
    pub verdict: Option<Verdict>,
    pub order: Option<String>,
    pub class: Option<GroupClass>,
    pub galois: Option<bool>,
    pub degenerate_galois: bool,
    pub monte_carlo: bool,
    pub cross_check: Option<CrossCheck>,
    pub error: Option<String>,
}

impl ScanRecord {
    fn new(point: ProjectivePoint, kind: PointKind, status: PointStatus) -> Self {
        ScanRecord {
            point,
            kind,
            status,
            covering_degree: None,
            v_p: None,
            multitangent: None,
            verdict: None,
            order: None,
            class: None,
            galois: None,
            degenerate_galois: false,
            monte_carlo: false,
            cross_check: None,
            error: None,
        }
    }

    pub fn is_non_uniform(&self) -> bool {
        self.verdict == Some(Verdict::NonUniform)
    }

    pub fn is_galois(&self) -> bool {
        self.galois == Some(true)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ScanSummary {
    pub points: usize,
    /// Points sent to monodromy: those passing the prefilter, or every
    /// nonsingular point where there is no prefilter.
    pub candidates: usize,
    pub rejected: usize,
    pub certified_non_uniform: usize,
    pub galois: usize,
    pub undecided: usize,
    pub failed: usize,
    pub skipped: usize,
    /// Failures where every sampled plane section was reducible or
    /// non-reduced.
    pub sections_degenerate: usize,
    pub cross_checked: usize,
    pub soundness_violations: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub schema: &'static str,
    pub tool_version: &'static str,
    pub input_hash: String,
    pub polynomial: String,
    pub seed: u64,
    pub options: ScanOptions,
    pub region: ScanRegion,
    pub records: Vec<ScanRecord>,
    pub summary: ScanSummary,
    /// Certified non-uniform points, the part of `W(X)` seen in the region.
    pub non_uniform: Vec<ProjectivePoint>,
    pub galois_points: Vec<ProjectivePoint>,
}

impl ScanReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

fn with_deadline(opts: &ScanOptions) -> MonodromyOptions {
    let mut m = opts.monodromy;
    if opts.time_cap > 0.0 {
        m.track.deadline = Some(Instant::now() + Duration::from_secs_f64(opts.time_cap));
    }
    m
}

fn fail(mut record: ScanRecord, err: Error) -> ScanRecord {
    record.status = if matches!(err, Error::Timeout) {
        PointStatus::Undecided
    } else {
        PointStatus::Failed
    };
    record.error = Some(err.to_string());
    record
}

fn certify(x: &Hypersurface, mut record: ScanRecord, seed: u64, opts: &ScanOptions) -> ScanRecord {
    match analyze_point(x, &record.point, seed, &with_deadline(opts)) {
        Ok(r) => {
            record.status = PointStatus::Certified;
            record.covering_degree = Some(r.covering_degree);
            record.verdict = Some(r.verdict);
            record.order = Some(r.order().to_string());
            record.class = Some(r.classification.class);
            record.galois = Some(r.galois);
            record.degenerate_galois = r.degenerate_galois;
            record.monte_carlo = r.section.as_ref().is_some_and(|s| s.monte_carlo);
            record
        }
        Err(err) => fail(record, err),
    }
}

fn scan_point(x: &Hypersurface, point: ProjectivePoint, kind: PointKind, seed: u64, opts: &ScanOptions) -> ScanRecord {
    let record = ScanRecord::new(point, kind, PointStatus::Certified);
    if x.is_singular_at(&record.point) {
        let mut r = record;
        r.status = PointStatus::Skipped;
        r.error = Some(Error::SingularCenter(r.point.to_string()).to_string());
        return r;
    }
    if x.dimension() != 1 {
        return certify(x, record, seed, opts);
    }
    let screen = match prefilter_point(x, &record.point, seed) {
        Ok(s) => s,
        Err(err) => return fail(record, err),
    };
    let mut record = record;
    record.v_p = Some(screen.v_p);
    record.multitangent = Some(screen.multitangent);
    record.covering_degree = Some(screen.covering_degree);
    if screen.pass {
        return certify(x, record, seed, opts);
    }
    let e = screen.covering_degree;
    record.status = PointStatus::Rejected;
    record.verdict = Some(Verdict::Uniform);
    record.order = Some(factorial(e).to_string());
    record.class = Some(GroupClass::Symmetric);
    // the full symmetric group is regular only on at most two points
    record.galois = Some(e <= 2);
    record.degenerate_galois = e <= 2;
    record
}

fn cross_check(x: &Hypersurface, point: &ProjectivePoint, seed: u64, opts: &ScanOptions) -> CrossCheck {
    match analyze_point(x, point, seed, &with_deadline(opts)) {
        Ok(r) => CrossCheck {
            verdict: Some(r.verdict),
            sound: r.verdict == Verdict::Uniform,
            error: None,
        },
        Err(err) => CrossCheck {
            verdict: None,
            sound: true,
            error: Some(err.to_string()),
        },
    }
}

fn summarize(records: &[ScanRecord]) -> ScanSummary {
    let mut s = ScanSummary {
        points: records.len(),
        ..ScanSummary::default()
    };
    for r in records {
        match r.status {
            PointStatus::Rejected => s.rejected += 1,
            PointStatus::Certified => {}
            PointStatus::Undecided => s.undecided += 1,
            PointStatus::Failed => s.failed += 1,
            PointStatus::Skipped => s.skipped += 1,
        }
        if !matches!(r.status, PointStatus::Rejected | PointStatus::Skipped) && r.multitangent != Some(0) {
            s.candidates += 1;
        }
        if r.status == PointStatus::Certified && r.is_non_uniform() {
            s.certified_non_uniform += 1;
        }
        if r.is_galois() {
            s.galois += 1;
        }
        if r.error.as_deref().is_some_and(|e| e.starts_with("every sampled plane section")) {
            s.sections_degenerate += 1;
        }
        if let Some(c) = &r.cross_check {
            s.cross_checked += 1;
            if !c.sound {
                s.soundness_violations += 1;
            }
        }
    }
    s
}

/// Scans every point of `region`. Per-point failures are recorded and
/// never abort the scan. The report is sorted canonically and is identical
/// across runs with the same inputs unless a point hits the time budget.
pub fn scan_region(x: &Hypersurface, region: &ScanRegion, seed: u64, opts: &ScanOptions) -> Result<ScanReport> {
    let points = region_points(x, region, seed)?;
    let mut records: Vec<ScanRecord> = points
        .into_par_iter()
        .map(|(p, kind)| scan_point(x, p, kind, seed, opts))
        .collect();
    records.sort_by(|a, b| (a.kind, a.point.coords()).cmp(&(b.kind, b.point.coords())));

    let rejected: Vec<usize> = (0..records.len())
        .filter(|&i| records[i].status == PointStatus::Rejected)
        .collect();
    let amount = ((opts.cross_check.clamp(0.0, 1.0) * rejected.len() as f64).ceil() as usize).min(rejected.len());
    if amount > 0 {
        let mut rng = seeded_rng(seed, 6);
        let mut chosen: Vec<usize> = rand::seq::index::sample(&mut rng, rejected.len(), amount)
            .into_iter()
            .map(|k| rejected[k])
            .collect();
        chosen.sort_unstable();
        let checks: Vec<(usize, CrossCheck)> = chosen
            .into_par_iter()
            .map(|i| (i, cross_check(x, &records[i].point, seed, opts)))
            .collect();
        for (i, c) in checks {
            records[i].cross_check = Some(c);
        }
    }

    let summary = summarize(&records);
    let certified = |r: &&ScanRecord| r.status == PointStatus::Certified;
    let non_uniform = records.iter().filter(certified).filter(|r| r.is_non_uniform()).map(|r| r.point.clone()).collect();
    let galois_points = records.iter().filter(|r| r.is_galois()).map(|r| r.point.clone()).collect();
    let polynomial = x.poly().to_string();
    Ok(ScanReport {
        schema: "scan_v1",
        tool_version: TOOL_VERSION,
        input_hash: input_hash(&[&polynomial]),
        polynomial,
        seed,
        options: *opts,
        region: region.clone(),
        records,
        summary,
        non_uniform,
        galois_points,
    })
}

/// Galois points of the region: records whose monodromy acts regularly.
/// Coverings of degree at most 2 are always Galois and are flagged
/// `degenerate_galois`.
pub fn galois_search(x: &Hypersurface, region: &ScanRegion, seed: u64, opts: &ScanOptions) -> Result<Vec<ScanRecord>> {
    Ok(scan_region(x, region, seed, opts)?
        .records
        .into_iter()
        .filter(ScanRecord::is_galois)
        .collect())
}
