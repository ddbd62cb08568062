use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::monodromy::{simple_roots, Hypersurface};
use crate::poly::{fmt_rational, parse_rational, rat, ProjectivePoint, Rational, UniPoly};
use crate::seeded_rng;

/// Evenly spaced rational values `lo, …, hi`, written `lo:hi:n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridSpec {
    pub lo: Rational,
    pub hi: Rational,
    pub steps: usize,
}

impl GridSpec {
    pub fn new(lo: Rational, hi: Rational, steps: usize) -> Result<Self> {
        if steps == 0 || lo > hi || (steps == 1 && lo != hi) {
            return Err(Error::InvalidInput(format!(
                "grid {}:{}:{steps} is empty or reversed",
                fmt_rational(&lo),
                fmt_rational(&hi)
            )));
        }
        Ok(GridSpec { lo, hi, steps })
    }

    pub fn values(&self) -> Vec<Rational> {
        if self.steps == 1 {
            return vec![self.lo.clone()];
        }
        let step = (&self.hi - &self.lo) / rat(self.steps as i64 - 1);
        (0..self.steps).map(|k| &self.lo + &step * rat(k as i64)).collect()
    }
}

impl FromStr for GridSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("grid `{text}` is not of the form lo:hi:n"));
        let parts: Vec<&str> = text.split(':').map(str::trim).collect();
        let [lo, hi, n] = parts[..] else { return Err(bad()) };
        let lo = parse_rational(lo).ok_or_else(bad)?;
        let hi = parse_rational(hi).ok_or_else(bad)?;
        let n = n.parse().map_err(|_| bad())?;
        GridSpec::new(lo, hi, n)
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", fmt_rational(&self.lo), fmt_rational(&self.hi), self.steps)
    }
}

impl Serialize for GridSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Which points a scan keeps.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PointFilter {
    Outer,
    Inner,
    #[default]
    Both,
}

impl FromStr for PointFilter {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        match text {
            "outer" => Ok(PointFilter::Outer),
            "inner" => Ok(PointFilter::Inner),
            "both" => Ok(PointFilter::Both),
            _ => Err(Error::InvalidInput(format!("point filter `{text}` is not outer, inner or both"))),
        }
    }
}

/// Where a point lies relative to the hypersurface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PointKind {
    Outer,
    Inner,
}

/// Points to scan: a rational grid, seeded random outer points, seeded
/// rational points of the hypersurface and explicit points.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ScanRegion {
    /// The grid runs over the affine chart `x_chart = 1`; without a chart
    /// every homogeneous coordinate runs over the grid values, which also
    /// reaches points at infinity.
    pub chart: Option<usize>,
    pub grid: Option<GridSpec>,
    /// Seeded random points with integer coordinates in `−32..=32`.
    pub random: usize,
    /// Seeded rational smooth points of the hypersurface.
    pub inner: usize,
    pub points: Vec<ProjectivePoint>,
    pub filter: PointFilter,
}

impl ScanRegion {
    pub fn grid(chart: Option<usize>, grid: GridSpec) -> Self {
        ScanRegion {
            chart,
            grid: Some(grid),
            ..Self::default()
        }
    }

    pub fn points(points: Vec<ProjectivePoint>) -> Self {
        ScanRegion {
            points,
            ..Self::default()
        }
    }
}

fn grid_points(nvars: usize, chart: Option<usize>, grid: &GridSpec) -> Result<Vec<ProjectivePoint>> {
    let values = grid.values();
    let free = match chart {
        Some(c) if c >= nvars => {
            return Err(Error::Dimension(format!("chart {c} of a space with {nvars} coordinates")));
        }
        Some(_) => nvars - 1,
        None => nvars,
    };
    let mut out = Vec::new();
    let mut index = vec![0usize; free];
    loop {
        let mut coords: Vec<Rational> = index.iter().map(|&i| values[i].clone()).collect();
        if let Some(c) = chart {
            coords.insert(c, rat(1));
        }
        if let Ok(p) = ProjectivePoint::new(coords) {
            out.push(p);
        }
        let mut k = 0;
        loop {
            if k == free {
                return Ok(out);
            }
            index[k] += 1;
            if index[k] < values.len() {
                break;
            }
            index[k] = 0;
            k += 1;
        }
    }
}

fn random_point(nvars: usize, bound: i64, rng: &mut impl Rng) -> Option<ProjectivePoint> {
    ProjectivePoint::new((0..nvars).map(|_| rat(rng.gen_range(-bound..=bound))).collect()).ok()
}

/// Rational roots of `g`, proposed numerically and verified exactly.
fn rational_roots(g: &UniPoly) -> Vec<Rational> {
    simple_roots(&g.squarefree_part())
        .unwrap_or_default()
        .into_iter()
        .filter_map(|(_, exact)| exact)
        .collect()
}

fn point_on_line(base: &ProjectivePoint, dir: &ProjectivePoint, s: &Rational) -> Option<ProjectivePoint> {
    let coords = base.coords().iter().zip(dir.coords()).map(|(b, d)| b + s * d).collect();
    ProjectivePoint::new(coords).ok()
}

/// Rational smooth points of `x`, found on seeded lines through small
/// integer points and through points already found. Stops after `count`
/// points or a fixed number of lines, whichever comes first.
pub(crate) fn sample_inner(x: &Hypersurface, count: usize, known: &[ProjectivePoint], seed: u64) -> Vec<ProjectivePoint> {
    if count == 0 {
        return Vec::new();
    }
    let n = x.nvars();
    let mut anchors: Vec<ProjectivePoint> = known.iter().filter(|p| x.is_smooth_at(p)).cloned().collect();
    if anchors.is_empty() {
        let small = GridSpec::new(rat(-2), rat(2), 5).expect("valid grid");
        anchors.extend(
            grid_points(n, None, &small)
                .unwrap_or_default()
                .into_iter()
                .filter(|p| x.contains(p) && x.is_smooth_at(p)),
        );
    }
    let mut seen: HashSet<ProjectivePoint> = known.iter().cloned().collect();
    let mut out = Vec::new();
    let mut rng = seeded_rng(seed, 3);
    for attempt in 0..40 * count + 200 {
        if out.len() >= count {
            break;
        }
        let through_anchor = !anchors.is_empty() && attempt % 4 != 3;
        let base = if through_anchor {
            anchors[rng.gen_range(0..anchors.len())].clone()
        } else {
            match random_point(n, 5, &mut rng) {
                Some(p) => p,
                None => continue,
            }
        };
        let Some(dir) = random_point(n, 9, &mut rng) else { continue };
        let Ok(g) = x.poly().restrict_to_line(&base, &dir) else { continue };
        if g.is_zero() {
            continue;
        }
        for s in rational_roots(&g) {
            let Some(q) = point_on_line(&base, &dir, &s) else { continue };
            if x.is_smooth_at(&q) && seen.insert(q.clone()) {
                anchors.push(q.clone());
                out.push(q);
            }
        }
    }
    out.truncate(count);
    out
}

/// Distinct points of the region with their kind, in enumeration order.
/// Singular points of `x` are kept and reported by the scan.
pub fn region_points(x: &Hypersurface, region: &ScanRegion, seed: u64) -> Result<Vec<(ProjectivePoint, PointKind)>> {
    let n = x.nvars();
    let mut candidates = Vec::new();
    if let Some(grid) = &region.grid {
        candidates.extend(grid_points(n, region.chart, grid)?);
    }
    let mut rng = seeded_rng(seed, 4);
    candidates.extend((0..region.random).filter_map(|_| random_point(n, 32, &mut rng)));
    for p in &region.points {
        x.check_point(p)?;
        candidates.push(p.clone());
    }
    let known: Vec<ProjectivePoint> = candidates.iter().filter(|p| x.contains(p)).cloned().collect();
    candidates.extend(sample_inner(x, region.inner, &known, seed));

    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for p in candidates {
        if !seen.insert(p.clone()) {
            continue;
        }
        let kind = if x.contains(&p) { PointKind::Inner } else { PointKind::Outer };
        let keep = match region.filter {
            PointFilter::Both => true,
            PointFilter::Outer => kind == PointKind::Outer,
            PointFilter::Inner => kind == PointKind::Inner,
        };
        if keep {
            out.push((p, kind));
        }
    }
    Ok(out)
}
