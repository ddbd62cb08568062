//! Versioned JSON run reports.

use num_complex::Complex64;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::monodromy::{verify_cycle_structure, BranchPoint, MonodromyOptions, MonodromyResult, SectionCertificate, Verdict};
use crate::permgroup::GroupClass;
use crate::poly::{fmt_rational, ProjectivePoint, Rational};
use crate::tangency::{PencilTangency, TangencyRecord};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub const REPORT_SCHEMA: &str = "report_v1";

/// Hex SHA-256 of the parts joined by newlines.
pub fn input_hash(parts: &[&str]) -> String {
    let digest = Sha256::digest(parts.join("\n").as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Everything needed to rerun a command.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: String,
    /// Canonical form of the input polynomial.
    pub polynomial: String,
    pub point: Option<ProjectivePoint>,
    pub seed: u64,
    pub eps_cluster: f64,
    pub track_tol: f64,
    pub trials: usize,
    pub grid: Option<String>,
    pub threads: Option<usize>,
    pub options: MonodromyOptions,
    pub input_hash: String,
    pub tool_version: &'static str,
}

impl RunConfig {
    pub fn new(command: &str, polynomial: String, point: Option<ProjectivePoint>, seed: u64, options: MonodromyOptions) -> Self {
        let point_text = point.as_ref().map(ToString::to_string).unwrap_or_default();
        RunConfig {
            command: command.to_string(),
            input_hash: input_hash(&[&polynomial, &point_text]),
            polynomial,
            point,
            seed,
            eps_cluster: options.track.cluster_tol,
            track_tol: options.track.tol,
            trials: options.trials,
            grid: None,
            threads: None,
            options,
            tool_version: TOOL_VERSION,
        }
    }
}

fn fmt_vec(v: &[Rational]) -> Vec<String> {
    v.iter().map(fmt_rational).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct SetupReport {
    pub center: ProjectivePoint,
    pub degree: usize,
    pub covering_degree: usize,
    pub inner: bool,
    /// Pencil frame: lines through the center are `c1 + t·c2 + s·P`.
    pub frame: [Vec<String>; 2],
    pub base_point: Complex64,
    pub base_fibre: Vec<Complex64>,
    pub obstacles: Vec<Complex64>,
    pub attempts: usize,
    pub closure_error: f64,
    pub product_is_identity: bool,
    pub cycle_structure_verified: bool,
    pub section: Option<SectionCertificate>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BranchPointReport {
    pub t: Complex64,
    pub exact: Option<String>,
    /// Squarefree rational factor of the discriminant with `t`
    /// among its roots, low degree first.
    pub factor: Vec<String>,
    pub partition: Vec<usize>,
    pub singular: bool,
    pub cycle_type: Option<Vec<usize>>,
    pub generator: Option<String>,
}

impl From<&BranchPoint> for BranchPointReport {
    fn from(b: &BranchPoint) -> Self {
        BranchPointReport {
            t: b.t,
            exact: b.exact.as_ref().map(fmt_rational),
            factor: fmt_vec(b.factor.coeffs()),
            partition: b.partition.clone(),
            singular: b.singular,
            cycle_type: b.cycle_type(),
            generator: b.permutation.as_ref().map(ToString::to_string),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupFlagsReport {
    pub transitive: bool,
    pub primitive: bool,
    pub regular: bool,
    pub contains_transposition: bool,
    pub galois: bool,
    pub degenerate_galois: bool,
    pub monte_carlo: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupReport {
    pub degree: usize,
    pub order: String,
    pub class: GroupClass,
    pub flags: GroupFlagsReport,
    pub block_system: Option<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub total_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub config: RunConfig,
    pub setup: Option<SetupReport>,
    pub branch_points: Vec<BranchPointReport>,
    /// Generators in cycle notation, in loop order.
    pub generators: Vec<String>,
    pub group: Option<GroupReport>,
    pub verdict: Option<Verdict>,
    pub tangency: Vec<TangencyRecord>,
    pub tangency_frame: Option<[Vec<String>; 2]>,
    /// Wall-clock time; absent unless requested, so that reruns compare
    /// byte for byte.
    pub timing: Option<Timing>,
}

impl Report {
    pub fn from_monodromy(config: RunConfig, r: &MonodromyResult) -> Self {
        let flags = &r.classification.flags;
        Report {
            schema: REPORT_SCHEMA,
            config,
            setup: Some(SetupReport {
                center: r.center.clone(),
                degree: r.degree,
                covering_degree: r.covering_degree,
                inner: r.inner,
                frame: [fmt_vec(&r.frame.0), fmt_vec(&r.frame.1)],
                base_point: r.base_point,
                base_fibre: r.base_fibre.clone(),
                obstacles: r.obstacles.clone(),
                attempts: r.attempts,
                closure_error: r.closure_error,
                product_is_identity: r.product_is_identity,
                cycle_structure_verified: verify_cycle_structure(r),
                section: r.section.clone(),
            }),
            branch_points: r.branch_points.iter().map(BranchPointReport::from).collect(),
            generators: r.generators().iter().map(ToString::to_string).collect(),
            group: Some(GroupReport {
                degree: r.covering_degree,
                order: r.order().to_string(),
                class: r.classification.class,
                flags: GroupFlagsReport {
                    transitive: flags.transitive,
                    primitive: flags.primitive,
                    regular: flags.regular,
                    contains_transposition: flags.contains_transposition,
                    galois: r.galois,
                    degenerate_galois: r.degenerate_galois,
                    monte_carlo: r.section.as_ref().is_some_and(|s| s.monte_carlo),
                },
                block_system: r.decomposable_witness.clone(),
            }),
            verdict: Some(r.verdict),
            tangency: Vec::new(),
            tangency_frame: None,
            timing: None,
        }
    }

    pub fn from_tangency(config: RunConfig, t: &PencilTangency) -> Self {
        Report {
            schema: REPORT_SCHEMA,
            config,
            setup: None,
            branch_points: Vec::new(),
            generators: Vec::new(),
            group: None,
            verdict: None,
            tangency: t.records.clone(),
            tangency_frame: Some([fmt_vec(&t.c1), fmt_vec(&t.c2)]),
            timing: None,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monodromy::{analyze_point, Hypersurface};

    #[test]
    fn hash_is_sha256() {
        // sha256("abc")
        assert_eq!(
            input_hash(&["abc"]),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
        assert_ne!(input_hash(&["a", "b"]), input_hash(&["ab"]));
    }

    #[test]
    fn report_has_the_documented_keys() {
        let x = Hypersurface::parse("x^4+y^4+z^4").unwrap();
        let p = ProjectivePoint::from_i64(&[1, 0, 0]).unwrap();
        let opts = MonodromyOptions::default();
        let r = analyze_point(&x, &p, 1, &opts).unwrap();
        let config = RunConfig::new("analyze", x.poly().to_string(), Some(p), 1, opts);
        let json: serde_json::Value = serde_json::from_str(&Report::from_monodromy(config, &r).to_json().unwrap()).unwrap();
        for key in ["config", "setup", "branch_points", "generators", "group", "verdict", "tangency", "timing"] {
            assert!(json.get(key).is_some(), "missing {key}");
        }
        assert_eq!(json["schema"], "report_v1");
        assert_eq!(json["verdict"], "non_uniform");
        assert_eq!(json["group"]["order"], "4");
        assert_eq!(json["group"]["class"], "cyclic_regular");
        assert_eq!(json["group"]["flags"]["galois"], true);
        assert_eq!(json["generators"].as_array().unwrap().len(), 4);
        assert_eq!(json["config"]["point"], "1,0,0");
    }
}
