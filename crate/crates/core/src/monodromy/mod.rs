//! Monodromy of the projection of a hypersurface from a point.
//!
//! A plane curve is projected through a seeded pencil of lines; branch
//! points come from the exact discriminant, generator loops are tracked
//! numerically and the group they generate is classified exactly. Surfaces
//! and higher-dimensional hypersurfaces are reduced to plane sections.

mod branch;
mod hypersurface;
mod loops;
mod pipeline;
mod section;
mod setup;

pub use branch::{branch_points, obstacles, BranchPoint};
pub use hypersurface::Hypersurface;
pub use loops::{plan_loops, LoopPlan};
pub use pipeline::{analyze_point, monodromy_group, verify_cycle_structure, MonodromyOptions, MonodromyResult};
pub use section::{section_monodromy, section_monodromy_in_plane, SectionCertificate, SectionResult};
pub use setup::{setup_projection, ProjectionSetup};

pub(crate) use branch::simple_roots;
pub(crate) use setup::{candidate_frames, line_at_infinity_is_generic};


use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Uniform,
    NonUniform,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Uniform => "uniform",
            Verdict::NonUniform => "non_uniform",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}
