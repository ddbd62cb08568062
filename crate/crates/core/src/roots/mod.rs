//! Numeric root finding and root continuation.
//!
//! [`all_roots`] solves one fibre by Aberth–Ehrlich iteration;
//! [`track_roots`] follows a simple fibre along a [`Path`] in the parameter
//! plane and [`loop_permutation`] reads off the permutation of a closed path.

mod aberth;
mod path;
mod track;

pub use aberth::{aberth, all_roots, backward_error, cluster, horner, polish, total_cmp, Cluster, RootSet};
pub use path::{segment_distance, Path, Piece};
pub use track::{closure_error, loop_permutation, track_roots, NumericFamily, TrackOptions, TrackedPath};
