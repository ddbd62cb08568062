//! Lines through a point and how they meet a hypersurface: intersection
//! profiles, contact orders, the multitangent lines `V_P` through a center
//! and the classes of multitangent lines.

mod classify;
mod lines;
mod profile;

pub use classify::{classify_line, tangent_cone_section_check, LineClass};
pub use lines::{lines_through, multitangent_lines_through, PencilTangency, TangencyRecord};
pub use profile::{beta, contact_order, intersection_profile, IntersectionPoint, IntersectionProfile};
