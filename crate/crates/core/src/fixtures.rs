//! Named test curves and surfaces, and seeded random plane curves.

use rand::Rng;

use crate::monodromy::Hypersurface;
use crate::poly::{rat, MultiPoly, ProjectivePoint, STANDARD_VARS};
use crate::seeded_rng;

pub const CIRCLE: &str = "x^2 + y^2 - z^2";
pub const FERMAT_QUARTIC: &str = "x^4 + y^4 + z^4";
/// Node at `(0:0:1)` with cone lines `y = ±x`.
pub const NODAL_CUBIC: &str = "z*y^2 - x^3 - x^2*z";
/// Cusp at `(0:0:1)` with cone line `y = 0`.
pub const CUSPIDAL_CUBIC: &str = "z*y^2 - x^3";
pub const SMOOTH_CUBIC: &str = "x^3 + y^3 + z^3 + x*y*z";
/// Node at `(0:0:1)` with cone `y^2 = x^2`; the lines `y = m·x` with
/// `m^4 = −1` are tangent on `z = 0`.
pub const NODAL_QUARTIC: &str = "z^2*(y^2 - x^2) + x^4 + y^4";
/// Nodes at `(0:0:1)` and `(0:1:0)`, joined by the line `x = 0`.
pub const TWO_NODE_QUARTIC: &str = "y^2*z^2 - x^2*y^2 - x^2*z^2 + x^3*y + 2*x^3*z";
pub const FERMAT_QUARTIC_SURFACE: &str = "x^4 + y^4 + z^4 + w^4";
pub const CUBIC_SURFACE: &str = "x^3 + 2*y^3 - z^3 + 3*w^3 + x*y*z - 2*x*z*w + y^2*w + 4*x^2*z - y*z*w";
pub const QUADRIC_SURFACE: &str = "x*w - y*z";

pub fn load(text: &str) -> Hypersurface {
    Hypersurface::parse(text).expect("fixture parses")
}

/// Plane curve of the given degree with every coefficient drawn from
/// `−9..=9`, seeded.
pub fn random_plane_curve(degree: u32, seed: u64) -> Hypersurface {
    let vars = &STANDARD_VARS[..3];
    let mut rng = seeded_rng(seed, 7);
    loop {
        let mut terms = Vec::new();
        for i in 0..=degree {
            for j in 0..=degree - i {
                terms.push((vec![i, j, degree - i - j], rat(rng.gen_range(-9..=9))));
            }
        }
        if let Ok(x) = Hypersurface::new(MultiPoly::from_terms(vars, terms)) {
            if x.degree() == degree as usize {
                return x;
            }
        }
    }
}

/// Seeded integer point off `x`, with coordinates in `−32..=32`.
pub fn random_outer_point(x: &Hypersurface, seed: u64) -> ProjectivePoint {
    let mut rng = seeded_rng(seed, 8);
    loop {
        let coords = (0..x.nvars()).map(|_| rat(rng.gen_range(-32..=32))).collect();
        if let Ok(p) = ProjectivePoint::new(coords) {
            if !x.contains(&p) {
                return p;
            }
        }
    }
}
