//! Plane-section monodromy of the Fermat quartic surface.

use galpoint::fixtures::{load, FERMAT_QUARTIC_SURFACE};
use galpoint::monodromy::{section_monodromy, MonodromyOptions};
use galpoint::poly::ProjectivePoint;

fn main() -> galpoint::Result<()> {
    let x = load(FERMAT_QUARTIC_SURFACE);
    let opts = MonodromyOptions::default();
    for coords in [[1, 0, 0, 0], [1, 2, 3, 5]] {
        let p = ProjectivePoint::from_i64(&coords)?;
        let s = section_monodromy(&x, &p, 1, 3, &opts)?;
        println!(
            "{p}: {} order {} in {} of {} planes (section orders {:?})",
            s.result.verdict.as_str(),
            s.result.order(),
            s.certificate.planes_used,
            s.certificate.planes_tried,
            s.certificate.section_orders
        );
    }
    Ok(())
}
