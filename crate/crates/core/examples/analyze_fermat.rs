//! Monodromy of the projection of the Fermat quartic from a coordinate
//! vertex, an inner point and a generic point.

use galpoint::fixtures::{load, FERMAT_QUARTIC};
use galpoint::monodromy::{analyze_point, MonodromyOptions};
use galpoint::poly::ProjectivePoint;

fn main() -> galpoint::Result<()> {
    let x = load(FERMAT_QUARTIC);
    let opts = MonodromyOptions::default();
    for coords in [[1, 0, 0], [0, 1, 1], [3, 7, 2]] {
        let p = ProjectivePoint::from_i64(&coords)?;
        let r = analyze_point(&x, &p, 1, &opts)?;
        let gens: Vec<String> = r.generators().iter().map(ToString::to_string).collect();
        println!(
            "{p}: {} order {} {} galois={} generators {}",
            r.verdict.as_str(),
            r.order(),
            r.classification.class,
            r.galois,
            gens.join(" ")
        );
    }
    Ok(())
}
