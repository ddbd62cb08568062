//! Galois points of the Fermat quartic among the points with coordinates
//! in {-1, 0, 1}.

use galpoint::fixtures::{load, FERMAT_QUARTIC};
use galpoint::scan::{galois_search, ScanOptions, ScanRegion};

fn main() -> galpoint::Result<()> {
    let x = load(FERMAT_QUARTIC);
    let region = ScanRegion::grid(None, "-1:1:3".parse()?);
    for r in galois_search(&x, &region, 1, &ScanOptions::default())? {
        println!("{} {:?} order {}", r.point, r.kind, r.order.as_deref().unwrap_or("?"));
    }
    Ok(())
}
