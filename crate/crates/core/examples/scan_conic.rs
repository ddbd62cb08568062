//! Grid scan of a conic with a full prefilter cross-check.

use galpoint::fixtures::{load, CIRCLE};
use galpoint::scan::{scan_region, ScanOptions, ScanRegion};

fn main() -> galpoint::Result<()> {
    let x = load(CIRCLE);
    let mut region = ScanRegion::grid(Some(2), "-5:5:11".parse()?);
    region.inner = 10;
    let opts = ScanOptions {
        cross_check: 1.0,
        ..ScanOptions::default()
    };
    let report = scan_region(&x, &region, 1, &opts)?;
    let s = &report.summary;
    println!(
        "{} points, {} rejected, {} cross-checked, {} violations, {} non-uniform",
        s.points,
        s.rejected,
        s.cross_checked,
        s.soundness_violations,
        report.non_uniform.len()
    );
    Ok(())
}
