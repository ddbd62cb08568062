//! A random quartic seen from a random point: the group is the full
//! symmetric group.

use galpoint::fixtures::{random_outer_point, random_plane_curve};
use galpoint::monodromy::{analyze_point, MonodromyOptions};

fn main() -> galpoint::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let x = random_plane_curve(4, seed);
    let p = random_outer_point(&x, seed);
    let r = analyze_point(&x, &p, seed, &MonodromyOptions::default())?;
    println!("curve {}", x.poly());
    println!("point {p}");
    println!("{} branch points, closure error {:.2e}", r.branch_points.len(), r.closure_error);
    println!("{} of order {} ({})", r.verdict.as_str(), r.order(), r.classification.class);
    Ok(())
}
