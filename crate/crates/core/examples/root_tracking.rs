//! Track the roots of s^3 - t around the origin: they cycle.

use galpoint::poly::UniPoly;
use galpoint::roots::{all_roots, loop_permutation, track_roots, NumericFamily, Path, TrackOptions};
use num_complex::Complex64;

fn main() -> galpoint::Result<()> {
    // coefficients in s, each a polynomial in t
    let family = NumericFamily::from_exact(&[UniPoly::from_i64(&[0, -1]), UniPoly::zero(), UniPoly::zero(), UniPoly::from_i64(&[1])]);
    let base = Complex64::new(1.0, 0.0);
    let fibre = all_roots(&family.at(base), 1e-12, 1e-6)?.values();
    let path = Path::circle(base, Complex64::new(0.0, 0.0));
    let tracked = track_roots(&family, &path, &fibre, &TrackOptions::default())?;
    println!("{} steps, min separation {:.3}", tracked.steps, tracked.min_separation);
    for (a, b) in tracked.start.iter().zip(&tracked.end) {
        println!("  {a:.6} -> {b:.6}");
    }
    println!("permutation {}", loop_permutation(&tracked)?);
    Ok(())
}
