//! Lines through the node of a quartic and through an outer point.

use galpoint::fixtures::{load, NODAL_QUARTIC};
use galpoint::poly::ProjectivePoint;
use galpoint::tangency::lines_through;

fn main() -> galpoint::Result<()> {
    let x = load(NODAL_QUARTIC);
    for coords in [[0, 0, 1], [2, 1, 1]] {
        let p = ProjectivePoint::from_i64(&coords)?;
        let pencil = lines_through(&x, &p, 1)?;
        println!("{p}: {} special lines, |V_P| = {}", pencil.records.len(), pencil.v_p_count());
        for r in &pencil.records {
            let class = r.class.map_or("-".to_string(), |c| c.to_string());
            let partition = r.profile.as_ref().map(|pr| format!("{:?}", pr.partition)).unwrap_or_default();
            println!(
                "  t = {:.6}  beta {}  beta-P {}  class {class}  partition {partition}",
                r.t, r.beta, r.beta_minus_p
            );
        }
    }
    Ok(())
}
