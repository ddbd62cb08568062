//! Orders and classes of a few small permutation groups.

use galpoint::permgroup::{classify, parse_cycles, GeneratedGroup};

fn main() -> galpoint::Result<()> {
    let cases: [(usize, &[&str]); 5] = [
        (4, &["(1 2 3 4)"]),
        (4, &["(1 2 3 4)", "(1 3)"]),
        (4, &["(1 2)(3 4)", "(1 3)(2 4)"]),
        (5, &["(1 2 3 4 5)", "(1 2)"]),
        (6, &["(1 2 3)(4 5 6)", "(1 4)(2 5)(3 6)"]),
    ];
    for (d, gens) in cases {
        let perms = gens.iter().map(|g| parse_cycles(g, d)).collect::<galpoint::Result<Vec<_>>>()?;
        let c = classify(&GeneratedGroup::new(d, &perms)?);
        println!(
            "<{}> on {d} points: order {} {} primitive={}",
            gens.join(", "),
            c.flags.order,
            c.class,
            c.flags.primitive
        );
    }
    Ok(())
}
