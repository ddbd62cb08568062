use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::group::factorial;
use super::{GeneratedGroup, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupClass {
    Symmetric,
    Alternating,
    CyclicRegular,
    /// Regular, abelian and not cyclic (for instance the Klein group).
    RegularAbelian,
    RegularNonabelian,
    Imprimitive,
    Other,
}

impl GroupClass {
    pub fn as_str(self) -> &'static str {
        match self {
            GroupClass::Symmetric => "symmetric",
            GroupClass::Alternating => "alternating",
            GroupClass::CyclicRegular => "cyclic_regular",
            GroupClass::RegularAbelian => "regular_abelian",
            GroupClass::RegularNonabelian => "regular_nonabelian",
            GroupClass::Imprimitive => "imprimitive",
            GroupClass::Other => "other",
        }
    }
}

impl std::fmt::Display for GroupClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupFlags {
    #[serde(serialize_with = "crate::permgroup::serialize_biguint")]
    pub order: BigUint,
    pub transitive: bool,
    pub primitive: bool,
    /// Transitive with order equal to the degree.
    pub regular: bool,
    pub contains_transposition: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub class: GroupClass,
    pub flags: GroupFlags,
}

pub fn classify(g: &GeneratedGroup) -> Classification {
    let d = g.degree();
    let order = g.order().clone();
    let transitive = g.is_transitive();
    let primitive = transitive && g.is_primitive();
    let regular = transitive && order == BigUint::from(d);
    let full = factorial(d);
    let class = if order == full {
        GroupClass::Symmetric
    } else if d >= 3 && order * 2u32 == full && g.generators().iter().all(Permutation::is_even) {
        GroupClass::Alternating
    } else if regular {
        if !g.is_abelian() {
            GroupClass::RegularNonabelian
        } else if g.generators().iter().fold(1u64, |acc, p| num_integer::lcm(acc, p.order())) == d as u64 {
            GroupClass::CyclicRegular
        } else {
            GroupClass::RegularAbelian
        }
    } else if transitive && !primitive {
        GroupClass::Imprimitive
    } else {
        GroupClass::Other
    };
    Classification {
        class,
        flags: GroupFlags {
            order: g.order().clone(),
            transitive,
            primitive,
            regular,
            contains_transposition: g.contains_transposition(),
        },
    }
}

/// Looks for a transposition among seeded random words in the generators.
/// An element whose only even cycle is a single 2-cycle yields one as a
/// power. Returns the first transposition found.
pub fn transposition_by_random_words(
    g: &GeneratedGroup,
    samples: usize,
    seed: u64,
) -> Option<Permutation> {
    let gens = g.generators();
    if gens.is_empty() {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let candidates = gens.iter().cloned().chain((0..samples).map(|_| {
        let len = rng.gen_range(1..=20);
        (0..len).fold(Permutation::identity(g.degree()), |acc, _| {
            acc.then(&gens[rng.gen_range(0..gens.len())])
        })
    }));
    for w in candidates {
        let cycles = w.cycles();
        let even: Vec<&Vec<usize>> = cycles.iter().filter(|c| c.len() % 2 == 0).collect();
        if even.len() == 1 && even[0].len() == 2 {
            let odd_lcm = cycles
                .iter()
                .filter(|c| c.len() % 2 == 1)
                .fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64));
            return Some(w.pow(odd_lcm));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(d: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(d, cycles).unwrap()
    }

    fn class_of(d: usize, gens: &[Permutation]) -> Classification {
        classify(&GeneratedGroup::new(d, gens).unwrap())
    }

    #[test]
    fn classes_of_standard_groups() {
        let s4 = class_of(4, &[cyc(4, &[&[0, 1]]), cyc(4, &[&[0, 1, 2, 3]])]);
        assert_eq!(s4.class, GroupClass::Symmetric);
        assert!(s4.flags.contains_transposition && s4.flags.primitive);

        let c4 = class_of(4, &[cyc(4, &[&[0, 1, 2, 3]])]);
        assert_eq!(c4.class, GroupClass::CyclicRegular);
        assert!(c4.flags.regular);
        assert_eq!(c4.flags.order, BigUint::from(4u32));

        let a4 = class_of(4, &[cyc(4, &[&[0, 1, 2]]), cyc(4, &[&[1, 2, 3]])]);
        assert_eq!(a4.class, GroupClass::Alternating);
        assert_eq!(a4.flags.order, BigUint::from(12u32));
        assert!(!a4.flags.contains_transposition);

        let v4 = class_of(4, &[cyc(4, &[&[0, 1], &[2, 3]]), cyc(4, &[&[0, 2], &[1, 3]])]);
        assert_eq!(v4.class, GroupClass::RegularAbelian);

        let d4 = class_of(4, &[cyc(4, &[&[0, 1, 2, 3]]), cyc(4, &[&[0, 2]])]);
        assert_eq!(d4.class, GroupClass::Imprimitive);

        let intransitive = class_of(3, &[cyc(3, &[&[0, 1]])]);
        assert_eq!(intransitive.class, GroupClass::Other);
        assert!(!intransitive.flags.transitive);
    }

    #[test]
    fn nonabelian_regular_action() {
        // S3 acting on itself by right multiplication
        let elems: Vec<Permutation> = vec![
            Permutation::identity(3),
            cyc(3, &[&[0, 1]]),
            cyc(3, &[&[1, 2]]),
            cyc(3, &[&[0, 2]]),
            cyc(3, &[&[0, 1, 2]]),
            cyc(3, &[&[0, 2, 1]]),
        ];
        let index = |p: &Permutation| elems.iter().position(|q| q == p).unwrap();
        let regular = |g: &Permutation| {
            Permutation::new(elems.iter().map(|h| index(&h.then(g))).collect()).unwrap()
        };
        let c = class_of(6, &[regular(&elems[1]), regular(&elems[4])]);
        assert_eq!(c.class, GroupClass::RegularNonabelian);
    }

    #[test]
    fn symmetric_beats_regular_in_degree_two() {
        let c = class_of(2, &[cyc(2, &[&[0, 1]])]);
        assert_eq!(c.class, GroupClass::Symmetric);
        assert!(c.flags.regular);
    }

    #[test]
    fn random_words_agree_with_exact_test() {
        let s5 = GeneratedGroup::new(5, &[cyc(5, &[&[0, 1, 2]]), cyc(5, &[&[0, 1, 2, 3, 4]]), cyc(5, &[&[3, 4]])]).unwrap();
        let t = transposition_by_random_words(&s5, 512, 7).unwrap();
        assert_eq!(t.cycle_type(), vec![2, 1, 1, 1]);
        assert!(s5.contains(&t));
        let a5 = GeneratedGroup::new(5, &[cyc(5, &[&[0, 1, 2]]), cyc(5, &[&[0, 1, 2, 3, 4]])]).unwrap();
        assert!(transposition_by_random_words(&a5, 512, 7).is_none());
    }
}
