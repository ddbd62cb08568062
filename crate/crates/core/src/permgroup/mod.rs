//! Permutation groups of small degree: composition, cycle notation,
//! Schreier–Sims orders and membership, transitivity, block systems and the
//! coarse classification used for verdicts.

mod classify;
mod group;
mod perm;

pub use classify::{classify, transposition_by_random_words, Classification, GroupClass, GroupFlags};
pub use group::{factorial, GeneratedGroup, MAX_DEGREE};
pub use perm::{parse_cycles, Permutation};

use num_bigint::BigUint;

/// Group orders can exceed `u64`; reports carry them as decimal strings
/// when they do and as numbers otherwise.
pub(crate) fn serialize_biguint<S: serde::Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    match u64::try_from(n) {
        Ok(v) => s.serialize_u64(v),
        Err(_) => s.serialize_str(&n.to_string()),
    }
}
