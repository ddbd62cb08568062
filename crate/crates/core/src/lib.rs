pub mod cli;
pub mod error;
pub mod fixtures;
pub mod monodromy;
pub mod pencil;
pub mod permgroup;
pub mod poly;
pub mod report;
pub mod roots;
pub mod scan;
pub mod tangency;

pub use error::{Error, Result};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Independent deterministic streams derived from one user seed.
pub(crate) fn seeded_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
