pub mod algebra;
pub mod complex;
pub mod geom;
pub mod io;
mod lp;
pub mod mvalg;
pub mod pipeline;
pub mod space;
pub mod tri;
mod validation;

use rand_chacha::rand_core::SeedableRng;

pub use validation::{ValidationReport, Violation};

/// Seed used by every randomized check unless overridden.
pub const DEFAULT_SEED: u64 = 20_240_601;

/// The deterministic generator behind all sampling.
pub fn seeded_rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/algebras.md")]
    mod algebras {}
    #[doc = include_str!("../../../book/src/duality.md")]
    mod duality {}
    #[doc = include_str!("../../../book/src/complexes.md")]
    mod complexes {}
    #[doc = include_str!("../../../book/src/geometry.md")]
    mod geometry {}
    #[doc = include_str!("../../../book/src/mv.md")]
    mod mv {}
    #[doc = include_str!("../../../book/src/recognition.md")]
    mod recognition {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
