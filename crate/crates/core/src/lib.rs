//! Exact counting and detection of small sub-tournaments.
//!
//! The crate is `no_std` (it needs `alloc`). Tournaments are stored as dense
//! bit matrices; every counting routine is built from popcounts over pairs of
//! rows. The `parallel` feature spreads the per-row work over rayon without
//! changing any result.
#![no_std]
#![allow(clippy::needless_range_loop)]

extern crate alloc;
#[cfg(feature = "parallel")]
extern crate std;

pub mod bits;
pub mod catalog;
pub mod count;
pub mod detect;
mod error;
pub mod generators;
pub mod linalg;
pub mod pairstats;
pub mod reductions;
pub mod rng;
pub mod system;
pub mod tournament;
pub mod undirected;

pub use catalog::{catalog, Catalog, PatternName};
pub use count::CountVector;
pub use detect::Witness;
pub use error::Error;
pub use tournament::{SccDecomposition, Tournament};

/// Largest input accepted by the counting routines and the file parser.
pub const MAX_VERTICES: usize = 1 << 14;

/// Binomial coefficient `C(n, k)` over `u128`.
pub fn binomial(n: u128, k: u32) -> u128 {
    if (k as u128) > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::binomial;

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 4), 15);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(12, 5), 792);
        assert_eq!(binomial(16384, 5), 9_832_259_989_126_987_776);
        assert_eq!(binomial(7, 0), 1);
    }
}
