//! Shared fixtures for the criterion benchmarks.

use f2mq::system::generate::{random_poly, random_system};
use f2mq::{AnfPoly, PolySystem, Stream};

/// Random system keyed by its shape, so every bench run sees the same input.
pub fn system(n: usize, d: usize, m: usize) -> PolySystem {
    random_system(
        n,
        d,
        m,
        &mut Stream::new(0xb0).child((n * 64 + d) as u64).rng(),
    )
}

pub fn poly(n: usize, d: usize) -> AnfPoly {
    random_poly(
        n,
        d,
        &mut Stream::new(0xb1).child((n * 64 + d) as u64).rng(),
    )
}
