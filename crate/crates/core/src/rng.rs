//! Keyed random substreams.
//!
//! Every randomized step derives its generator from a [`Stream`] key rather
//! than from a shared generator, so results do not depend on evaluation order
//! or thread count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Stream(u64);

fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl Stream {
    pub fn new(seed: u64) -> Self {
        Stream(mix(seed))
    }

    /// Independent child stream for index `k`.
    pub fn child(self, k: u64) -> Self {
        Stream(mix(self.0 ^ mix(k.wrapping_add(0x632b_e59b_d9b4_e019))))
    }

    /// Child keyed by a short label, for separating unrelated uses of one stream.
    pub fn fork(self, label: &str) -> Self {
        let h = label.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
            (h ^ b as u64).wrapping_mul(0x100_0000_01b3)
        });
        self.child(h)
    }

    pub fn rng(self) -> StreamRng {
        ChaCha8Rng::seed_from_u64(self.0)
    }

    pub fn key(self) -> u64 {
        self.0
    }
}
