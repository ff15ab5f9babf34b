//! Seeded, splittable random streams.
//!
//! Every random quantity in an experiment is drawn from a ChaCha8 stream keyed
//! by `(master_seed, purpose)` with the replica index as the ChaCha stream
//! number. ChaCha is a counter-mode generator, so stream `r` is independent of
//! how many values other replicas consumed and of which thread ran them.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SimRng = ChaCha8Rng;

/// What a stream is used for. Distinct purposes never share key material.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Purpose {
    Degrees,
    Graph,
    Seeds,
    Epidemic,
    Sellke,
    Custom(u64),
}

impl Purpose {
    fn tag(self) -> u64 {
        match self {
            Purpose::Degrees => 1,
            Purpose::Graph => 2,
            Purpose::Seeds => 3,
            Purpose::Epidemic => 4,
            Purpose::Sellke => 5,
            Purpose::Custom(t) => 0x1000 + t,
        }
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// The stream for `(master_seed, purpose, index)`.
pub fn stream(master_seed: u64, purpose: Purpose, index: u64) -> SimRng {
    let key = splitmix64(splitmix64(master_seed) ^ splitmix64(purpose.tag().wrapping_mul(0xa076_1d64_78bd_642f)));
    let mut rng = ChaCha8Rng::seed_from_u64(key);
    rng.set_stream(index);
    rng
}
