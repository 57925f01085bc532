//! Seeded, labeled randomness.
//!
//! Every random choice made by an algorithm is drawn from a stream that is a
//! pure function of `(master seed, label, key tuple)`. Two calls with the same
//! arguments see the same bits no matter how many other streams were opened
//! in between, which is what makes oracle answers independent of query order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

/// A keyed pseudo-random function derived from a master seed and a label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prf {
    key: [u8; 32],
}

impl Prf {
    pub fn new(master_seed: u64, label: &str) -> Self {
        let mut hasher = Sha256::new();
        hasher.update(b"minorfree/prf/v1\0");
        hasher.update(label.as_bytes());
        hasher.update([0u8]);
        hasher.update(master_seed.to_le_bytes());
        Prf {
            key: hasher.finalize().into(),
        }
    }

    /// Sub-function for a nested label, e.g. `prf.derive("sample")`.
    pub fn derive(&self, label: &str) -> Self {
        let mut hasher = Sha256::new();
        hasher.update(self.key);
        hasher.update(label.as_bytes());
        Prf {
            key: hasher.finalize().into(),
        }
    }

    /// Independent stream addressed by `keys`.
    pub fn stream(&self, keys: &[u64]) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::from_seed(self.key);
        rng.set_stream(fold_keys(keys));
        rng
    }
}

fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn fold_keys(keys: &[u64]) -> u64 {
    keys.iter().fold(0x9e37_79b9_7f4a_7c15 ^ keys.len() as u64, |acc, &k| {
        mix64(acc.wrapping_add(0x9e37_79b9_7f4a_7c15) ^ mix64(k))
    })
}
