//! One user seed, many independent named streams.
//!
//! A stream is `ChaCha8` keyed by `SHA-256(seed || label)`, so adding a new
//! consumer never perturbs the values seen by an existing one.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Seed(pub u64);

impl Seed {
    pub fn new(seed: u64) -> Self {
        Self(seed)
    }

    /// Child seed for a named sub-task.
    pub fn split(self, label: &str) -> Seed {
        let digest = self.digest(label);
        Seed(u64::from_le_bytes(digest[..8].try_into().expect("8 bytes")))
    }

    /// Generator for a named purpose.
    pub fn rng(self, label: &str) -> ChaCha8Rng {
        ChaCha8Rng::from_seed(self.digest(label))
    }

    fn digest(self, label: &str) -> [u8; 32] {
        let mut h = Sha256::new();
        h.update(self.0.to_le_bytes());
        h.update(label.as_bytes());
        h.finalize().into()
    }
}
