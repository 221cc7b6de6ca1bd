//! Seeded randomness with a stability guarantee.
//!
//! Corpus generation must be byte-identical across runs and across releases,
//! so the crate carries its own generator instead of depending on an external
//! RNG whose stream might change between versions. The generator is
//! SplitMix64 (Steele, Lea, Flood 2014; the Java 8 `SplitMix64` finalizer,
//! public domain). It is not cryptographic and does not need to be; it only
//! needs to be fixed forever.
//!
//! Per-item seeds are derived from a master seed and an item index as
//!
//! ```text
//! seed_i = mix64(mix64(master ^ SALT) .wrapping_add (i + 1) * GAMMA)
//! ```
//!
//! where `mix64` is the SplitMix64 output function. The salt keys the item
//! seeds off a different base state than the master stream uses, so item
//! seeds are not values the master stream itself emits, and items can be
//! generated independently and in parallel.

const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
const ITEM_SALT: u64 = 0x6A09_E667_F3BC_C908;

/// The SplitMix64 output function.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derive the seed for item `index` of a run with the given master seed.
pub fn item_seed(master: u64, index: u64) -> u64 {
    let base = mix64(master ^ ITEM_SALT);
    mix64(base.wrapping_add(index.wrapping_add(1).wrapping_mul(GAMMA)))
}

/// A SplitMix64 stream.
#[derive(Debug, Clone)]
pub struct Rng {
    state: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GAMMA);
        mix64(self.state)
    }

    /// Uniform value in `0..bound`. `bound` must be nonzero.
    ///
    /// Uses rejection from the top of the range, so the result is exactly
    /// uniform and the stream consumed per call is reproducible for a fixed
    /// bound sequence.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "below(0)");
        let zone = u64::MAX - u64::MAX % bound;
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % bound;
            }
        }
    }

    /// Uniform value in the inclusive range `lo..=hi`.
    pub fn range_i64(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi, "empty range");
        let span = (hi - lo) as u64 + 1;
        lo + self.below(span) as i64
    }

    /// Uniform usize in `0..bound`.
    pub fn index(&mut self, bound: usize) -> usize {
        self.below(bound as u64) as usize
    }

    /// `count` distinct values from `0..total`, ascending (Floyd's
    /// sampling, one `below` call per selected value).
    pub fn sample_distinct(&mut self, total: u64, count: u64) -> Vec<u64> {
        assert!(count <= total, "cannot pick {count} distinct values from {total}");
        let mut chosen = std::collections::BTreeSet::new();
        for j in total - count..total {
            let candidate = self.below(j + 1);
            if !chosen.insert(candidate) {
                chosen.insert(j);
            }
        }
        chosen.into_iter().collect()
    }
}
