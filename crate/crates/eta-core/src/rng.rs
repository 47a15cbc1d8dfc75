//! Stateless keyed random streams.
//!
//! Everything random in this crate is derived from a master seed plus an
//! integer key (a prime, a sample index, a stratum index). Keyed substreams
//! keep samples extendable — phases for primes up to P are unchanged when P
//! grows — and make parallel runs independent of thread count. SplitMix64 is
//! used as the mixing function; its output passes through the full 64-bit
//! avalanche twice per draw, which is plenty for Monte Carlo work here.

/// One SplitMix64 scramble round.
#[inline]
pub fn splitmix64(state: u64) -> u64 {
    let mut z = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Mix a master seed with a stream key.
#[inline]
pub fn mix(seed: u64, key: u64) -> u64 {
    splitmix64(splitmix64(seed) ^ key.wrapping_mul(0xA24B_AED4_963E_E407))
}

/// Uniform draw in [0, 1) from a 64-bit word (53 mantissa bits).
#[inline]
pub fn unit_f64(word: u64) -> f64 {
    (word >> 11) as f64 * (1.0 / 9007199254740992.0)
}

/// Uniform in [0, 1) for a (seed, key) pair.
#[inline]
pub fn uniform(seed: u64, key: u64) -> f64 {
    unit_f64(mix(seed, key))
}

/// A small counter-based stream for callers that need several draws per key.
#[derive(Clone, Copy, Debug)]
pub struct KeyedStream {
    state: u64,
}

impl KeyedStream {
    pub fn new(seed: u64, key: u64) -> Self {
        KeyedStream { state: mix(seed, key) }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        splitmix64(self.state)
    }

    pub fn next_f64(&mut self) -> f64 {
        unit_f64(self.next_u64())
    }

    /// Uniform in [lo, hi).
    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }
}
