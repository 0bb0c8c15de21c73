//! Counter-based pseudorandom generator.
//!
//! Every randomized operation in this crate draws from [`CounterRng`], a
//! stateless generator defined by
//!
//! ```text
//! out(key, i) = mix64(key + (i + 1) * 0x9E3779B97F4A7C15)
//! ```
//!
//! where `mix64` is the SplitMix64 finalizer (Steele, Lea & Flood 2014) and
//! all arithmetic wraps mod 2^64. Because the i-th output depends only on
//! `(key, i)`, trials and vertices can be evaluated in any order — or in
//! parallel — and still reproduce the exact same values for a given seed.

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer: a bijective avalanche mix on 64 bits.
#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A keyed, counter-indexed random stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CounterRng {
    key: u64,
}

impl CounterRng {
    pub fn new(key: u64) -> Self {
        Self { key }
    }

    /// The i-th 64-bit output of this stream.
    #[inline]
    pub fn u64_at(&self, index: u64) -> u64 {
        mix64(
            self.key
                .wrapping_add(index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)),
        )
    }

    /// The i-th output mapped to [0, 1) with 53-bit resolution.
    #[inline]
    pub fn f64_at(&self, index: u64) -> f64 {
        (self.u64_at(index) >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// A decorrelated sub-stream, e.g. one per trial or per vertex.
    ///
    /// `derive` is itself counter-based: substream s of key K has key
    /// `out(K ^ STREAM_TAG, s)`, so the whole tree of streams is a pure
    /// function of the root seed.
    #[inline]
    pub fn derive(&self, stream: u64) -> CounterRng {
        const STREAM_TAG: u64 = 0xA076_1D64_78BD_642F;
        CounterRng::new(CounterRng::new(self.key ^ STREAM_TAG).u64_at(stream))
    }
}
