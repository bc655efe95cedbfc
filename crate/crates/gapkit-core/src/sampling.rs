//! Deterministic sampling of random gap sets and divisors.
//!
//! A single small PRNG (SplitMix64) is used everywhere randomness is
//! needed, so that every run is reproducible from a recorded seed.

use crate::curve::GapSet;
use crate::divisor::Divisor;
use crate::Result;
use alloc::vec::Vec;

/// SplitMix64: tiny, fast, and statistically solid for test sampling.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    /// Seeds the generator.
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    /// Next raw 64-bit word.
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform in `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }
}

/// Draws a valid gap set with `n` gaps inside `(0, scale)`, with all
/// gaps and bands at least `separation · scale` long.
pub fn random_gapset(
    rng: &mut SplitMix64,
    n: usize,
    scale: f64,
    separation: f64,
) -> Result<GapSet> {
    // 2n endpoints need 2n+1 inter-point margins; draw sorted points in
    // the shrunken interval and re-inflate with the margins.
    let m = 2 * n;
    let margin = separation * scale;
    let free = scale - (m + 1) as f64 * margin;
    let mut pts: Vec<f64> = (0..m).map(|_| rng.next_f64() * free).collect();
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    for (i, p) in pts.iter_mut().enumerate() {
        *p += (i + 1) as f64 * margin;
    }
    // Points are increasing; gaps are ordered decreasing (gap 1 is the
    // rightmost pair).
    let mut gaps = Vec::with_capacity(n);
    for j in 0..n {
        let lo = pts[m - 2 - 2 * j];
        let hi = pts[m - 1 - 2 * j];
        gaps.push([lo, hi]);
    }
    GapSet::new(gaps)
}

/// Draws a divisor on a gap set: each point uniform in its open gap
/// (kept away from the ends by `pad` gap-fractions), each sign fair.
pub fn random_divisor(rng: &mut SplitMix64, gs: &GapSet, pad: f64) -> Divisor {
    let entries = (1..=gs.n())
        .map(|j| {
            let (a, b) = (gs.a(j), gs.b(j));
            let lam = rng.uniform(a + pad * (b - a), b - pad * (b - a));
            let eps = if rng.next_u64() & 1 == 0 { 1 } else { -1 };
            (lam, eps)
        })
        .collect();
    Divisor { entries }
}
