//! Walk-on-spheres Monte Carlo oracles for the potential-theory module.
//!
//! Planar Brownian motion started in Ω = ℂ∖E hits the boundary almost
//! surely; sampling it by the walk-on-spheres scheme gives independent
//! estimators for the harmonic measure (indicator of where the walk
//! lands) and for the Green function (accumulated ball Green values
//! `log(r/|c−w|)` over the visited balls containing the pole).

use gapkit_core::abelian::Differentials;
use gapkit_core::curve::GapSet;
use gapkit_core::potential::{green_value, harmonic_measure};
use gapkit_core::sampling::SplitMix64;

/// Bands of `E = [0,∞)∖gaps` as closed segments on the real axis; the
/// unbounded band is truncated at `far` (beyond which walks are
/// abandoned anyway).
fn bands(gs: &GapSet, far: f64) -> Vec<(f64, f64)> {
    let n = gs.n();
    let mut out = Vec::with_capacity(n + 1);
    for m in 1..=n {
        let lo = if m == n { 0.0 } else { gs.b(m + 1) };
        out.push((lo, gs.a(m)));
    }
    out.push((gs.b(1), far));
    out
}

/// Distance from a plane point to the band system, and the real
/// coordinate of the nearest boundary point.
fn dist_to_bands(bands: &[(f64, f64)], x: f64, y: f64) -> (f64, f64) {
    let mut best = f64::INFINITY;
    let mut nearest = 0.0;
    for &(lo, hi) in bands {
        let px = x.clamp(lo, hi);
        let d = ((x - px) * (x - px) + y * y).sqrt();
        if d < best {
            best = d;
            nearest = px;
        }
    }
    (best, nearest)
}

struct WalkOutcome {
    /// Real coordinate of the landing point (valid when `hit`).
    landing: f64,
    /// Accumulated ball Green values at the pole `w` (on the real axis).
    green_sum: f64,
    /// Whether the walk terminated on the boundary (vs. abandoned far out).
    hit: bool,
}

/// One walk-on-spheres trajectory from `(x0, 0)` with pole `w`.
fn walk(
    rng: &mut SplitMix64,
    bands: &[(f64, f64)],
    x0: f64,
    w: f64,
    eps: f64,
    far: f64,
) -> WalkOutcome {
    let (mut x, mut y) = (x0, 0.0);
    let mut green_sum = 0.0;
    for _ in 0..100_000 {
        let (r, nearest) = dist_to_bands(bands, x, y);
        if r < eps {
            return WalkOutcome {
                landing: nearest,
                green_sum,
                hit: true,
            };
        }
        // Ball Green function at the center: log(r/|c−w|) when the pole
        // lies inside the current ball.
        let dw = ((x - w) * (x - w) + y * y).sqrt();
        if dw < r {
            green_sum += (r / dw).ln();
        }
        let theta = core::f64::consts::TAU * rng.next_f64();
        x += r * theta.cos();
        y += r * theta.sin();
        if x * x + y * y > far * far {
            break;
        }
    }
    WalkOutcome {
        landing: x,
        green_sum,
        hit: false,
    }
}

/// Harmonic measure ω(E₁, 3.5) on gaps {(1,2),(3,4)} against the
/// Monte Carlo oracle, tolerance 1e-2.
#[test]
fn harmonic_measure_matches_walk_on_spheres() {
    let gs = GapSet::new(vec![[3.0, 4.0], [1.0, 2.0]]).unwrap();
    let diff = Differentials::solve(&gs, 1e-12).unwrap();
    let z = 3.5;
    let analytic = harmonic_measure(&diff, 1, z, 1e-12).unwrap();
    assert!((0.0..=1.0).contains(&analytic));

    let far = 1e6;
    let bs = bands(&gs, far);
    let a1 = gs.a(1);
    let mut rng = SplitMix64::new(2024);
    let trials = 120_000usize;
    let mut hits_in_e1 = 0usize;
    for _ in 0..trials {
        let out = walk(&mut rng, &bs, z, 0.0, 1e-4, far);
        // Abandoned walks start again from far out, where the chance of
        // landing on the bounded set E₁ is negligible at this tolerance.
        if out.hit && out.landing <= a1 {
            hits_in_e1 += 1;
        }
    }
    let mc = hits_in_e1 as f64 / trials as f64;
    let err = (mc - analytic).abs();
    assert!(
        err <= 1e-2,
        "harmonic measure mismatch: analytic {analytic}, Monte Carlo {mc}, error {err}"
    );
}

/// Green function G(−1, 1.5) on the single gap (1,2) against the
/// Monte Carlo oracle, tolerance 1e-2.
#[test]
fn green_value_matches_walk_on_spheres() {
    let gs = GapSet::new(vec![[1.0, 2.0]]).unwrap();
    let (z, pole) = (-1.0, 1.5);
    let analytic = green_value(&gs, z, pole, 1e-12).unwrap();
    assert!(analytic > 0.0);

    let far = 1e6;
    let bs = bands(&gs, far);
    let mut rng = SplitMix64::new(4096);
    let trials = 200_000usize;
    let mut total = 0.0;
    for _ in 0..trials {
        total += walk(&mut rng, &bs, z, pole, 1e-4, far).green_sum;
    }
    let mc = total / trials as f64;
    let err = (mc - analytic).abs();
    assert!(
        err <= 1e-2,
        "Green function mismatch: analytic {analytic}, Monte Carlo {mc}, error {err}"
    );
}
