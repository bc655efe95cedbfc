//! Randomized property tests over sampled gap sets and divisors.
//! All randomness flows through the seeded SplitMix64 sampler, so
//! failures reproduce from the printed seed.

use gapkit_core::abel::abel_map;
use gapkit_core::abelian::Differentials;
use gapkit_core::curve::GapSet;
use gapkit_core::divisor::{companion_divisor, resolvent, WeylPair};
use gapkit_core::potential::harmonic_measure;
use gapkit_core::quad::{quad_singular, quad_smooth, Singularity, SingularIntegrand};
use gapkit_core::sampling::{random_divisor, random_gapset, SplitMix64};
use num_complex::Complex64;
use proptest::prelude::*;

fn sampled_gapset(seed: u64, n: usize) -> GapSet {
    let mut rng = SplitMix64::new(seed);
    random_gapset(&mut rng, n, 10.0, 0.02).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// Composite Gauss–Legendre quadrature integrates polynomials of
    /// degree ≤ 29 exactly (15-point rule).
    #[test]
    fn smooth_quadrature_polynomial_exactness(c in 1.0f64..3.0, k in 0usize..29) {
        let exact = c * ((2.0f64).powi(k as i32 + 1) - 1.0) / (k as f64 + 1.0);
        let got = quad_smooth(&|x: f64| c * x.powi(k as i32), 1.0, 2.0, 1e-12).unwrap();
        prop_assert!((got - exact).abs() < 1e-9 * exact.abs().max(1.0));
    }

    /// Square-root–endpoint quadrature: ∫ x^k/√((x−p)(q−x)) matches a
    /// dense midpoint-rule oracle.
    #[test]
    fn singular_quadrature_matches_midpoint_oracle(k in 0usize..6) {
        let (p, q) = (1.0, 3.0);
        let g = |x: f64| x.powi(k as i32);
        let got = quad_singular(
            &SingularIntegrand { p, q, kind: Singularity::Both, g: &g },
            1e-12,
        )
        .unwrap();
        let m = 2_000_000;
        let mut oracle = 0.0;
        for i in 0..m {
            let x = p + (q - p) * (i as f64 + 0.5) / m as f64;
            oracle += x.powi(k as i32) / ((x - p) * (q - x)).sqrt() * (q - p) / m as f64;
        }
        // The midpoint oracle itself only converges like 1/√m at the
        // endpoint singularities, so compare at its accuracy, not ours.
        prop_assert!((got - oracle).abs() < 1e-3 * oracle.abs(), "{got} vs {oracle}");
    }

    /// Frequency homogeneity: scaling the set by c scales η by √c and
    /// η⁽¹⁾ by c^{3/2}.
    #[test]
    fn frequency_homogeneity(seed in 0u64..1000, c in 1.5f64..4.0) {
        let gs = sampled_gapset(seed, 2);
        let scaled = GapSet::new(
            (1..=2).map(|k| [c * gs.a(k), c * gs.b(k)]).collect::<Vec<_>>(),
        ).unwrap();
        let f = Differentials::solve(&gs, 1e-12).unwrap().frequencies(1e-12).unwrap();
        let g = Differentials::solve(&scaled, 1e-12).unwrap().frequencies(1e-12).unwrap();
        for k in 0..2 {
            prop_assert!((g.eta[k] - c.sqrt() * f.eta[k]).abs() < 1e-8 * g.eta[k]);
            prop_assert!((g.eta1[k] - c.powf(1.5) * f.eta1[k]).abs() < 1e-8 * g.eta1[k]);
        }
    }

    /// The zeros of P interlace with the zeros of Q: between
    /// consecutive zeros of Q (which include 0) lies exactly one of P.
    #[test]
    fn p_and_q_zeros_interlace(seed in 0u64..1000) {
        let gs = sampled_gapset(seed, 3);
        let diff = Differentials::solve(&gs, 1e-12).unwrap();
        let b1 = gs.b(1);
        let mut qz = diff.q.real_roots(-0.1 * b1, 1.1 * b1);
        qz.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut pz = diff.p_zeros().unwrap();
        pz.sort_by(|a, b| a.partial_cmp(b).unwrap());
        prop_assert_eq!(qz.len(), 4); // 0 and one per gap
        prop_assert_eq!(pz.len(), 3);
        for i in 0..3 {
            prop_assert!(qz[i] < pz[i] && pz[i] < qz[i + 1],
                "zero {} of P at {} outside ({}, {})", i, pz[i], qz[i], qz[i + 1]);
        }
    }

    /// Monotone nesting of harmonic measures: E_{k+1} ⊂ E_k implies
    /// ω(E_{k+1}, x) ≤ ω(E_k, x), and all values lie in [0, 1].
    #[test]
    fn harmonic_measures_nest(seed in 0u64..1000) {
        let gs = sampled_gapset(seed, 3);
        let diff = Differentials::solve(&gs, 1e-12).unwrap();
        let mut rng = SplitMix64::new(seed ^ 0xabcdef);
        for j in 1..=3usize {
            let (a, b) = (gs.a(j), gs.b(j));
            let x = a + (b - a) * (0.2 + 0.6 * rng.next_f64());
            let w: Vec<f64> = (1..=3)
                .map(|k| harmonic_measure(&diff, k, x, 1e-12).unwrap())
                .collect();
            for wk in &w {
                prop_assert!((-1e-10..=1.0 + 1e-10).contains(wk));
            }
            prop_assert!(w[1] <= w[0] + 1e-10 && w[2] <= w[1] + 1e-10,
                "measures {:?} not nested at x={}", w, x);
        }
    }

    /// Sampled divisors always yield Herglotz resolvents and a
    /// companion divisor inside the closed gaps.
    #[test]
    fn random_divisors_behave(seed in 0u64..1000) {
        let gs = sampled_gapset(seed, 2);
        let mut rng = SplitMix64::new(seed ^ 0x5eed);
        let div = random_divisor(&mut rng, &gs, 1e-3);
        let z = Complex64::new(rng.uniform(-5.0, 15.0), rng.uniform(0.01, 2.0));
        prop_assert!(resolvent(&gs, &div, z).im > 0.0);
        let wp = WeylPair::new(&gs, &div).unwrap();
        let d1 = companion_divisor(&wp).unwrap();
        for j in 1..=2usize {
            let (lam, _) = d1.entries[j - 1];
            prop_assert!(lam >= gs.a(j) && lam <= gs.b(j));
        }
    }

    /// Abel-map antisymmetry holds for sampled divisors.
    #[test]
    fn abel_antisymmetry_random(seed in 0u64..200) {
        let gs = sampled_gapset(seed, 2);
        let diff = Differentials::solve(&gs, 1e-12).unwrap();
        let mut rng = SplitMix64::new(seed ^ 0x77);
        let div = random_divisor(&mut rng, &gs, 1e-3).validated(&gs).unwrap();
        let a = abel_map(&diff, &div, 1e-12).unwrap();
        let a_star = abel_map(&diff, &div.reflected(&gs), 1e-12).unwrap();
        prop_assert!(a_star.distance(&a.negated()) < 1e-9);
    }
}
