//! Divisor and Weyl-function tests: Herglotz property, reference
//! divisor closed forms, companion-divisor location, the
//! Wronskian-type ratio identity, trace data versus resolvent
//! asymptotics, and the reflectionless defect.

use gapkit_core::abelian::Differentials;
use gapkit_core::curve::GapSet;
use gapkit_core::divisor::{
    companion_divisor, q1_from_asymptotics, q2_from_asymptotics, ratio_identity_residual,
    reflectionless_defect, resolvent, resolvent_real, trace_data, CanonicalProduct, Divisor,
    WeylPair,
};
use num_complex::Complex64;

fn gs1() -> GapSet {
    GapSet::new(vec![[1.0, 2.0]]).unwrap()
}

fn gs2() -> GapSet {
    GapSet::new(vec![[6.0, 9.0], [1.5, 3.0]]).unwrap()
}

fn gs3() -> GapSet {
    GapSet::new(vec![[10.0, 14.0], [4.0, 6.5], [1.0, 2.0]]).unwrap()
}

fn mid_divisor(gs: &GapSet, signs: &[i8]) -> Divisor {
    Divisor {
        entries: (1..=gs.n())
            .map(|j| (0.5 * (gs.a(j) + gs.b(j)), signs[j - 1]))
            .collect(),
    }
}

/// `R_D` maps the upper half-plane to itself and is positive on the
/// negative axis; the real evaluator agrees with the limit of the
/// complex one.
#[test]
fn resolvent_is_herglotz_and_real_limits_match() {
    for gs in [gs1(), gs2(), gs3()] {
        let signs = vec![1i8; gs.n()];
        for div in [Divisor::reference(&gs), mid_divisor(&gs, &signs)] {
            let div = div.validated(&gs).unwrap();
            for &(re, im) in &[(0.7, 0.3), (-2.0, 1.0), (5.0, 0.05), (12.0, 2.0)] {
                let z = Complex64::new(re, im);
                let r = resolvent(&gs, &div, z);
                assert!(r.im > 0.0, "Im R = {} at {z}", r.im);
            }
            for &s in &[0.5, 3.0, 40.0] {
                let rr = resolvent_real(&gs, &div, -s).unwrap();
                assert!(rr > 0.0);
                let rc = resolvent(&gs, &div, Complex64::new(-s, 1e-9));
                assert!((rc.re - rr).abs() < 1e-6 * rr.abs());
            }
            // Interior of gap 1, both sides of λ_1.
            let (a, b) = (gs.a(1), gs.b(1));
            let lam = div.entries[0].0;
            for x in [a + 0.1 * (b - a), b - 0.02 * (b - a)] {
                if (x - lam).abs() < 1e-6 {
                    continue;
                }
                let rr = resolvent_real(&gs, &div, x).unwrap();
                assert_eq!(rr > 0.0, x > lam, "sign of R at {x}");
                let rc = resolvent(&gs, &div, Complex64::new(x, 1e-9));
                assert!((rc.re - rr).abs() < 1e-5 * (1.0 + rr.abs()));
            }
        }
    }
}

/// For the reference divisor `D₀` all pole weights vanish, `m_+(0) = 0`,
/// and the companion divisor is `{(a_j, +1)}`.
#[test]
fn reference_divisor_companion_is_left_endpoints() {
    for gs in [gs1(), gs2(), gs3()] {
        let wp = WeylPair::new(&gs, &Divisor::reference(&gs)).unwrap();
        assert!(wp.poles.is_empty());
        assert_eq!(wp.m0, 0.0);
        let d1 = companion_divisor(&wp).unwrap();
        for j in 1..=gs.n() {
            let (lam, eps) = d1.entries[j - 1];
            assert!(
                (lam - gs.a(j)).abs() < 1e-10 * gs.b(1),
                "gap {j}: companion {lam}, expected a_j = {}",
                gs.a(j)
            );
            assert_eq!(eps, 1);
        }
    }
}

/// Single gap [1, 2], divisor at the midpoint: the companion zero of
/// `n_±` stays inside the closed gap and flips with ε.
#[test]
fn companion_stays_in_gap_and_depends_on_sign() {
    let gs = gs2();
    for signs in [[1i8, 1], [1, -1], [-1, 1], [-1, -1]] {
        let wp = WeylPair::new(&gs, &mid_divisor(&gs, &signs)).unwrap();
        let d1 = companion_divisor(&wp).unwrap();
        for j in 1..=gs.n() {
            let (lam, _) = d1.entries[j - 1];
            assert!(
                lam >= gs.a(j) && lam <= gs.b(j),
                "companion {lam} outside gap {j}"
            );
        }
    }
}

/// The Wronskian-type identity `n_+(−s) = −√s·L_{D₁}(−s)/L_D(−s)`:
/// exact in closed form for `D₀`, numerical for interior divisors.
#[test]
fn ratio_identity_holds() {
    let s_values = [0.3, 1.0, 7.0, 50.0];
    for gs in [gs1(), gs2()] {
        let res0 = ratio_identity_residual(&gs, &Divisor::reference(&gs), &s_values, 1e-12)
            .unwrap();
        assert!(res0 < 1e-9, "D0 residual {res0}");

        let signs = vec![-1i8; gs.n()];
        let res1 =
            ratio_identity_residual(&gs, &mid_divisor(&gs, &signs), &s_values, 1e-12).unwrap();
        assert!(res1 < 1e-7, "interior residual {res1}");
    }
}

/// `L_D(−s)·L_{D*}(−s) = ∏ (s+λ_j)/(s+b_j)` — the Green factors cancel
/// between a divisor and its reflection.
#[test]
fn product_with_reflection_is_rational() {
    let gs = gs2();
    let div = mid_divisor(&gs, &[1, -1]).validated(&gs).unwrap();
    let refl = div.reflected(&gs);
    let lp = CanonicalProduct::new(&gs, &div, 1e-12).unwrap();
    let lr = CanonicalProduct::new(&gs, &refl, 1e-12).unwrap();
    for s in [0.4, 2.2, 17.0] {
        let lhs = lp.eval_neg(s).unwrap() * lr.eval_neg(s).unwrap();
        let mut rhs = 1.0;
        for (j, &(lam, _)) in div.entries.iter().enumerate() {
            rhs *= (s + lam) / (s + gs.b(j + 1));
        }
        assert!((lhs - rhs).abs() < 1e-9 * rhs, "s={s}: {lhs} vs {rhs}");
    }
}

/// Trace data agrees with the large-`s` asymptotics of the resolvent
/// (`Q₁`) and of the canonical product (`Q₂`).
#[test]
fn trace_data_matches_asymptotics() {
    for gs in [gs2(), gs3()] {
        let diff = Differentials::solve(&gs, 1e-12).unwrap();
        let mut signs = vec![1i8; gs.n()];
        signs[0] = -1;
        let div = mid_divisor(&gs, &signs).validated(&gs).unwrap();
        let td = trace_data(&diff, &div, 1e-12).unwrap();
        assert_eq!(td.v0, 0.5 * td.q1);

        let s = 1e7;
        let q1_est = q1_from_asymptotics(&gs, &div, s).unwrap();
        assert!(
            (q1_est - td.q1).abs() < 1e-4 * (1.0 + td.q1.abs()),
            "Q1 {} vs {}",
            q1_est,
            td.q1
        );

        let lp = CanonicalProduct::new(&gs, &div, 1e-12).unwrap();
        let q2_est = q2_from_asymptotics(&lp, s).unwrap();
        assert!(
            (q2_est - td.q2).abs() < 1e-2 * (1.0 + td.q2.abs()),
            "Q2 {} vs {}",
            q2_est,
            td.q2
        );
    }
}

/// `Re(m_+ + m_−) → 0` on the bands: the reflectionless property.
#[test]
fn weyl_pair_is_reflectionless_on_bands() {
    for gs in [gs1(), gs3()] {
        let signs: Vec<i8> = (0..gs.n()).map(|j| if j % 2 == 0 { 1 } else { -1 }).collect();
        let wp = WeylPair::new(&gs, &mid_divisor(&gs, &signs)).unwrap();
        let defect = reflectionless_defect(&wp, 1e-7, 9);
        assert!(defect < 1e-4, "reflectionless defect {defect}");
    }
}
