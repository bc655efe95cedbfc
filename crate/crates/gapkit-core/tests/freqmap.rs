//! Frequency-map tests: finite-difference check of the variation
//! matrix, Newton round-trip recovery, and the critical-point sum.

use gapkit_core::curve::GapSet;
use gapkit_core::freqmap::{
    critical_point_sum, forward, invert_frequencies, variation_matrix, InvertOptions,
};

fn gs2() -> GapSet {
    GapSet::new(vec![[6.0, 9.0], [1.5, 3.0]]).unwrap()
}

fn gs3() -> GapSet {
    GapSet::new(vec![[10.0, 14.0], [4.0, 6.5], [1.0, 2.0]]).unwrap()
}

/// `δη = −½·X·Δ`: compare each column of `X` against a central finite
/// difference of the forward map in that endpoint.
#[test]
fn variation_matrix_matches_finite_differences() {
    let tol = 1e-12;
    for gs in [gs2(), gs3()] {
        let n = gs.n();
        let (diff, _, _) = forward(&gs, tol).unwrap();
        let x = variation_matrix(&diff);
        let h = 1e-6;
        for col in 0..2 * n {
            let (j, off) = (col / 2, col % 2);
            let perturb = |s: f64| -> Vec<f64> {
                let mut gaps: Vec<[f64; 2]> =
                    (1..=n).map(|k| [gs.a(k), gs.b(k)]).collect();
                gaps[j][off] += s;
                let g = GapSet::new(gaps).unwrap();
                forward(&g, tol).unwrap().2
            };
            let plus = perturb(h);
            let minus = perturb(-h);
            for row in 0..2 * n {
                let fd = (plus[row] - minus[row]) / (2.0 * h);
                let analytic = -0.5 * x.get(row, col);
                let scale = 1.0 + analytic.abs();
                assert!(
                    (fd - analytic).abs() / scale < 1e-5,
                    "entry ({row},{col}): fd {fd} vs analytic {analytic}"
                );
            }
        }
    }
}

/// Perturb a gap set, then recover it from the frequencies of the
/// original via Newton inversion.
#[test]
fn newton_recovers_gap_set_from_frequencies() {
    for gs in [gs2(), gs3()] {
        let n = gs.n();
        let (_, freqs, _) = forward(&gs, 1e-12).unwrap();

        let gaps: Vec<[f64; 2]> = (1..=n)
            .map(|k| {
                let (a, b) = (gs.a(k), gs.b(k));
                let w = b - a;
                [a + 0.07 * w, b - 0.05 * w]
            })
            .collect();
        let start = GapSet::new(gaps).unwrap();

        let report =
            invert_frequencies(&freqs.eta, &freqs.etat, &start, &InvertOptions::default())
                .unwrap();
        assert!(report.residual <= 1e-10, "residual {}", report.residual);
        for k in 1..=n {
            assert!(
                (report.gs.a(k) - gs.a(k)).abs() < 1e-8,
                "a_{k}: {} vs {}",
                report.gs.a(k),
                gs.a(k)
            );
            assert!(
                (report.gs.b(k) - gs.b(k)).abs() < 1e-8,
                "b_{k}: {} vs {}",
                report.gs.b(k),
                gs.b(k)
            );
        }
    }
}

/// The critical-point sum is strictly greater than 1.
#[test]
fn critical_point_sum_exceeds_one() {
    for gs in [
        GapSet::new(vec![[1.0, 2.0]]).unwrap(),
        gs2(),
        gs3(),
        GapSet::new(vec![[100.0, 101.0], [50.0, 50.5], [1.0, 1.2]]).unwrap(),
    ] {
        let (diff, _, _) = forward(&gs, 1e-12).unwrap();
        let s = critical_point_sum(&diff).unwrap();
        assert!(s > 1.0 + 1e-10, "critical-point sum {s} not > 1");
    }
}
