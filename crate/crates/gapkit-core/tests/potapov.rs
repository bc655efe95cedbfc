//! Potapov-factor tests: the J-form identity, Herglotz preservation
//! under the row action, the small-z expansion of the transformed
//! function, exact slope transfer at φ = 0, and the trace model.

use gapkit_core::curve::GapSet;
use gapkit_core::divisor::{Divisor, WeylPair};
use gapkit_core::potapov::{
    trace_model, trace_model_matrices, transferred_slope, two_term_expansion, ElementaryFactor,
};
use num_complex::Complex64;
use std::f64::consts::PI;

/// `(J − 𝔄J𝔄*)/(z − z̄) = ℰ/|z|²` holds exactly and is positive
/// semidefinite throughout the upper half-plane.
#[test]
fn j_form_identity_and_positivity() {
    for &(rho, phi) in &[(0.7, 0.0), (1.3, 0.4), (0.05, -1.2), (10.0, 1.5)] {
        let f = ElementaryFactor::new(rho, phi).unwrap();
        for &(re, im) in &[(0.0, 1.0), (2.0, 0.3), (-5.0, 0.01), (0.3, 7.0)] {
            let z = Complex64::new(re, im);
            let (resid, min_eig) = f.j_form_residual(z).unwrap();
            assert!(resid < 1e-13, "identity residual {resid} at {z}");
            assert!(min_eig > -1e-13, "min eigenvalue {min_eig} at {z}");
        }
    }
}

/// The row action sends Herglotz values to Herglotz values:
/// `Im n > 0` and `Im z > 0` imply `Im r > 0`.
#[test]
fn row_action_preserves_herglotz() {
    let gs = GapSet::new(vec![[6.0, 9.0], [1.5, 3.0]]).unwrap();
    let wp = WeylPair::new(&gs, &Divisor {
        entries: vec![(7.0, 1), (2.0, -1)],
    })
    .unwrap();
    for &(rho, phi) in &[(0.8, 0.0), (2.0, 0.9), (0.3, -0.7)] {
        let f = ElementaryFactor::new(rho, phi).unwrap();
        for &(re, im) in &[(0.5, 0.4), (-1.0, 0.02), (7.4, 0.1), (20.0, 3.0)] {
            let z = Complex64::new(re, im);
            let n = wp.m_plus(z) - Complex64::new(wp.m0, 0.0);
            assert!(n.im > 0.0);
            let r = f.transform(z, n);
            assert!(r.im > 0.0, "Im r = {} at {z}, rho={rho}, phi={phi}", r.im);
        }
    }
}

/// Small-z behavior of the transformed function:
/// `r₊(z) = −tan φ + z/(ρ cos²φ) + o(z)` when the input slope blows up.
#[test]
fn transformed_expansion_matches_closed_form() {
    let gs = GapSet::new(vec![[1.0, 2.0]]).unwrap();
    let wp = WeylPair::new(&gs, &Divisor::reference(&gs)).unwrap();
    let probes = [-1e-2, -1e-3, -1e-4];
    for &(rho, phi) in &[(0.6, 0.3), (1.5, -0.5), (0.9, 0.0)] {
        let f = ElementaryFactor::new(rho, phi).unwrap();
        let samples: Vec<(f64, f64)> = probes
            .iter()
            .map(|&z| (z, f.transform_real(z, wp.n_plus(z).unwrap())))
            .collect();
        let tt = two_term_expansion(&samples, f.constant_term()).unwrap();
        let predicted = 1.0 / (rho * phi.cos().powi(2));
        assert!(
            (tt.slope - predicted).abs() < 0.05 * predicted,
            "slope {} vs predicted {predicted} (rho={rho}, phi={phi})",
            tt.slope
        );
    }
}

/// At φ = 0 the slope transfer `1/slope(r) = 1/slope(n) − ρ` is exact
/// probe by probe, even though neither slope converges on its own.
#[test]
fn slope_transfer_is_exact_at_phi_zero() {
    let gs = GapSet::new(vec![[6.0, 9.0], [1.5, 3.0]]).unwrap();
    let wp = WeylPair::new(&gs, &Divisor {
        entries: vec![(8.0, -1), (2.5, 1)],
    })
    .unwrap();
    let rho = 1.1;
    let f = ElementaryFactor::new(rho, 0.0).unwrap();
    for &z in &[-1e-2, -1e-3, -1e-4] {
        let n = wp.n_plus(z).unwrap();
        let r = f.transform_real(z, n);
        let (sn, sr) = (n / z, r / z);
        assert!(
            (sr - transferred_slope(sn, rho)).abs() < 1e-9 * sr.abs(),
            "probe {z}: slope {sr} vs transfer {}",
            transferred_slope(sn, rho)
        );
    }
}

/// `½·tr(𝔄_ρ·𝔅(μ)) = cos πμ − ρμ·sin πμ`, with the matrices as stated.
#[test]
fn trace_model_half_trace() {
    for &(rho, mu) in &[(0.5, 0.3), (2.0, 1.7), (0.1, 4.2)] {
        let (a, b) = trace_model_matrices(rho, mu);
        let tr = a[0][0] * b[0][0] + a[0][1] * b[1][0] + a[1][0] * b[0][1] + a[1][1] * b[1][1];
        assert!((0.5 * tr - trace_model(rho, mu)).abs() < 1e-14);
        // Rotation matrix is orthogonal with determinant 1.
        let det = b[0][0] * b[1][1] - b[0][1] * b[1][0];
        assert!((det - 1.0).abs() < 1e-14);
    }
    // At integers μ = k the model takes the value (−1)^k: band edges.
    for k in 1..6 {
        let v = trace_model(0.8, k as f64);
        assert!((v - if k % 2 == 0 { 1.0 } else { -1.0 }).abs() < 1e-12);
    }
    // ρ = 0 reduces to cos πμ.
    assert!((trace_model(0.0, 0.37) - (PI * 0.37).cos()).abs() < 1e-15);
}
