//! Exact-arithmetic tests for the torus closures, the avoiding offset,
//! and the finite-depth avoidance certificate.

use gapkit_core::adic::{
    avoidance_certificate, base3_string, construct_avoiding_beta, crt_consistency,
    prefix_coverage, torus_sample, triadic_consistency, triadic_digits, triadic_subsequence,
    xi0_membership, EtaKind, Rational, TorusElement, Xi0Verdict,
};

fn r(n: i128, d: i128) -> Rational {
    Rational::new(n, d).unwrap()
}

/// Triadic sample at x = 3: α = (0, 0, 1/3, 1/9, …).
#[test]
fn triadic_sample_known_values() {
    let el = torus_sample(Rational::integer(3), EtaKind::Triadic, 6).unwrap();
    assert_eq!(el.alpha[0], Rational::zero());
    assert_eq!(el.alpha[1], Rational::zero());
    assert_eq!(el.alpha[2], r(1, 3));
    assert_eq!(el.alpha[3], r(1, 9));
    assert_eq!(el.alpha[4], r(1, 27));
    assert_eq!(triadic_consistency(&el).unwrap(), 0);

    let zero = torus_sample(Rational::zero(), EtaKind::Triadic, 6).unwrap();
    assert!(zero.alpha.iter().all(|&a| a == Rational::zero()));
}

/// Reciprocal sample at x = 6: α₂ = 0, α₃ = 0, α₄ = 1/2.
#[test]
fn reciprocal_sample_known_values() {
    let el = torus_sample(Rational::integer(6), EtaKind::Reciprocal, 12).unwrap();
    assert_eq!(el.alpha[1], Rational::zero());
    assert_eq!(el.alpha[2], Rational::zero());
    assert_eq!(el.alpha[3], r(1, 2));
    assert_eq!(crt_consistency(&el).unwrap(), 0);

    // Corrupting one entry produces at least one violation.
    let mut bad = el.clone();
    bad.alpha[5] = r(1, 7);
    assert!(crt_consistency(&bad).unwrap() >= 1);
}

/// The 3^k-subsequence of a reciprocal-kind element is a consistent
/// triadic element.
#[test]
fn subsequence_is_triadic() {
    let el = torus_sample(r(5, 1), EtaKind::Reciprocal, 81).unwrap();
    let sub = triadic_subsequence(&el).unwrap();
    assert_eq!(sub.alpha.len(), 5); // indices 1, 3, 9, 27, 81
    assert_eq!(triadic_consistency(&sub).unwrap(), 0);
    triadic_digits(&sub).unwrap();
}

/// β_k = 2/9 digit table: first digit 0, second digit 2, so the
/// shift-consistency of the digit table fails at every depth.
#[test]
fn beta_digit_pattern() {
    let (beta, digits) = construct_avoiding_beta(30).unwrap();
    assert_eq!(beta.len(), 30);
    assert!(beta.iter().all(|&b| b == r(2, 9)));
    for d in &digits {
        assert_eq!(d.digits[0], 0);
        assert_eq!(d.digits[1], 2);
    }
    assert_eq!(base3_string(beta[0], 4), "0.0200");
}

/// Depth-30 certificate: every enumerated prefix is separated from −β
/// by a full base-3 digit, and quickly (the bad arc is disjoint from
/// its shift image, so two consecutive misses are impossible).
#[test]
fn depth_30_certificate_passes() {
    let (beta, _) = construct_avoiding_beta(30).unwrap();
    let cert = avoidance_certificate(&beta, 30).unwrap();
    assert!(cert.pass, "failures: {:?}", cert.failures.len());
    assert_eq!(cert.cases, 27 * 729);
    assert!(cert.worst_first_hit <= 2, "worst {}", cert.worst_first_hit);
}

/// Perturbing β beyond position 3 preserves the verdict (openness).
#[test]
fn certificate_is_open_in_the_tail() {
    let (mut beta, _) = construct_avoiding_beta(30).unwrap();
    for b in beta.iter_mut().skip(3) {
        *b = b.add(r(1, 81)).unwrap().mod1();
    }
    let cert = avoidance_certificate(&beta, 30).unwrap();
    assert!(cert.pass);
}

/// β = 0 fails: the zero element never separates.
#[test]
fn zero_offset_fails() {
    let beta = vec![Rational::zero(); 30];
    let cert = avoidance_certificate(&beta, 30).unwrap();
    assert!(!cert.pass);
    // The zero element (α₁ = 0, all digits 0) is among the failures.
    assert!(cert
        .failures
        .iter()
        .any(|f| f.alpha1 == Rational::zero() && f.prefix.iter().all(|&d| d == 0)));
}

/// Integer samples cover all digit prefixes for shallow depths.
#[test]
fn integer_orbit_covers_prefixes() {
    for n in 2..=7 {
        assert!(prefix_coverage(n).unwrap(), "depth {n}");
    }
}

/// The float-side membership test: zero sequence is consistent, a
/// constant 1/3 tail is excluded with the first tail witness.
#[test]
fn xi0_verdicts() {
    let zeros = vec![0.0; 20];
    assert_eq!(xi0_membership(&zeros, 1e-9, 20).unwrap(), Xi0Verdict::Consistent);

    let thirds = vec![1.0 / 3.0; 20];
    match xi0_membership(&thirds, 1e-9, 20).unwrap() {
        Xi0Verdict::Excluded { witness, distance } => {
            assert_eq!(witness, 10);
            assert!((distance - 1.0 / 3.0).abs() < 1e-12);
        }
        v => panic!("expected exclusion, got {v:?}"),
    }
}

/// Exact consistency checks catch corrupted triadic tables.
#[test]
fn triadic_consistency_detects_corruption() {
    let mut el = torus_sample(r(7, 1), EtaKind::Triadic, 10).unwrap();
    assert_eq!(triadic_consistency(&el).unwrap(), 0);
    el.alpha[4] = r(1, 5);
    assert!(triadic_consistency(&el).unwrap() >= 1);
    assert!(triadic_digits(&el).is_err());
    let _ = TorusElement {
        kind: EtaKind::Triadic,
        alpha: el.alpha.clone(),
    };
    assert!(triadic_subsequence(&el).is_err());
}
