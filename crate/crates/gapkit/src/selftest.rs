//! The seeded self-test battery: one deterministic pass over the main
//! cross-module identities, reported as machine-readable check rows.

use crate::io::{SelftestCheck, SelftestReport, SCHEMA};
use gapkit_core::abel::abel_map;
use gapkit_core::abelian::Differentials;
use gapkit_core::adic::{
    avoidance_certificate, construct_avoiding_beta, crt_consistency, torus_sample, EtaKind,
    Rational,
};
use gapkit_core::comb::CombModel;
use gapkit_core::curve::GapSet;
use gapkit_core::divisor::{ratio_identity_residual, resolvent_real, WeylPair};
use gapkit_core::freqmap::{critical_point_sum, forward, variation_matrix};
use gapkit_core::potapov::{trace_model, trace_model_matrices, ElementaryFactor};
use gapkit_core::sampling::{random_divisor, random_gapset, SplitMix64};
use gapkit_core::Result;

fn check(name: &str, value: f64, threshold: f64, pass: bool) -> SelftestCheck {
    SelftestCheck {
        name: name.to_string(),
        value,
        threshold,
        pass,
    }
}

/// Runs the battery.  Deterministic: the report depends only on the
/// seed and the tolerance.
pub fn run(seed: u64, quad_tol: f64) -> Result<SelftestReport> {
    let mut rng = SplitMix64::new(seed);
    let mut checks = Vec::new();

    // Frequency identity and strict critical-point inequality over
    // random sets of varying size.
    let mut worst_residual = 0.0f64;
    let mut min_excess = f64::INFINITY;
    for n in 1..=3usize {
        let gs = random_gapset(&mut rng, n, 10.0, 0.02)?;
        let diff = Differentials::solve(&gs, quad_tol)?;
        let freqs = diff.frequencies(quad_tol)?;
        worst_residual = worst_residual.max(diff.leading_coeff_residual(&freqs));
        min_excess = min_excess.min(critical_point_sum(&diff)? - 1.0);
    }
    checks.push(check(
        "leading_coefficient_identity",
        worst_residual,
        1e-8,
        worst_residual <= 1e-8,
    ));
    checks.push(check(
        "critical_point_sum_excess",
        min_excess,
        1e-10,
        min_excess > 1e-10,
    ));

    // Variation matrix vs central finite differences on one instance.
    let gs = random_gapset(&mut rng, 2, 10.0, 0.05)?;
    let (diff, _, base) = forward(&gs, quad_tol)?;
    let x = variation_matrix(&diff);
    let h = 1e-6;
    let mut worst_fd = 0.0f64;
    for col in 0..4 {
        let (j, off) = (col / 2, col % 2);
        let shift = |s: f64| -> Result<Vec<f64>> {
            let mut gaps: Vec<[f64; 2]> = (1..=2).map(|k| [gs.a(k), gs.b(k)]).collect();
            gaps[j][off] += s;
            Ok(forward(&GapSet::new(gaps)?, quad_tol)?.2)
        };
        let (plus, minus) = (shift(h)?, shift(-h)?);
        for row in 0..4 {
            let fd = (plus[row] - minus[row]) / (2.0 * h);
            let an = -0.5 * x.get(row, col);
            worst_fd = worst_fd.max((fd - an).abs() / (1.0 + an.abs()));
        }
    }
    checks.push(check("variation_matrix_fd", worst_fd, 1e-5, worst_fd <= 1e-5));
    let _ = base;

    // Weyl sum identity m₊ + m₋ + 1/R = 0 and the ratio identity on a
    // random divisor.
    let div = random_divisor(&mut rng, &gs, 1e-2);
    let wp = WeylPair::new(&gs, &div)?;
    let mut worst_sum = 0.0f64;
    for _ in 0..8 {
        let s = rng.uniform(0.1, 50.0);
        let r = resolvent_real(&gs, &div, -s)?;
        let v = wp.n_plus(-s)? + wp.n_minus(-s)? + 1.0 / r;
        worst_sum = worst_sum.max(v.abs());
    }
    checks.push(check("weyl_sum_identity", worst_sum, 1e-10, worst_sum <= 1e-10));
    let ratio = ratio_identity_residual(&gs, &div, &[1.0, 10.0, 100.0], quad_tol)?;
    checks.push(check("wronskian_ratio_identity", ratio, 1e-6, ratio <= 1e-6));

    // Abel antisymmetry.
    let a = abel_map(&diff, &wp.div, quad_tol)?;
    let a_star = abel_map(&diff, &wp.div.reflected(&gs), quad_tol)?;
    let anti = a_star.distance(&a.negated());
    checks.push(check("abel_antisymmetry", anti, 1e-9, anti <= 1e-9));

    // Comb trace identity on a 100-point grid.
    let rho = rng.uniform(0.5, 2.0);
    let mut worst_trace = 0.0f64;
    for i in 0..100 {
        let mu = 0.05 + 5.0 * i as f64 / 99.0;
        let (am, bm) = trace_model_matrices(rho, mu);
        let tr = am[0][0] * bm[0][0] + am[0][1] * bm[1][0] + am[1][0] * bm[0][1] + am[1][1] * bm[1][1];
        worst_trace = worst_trace.max((0.5 * tr - trace_model(rho, mu)).abs());
    }
    checks.push(check("comb_trace_identity", worst_trace, 1e-14, worst_trace <= 1e-14));

    // Comb gap resolution sanity: μ⁺ = k exact, heights positive.
    let comb = CombModel::new(rho)?;
    let g = comb.gap(3)?;
    let comb_ok = g.mu_minus > 2.0 && g.mu_minus < 3.0 && g.upsilon > 0.0;
    checks.push(check("comb_gap_bracketing", g.mu_minus, 3.0, comb_ok));

    // Potapov φ=0 additivity: two factors compose like one with the
    // summed mass.
    let (r1, r2) = (rng.uniform(0.2, 1.0), rng.uniform(0.2, 1.0));
    let (f1, f2) = (
        ElementaryFactor::new(r1, 0.0)?,
        ElementaryFactor::new(r2, 0.0)?,
    );
    let f12 = ElementaryFactor::new(r1 + r2, 0.0)?;
    let mut worst_add = 0.0f64;
    for &z in &[-1e-2, -1e-3, -1e-4] {
        let n = wp.n_plus(z)?;
        let two_step = f2.transform_real(z, f1.transform_real(z, n));
        let one_step = f12.transform_real(z, n);
        worst_add = worst_add.max((two_step - one_step).abs());
    }
    checks.push(check("potapov_phi0_additivity", worst_add, 1e-12, worst_add <= 1e-12));

    // Adic: depth-30 certificate and CRT consistency of 100 samples.
    let (beta, _) = construct_avoiding_beta(30)?;
    let cert = avoidance_certificate(&beta, 30)?;
    checks.push(check(
        "adic_avoidance_certificate",
        cert.worst_first_hit as f64,
        30.0,
        cert.pass,
    ));
    let mut crt_bad = 0usize;
    for _ in 0..100 {
        let x = (rng.next_u64() % 100_000) as i128;
        let el = torus_sample(Rational::integer(x), EtaKind::Reciprocal, 24)?;
        crt_bad += crt_consistency(&el)?;
    }
    checks.push(check("adic_crt_consistency", crt_bad as f64, 0.0, crt_bad == 0));

    let pass = checks.iter().all(|c| c.pass);
    Ok(SelftestReport {
        schema: SCHEMA.to_string(),
        seed,
        checks,
        pass,
    })
}
