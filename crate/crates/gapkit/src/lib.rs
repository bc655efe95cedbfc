//! File formats and batch pipelines on top of `gapkit-core`: JSON/CSV
//! schemas, one driver function per CLI subcommand, and the seeded
//! self-test battery.

#![deny(unsafe_code)]
#![warn(missing_docs)]

pub mod io;
pub mod selftest;

use gapkit_core::abel::abel_map;
use gapkit_core::abelian::Differentials;
use gapkit_core::adic::{avoidance_certificate, construct_avoiding_beta};
use gapkit_core::comb::{CombGap, CombModel};
use gapkit_core::curve::GapSet;
use gapkit_core::divisor::{
    companion_divisor, q1_from_asymptotics, q2_from_asymptotics, ratio_identity_residual,
    trace_data, CanonicalProduct, Divisor, WeylPair,
};
use gapkit_core::freqmap::{critical_point_sum, invert_frequencies, InvertOptions};
use gapkit_core::potapov::{two_term_expansion, ElementaryFactor};
use gapkit_core::Result;

use io::{
    AdicReport, CombReport, DivisorInput, DivisorReport, FreqReport, GapSetInput, InvertInput,
    InvertOutput, PotapovEntry, PotapovReport, SCHEMA,
};

fn gapset_from(gaps: &[[f64; 2]]) -> Result<GapSet> {
    GapSet::new(gaps.to_vec())
}

/// `freq`: frequencies and identity diagnostics of a gap set.
pub fn run_freq(input: &GapSetInput, quad_tol: f64) -> Result<FreqReport> {
    let gs = gapset_from(&input.gaps)?;
    let diff = Differentials::solve(&gs, quad_tol)?;
    let freqs = diff.frequencies(quad_tol)?;
    Ok(FreqReport {
        schema: SCHEMA.to_string(),
        eta: freqs.eta.clone(),
        eta1: freqs.eta1.clone(),
        etat: freqs.etat.clone(),
        c: diff.c,
        leading_coeff_residual: diff.leading_coeff_residual(&freqs),
        critical_point_sum: critical_point_sum(&diff)?,
    })
}

/// `invert`: recover a gap set from frequency targets.
pub fn run_invert(input: &InvertInput, quad_tol: f64, newton_tol: f64) -> Result<InvertOutput> {
    let start = gapset_from(&input.initial_gaps)?;
    let opts = InvertOptions {
        newton_tol,
        quad_tol,
        ..InvertOptions::default()
    };
    let report = invert_frequencies(&input.eta, &input.etat, &start, &opts)?;
    let gaps = (1..=report.gs.n())
        .map(|k| [report.gs.a(k), report.gs.b(k)])
        .collect();
    Ok(InvertOutput {
        schema: SCHEMA.to_string(),
        gaps,
        residual: report.residual,
        iterations: report.iterations,
    })
}

/// `divisor`: Weyl data, companion divisor, traces, asymptotics, and
/// the Abel character of a divisor.
pub fn run_divisor(input: &DivisorInput, quad_tol: f64) -> Result<DivisorReport> {
    let gs = gapset_from(&input.gaps)?;
    let div = Divisor {
        entries: input.divisor.clone(),
    }
    .validated(&gs)?;
    let diff = Differentials::solve(&gs, quad_tol)?;
    let wp = WeylPair::new(&gs, &div)?;
    let companion = companion_divisor(&wp)?;
    let td = trace_data(&diff, &div, quad_tol)?;
    let lp = CanonicalProduct::new(&gs, &div, quad_tol)?;
    let character = abel_map(&diff, &div, quad_tol)?;
    Ok(DivisorReport {
        schema: SCHEMA.to_string(),
        divisor: div.entries.clone(),
        companion: companion.entries.clone(),
        q1: td.q1,
        q2: td.q2,
        v0: td.v0,
        q1_asymptotic: q1_from_asymptotics(&gs, &div, 1e4)?,
        q2_asymptotic: q2_from_asymptotics(&lp, 1e4)?,
        ratio_identity_residual: ratio_identity_residual(&gs, &div, &[1.0, 10.0, 100.0], quad_tol)?,
        character: character.alpha,
    })
}

/// `comb`: resolved gaps (for CSV) plus the diagnostics report.
pub fn run_comb(rho: f64, k_max: usize) -> Result<(Vec<CombGap>, CombReport)> {
    let comb = CombModel::new(rho)?;
    let mut gaps = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        gaps.push(comb.gap(k)?);
    }
    let diag = comb.diagnostics(k_max.max(2))?;
    Ok((gaps, CombReport::new(rho, k_max, &diag)))
}

/// `potapov`: the transfer ledger for a divisor and a factor list.
pub fn run_potapov(input: &DivisorInput) -> Result<PotapovReport> {
    let gs = gapset_from(&input.gaps)?;
    let div = Divisor {
        entries: input.divisor.clone(),
    };
    let wp = WeylPair::new(&gs, &div)?;
    let probes = [-1e-2, -1e-3, -1e-4];
    let mut entries = Vec::with_capacity(input.factors.len());
    for spec in &input.factors {
        let f = ElementaryFactor::new(spec.rho, spec.phi)?;
        let mut samples = Vec::with_capacity(probes.len());
        for &z in &probes {
            samples.push((z, f.transform_real(z, wp.n_plus(z)?)));
        }
        let tt = two_term_expansion(&samples, f.constant_term())?;
        entries.push(PotapovEntry {
            rho: spec.rho,
            phi: spec.phi,
            constant: tt.constant,
            slope: tt.slope,
            spread: tt.spread,
            predicted_slope: 1.0 / (spec.rho * spec.phi.cos().powi(2)),
        });
    }
    Ok(PotapovReport {
        schema: SCHEMA.to_string(),
        probes: probes.to_vec(),
        entries,
    })
}

/// `adic`: the β table and the exhaustive avoidance certificate.
pub fn run_adic(depth: usize) -> Result<AdicReport> {
    let (beta, beta_digits) = construct_avoiding_beta(depth)?;
    let certificate = avoidance_certificate(&beta, depth)?;
    Ok(AdicReport {
        schema: SCHEMA.to_string(),
        depth,
        beta,
        beta_digits,
        certificate,
    })
}
