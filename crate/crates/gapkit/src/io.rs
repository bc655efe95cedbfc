//! JSON and CSV formats.  Every JSON document carries the schema tag
//! `"gapkit-1"`; CSV output uses a header row, `.` decimals, and LF
//! line endings.

use gapkit_core::adic::{AvoidanceCertificate, PAdic3, Rational};
use gapkit_core::comb::{CombDiagnostics, CombGap};
use serde::{Deserialize, Serialize};

/// Schema tag for all JSON documents.
pub const SCHEMA: &str = "gapkit-1";

fn default_schema() -> String {
    SCHEMA.to_string()
}

/// Input: a gap set, outermost gap first.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GapSetInput {
    /// Schema tag.
    #[serde(default = "default_schema")]
    pub schema: String,
    /// Gaps `[[a1,b1],…]`, decreasing.
    pub gaps: Vec<[f64; 2]>,
}

/// Input for `invert`: frequency targets plus a starting gap set.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InvertInput {
    /// Schema tag.
    #[serde(default = "default_schema")]
    pub schema: String,
    /// Target space frequencies `η`.
    pub eta: Vec<f64>,
    /// Target recentered time frequencies `η⁽ᵗ⁾`.
    pub etat: Vec<f64>,
    /// Starting gap set for the Newton iteration.
    pub initial_gaps: Vec<[f64; 2]>,
}

/// An elementary factor specification for `potapov`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FactorSpec {
    /// Point mass `ρ > 0`.
    pub rho: f64,
    /// Direction angle `φ`.
    pub phi: f64,
}

/// Input for `divisor` and `potapov`: gap set, divisor, and optional
/// factor list.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DivisorInput {
    /// Schema tag.
    #[serde(default = "default_schema")]
    pub schema: String,
    /// Gaps `[[a1,b1],…]`, decreasing.
    pub gaps: Vec<[f64; 2]>,
    /// Divisor entries `[[λ1,ε1],…]`, one per gap.
    pub divisor: Vec<(f64, i8)>,
    /// Elementary factors (only used by `potapov`).
    #[serde(default)]
    pub factors: Vec<FactorSpec>,
}

/// Output of `freq`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FreqReport {
    /// Schema tag.
    pub schema: String,
    /// Space frequencies `η_k`.
    pub eta: Vec<f64>,
    /// Raw time frequencies `η⁽¹⁾_k`.
    pub eta1: Vec<f64>,
    /// Recentered time frequencies `η⁽ᵗ⁾_k`.
    pub etat: Vec<f64>,
    /// Recentering constant `C`.
    pub c: f64,
    /// Leading-coefficient identity residual (relative).
    pub leading_coeff_residual: f64,
    /// The strict critical-point sum (must exceed 1).
    pub critical_point_sum: f64,
}

/// Output of `invert`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InvertOutput {
    /// Schema tag.
    pub schema: String,
    /// Recovered gaps.
    pub gaps: Vec<[f64; 2]>,
    /// Final frequency residual (∞-norm).
    pub residual: f64,
    /// Newton iterations used.
    pub iterations: usize,
}

/// Output of `divisor`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DivisorReport {
    /// Schema tag.
    pub schema: String,
    /// Validated divisor entries.
    pub divisor: Vec<(f64, i8)>,
    /// Companion divisor entries.
    pub companion: Vec<(f64, i8)>,
    /// Trace datum `Q₁`.
    pub q1: f64,
    /// Trace datum `Q₂`.
    pub q2: f64,
    /// Potential normalization `V₀ = Q₁/2`.
    pub v0: f64,
    /// `Q₁` recovered from resolvent asymptotics at `z = −10⁴`.
    pub q1_asymptotic: f64,
    /// `Q₂` recovered from the canonical product at `s = 10⁴`.
    pub q2_asymptotic: f64,
    /// Worst Wronskian-type ratio residual over `s ∈ {1, 10, 100}`.
    pub ratio_identity_residual: f64,
    /// Abel-map character `α_k ∈ [0, 1)`.
    pub character: Vec<f64>,
}

/// One ledger row of `potapov`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PotapovEntry {
    /// Factor mass.
    pub rho: f64,
    /// Factor direction.
    pub phi: f64,
    /// Constant term `−tan φ` of the transformed function.
    pub constant: f64,
    /// Measured slope at the finest probe.
    pub slope: f64,
    /// Slope spread between the two finest probes.
    pub spread: f64,
    /// Closed-form slope `1/(ρ cos² φ)` for comparison.
    pub predicted_slope: f64,
}

/// Output of `potapov`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PotapovReport {
    /// Schema tag.
    pub schema: String,
    /// Probe points used on the negative axis.
    pub probes: Vec<f64>,
    /// One ledger row per factor.
    pub entries: Vec<PotapovEntry>,
}

/// Output of `comb` (the JSON half; gap rows go to CSV).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CombReport {
    /// Schema tag.
    pub schema: String,
    /// Mass parameter.
    pub rho: f64,
    /// Gaps resolved.
    pub k_max: usize,
    /// Partial band-ratio sum `S₁`.
    pub s1_partial: f64,
    /// Analytic tail estimate for `S₁`.
    pub s1_tail: f64,
    /// Final gap-position increment.
    pub s2_last_increment: f64,
    /// Its predicted limit `4/(πρ)`.
    pub s2_limit: f64,
}

impl CombReport {
    /// Builds the report from diagnostics.
    pub fn new(rho: f64, k_max: usize, d: &CombDiagnostics) -> CombReport {
        CombReport {
            schema: SCHEMA.to_string(),
            rho,
            k_max,
            s1_partial: d.s1_partial,
            s1_tail: d.s1_tail,
            s2_last_increment: *d.s2_increments.last().unwrap_or(&f64::NAN),
            s2_limit: d.s2_limit,
        }
    }
}

/// CSV rows for the comb gaps: header + one row per gap, LF endings.
pub fn comb_csv(gaps: &[CombGap]) -> String {
    let mut s = String::from("k,mu_minus,mu_plus,upsilon,a,b\n");
    for g in gaps {
        s.push_str(&format!(
            "{},{},{},{},{},{}\n",
            g.k,
            g.mu_minus,
            g.k, // μ_k⁺ = k exactly
            g.upsilon,
            g.a,
            g.b
        ));
    }
    s
}

/// Output of `adic`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AdicReport {
    /// Schema tag.
    pub schema: String,
    /// Depth checked.
    pub depth: usize,
    /// The offset table `β_k` as exact rationals.
    pub beta: Vec<Rational>,
    /// Base-3 digit tables of the `β_k`.
    pub beta_digits: Vec<PAdic3>,
    /// The exhaustive finite-depth certificate.
    pub certificate: AvoidanceCertificate,
}

/// One check row of `selftest`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SelftestCheck {
    /// Check identifier.
    pub name: String,
    /// Measured value (residual, defect, …).
    pub value: f64,
    /// Threshold the value was compared against.
    pub threshold: f64,
    /// Verdict.
    pub pass: bool,
}

/// Output of `selftest`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SelftestReport {
    /// Schema tag.
    pub schema: String,
    /// Seed driving all sampling.
    pub seed: u64,
    /// All executed checks.
    pub checks: Vec<SelftestCheck>,
    /// `true` iff every check passed.
    pub pass: bool,
}

/// Serializes any report deterministically (pretty JSON + LF).
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization cannot fail");
    s.push('\n');
    s
}
