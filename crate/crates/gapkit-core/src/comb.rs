//! The one-parameter comb model built from the trace function
//! `f_ρ(μ) = cos πμ − ρ·μ·sin πμ`.
//!
//! For `ρ > 0` the set `{μ > 0 : |f_ρ(μ)| ≤ 1}` is a union of bands
//! whose gaps sit one per interval `(k−1, k)`: on gap `k` the folded
//! function `h_k(μ) = (−1)^k·f_ρ(μ)` rises from 1 at `μ_k⁻`, peaks at
//! `h* ≥ 1`, and returns to 1 at `μ_k⁺ = k`.  The comb height of gap
//! `k` is `υ_k = (1/π)·arccosh(h*)`.  Under the spectral map
//! `x = 1/μ²` the first `K` gaps give a finite gap set with
//! `a_k = 1/k²`, `b_k = 1/(μ_k⁻)²`, decreasing in `k` as required.
//!
//! Diagnostics: the band-ratio sum `S₁ = Σ_k 2·log(μ_{k+1}⁻/k)` with
//! per-term tail `≈ 4/(π ρ k²)`, and the gap-position increments
//! `(μ_{k+1}⁻)² − k² → 4/(π ρ)`.

use crate::curve::GapSet;
use crate::math::FloatExt;
use crate::potapov::trace_model;
use crate::{Error, Result};
use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

/// The comb model with mass parameter `ρ > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CombModel {
    /// Point mass of the underlying elementary factor.
    pub rho: f64,
}

/// One resolved gap of the comb model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CombGap {
    /// Gap index `k ≥ 1`.
    pub k: usize,
    /// Left gap end `μ_k⁻` in the `μ` variable.
    pub mu_minus: f64,
    /// Location of the interior maximum of `h_k`.
    pub mu_star: f64,
    /// Maximum `h* = max h_k ≥ 1`.
    pub h_star: f64,
    /// Comb height `υ_k = (1/π)·arccosh(h*)`.
    pub upsilon: f64,
    /// Spectral-gap left end `a_k = 1/k²`.
    pub a: f64,
    /// Spectral-gap right end `b_k = 1/(μ_k⁻)²`.
    pub b: f64,
}

/// Convergence diagnostics of the comb gap sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct CombDiagnostics {
    /// Terms `2·log(μ_{k+1}⁻/k)` for `k = 1..K−1`.
    pub s1_terms: Vec<f64>,
    /// Partial band-ratio sum `Σ` of the terms above.
    pub s1_partial: f64,
    /// Analytic tail estimate `Σ_{k≥K} 4/(π ρ k²)`.
    pub s1_tail: f64,
    /// Increments `(μ_{k+1}⁻)² − k²` for `k = 1..K−1`.
    pub s2_increments: Vec<f64>,
    /// Their predicted limit `4/(π ρ)`.
    pub s2_limit: f64,
}

impl CombModel {
    /// Validates `ρ > 0`.
    pub fn new(rho: f64) -> Result<CombModel> {
        if rho.partial_cmp(&0.0) != Some(core::cmp::Ordering::Greater) || !rho.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "comb model needs finite rho > 0, got {rho}"
            )));
        }
        Ok(CombModel { rho })
    }

    /// The folded trace function `h_k(μ) = (−1)^k·f_ρ(μ)`.
    pub fn h(&self, k: usize, mu: f64) -> f64 {
        let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
        sign * trace_model(self.rho, mu)
    }

    /// Resolves gap `k`: golden-section maximum of `h_k` on `(k−1, k)`
    /// and bisection of `h_k = 1` on `(k−1, μ*)`.
    pub fn gap(&self, k: usize) -> Result<CombGap> {
        if k == 0 {
            return Err(Error::InvalidParameter("gap index starts at 1".into()));
        }
        let (lo0, hi0) = ((k - 1) as f64, k as f64);
        // Golden-section maximum.  h_k rises from −1 at k−1 to its peak
        // and falls back to 1 at k, so it is unimodal on (k−1, k).
        let inv_phi = 0.5 * (5.0f64.sqrt() - 1.0);
        let (mut lo, mut hi) = (lo0, hi0);
        let mut x1 = hi - inv_phi * (hi - lo);
        let mut x2 = lo + inv_phi * (hi - lo);
        let (mut f1, mut f2) = (self.h(k, x1), self.h(k, x2));
        for _ in 0..200 {
            if hi - lo < 1e-13 * hi0 {
                break;
            }
            if f1 < f2 {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + inv_phi * (hi - lo);
                f2 = self.h(k, x2);
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - inv_phi * (hi - lo);
                f1 = self.h(k, x1);
            }
        }
        let mu_star = 0.5 * (lo + hi);
        let h_star = self.h(k, mu_star);
        if h_star < 1.0 {
            return Err(Error::BracketFailure(format!(
                "comb gap {k}: interior maximum {h_star} below 1"
            )));
        }
        // Bisect h_k = 1 on (k−1, μ*): h = −1 at the left end.
        let (mut lo, mut hi) = (lo0, mu_star);
        for _ in 0..200 {
            if hi - lo < 1e-15 * hi0.maxf(1.0) {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if self.h(k, mid) < 1.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mu_minus = 0.5 * (lo + hi);
        let upsilon = h_star.acosh() / PI;
        Ok(CombGap {
            k,
            mu_minus,
            mu_star,
            h_star,
            upsilon,
            a: 1.0 / ((k * k) as f64),
            b: 1.0 / (mu_minus * mu_minus),
        })
    }

    /// Exports the first `n_gaps` gaps as a finite gap set under
    /// `x = 1/μ²` (gap 1 rightmost, as the ordering requires).
    pub fn export_gapset(&self, n_gaps: usize) -> Result<GapSet> {
        if n_gaps == 0 {
            return Err(Error::InvalidParameter(
                "export_gapset needs at least one gap".into(),
            ));
        }
        let mut gaps = Vec::with_capacity(n_gaps);
        for k in 1..=n_gaps {
            let g = self.gap(k)?;
            gaps.push([g.a, g.b]);
        }
        GapSet::new(gaps)
    }

    /// Computes the convergence diagnostics over gaps `1..=k_max`.
    pub fn diagnostics(&self, k_max: usize) -> Result<CombDiagnostics> {
        if k_max < 2 {
            return Err(Error::InvalidParameter(
                "diagnostics need k_max >= 2".into(),
            ));
        }
        let mut s1_terms = Vec::with_capacity(k_max - 1);
        let mut s2_increments = Vec::with_capacity(k_max - 1);
        let mut s1_partial = 0.0;
        for k in 1..k_max {
            let g = self.gap(k + 1)?;
            let term = 2.0 * (g.mu_minus / k as f64).ln();
            s1_terms.push(term);
            s1_partial += term;
            s2_increments.push(g.mu_minus * g.mu_minus - (k * k) as f64);
        }
        // Tail Σ_{k≥K} 4/(πρk²) via the integral bracket Σ ≈ 4/(πρ)·1/(K−½).
        let s1_tail = 4.0 / (PI * self.rho) / (k_max as f64 - 0.5);
        Ok(CombDiagnostics {
            s1_terms,
            s1_partial,
            s1_tail,
            s2_increments,
            s2_limit: 4.0 / (PI * self.rho),
        })
    }
}
