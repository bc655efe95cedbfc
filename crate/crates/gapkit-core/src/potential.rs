//! Potential theory on the complement of a finite-gap set: Green
//! functions, harmonic measures, and Widom-type diagnostics.
//!
//! The Green function `G(z, λ₀)` of `Ω = ℂ \ E` is represented by a
//! third-kind abelian differential
//! `dW = N(λ) dλ / ((λ − λ₀)·S(λ))` with `S = √(−T)` (real and positive
//! up to a per-segment parity on `ℝ \ E`, purely imaginary on band
//! tops) and a numerator `N` of degree ≤ n.  The `n+1` coefficients are
//! pinned by the residue normalization at the pole and by `n` vanishing
//! real periods (ordinary gap integrals, a principal value on the gap
//! containing the pole).  `G = Re ∫ dW` is then evaluated by
//! integrating along real segments from a band edge, where `G = 0`.
//!
//! Harmonic measures `ω(E_k, ·)` of the truncations `E_k = E ∩ [0, a_k]`
//! come from the first-kind numerators `O⁽ᵏ⁾` of
//! [`crate::abelian::Differentials`].

use crate::abelian::Differentials;
use crate::curve::{GapSet, Segment};
use crate::linalg::Matrix;
use crate::math::FloatExt;
use crate::poly::Poly;
use crate::quad::{quad_singular, quad_smooth, ChebSeries, SingularIntegrand, Singularity};
use crate::{Error, Result};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

/// Minimal admissible distance from an evaluation point to the pole,
/// relative to the pole's gap length.
const POLE_EPS: f64 = 1e-8;

/// Segment parity `σ_s`: the sign of the analytic branch `S = √(−T)`
/// (continued from the upper half-plane) relative to `√|T| > 0`.
fn sigma(gs: &GapSet, seg: Segment) -> f64 {
    match seg {
        Segment::Gap(j) => {
            if (j - 1) % 2 == 0 {
                1.0
            } else {
                -1.0
            }
        }
        Segment::NegAxis => {
            if gs.n().is_multiple_of(2) {
                1.0
            } else {
                -1.0
            }
        }
        _ => 0.0,
    }
}

/// Solved representation of `G(·, λ₀)` for a fixed pole.
#[derive(Debug, Clone)]
pub struct GreenRep {
    /// The gap set.
    pub gs: GapSet,
    /// Pole location (in a gap, on the negative axis, or a branch
    /// point — the latter yields the degenerate `G ≡ 0`).
    pub lambda0: f64,
    /// Numerator polynomial of the third-kind differential (empty for
    /// a degenerate pole).
    pub numerator: Poly,
    /// Pivot-ratio diagnostic of the coefficient solve.
    pub pivot_ratio: f64,
    degenerate: bool,
    pole_seg: Segment,
    tol: f64,
}

impl GreenRep {
    /// Solves for the numerator of the Green differential with pole
    /// `λ₀` (a gap point or a negative real).
    pub fn solve(gs: &GapSet, lambda0: f64, tol: f64) -> Result<GreenRep> {
        gs.validate()?;
        let seg = gs.classify(lambda0);
        match seg {
            Segment::BranchPoint => {
                // Pole at a boundary point: G degenerates to 0.
                return Ok(GreenRep {
                    gs: gs.clone(),
                    lambda0,
                    numerator: Poly::zero(),
                    pivot_ratio: 1.0,
                    degenerate: true,
                    pole_seg: seg,
                    tol,
                });
            }
            Segment::Gap(_) | Segment::NegAxis => {}
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "green pole {lambda0} must lie in a gap or on the negative axis"
                )))
            }
        }
        let n = gs.n();
        let mut m = Matrix::zeros(n + 1, n + 1);
        let mut rhs = vec![0.0; n + 1];
        // Rows 0..n-1: vanishing real periods over the gaps.
        for k in 1..=n {
            let (a, b) = (gs.a(k), gs.b(k));
            let pole_here = matches!(seg, Segment::Gap(j) if j == k);
            for i in 0..=n {
                let entry = if pole_here {
                    // Principal value via the Chebyshev-series Hilbert
                    // transform.
                    let g =
                        move |x: f64| x.powi(i as i32) / gs.abs_t_without(x, &[a, b]).sqrt();
                    ChebSeries::fit(&g, a, b, tol)?.pv_weighted(lambda0)
                } else {
                    let g = move |x: f64| {
                        x.powi(i as i32)
                            / ((x - lambda0) * gs.abs_t_without(x, &[a, b]).sqrt())
                    };
                    ChebSeries::fit(&g, a, b, tol)?.integral_weighted()
                };
                m.set(k - 1, i, entry);
            }
        }
        // Row n: residue normalization N(λ₀) = −σ·√|T(λ₀)|.
        for i in 0..=n {
            m.set(n, i, lambda0.powi(i as i32));
        }
        rhs[n] = -sigma(gs, seg) * gs.abs_sqrt_t(lambda0);
        let sol = m.solve(&rhs)?;
        Ok(GreenRep {
            gs: gs.clone(),
            lambda0,
            numerator: Poly::new(sol.x),
            pivot_ratio: sol.pivot_ratio,
            degenerate: false,
            pole_seg: seg,
            tol,
        })
    }

    /// Evaluates `G(z, λ₀)` for real `z` outside `E`.
    ///
    /// Points of `E` (bands, branch points) return 0.
    pub fn eval(&self, z: f64) -> Result<f64> {
        if self.degenerate {
            return Ok(0.0);
        }
        let gs = &self.gs;
        let tol = self.tol;
        let lam0 = self.lambda0;
        let nn = &self.numerator;
        let seg = gs.classify(z);
        match seg {
            Segment::Band(_) | Segment::BranchPoint | Segment::UnboundedBand => Ok(0.0),
            Segment::Gap(j) => {
                let (a, b) = (gs.a(j), gs.b(j));
                if seg == self.pole_seg {
                    // Pole gap: split off the logarithm and integrate
                    // from the endpoint on the same side as z.
                    if (z - lam0).abs() < POLE_EPS * (b - a) {
                        return Err(Error::NearSingularity(format!(
                            "evaluation point {z} within {POLE_EPS:e}·gap of the pole {lam0}"
                        )));
                    }
                    let s = sigma(gs, seg);
                    if z > lam0 {
                        // base b: G = −∫_z^b (φ+1)/(λ−λ₀) − log|z−λ₀| + log|b−λ₀|
                        let g = move |x: f64| {
                            let phi_sqrt = nn.eval(x)
                                / (s * ((x - a) * gs.abs_t_without(x, &[a, b])).sqrt());
                            (phi_sqrt + (b - x).sqrt()) / (x - lam0)
                        };
                        let i = quad_singular(
                            &SingularIntegrand {
                                p: z,
                                q: b,
                                kind: Singularity::Right,
                                g: &g,
                            },
                            tol,
                        )?;
                        Ok(-i - (z - lam0).abs().ln() + (b - lam0).abs().ln())
                    } else {
                        // base a: G = ∫_a^z (φ+1)/(λ−λ₀) − log|z−λ₀| + log|a−λ₀|
                        let g = move |x: f64| {
                            let phi_sqrt = nn.eval(x)
                                / (s * ((b - x) * gs.abs_t_without(x, &[a, b])).sqrt());
                            (phi_sqrt + (x - a).sqrt()) / (x - lam0)
                        };
                        let i = quad_singular(
                            &SingularIntegrand {
                                p: a,
                                q: z,
                                kind: Singularity::Left,
                                g: &g,
                            },
                            tol,
                        )?;
                        Ok(i - (z - lam0).abs().ln() + (a - lam0).abs().ln())
                    }
                } else {
                    // Ordinary gap: integrate from the nearer band
                    // edge (both edges sit at G = 0).
                    let s = sigma(gs, seg);
                    if z - a <= b - z {
                        let g = move |x: f64| {
                            nn.eval(x)
                                / ((x - lam0) * ((b - x) * gs.abs_t_without(x, &[a, b])).sqrt())
                        };
                        let i = quad_singular(
                            &SingularIntegrand {
                                p: a,
                                q: z,
                                kind: Singularity::Left,
                                g: &g,
                            },
                            tol,
                        )?;
                        Ok(s * i)
                    } else {
                        let g = move |x: f64| {
                            nn.eval(x)
                                / ((x - lam0) * ((x - a) * gs.abs_t_without(x, &[a, b])).sqrt())
                        };
                        let i = quad_singular(
                            &SingularIntegrand {
                                p: z,
                                q: b,
                                kind: Singularity::Right,
                                g: &g,
                            },
                            tol,
                        )?;
                        Ok(-s * i)
                    }
                }
            }
            Segment::NegAxis => {
                let w = (-z).sqrt();
                if seg == self.pole_seg {
                    // Pole on the negative axis: same log split with the
                    // substitution λ = −u² (removes the 1/√λ endpoint).
                    if (z - lam0).abs() < POLE_EPS * (1.0 + lam0.abs()) {
                        return Err(Error::NearSingularity(format!(
                            "evaluation point {z} too close to the pole {lam0}"
                        )));
                    }
                    let s = sigma(gs, seg);
                    let g = move |u: f64| {
                        // u·(φ(−u²) + 1) is smooth at u = 0.
                        let prod: f64 = gs
                            .gaps
                            .iter()
                            .fold(1.0, |acc, gg| acc * (u * u + gg[0]) * (u * u + gg[1]));
                        let u_phi = nn.eval(-u * u) / (s * prod.sqrt());
                        (u_phi + u) / (-u * u - lam0)
                    };
                    let i = -2.0 * quad_smooth(&g, 0.0, w, tol)?;
                    Ok(i - (z - lam0).abs().ln() + lam0.abs().ln())
                } else {
                    let s = sigma(gs, Segment::NegAxis);
                    let g = move |u: f64| {
                        let prod: f64 = gs
                            .gaps
                            .iter()
                            .fold(1.0, |acc, gg| acc * (u * u + gg[0]) * (u * u + gg[1]));
                        nn.eval(-u * u) / ((-u * u - lam0) * prod.sqrt())
                    };
                    Ok(-2.0 * s * quad_smooth(&g, 0.0, w, tol)?)
                }
            }
        }
    }
}

/// Green function `G(z, λ₀)` for real `z` outside `E` (one-shot
/// convenience around [`GreenRep`]).
pub fn green_value(gs: &GapSet, z: f64, lambda0: f64, tol: f64) -> Result<f64> {
    GreenRep::solve(gs, lambda0, tol)?.eval(z)
}

/// `G(−s, λ₀)·√s / 2`, which converges to the Martin value `M(λ₀)` as
/// `s → ∞`.
pub fn green_asymptotic_ratio(gs: &GapSet, lambda0: f64, s: f64, tol: f64) -> Result<f64> {
    Ok(green_value(gs, -s, lambda0, tol)? * s.sqrt() / 2.0)
}

/// Harmonic measure `ω(E_k, z)` of the truncation `E_k = E ∩ [0, a_k]`
/// at a real point.
///
/// Boundary points of `E` return the indicator of `E_k`; on gaps and on
/// the negative axis the value interpolates via integrals of
/// `O⁽ᵏ⁾/√|T|` with the parity `(−1)^{j−k}` fixed by the branch (so the
/// result is continuous and lies in `[0, 1]`).
pub fn harmonic_measure(diff: &Differentials, k: usize, z: f64, tol: f64) -> Result<f64> {
    let gs = &diff.gs;
    let n = gs.n();
    if k < 1 || k > n {
        return Err(Error::InvalidParameter(format!(
            "harmonic measure index k={k} outside 1..={n}"
        )));
    }
    let ok = &diff.o[k - 1];
    match gs.classify(z) {
        Segment::Band(_) | Segment::BranchPoint => Ok(if z <= gs.a(k) { 1.0 } else { 0.0 }),
        Segment::UnboundedBand => Ok(0.0),
        Segment::Gap(j) => {
            let (a, b) = (gs.a(j), gs.b(j));
            // Indicator of the band right of gap j.
            let ind = if j > k { 1.0 } else { 0.0 };
            let parity = if (j - 1) % 2 == 0 { 1.0 } else { -1.0 };
            if z - a <= b - z {
                // Integrate from the left edge, whose boundary value is
                // the indicator of band j (in E_k iff j ≥ k).
                let ind_left = if j >= k { 1.0 } else { 0.0 };
                let g =
                    move |x: f64| ok.eval(x) / ((b - x) * gs.abs_t_without(x, &[a, b])).sqrt();
                let i = quad_singular(
                    &SingularIntegrand {
                        p: a,
                        q: z,
                        kind: Singularity::Left,
                        g: &g,
                    },
                    tol,
                )?;
                Ok(ind_left + parity / PI * i)
            } else {
                let g =
                    move |x: f64| ok.eval(x) / ((x - a) * gs.abs_t_without(x, &[a, b])).sqrt();
                // ∫_{b_j}^z = −∫_z^{b_j}, singular at b_j.
                let i = -quad_singular(
                    &SingularIntegrand {
                        p: z,
                        q: b,
                        kind: Singularity::Right,
                        g: &g,
                    },
                    tol,
                )?;
                Ok(ind + parity / PI * i)
            }
        }
        Segment::NegAxis => {
            let parity = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
            let w = (-z).sqrt();
            let g = move |u: f64| {
                let prod: f64 = gs
                    .gaps
                    .iter()
                    .fold(1.0, |acc, gg| acc * (u * u + gg[0]) * (u * u + gg[1]));
                ok.eval(-u * u) / prod.sqrt()
            };
            // ∫_0^z O⁽ᵏ⁾/√|T| dλ = −2·∫_0^{√(−z)} … du under λ = −u².
            let i = -2.0 * quad_smooth(&g, 0.0, w, tol)?;
            Ok(1.0 + parity / PI * i)
        }
    }
}

/// Critical points of `G(·, z₀)` (one interior maximum of the Green
/// function restricted to each gap) and the finite Widom sum
/// `Σ_j G(c̃_j, z₀)`.
#[derive(Debug, Clone)]
pub struct WidomDiagnostic {
    /// Critical points, one per gap (index `k−1` ↔ gap `k`).
    pub critical_points: Vec<f64>,
    /// `Σ_j G(c̃_j, z₀)`.
    pub sum: f64,
}

/// Computes the finite Widom sum for the pole `z₀` (default −1 in the
/// CLI), by golden-section maximization of `G` on each gap.
pub fn widom_diagnostic(gs: &GapSet, z0: f64, tol: f64) -> Result<WidomDiagnostic> {
    let rep = GreenRep::solve(gs, z0, tol)?;
    let inv_phi = 0.5 * (5.0f64.sqrt() - 1.0);
    let mut pts = Vec::with_capacity(gs.n());
    let mut sum = 0.0;
    for j in 1..=gs.n() {
        let (a, b) = (gs.a(j), gs.b(j));
        let pad = POLE_EPS.maxf(1e-9) * (b - a);
        let (mut lo, mut hi) = (a + pad, b - pad);
        let mut x1 = hi - inv_phi * (hi - lo);
        let mut x2 = lo + inv_phi * (hi - lo);
        let mut f1 = rep.eval(x1)?;
        let mut f2 = rep.eval(x2)?;
        for _ in 0..80 {
            if hi - lo < 1e-11 * (b - a) {
                break;
            }
            if f1 < f2 {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + inv_phi * (hi - lo);
                f2 = rep.eval(x2)?;
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - inv_phi * (hi - lo);
                f1 = rep.eval(x1)?;
            }
        }
        let c = 0.5 * (lo + hi);
        pts.push(c);
        sum += rep.eval(c)?;
    }
    Ok(WidomDiagnostic {
        critical_points: pts,
        sum,
    })
}
