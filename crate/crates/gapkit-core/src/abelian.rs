//! Normalized abelian differentials and KdV frequency vectors.
//!
//! Three families of differentials live on the curve `w² = T(z)`:
//!
//! * `dΘ = ½·P(z)/√T dz` with `P` monic of degree `n` and vanishing
//!   gap integrals (the Martin differential),
//! * `dΘ⁽¹⁾ = 3/2·Q(z)/√T dz` with `Q = z·P⁽¹⁾` monic of degree `n+1`,
//!   `Q(0) = 0`, and vanishing gap integrals (the KdV generator), and
//! * the first-kind basis `dϑ_k = O⁽ᵏ⁾(z)/√T dz`, degree `n−1`
//!   numerators normalized by `∫_{gap j} O⁽ᵏ⁾/√|T| dλ = (−1)^j·π·δ_{kj}`
//!   (the parity carries the B-cycle orientation).
//!
//! Frequencies are band integrals: `η_k = ∫_0^{a_k} dΘ` over band
//! segments, `η⁽¹⁾_k` likewise for `dΘ⁽¹⁾`, and the recentered
//! `η⁽ᵗ⁾_k = η⁽¹⁾_k − C·η_k` with `C = 3(A_Q − A_T/2)` built from the
//! subleading coefficients of `Q` and `T`.  For conditioning, all
//! moment systems are assembled on the rescaled set `z/b_1 ⊂ [0, 1]`
//! and mapped back by homogeneity (`η ~ b_1^{1/2}`, `η⁽¹⁾ ~ b_1^{3/2}`).

use crate::curve::GapSet;
use crate::linalg::Matrix;
use crate::math::FloatExt;
use crate::poly::Poly;
use crate::quad::{quad_singular, ChebSeries, SingularIntegrand, Singularity};
use crate::{Error, Result};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

/// The solved numerator polynomials of the normalized differentials,
/// in original (unscaled) coordinates.
#[derive(Debug, Clone)]
pub struct Differentials {
    /// The underlying gap set.
    pub gs: GapSet,
    /// Martin numerator: monic, degree `n`, one zero per gap.
    pub p: Poly,
    /// KdV numerator: monic, degree `n+1`, `Q(0) = 0`.
    pub q: Poly,
    /// First-kind numerators `O⁽ᵏ⁾`, degree `n−1`, `k = 1..=n`.
    pub o: Vec<Poly>,
    /// Recentering constant `C = 3(A_Q − A_T/2)`.
    pub c: f64,
    /// Recentered numerator `Q⁽ᵗ⁾ = Q − (C/3)·P`, so that
    /// `(3/2)·Q⁽ᵗ⁾/√T` integrates to `η⁽¹⁾ − C·η`.
    pub qt: Poly,
    /// Pivot-ratio conditioning diagnostic of the moment solve.
    pub pivot_ratio: f64,
}

/// Frequency vectors `η`, `η⁽¹⁾`, `η⁽ᵗ⁾` (index `k−1` ↔ gap `k`).
#[derive(Debug, Clone, PartialEq)]
pub struct Frequencies {
    /// Martin frequencies `η_k = ∫_0^{a_k} dΘ`.
    pub eta: Vec<f64>,
    /// KdV frequencies `η⁽¹⁾_k`.
    pub eta1: Vec<f64>,
    /// Recentered KdV frequencies `η⁽ᵗ⁾_k = η⁽¹⁾_k − C·η_k`.
    pub etat: Vec<f64>,
}

/// Weighted gap moment `∫_{gap j} λ^i / √|T(λ)| dλ` on the given set.
fn gap_moment(gs: &GapSet, j: usize, i: usize, tol: f64) -> Result<f64> {
    let (a, b) = (gs.a(j), gs.b(j));
    let g = move |lam: f64| lam.powi(i as i32) / gs.abs_t_without(lam, &[a, b]).sqrt();
    Ok(ChebSeries::fit(&g, a, b, tol)?.integral_weighted())
}

/// Weighted band integral `∫_{band m} f(λ)/√|T(λ)| dλ`.
fn band_integral(gs: &GapSet, m: usize, f: &dyn Fn(f64) -> f64, tol: f64) -> Result<f64> {
    let (p, q) = gs.band(m);
    let g = move |lam: f64| f(lam) / gs.abs_t_without(lam, &[p, q]).sqrt();
    Ok(ChebSeries::fit(&g, p, q, tol)?.integral_weighted())
}

impl Differentials {
    /// Solves the three moment systems for a gap set.
    #[allow(clippy::needless_range_loop)] // indices mirror the matrix notation
    pub fn solve(gs: &GapSet, tol: f64) -> Result<Differentials> {
        gs.validate()?;
        let n = gs.n();
        let b1 = gs.b1();
        let scaled = gs.scaled(1.0 / b1);

        // Moment table m[j][i] = ∫_{gap j} ζ^i/√|T̃| dζ, i = 0..=n+1.
        let mut moments = vec![vec![0.0; n + 2]; n];
        for j in 1..=n {
            for i in 0..=n + 1 {
                moments[j - 1][i] = gap_moment(&scaled, j, i, tol)?;
            }
        }
        let mut m = Matrix::zeros(n, n);
        for j in 0..n {
            for i in 0..n {
                m.set(j, i, moments[j][i]);
            }
        }

        // P̃: monic degree n, vanishing gap integrals.
        let rhs_p: Vec<f64> = (0..n).map(|j| -moments[j][n]).collect();
        let sol_p = m.solve(&rhs_p)?;
        let mut p_coeffs = sol_p.x.clone();
        p_coeffs.push(1.0);
        let p_scaled = Poly::new(p_coeffs);

        // Q̃: monic degree n+1 with Q̃(0) = 0; unknown coefficients of
        // ζ^1..ζ^n, so the moment matrix shifts one column.
        let mut mq = Matrix::zeros(n, n);
        for j in 0..n {
            for i in 0..n {
                mq.set(j, i, moments[j][i + 1]);
            }
        }
        let rhs_q: Vec<f64> = (0..n).map(|j| -moments[j][n + 1]).collect();
        let sol_q = mq.solve(&rhs_q)?;
        let mut q_coeffs = vec![0.0];
        q_coeffs.extend_from_slice(&sol_q.x);
        q_coeffs.push(1.0);
        let q_scaled = Poly::new(q_coeffs);

        // Õ⁽ᵏ⁾: degree n−1, gap-integral normalization
        // ∫_{gap j} O⁽ᵏ⁾/√|T| = (−1)^j·π·δ_{kj} (the parity carries the
        // B-cycle orientation; validated by η_k = −A_{O⁽ᵏ⁾}).
        let mut o_scaled = Vec::with_capacity(n);
        let mut pivot_ratio = sol_p.pivot_ratio.maxf(sol_q.pivot_ratio);
        for k in 0..n {
            let mut rhs = vec![0.0; n];
            rhs[k] = if (k + 1) % 2 == 0 { PI } else { -PI };
            let sol = m.solve(&rhs)?;
            pivot_ratio = pivot_ratio.maxf(sol.pivot_ratio);
            o_scaled.push(Poly::new(sol.x));
        }

        // Map back: P(z) = b1^n P̃(z/b1) etc.
        let unscale = |poly: &Poly, total_deg: f64| -> Poly {
            Poly::new(
                poly.coeffs
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| c * b1.powf(total_deg - i as f64))
                    .collect(),
            )
        };
        let p = unscale(&p_scaled, n as f64);
        let q = unscale(&q_scaled, n as f64 + 1.0);
        let o: Vec<Poly> = o_scaled
            .iter()
            .map(|ok| unscale(ok, n as f64 - 0.5))
            .collect();

        // C = 3(A_Q − A_T/2): subleading coefficients of Q and T.
        let t = gs.t_poly();
        let a_q = q.coeff(n);
        let a_t = t.coeff(2 * n);
        let c = 3.0 * (a_q - 0.5 * a_t);
        let qt = q.add_scaled(&p, -c / 3.0);

        Ok(Differentials {
            gs: gs.clone(),
            p,
            q,
            o,
            c,
            qt,
            pivot_ratio,
        })
    }

    /// Frequency vectors by band integration.
    ///
    /// On the top of band `m` the branch satisfies
    /// `√T(λ+i0) = (−1)^m·√|T|`, so each band contributes
    /// `½(−1)^m ∫ P/√|T|` to `η` (and `3/2(−1)^m ∫ Q/√|T|` to `η⁽¹⁾`);
    /// the gap pieces of `∫_0^{a_k}` vanish by normalization.
    pub fn frequencies(&self, tol: f64) -> Result<Frequencies> {
        let n = self.gs.n();
        let mut band_p = vec![0.0; n + 1]; // index m = 1..=n
        let mut band_q = vec![0.0; n + 1];
        for m in 1..=n {
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            let p = &self.p;
            let q = &self.q;
            band_p[m] = 0.5 * sign * band_integral(&self.gs, m, &|x| p.eval(x), tol)?;
            band_q[m] = 1.5 * sign * band_integral(&self.gs, m, &|x| q.eval(x), tol)?;
        }
        let mut eta = vec![0.0; n];
        let mut eta1 = vec![0.0; n];
        let mut etat = vec![0.0; n];
        for k in 1..=n {
            let e: f64 = (k..=n).map(|m| band_p[m]).sum();
            let e1: f64 = (k..=n).map(|m| band_q[m]).sum();
            eta[k - 1] = e;
            eta1[k - 1] = e1;
            etat[k - 1] = e1 - self.c * e;
        }
        Ok(Frequencies { eta, eta1, etat })
    }

    /// Residual of the leading-coefficient identity `η_k = −A_{O⁽ᵏ⁾}`
    /// (maximum over `k`), the main orientation cross-check.
    pub fn leading_coeff_residual(&self, freqs: &Frequencies) -> f64 {
        let n = self.gs.n();
        let mut worst = 0.0f64;
        for k in 0..n {
            let a_o = self.o[k].coeff(n - 1);
            worst = worst.maxf((freqs.eta[k] + a_o).abs());
        }
        worst
    }

    /// Martin function `M(λ) = Im Θ(λ)` for `λ` in a closed gap.
    ///
    /// `M ≥ 0`, vanishes at both gap endpoints, and is unimodal with
    /// its peak at the zero of `P` in the gap.
    pub fn martin_value(&self, lambda: f64, tol: f64) -> Result<f64> {
        let gs = &self.gs;
        let j = match gs.classify(lambda) {
            crate::curve::Segment::Gap(j) => j,
            crate::curve::Segment::BranchPoint => {
                // Endpoints of gaps (and 0) carry M = 0.
                return Ok(0.0);
            }
            other => {
                return Err(Error::InvalidParameter(format!(
                    "martin_value expects a closed-gap point, got {lambda} ({other:?})"
                )))
            }
        };
        let (a, b) = (gs.a(j), gs.b(j));
        // dM/dλ = (−1)^j P/(2√|T|) on gap j (positive left of the zero
        // of P); integrate from the nearer endpoint.
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let p = &self.p;
        let val = if lambda - a <= b - lambda {
            let g = move |x: f64| {
                sign * p.eval(x) / (2.0 * ((b - x) * gs.abs_t_without(x, &[a, b])).sqrt())
            };
            quad_singular(
                &SingularIntegrand {
                    p: a,
                    q: lambda,
                    kind: Singularity::Left,
                    g: &g,
                },
                tol,
            )?
        } else {
            let g = move |x: f64| {
                sign * p.eval(x) / (2.0 * ((x - a) * gs.abs_t_without(x, &[a, b])).sqrt())
            };
            -quad_singular(
                &SingularIntegrand {
                    p: lambda,
                    q: b,
                    kind: Singularity::Right,
                    g: &g,
                },
                tol,
            )?
        };
        Ok(val)
    }

    /// Zeros of `P`, one per gap, ascending in the gap index ordering
    /// (index `k−1` ↔ gap `k`).
    pub fn p_zeros(&self) -> Result<Vec<f64>> {
        let n = self.gs.n();
        let mut out = Vec::with_capacity(n);
        for k in 1..=n {
            let roots = self.p.real_roots(self.gs.a(k), self.gs.b(k));
            if roots.len() != 1 {
                return Err(Error::BracketFailure(format!(
                    "expected exactly one zero of P in gap {k}, found {}",
                    roots.len()
                )));
            }
            out.push(roots[0]);
        }
        Ok(out)
    }
}
