//! The frequency variation matrix and the inverse frequency map.
//!
//! The forward map sends the `2n` gap ends `(a_1, b_1, …, a_n, b_n)` to
//! the `2n` frequencies `(η_1, …, η_n, η⁽ᵗ⁾_1, …, η⁽ᵗ⁾_n)`.  Its
//! variation is captured by the `2n × 2n` matrix `X` with closed-form
//! entries at the branch points,
//!
//! * `η`-rows:    `X[k][e] = O⁽ᵏ⁾(e)·P(e)/T′(e)`,
//! * `η⁽ᵗ⁾`-rows: `X[n+k][e] = 3·O⁽ᵏ⁾(e)·Q⁽ᵗ⁾(e)/T′(e)`,
//!
//! where `e` runs over the gap ends, and perturbations `Δ` of the ends
//! move the frequencies by `δη = −½·X·Δ`.  The inverse map is a damped
//! Newton iteration on this matrix: the step solves `X·Δ = −2·r` with
//! `r = target − current`, halved until the gap ordering invariants
//! hold and the residual decreases.

use crate::abelian::{Differentials, Frequencies};
use crate::curve::GapSet;
use crate::linalg::Matrix;
use crate::math::FloatExt;
use crate::{Error, Result};
use alloc::format;
use alloc::vec::Vec;

/// Options for the Newton inversion.
#[derive(Debug, Clone)]
pub struct InvertOptions {
    /// Stop when the ∞-norm of the frequency residual drops below this.
    pub newton_tol: f64,
    /// Quadrature tolerance used for inner frequency evaluations.
    pub quad_tol: f64,
    /// Maximum Newton iterations.
    pub max_iter: usize,
}

impl Default for InvertOptions {
    fn default() -> Self {
        InvertOptions {
            newton_tol: 1e-10,
            quad_tol: 1e-12,
            max_iter: 60,
        }
    }
}

/// Result of a successful inversion.
#[derive(Debug, Clone)]
pub struct InvertReport {
    /// The recovered gap set.
    pub gs: GapSet,
    /// Final ∞-norm of the residual.
    pub residual: f64,
    /// Newton iterations used.
    pub iterations: usize,
}

/// Assembles the variation matrix `X` at the current gap set.
///
/// Column order: `a_1, b_1, a_2, b_2, …`; row order: `η_1..η_n`
/// followed by `η⁽ᵗ⁾_1..η⁽ᵗ⁾_n`.
pub fn variation_matrix(diff: &Differentials) -> Matrix {
    let gs = &diff.gs;
    let n = gs.n();
    let tp = gs.t_poly().derivative();
    let mut x = Matrix::zeros(2 * n, 2 * n);
    for k in 0..n {
        let ok = &diff.o[k];
        for j in 0..n {
            for (col_off, e) in [(0usize, gs.a(j + 1)), (1usize, gs.b(j + 1))] {
                let denom = tp.eval(e);
                let col = 2 * j + col_off;
                x.set(k, col, ok.eval(e) * diff.p.eval(e) / denom);
                x.set(n + k, col, 3.0 * ok.eval(e) * diff.qt.eval(e) / denom);
            }
        }
    }
    x
}

/// Forward map: frequencies `(η, η⁽ᵗ⁾)` of a gap set as one `2n` vector.
pub fn forward(gs: &GapSet, quad_tol: f64) -> Result<(Differentials, Frequencies, Vec<f64>)> {
    let diff = Differentials::solve(gs, quad_tol)?;
    let freqs = diff.frequencies(quad_tol)?;
    let mut v = Vec::with_capacity(2 * gs.n());
    v.extend_from_slice(&freqs.eta);
    v.extend_from_slice(&freqs.etat);
    Ok((diff, freqs, v))
}

fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |m, &x| m.maxf(x.abs()))
}

/// Checks the gap ordering invariants for a candidate endpoint vector
/// (interleaved `a_1, b_1, …`), and builds the gap set when admissible.
fn admissible(ends: &[f64]) -> Option<GapSet> {
    let n = ends.len() / 2;
    let mut gaps = Vec::with_capacity(n);
    for j in 0..n {
        gaps.push([ends[2 * j], ends[2 * j + 1]]);
    }
    GapSet::new(gaps).ok()
}

/// Inverts the frequency map: finds the gap set whose frequency vector
/// matches the target `(η, η⁽ᵗ⁾)`, starting from `initial`.
pub fn invert_frequencies(
    target_eta: &[f64],
    target_etat: &[f64],
    initial: &GapSet,
    opts: &InvertOptions,
) -> Result<InvertReport> {
    let n = initial.n();
    if target_eta.len() != n || target_etat.len() != n {
        return Err(Error::InvalidParameter(format!(
            "target frequency vectors must have length n={n}"
        )));
    }
    let mut target = Vec::with_capacity(2 * n);
    target.extend_from_slice(target_eta);
    target.extend_from_slice(target_etat);

    let mut gs = initial.clone();
    let (mut diff, _, mut current) = forward(&gs, opts.quad_tol)?;
    let mut residual: Vec<f64> = target
        .iter()
        .zip(&current)
        .map(|(t, c)| t - c)
        .collect();
    let mut rnorm = inf_norm(&residual);

    for iter in 0..opts.max_iter {
        if rnorm <= opts.newton_tol {
            return Ok(InvertReport {
                gs,
                residual: rnorm,
                iterations: iter,
            });
        }
        let x = variation_matrix(&diff);
        // Full step: X·Δ = −2·r.
        let rhs: Vec<f64> = residual.iter().map(|r| -2.0 * r).collect();
        let delta = x.solve(&rhs)?.x;

        // Damped line search: halve until the candidate is admissible
        // and the residual decreases.
        let ends: Vec<f64> = (0..n)
            .flat_map(|j| [gs.a(j + 1), gs.b(j + 1)])
            .collect();
        let mut step = 1.0f64;
        let min_step = 1e-14;
        loop {
            let cand: Vec<f64> = ends
                .iter()
                .zip(&delta)
                .map(|(e, d)| e + step * d)
                .collect();
            if let Some(cand_gs) = admissible(&cand) {
                if let Ok((cand_diff, _, cand_vec)) = forward(&cand_gs, opts.quad_tol) {
                    let cand_res: Vec<f64> = target
                        .iter()
                        .zip(&cand_vec)
                        .map(|(t, c)| t - c)
                        .collect();
                    let cand_norm = inf_norm(&cand_res);
                    if cand_norm < rnorm {
                        gs = cand_gs;
                        diff = cand_diff;
                        current = cand_vec;
                        residual = cand_res;
                        rnorm = cand_norm;
                        break;
                    }
                }
            }
            step *= 0.5;
            if step < min_step {
                return Err(Error::NewtonFailure(format!(
                    "step underflow below {min_step:e} at residual {rnorm:e}"
                )));
            }
        }
        let _ = &current;
    }
    if rnorm <= opts.newton_tol {
        Ok(InvertReport {
            gs,
            residual: rnorm,
            iterations: opts.max_iter,
        })
    } else {
        Err(Error::NewtonFailure(format!(
            "no convergence after {} iterations, residual {rnorm:e}",
            opts.max_iter
        )))
    }
}

/// Left-hand side of the strict critical-point inequality
/// `Σ_j T₁(c_j)/(P′(c_j)·Q(c_j)) > 1`, where `c_j` are the zeros of `P`
/// and `T₁ = T/z`.
pub fn critical_point_sum(diff: &Differentials) -> Result<f64> {
    let gs = &diff.gs;
    let pp = diff.p.derivative();
    let mut sum = 0.0;
    let t = gs.t_poly();
    for c in diff.p_zeros()? {
        sum += (t.eval(c) / c) / (pp.eval(c) * diff.q.eval(c));
    }
    Ok(sum)
}
