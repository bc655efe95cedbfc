//! The Abel map from divisors to the torus of characters.
//!
//! Coordinate `k` of the map is built from harmonic measures of the
//! truncated sets `E_k = E ∩ [0, a_k]`:
//!
//! `𝒜_k(D) = ½ Σ_j (ω(E_k, λ_j) − ω(E_k, b_j)) · ε_j  (mod 1)`,
//!
//! so the reference divisor `D₀ = {(b_j, +1)}` maps to `0` and
//! reflection `D ↦ D*` negates the map.

use crate::abelian::Differentials;
use crate::divisor::Divisor;
use crate::math::FloatExt;
use crate::potential::harmonic_measure;
use crate::{Error, Result};
use alloc::format;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

/// A point on the `n`-torus, coordinates in `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Character {
    /// Torus coordinates `α_k ∈ [0, 1)`.
    pub alpha: Vec<f64>,
}

impl Character {
    /// Wraps raw coordinates into `[0, 1)`.
    pub fn new(raw: Vec<f64>) -> Character {
        Character {
            alpha: raw.into_iter().map(wrap_unit).collect(),
        }
    }

    /// The negated character `−α` (coordinatewise, mod 1).
    pub fn negated(&self) -> Character {
        Character::new(self.alpha.iter().map(|&a| -a).collect())
    }

    /// Torus distance to another character: `max_k dist_T(α_k, β_k)`.
    pub fn distance(&self, other: &Character) -> f64 {
        self.alpha
            .iter()
            .zip(&other.alpha)
            .fold(0.0f64, |m, (&a, &b)| m.maxf(circle_dist(a, b)))
    }
}

/// Wraps into `[0, 1)`.
pub fn wrap_unit(x: f64) -> f64 {
    let f = x - x.floor();
    if f >= 1.0 {
        0.0
    } else {
        f
    }
}

/// Distance on the circle `R/Z`.
pub fn circle_dist(a: f64, b: f64) -> f64 {
    let d = wrap_unit(a - b);
    d.minf(1.0 - d)
}

/// Harmonic measure `ω(E_k, x)` extended to the closed gaps: at a
/// branch point the interpolation is evaluated by its limit, which is
/// the indicator of `E_k`.
fn omega(diff: &Differentials, k: usize, x: f64, tol: f64) -> Result<f64> {
    let gs = &diff.gs;
    // Branch-point limits: ω(E_k, ·) is 1 on E_k and 0 on E ∖ E_k.
    for j in 1..=gs.n() {
        let snap = 1e-12 * (1.0 + x.abs());
        if (x - gs.a(j)).abs() <= snap {
            return Ok(if j >= k { 1.0 } else { 0.0 });
        }
        if (x - gs.b(j)).abs() <= snap {
            return Ok(if j > k { 1.0 } else { 0.0 });
        }
    }
    harmonic_measure(diff, k, x, tol)
}

/// The Abel map `𝒜(D)` of a divisor.
pub fn abel_map(diff: &Differentials, div: &Divisor, tol: f64) -> Result<Character> {
    let gs = &diff.gs;
    let div = div.validated(gs)?;
    let n = gs.n();
    let mut alpha = Vec::with_capacity(n);
    for k in 1..=n {
        let mut acc = 0.0;
        for (j, &(lam, eps)) in div.entries.iter().enumerate() {
            let w_lam = omega(diff, k, lam, tol)?;
            let w_b = omega(diff, k, gs.b(j + 1), tol)?;
            acc += 0.5 * (w_lam - w_b) * f64::from(eps);
        }
        alpha.push(acc);
    }
    Ok(Character::new(alpha))
}

/// Direction field on the torus: the frequency vector `η` reduced to
/// torus increments `t ↦ α + t·η/(2π) · …` is handled by the caller;
/// this helper just wraps a linear flow sample `α + t·v`.
pub fn flow_sample(start: &Character, v: &[f64], t: f64) -> Result<Character> {
    if v.len() != start.alpha.len() {
        return Err(Error::InvalidParameter(format!(
            "flow direction has length {}, expected {}",
            v.len(),
            start.alpha.len()
        )));
    }
    Ok(Character::new(
        start
            .alpha
            .iter()
            .zip(v)
            .map(|(&a, &vi)| a + t * vi)
            .collect(),
    ))
}
