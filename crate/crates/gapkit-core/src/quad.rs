//! Quadrature for integrands with inverse-square-root endpoint
//! singularities.
//!
//! The workhorse is a Chebyshev fit on the segment: with
//! `λ = m + h·cos θ` the weight `1/√((λ−p)(q−λ))` becomes the Chebyshev
//! weight, so
//!
//! * `∫_p^q g(λ)/√((λ−p)(q−λ)) dλ = π·c₀/2`, and
//! * `PV ∫_p^q g(λ)/((λ−x₀)√((λ−p)(q−λ))) dλ
//!    = (π/h)·Σ_{j≥1} c_j U_{j−1}(u₀)`,
//!
//! where `c_j` are the Chebyshev coefficients of `g` on `[p, q]` and
//! `U_j` are second-kind Chebyshev polynomials.  Node counts double
//! from 8 to 4096 until the coefficient tail drops below the requested
//! tolerance.  Smooth integrals (after substituting away single-sided
//! singularities) use composite 15-point Gauss–Legendre panels with the
//! same doubling strategy.

use crate::math::FloatExt;
use crate::{Error, Result};
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

/// Default quadrature tolerance.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Smallest and largest Chebyshev node counts tried.
const N_MIN: usize = 8;
const N_MAX: usize = 4096;

/// Which endpoints of the segment carry an inverse-square-root
/// singularity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Singularity {
    /// `1/√((λ−p)(q−λ))` — both endpoints.
    Both,
    /// `1/√(λ−p)` — left endpoint only.
    Left,
    /// `1/√(q−λ)` — right endpoint only.
    Right,
    /// Smooth integrand.
    None,
}

/// A smooth factor `g` on `[p, q]` together with the singular weight it
/// is integrated against.
pub struct SingularIntegrand<'a> {
    /// Left endpoint.
    pub p: f64,
    /// Right endpoint.
    pub q: f64,
    /// Singularity placement.
    pub kind: Singularity,
    /// Smooth factor.
    pub g: &'a dyn Fn(f64) -> f64,
}

/// Chebyshev series of a smooth function on `[p, q]`.
#[derive(Debug, Clone)]
pub struct ChebSeries {
    /// Segment endpoints.
    pub p: f64,
    /// Segment endpoints.
    pub q: f64,
    /// Coefficients; the series is `c₀/2 + Σ_{j≥1} c_j T_j(u)`.
    pub coeffs: Vec<f64>,
    /// Tail-based error estimate (absolute, on function values).
    pub tail: f64,
}

impl ChebSeries {
    /// Fits `g` on `[p, q]`, doubling the node count until the
    /// coefficient tail is below `tol` relative to the largest
    /// coefficient (or `N_MAX` is reached).
    pub fn fit(g: &dyn Fn(f64) -> f64, p: f64, q: f64, tol: f64) -> Result<ChebSeries> {
        let m = 0.5 * (p + q);
        let h = 0.5 * (q - p);
        let mut n = N_MIN;
        loop {
            // Samples at first-kind Chebyshev angles.
            let mut f = vec![0.0; n];
            for (i, fi) in f.iter_mut().enumerate() {
                let theta = (i as f64 + 0.5) * PI / n as f64;
                *fi = g(m + h * theta.cos());
            }
            let mut coeffs = vec![0.0; n];
            for (j, cj) in coeffs.iter_mut().enumerate() {
                let mut acc = 0.0;
                for (i, &fi) in f.iter().enumerate() {
                    let theta = (i as f64 + 0.5) * PI / n as f64;
                    acc += fi * (j as f64 * theta).cos();
                }
                *cj = 2.0 * acc / n as f64;
            }
            let scale = coeffs.iter().fold(0.0f64, |a, &c| a.maxf(c.abs()));
            let tail = coeffs[n.saturating_sub(4)..]
                .iter()
                .fold(0.0f64, |a, &c| a.maxf(c.abs()));
            if tail <= tol * scale.maxf(1.0) || scale == 0.0 {
                return Ok(ChebSeries { p, q, coeffs, tail });
            }
            if n >= N_MAX {
                return Err(Error::QuadratureNoConvergence {
                    estimate: tail,
                    tolerance: tol * scale.maxf(1.0),
                });
            }
            n *= 2;
        }
    }

    /// `∫_p^q g(λ)/√((λ−p)(q−λ)) dλ = π c₀ / 2`.
    pub fn integral_weighted(&self) -> f64 {
        0.5 * PI * self.coeffs[0]
    }

    /// Principal value `PV ∫_p^q g(λ)/((λ−x₀)√((λ−p)(q−λ))) dλ` for
    /// `x₀` strictly inside the segment.
    pub fn pv_weighted(&self, x0: f64) -> f64 {
        let m = 0.5 * (self.p + self.q);
        let h = 0.5 * (self.q - self.p);
        let u0 = (x0 - m) / h;
        // Σ_{j≥1} c_j U_{j−1}(u0) by forward recurrence.
        let mut acc = 0.0;
        let mut u_prev = 0.0; // U_{-1}
        let mut u_curr = 1.0; // U_0
        for &c in self.coeffs.iter().skip(1) {
            acc += c * u_curr;
            let next = 2.0 * u0 * u_curr - u_prev;
            u_prev = u_curr;
            u_curr = next;
        }
        PI * acc / h
    }

    /// Evaluates the fitted function at `x ∈ [p, q]` (Clenshaw).
    pub fn eval(&self, x: f64) -> f64 {
        let m = 0.5 * (self.p + self.q);
        let h = 0.5 * (self.q - self.p);
        let u = (x - m) / h;
        let mut b1 = 0.0;
        let mut b2 = 0.0;
        for &c in self.coeffs.iter().skip(1).rev() {
            let b0 = 2.0 * u * b1 - b2 + c;
            b2 = b1;
            b1 = b0;
        }
        0.5 * self.coeffs[0] + u * b1 - b2
    }
}

/// Integrates an integrand with the declared endpoint singularities.
///
/// Single-sided singularities are removed by the substitution
/// `λ = p + u²` (resp. `λ = q − u²`), after which the integrand is
/// smooth and composite Gauss–Legendre applies.
pub fn quad_singular(ing: &SingularIntegrand<'_>, tol: f64) -> Result<f64> {
    let (p, q, g) = (ing.p, ing.q, ing.g);
    if q.partial_cmp(&p) != Some(core::cmp::Ordering::Greater) {
        return Err(Error::InvalidParameter(alloc::format!(
            "quadrature segment [{p}, {q}] is empty"
        )));
    }
    match ing.kind {
        Singularity::Both => Ok(ChebSeries::fit(g, p, q, tol)?.integral_weighted()),
        Singularity::Left => {
            let w = (q - p).sqrt();
            quad_smooth(&|u: f64| 2.0 * g(p + u * u), 0.0, w, tol)
        }
        Singularity::Right => {
            let w = (q - p).sqrt();
            quad_smooth(&|u: f64| 2.0 * g(q - u * u), 0.0, w, tol)
        }
        Singularity::None => quad_smooth(g, p, q, tol),
    }
}

/// Composite 15-point Gauss–Legendre with panel doubling.
pub fn quad_smooth(g: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let (nodes, weights) = gl15();
    let mut prev = f64::NAN;
    let mut panels = 1usize;
    loop {
        let mut total = 0.0;
        let hp = (b - a) / panels as f64;
        for k in 0..panels {
            let lo = a + k as f64 * hp;
            let mid = lo + 0.5 * hp;
            let half = 0.5 * hp;
            let mut acc = 0.0;
            for i in 0..15 {
                acc += weights[i] * g(mid + half * nodes[i]);
            }
            total += acc * half;
        }
        if prev.is_finite() {
            let err = (total - prev).abs();
            if err <= tol * total.abs().maxf(1.0) {
                return Ok(total);
            }
        }
        if panels >= 1 << 14 {
            return Err(Error::QuadratureNoConvergence {
                estimate: (total - prev).abs(),
                tolerance: tol,
            });
        }
        prev = total;
        panels *= 2;
    }
}

/// 15-point Gauss–Legendre nodes and weights on `[-1, 1]`, computed by
/// Newton iteration on the Legendre recurrence.
fn gl15() -> ([f64; 15], [f64; 15]) {
    let n = 15usize;
    let mut nodes = [0.0f64; 15];
    let mut weights = [0.0f64; 15];
    for i in 0..n {
        // Chebyshev initial guess.
        let mut x = ((PI * (i as f64 + 0.75)) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (pn, dpn) = legendre(n, x);
            let dx = pn / dpn;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dpn) = legendre(n, x);
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dpn * dpn);
    }
    (nodes, weights)
}

/// Legendre polynomial `P_n(x)` and its derivative by the three-term
/// recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}
