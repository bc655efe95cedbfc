//! Dense real polynomials with guaranteed real-root isolation.
//!
//! Degrees in this crate stay small (≤ 2·gaps + 1), so a dense
//! coefficient representation with Horner evaluation is both fast and
//! well conditioned.  Real roots are isolated by recursing on the
//! derivative: between consecutive critical points a polynomial is
//! monotone, so every real root is found by bisection with a certified
//! bracket.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

/// Polynomial with real coefficients, stored lowest degree first.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    /// Coefficients `c[i]` of `z^i`; trailing zeros are trimmed.
    pub coeffs: Vec<f64>,
}

impl Poly {
    /// Builds a polynomial from coefficients (lowest degree first).
    pub fn new(coeffs: Vec<f64>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    /// The zero polynomial.
    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    /// The constant `1`.
    pub fn one() -> Self {
        Poly { coeffs: vec![1.0] }
    }

    /// Monic polynomial with the given real roots.
    pub fn from_roots(roots: &[f64]) -> Self {
        let mut p = Poly::one();
        for &r in roots {
            p = p.mul(&Poly::new(vec![-r, 1.0]));
        }
        p
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(&c) if c == 0.0) {
            self.coeffs.pop();
        }
    }

    /// Degree; the zero polynomial reports degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Leading coefficient (0 for the zero polynomial).
    pub fn leading(&self) -> f64 {
        self.coeffs.last().copied().unwrap_or(0.0)
    }

    /// Horner evaluation at a real point.
    pub fn eval(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Horner evaluation at a complex point.
    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| i as f64 * c)
                .collect(),
        )
    }

    /// Product of two polynomials.
    pub fn mul(&self, other: &Poly) -> Poly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Poly::zero();
        }
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    /// `self + scale · other`.
    pub fn add_scaled(&self, other: &Poly, scale: f64) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0.0; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            out[i] += a;
        }
        for (i, &b) in other.coeffs.iter().enumerate() {
            out[i] += scale * b;
        }
        Poly::new(out)
    }

    /// Coefficient of `z^i` (0 beyond the degree).
    pub fn coeff(&self, i: usize) -> f64 {
        self.coeffs.get(i).copied().unwrap_or(0.0)
    }

    /// All real roots in `[lo, hi]`, ascending, found by
    /// derivative-recursion bisection.
    ///
    /// Roots of even multiplicity that do not produce a sign change are
    /// reported when the polynomial value at a critical point is within
    /// `1e-12` of zero relative to the local scale.
    pub fn real_roots(&self, lo: f64, hi: f64) -> Vec<f64> {
        let mut out = Vec::new();
        if self.coeffs.len() <= 1 {
            return out;
        }
        if self.coeffs.len() == 2 {
            let r = -self.coeffs[0] / self.coeffs[1];
            if r >= lo && r <= hi {
                out.push(r);
            }
            return out;
        }
        // Breakpoints: interval ends plus interior critical points.
        let crit = self.derivative().real_roots(lo, hi);
        let mut pts = Vec::with_capacity(crit.len() + 2);
        pts.push(lo);
        for c in crit {
            if c > lo && c < hi {
                pts.push(c);
            }
        }
        pts.push(hi);
        let scale = self
            .coeffs
            .iter()
            .fold(0.0f64, |m, &c| m.max(libm::fabs(c)));
        for w in pts.windows(2) {
            let (p, q) = (w[0], w[1]);
            let (fp, fq) = (self.eval(p), self.eval(q));
            if fp == 0.0 {
                push_root(&mut out, p);
            }
            if fp * fq < 0.0 {
                push_root(&mut out, self.bisect(p, q));
            } else if fq == 0.0 && q == hi {
                push_root(&mut out, q);
            } else if fp * fq > 0.0 {
                // A tangency inside (p, q) shows up as a near-zero value
                // at the enclosed critical point.
                let local = scale * libm::pow(libm::fabs(q).max(libm::fabs(p)).max(1.0), self.degree() as f64);
                if libm::fabs(fq) <= 1e-12 * local.max(1.0) && q != hi {
                    push_root(&mut out, q);
                }
            }
        }
        out
    }

    /// Bisection on a certified sign-change bracket.
    fn bisect(&self, mut p: f64, mut q: f64) -> f64 {
        let mut fp = self.eval(p);
        for _ in 0..200 {
            let m = 0.5 * (p + q);
            if m <= p || m >= q {
                break;
            }
            let fm = self.eval(m);
            if fm == 0.0 {
                return m;
            }
            if fp * fm < 0.0 {
                q = m;
            } else {
                p = m;
                fp = fm;
            }
        }
        0.5 * (p + q)
    }
}

fn push_root(out: &mut Vec<f64>, r: f64) {
    // Deduplicate endpoint/bracket coincidences.
    if let Some(&last) = out.last() {
        if (r - last).abs() <= 1e-14 * (1.0 + r.abs()) {
            return;
        }
    }
    out.push(r);
}
