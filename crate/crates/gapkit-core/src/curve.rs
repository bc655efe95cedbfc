//! Finite-gap sets and the branch-consistent square root of
//! `T(z) = z·∏(z−a_k)(z−b_k)`.
//!
//! Gaps are indexed so that gap 1 is the rightmost:
//! `0 < a_n < b_n < … < a_1 < b_1`.  The branch of `√T` is the product
//! of principal-branch factor roots `√z·∏√(z−a_k)√(z−b_k)`; its cut lies
//! along the gaps and `(−∞, 0]`, it is real on band tops with sign
//! `(−1)^{#gaps to the right}`, and purely imaginary on gap tops and on
//! `(−∞, 0)`.  This normalization makes the reference resolvent
//! `R_{D₀}` positive on the negative axis with no extra sign factor.

#[allow(unused_imports)] // builds that link std shadow these trait methods
use crate::math::FloatExt;
use crate::poly::Poly;
use crate::{Error, Result};
use alloc::format;
use alloc::vec::Vec;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Relative tolerance used when snapping a real point to a branch
/// point.
const BRANCH_EPS: f64 = 1e-14;

/// A finite-gap set `E = [0, ∞) \ ∪_{k=1}^n (a_k, b_k)`.
///
/// Stored as `[[a_1, b_1], …, [a_n, b_n]]` in decreasing order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapSet {
    /// Gap endpoints `[a_k, b_k]`, decreasing in `k`.
    pub gaps: Vec<[f64; 2]>,
}

/// Side from which a real point on a cut is approached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Limit from the upper half-plane.
    Above,
    /// Limit from the lower half-plane.
    Below,
}

/// Classification of a real point relative to `E`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Segment {
    /// Strictly negative axis.
    NegAxis,
    /// Interior of the bounded band left of gap `k` (1-based):
    /// `(b_{k+1}, a_k)` with `b_{n+1} := 0`.
    Band(usize),
    /// Interior of gap `k` (1-based).
    Gap(usize),
    /// Interior of the unbounded band `(b_1, ∞)`.
    UnboundedBand,
    /// A branch point (0 or some `a_k`, `b_k`).
    BranchPoint,
}

/// Value of `√T` together with a branch-point flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqrtT {
    /// The branch value (0 at branch points).
    pub value: Complex64,
    /// True when the evaluation point coincides with a branch point.
    pub at_branch_point: bool,
}

impl GapSet {
    /// Validates ordering and positivity and builds the set.
    pub fn new(gaps: Vec<[f64; 2]>) -> Result<Self> {
        let gs = GapSet { gaps };
        gs.validate()?;
        Ok(gs)
    }

    /// Checks `0 < a_n < b_n < … < a_1 < b_1`.
    pub fn validate(&self) -> Result<()> {
        if self.gaps.is_empty() {
            return Err(Error::InvalidGapSet("at least one gap is required".into()));
        }
        let mut upper = f64::INFINITY;
        for (i, g) in self.gaps.iter().enumerate() {
            let (a, b) = (g[0], g[1]);
            if !(a.is_finite() && b.is_finite()) {
                return Err(Error::InvalidGapSet(format!("gap {i} is not finite")));
            }
            if !(a > 0.0 && b > a && b < upper) {
                return Err(Error::InvalidGapSet(format!(
                    "gap {} = [{a}, {b}] violates 0 < a_n < b_n < … < a_1 < b_1",
                    i + 1
                )));
            }
            upper = a;
        }
        Ok(())
    }

    /// Number of gaps.
    pub fn n(&self) -> usize {
        self.gaps.len()
    }

    /// Left endpoint of gap `k` (1-based).
    pub fn a(&self, k: usize) -> f64 {
        self.gaps[k - 1][0]
    }

    /// Right endpoint of gap `k` (1-based).
    pub fn b(&self, k: usize) -> f64 {
        self.gaps[k - 1][1]
    }

    /// Largest branch point `b_1`.
    pub fn b1(&self) -> f64 {
        self.gaps[0][1]
    }

    /// Bounded band left of gap `m`: `[b_{m+1}, a_m]` with
    /// `b_{n+1} := 0`, for `m = 1..=n`.
    pub fn band(&self, m: usize) -> (f64, f64) {
        let lo = if m == self.n() { 0.0 } else { self.b(m + 1) };
        (lo, self.a(m))
    }

    /// All branch points `0, a_n, b_n, …, a_1, b_1`, ascending.
    pub fn branch_points(&self) -> Vec<f64> {
        let mut pts = Vec::with_capacity(2 * self.n() + 1);
        pts.push(0.0);
        for k in (1..=self.n()).rev() {
            pts.push(self.a(k));
            pts.push(self.b(k));
        }
        pts
    }

    /// The polynomial `T(z) = z·∏(z−a_k)(z−b_k)`.
    pub fn t_poly(&self) -> Poly {
        Poly::from_roots(&self.branch_points())
    }

    /// Rescales all endpoints by `s > 0` (spectral dilation `z ↦ s·z`).
    pub fn scaled(&self, s: f64) -> GapSet {
        GapSet {
            gaps: self.gaps.iter().map(|g| [g[0] * s, g[1] * s]).collect(),
        }
    }

    /// Whether `x` coincides with a branch point (relative snap).
    pub fn is_branch_point(&self, x: f64) -> bool {
        self.branch_points()
            .iter()
            .any(|&r| (x - r).abs() <= BRANCH_EPS * (1.0 + r.abs()))
    }

    /// Classifies a real point.
    pub fn classify(&self, x: f64) -> Segment {
        if self.is_branch_point(x) {
            return Segment::BranchPoint;
        }
        if x < 0.0 {
            return Segment::NegAxis;
        }
        if x > self.b1() {
            return Segment::UnboundedBand;
        }
        for k in 1..=self.n() {
            if x > self.a(k) && x < self.b(k) {
                return Segment::Gap(k);
            }
        }
        // Between gaps: find the band.
        for m in 1..=self.n() {
            let (lo, hi) = self.band(m);
            if x > lo && x < hi {
                return Segment::Band(m);
            }
        }
        Segment::BranchPoint
    }

    /// Number of gaps strictly to the right of `x` (i.e. `#{k : a_k ≥ x}`).
    pub fn gaps_right_of(&self, x: f64) -> usize {
        (1..=self.n()).filter(|&k| self.a(k) >= x).count()
    }

    /// `|T(x)|` evaluated as a product of distances to branch points
    /// (stable near the roots).
    pub fn abs_t(&self, x: f64) -> f64 {
        self.branch_points()
            .iter()
            .fold(1.0, |acc, &r| acc * (x - r).abs())
    }

    /// `√|T(x)|`.
    pub fn abs_sqrt_t(&self, x: f64) -> f64 {
        self.abs_t(x).sqrt()
    }

    /// `∏ |x − r|` over branch points, skipping those within snap
    /// distance of the listed values.  Used to factor out the singular
    /// endpoints of a quadrature segment.
    pub fn abs_t_without(&self, x: f64, skip: &[f64]) -> f64 {
        self.branch_points()
            .iter()
            .filter(|&&r| {
                !skip
                    .iter()
                    .any(|&s| (r - s).abs() <= BRANCH_EPS * (1.0 + r.abs()))
            })
            .fold(1.0, |acc, &r| acc * (x - r).abs())
    }

    /// Branch-consistent `√T` at a genuinely complex point.
    ///
    /// Real points must go through [`GapSet::sqrt_t_side`]; at branch
    /// points the value is 0 and the flag is set.
    pub fn sqrt_t(&self, z: Complex64) -> SqrtT {
        if z.im == 0.0 {
            return self.sqrt_t_side(z.re, Side::Above);
        }
        let mut acc = z.sqrt();
        for g in &self.gaps {
            acc *= (z - g[0]).sqrt() * (z - g[1]).sqrt();
        }
        SqrtT {
            value: acc,
            at_branch_point: false,
        }
    }

    /// Boundary value of `√T` at a real point from the given side.
    ///
    /// On band tops the value is real with sign `(−1)^{#gaps right}`;
    /// on gap tops and on `(−∞, 0)` it is purely imaginary (conjugated
    /// for [`Side::Below`]).
    pub fn sqrt_t_side(&self, x: f64, side: Side) -> SqrtT {
        if self.is_branch_point(x) {
            return SqrtT {
                value: Complex64::new(0.0, 0.0),
                at_branch_point: true,
            };
        }
        // Principal factor roots in the limit from above: for a root
        // r < x the factor is √(x−r) > 0; for r > x it is i√(r−x).
        let mut modulus = 1.0f64;
        let mut quarter_turns = 0usize; // powers of i
        for &r in &self.branch_points() {
            modulus *= (x - r).abs().sqrt();
            if r > x {
                quarter_turns += 1;
            }
        }
        let value = match quarter_turns % 4 {
            0 => Complex64::new(modulus, 0.0),
            1 => Complex64::new(0.0, modulus),
            2 => Complex64::new(-modulus, 0.0),
            _ => Complex64::new(0.0, -modulus),
        };
        let value = match side {
            Side::Above => value,
            Side::Below => value.conj(),
        };
        SqrtT {
            value,
            at_branch_point: false,
        }
    }
}
