//! Dirichlet divisors, Weyl functions, companion divisors, trace data,
//! and canonical products on the negative axis.
//!
//! A divisor places one point `(λ_j, ε_j)` in each closed gap
//! (`ε ∈ {±1}`, glued to `+1` at the endpoints).  The associated
//! resolvent-type function
//!
//! `R_D(z) = 1/(2√(−z)) · ∏ (z−λ_j)/√((z−a_j)(z−b_j))`
//!
//! is Herglotz in the upper half-plane and positive on `(−∞, 0)`.  Its
//! additive split produces the Weyl pair
//! `m_± = −1/(2R) ± Σ ε_j/(2R′(λ_j)·(λ_j−z))`, normalized to
//! `n_+ = m_+ − m_+(0)`, `n_− = m_− + m_+(0)`.  The zeros of `n_±` in
//! the closed gaps form the companion divisor `D₁`, and the canonical
//! products `L_D` tie everything together through the Wronskian-type
//! identity `n_+(−s) = −√s·L_{D₁}(−s)/L_D(−s)`.

use crate::abelian::Differentials;
use crate::curve::{GapSet, Segment};
use crate::math::FloatExt;
use crate::potential::GreenRep;
use crate::{Error, Result};
use alloc::format;
use alloc::vec::Vec;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Relative snap distance for endpoint gluing.
const END_EPS: f64 = 1e-12;

/// A Dirichlet divisor: one `(λ_j, ε_j)` per closed gap, ordered like
/// the gaps (index 0 ↔ gap 1, the rightmost).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Divisor {
    /// Entries `[λ_j, ε_j]` with `ε_j = ±1`.
    pub entries: Vec<(f64, i8)>,
}

impl Divisor {
    /// The reference divisor `D₀ = {(b_j, +1)}`.
    pub fn reference(gs: &GapSet) -> Divisor {
        Divisor {
            entries: (1..=gs.n()).map(|j| (gs.b(j), 1)).collect(),
        }
    }

    /// Validates entries against a gap set, snapping endpoint `ε` to
    /// `+1` (the gluing convention).
    pub fn validated(&self, gs: &GapSet) -> Result<Divisor> {
        if self.entries.len() != gs.n() {
            return Err(Error::InvalidDivisor(format!(
                "expected {} entries, got {}",
                gs.n(),
                self.entries.len()
            )));
        }
        let mut out = Vec::with_capacity(self.entries.len());
        for (j, &(lam, eps)) in self.entries.iter().enumerate() {
            let (a, b) = (gs.a(j + 1), gs.b(j + 1));
            if !(lam >= a && lam <= b) {
                return Err(Error::InvalidDivisor(format!(
                    "entry {j}: λ = {lam} outside closed gap [{a}, {b}]"
                )));
            }
            if eps != 1 && eps != -1 {
                return Err(Error::InvalidDivisor(format!(
                    "entry {j}: ε = {eps} not ±1"
                )));
            }
            let glued = is_endpoint(gs, j + 1, lam);
            out.push((lam, if glued { 1 } else { eps }));
        }
        Ok(Divisor { entries: out })
    }

    /// The reflected divisor `D* = {(λ_j, −ε_j)}` (endpoints stay glued).
    pub fn reflected(&self, gs: &GapSet) -> Divisor {
        Divisor {
            entries: self
                .entries
                .iter()
                .enumerate()
                .map(|(j, &(lam, eps))| {
                    if is_endpoint(gs, j + 1, lam) {
                        (lam, 1)
                    } else {
                        (lam, -eps)
                    }
                })
                .collect(),
        }
    }
}

fn is_endpoint(gs: &GapSet, j: usize, lam: f64) -> bool {
    let (a, b) = (gs.a(j), gs.b(j));
    (lam - a).abs() <= END_EPS * (1.0 + a.abs()) || (lam - b).abs() <= END_EPS * (1.0 + b.abs())
}

/// Resolvent-type function `R_D` at a complex point (principal
/// per-factor branches; Herglotz in the upper half-plane).
pub fn resolvent(gs: &GapSet, div: &Divisor, z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0) / (2.0 * (-z).sqrt());
    for (j, &(lam, _)) in div.entries.iter().enumerate() {
        let (a, b) = (gs.a(j + 1), gs.b(j + 1));
        acc *= (z - lam) / ((z - a).sqrt() * (z - b).sqrt());
    }
    acc
}

/// `R_D` at a real point outside `E` (where it is real): on gap `j` the
/// sign is that of `x − λ_j`; on `(−∞, 0)` it is positive.
pub fn resolvent_real(gs: &GapSet, div: &Divisor, x: f64) -> Result<f64> {
    match gs.classify(x) {
        Segment::NegAxis => {
            let mut acc = 1.0 / (2.0 * (-x).sqrt());
            for (j, &(lam, _)) in div.entries.iter().enumerate() {
                let (a, b) = (gs.a(j + 1), gs.b(j + 1));
                acc *= (lam - x) / ((a - x) * (b - x)).sqrt();
            }
            Ok(acc)
        }
        Segment::Gap(g) => {
            let mut acc = 1.0 / (2.0 * x.sqrt());
            for (j, &(lam, _)) in div.entries.iter().enumerate() {
                let (a, b) = (gs.a(j + 1), gs.b(j + 1));
                if j + 1 == g {
                    acc *= (x - lam) / ((x - a) * (b - x)).sqrt();
                } else {
                    acc *= (x - lam).abs() / ((x - a) * (x - b)).abs().sqrt();
                }
            }
            Ok(acc)
        }
        other => Err(Error::InvalidParameter(format!(
            "resolvent_real expects a point outside E, got {x} ({other:?})"
        ))),
    }
}

/// The additive split of `R_D`: poles, weights, and the normalization
/// constant `m_+(0)`.
#[derive(Debug, Clone)]
pub struct WeylPair {
    /// The gap set.
    pub gs: GapSet,
    /// The validated divisor.
    pub div: Divisor,
    /// Interior poles `(λ_j, ε_j, weight 1/(2R′(λ_j)))`; endpoint
    /// entries carry weight 0 and are omitted.
    pub poles: Vec<(f64, f64)>,
    /// `m_+(0) = Σ ε_j/(2R′(λ_j)·λ_j)`.
    pub m0: f64,
}

impl WeylPair {
    /// Builds the Weyl pair for a divisor.
    pub fn new(gs: &GapSet, div: &Divisor) -> Result<WeylPair> {
        let div = div.validated(gs)?;
        let mut poles = Vec::new();
        let mut m0 = 0.0;
        for (j, &(lam, eps)) in div.entries.iter().enumerate() {
            if is_endpoint(gs, j + 1, lam) {
                continue; // weight 1/(2R′) vanishes at the endpoints
            }
            // R′(λ_j) by removing the vanishing factor: all remaining
            // factors are positive on gap j, so R′(λ_j) > 0.
            let (a, b) = (gs.a(j + 1), gs.b(j + 1));
            let mut rho = 1.0 / (2.0 * lam.sqrt() * ((lam - a) * (b - lam)).sqrt());
            for (k, &(lam_k, _)) in div.entries.iter().enumerate() {
                if k == j {
                    continue;
                }
                let (ak, bk) = (gs.a(k + 1), gs.b(k + 1));
                rho *= (lam - lam_k).abs() / ((lam - ak) * (lam - bk)).abs().sqrt();
            }
            let weight = f64::from(eps) / (2.0 * rho);
            poles.push((lam, weight));
            m0 += weight / lam;
        }
        Ok(WeylPair {
            gs: gs.clone(),
            div,
            poles,
            m0,
        })
    }

    /// `m_+` at a complex point.
    pub fn m_plus(&self, z: Complex64) -> Complex64 {
        let r = resolvent(&self.gs, &self.div, z);
        let mut acc = -1.0 / (2.0 * r);
        for &(lam, w) in &self.poles {
            acc += w / (lam - z);
        }
        acc
    }

    /// `m_−` at a complex point.
    pub fn m_minus(&self, z: Complex64) -> Complex64 {
        let r = resolvent(&self.gs, &self.div, z);
        let mut acc = -1.0 / (2.0 * r);
        for &(lam, w) in &self.poles {
            acc -= w / (lam - z);
        }
        acc
    }

    /// `n_+ = m_+ − m_+(0)` at a real point outside `E`.
    pub fn n_plus(&self, x: f64) -> Result<f64> {
        let r = resolvent_real(&self.gs, &self.div, x)?;
        let mut acc = -1.0 / (2.0 * r) - self.m0;
        for &(lam, w) in &self.poles {
            acc += w / (lam - x);
        }
        Ok(acc)
    }

    /// `n_− = m_− + m_+(0)` at a real point outside `E`.
    pub fn n_minus(&self, x: f64) -> Result<f64> {
        let r = resolvent_real(&self.gs, &self.div, x)?;
        let mut acc = -1.0 / (2.0 * r) + self.m0;
        for &(lam, w) in &self.poles {
            acc -= w / (lam - x);
        }
        Ok(acc)
    }
}

/// Locates the companion divisor `D₁`: in each closed gap the unique
/// zero of `n_+` (then `ε = +1`) or of `n_−` (then `ε = −1`), found by
/// a 64-point sign scan plus bisection to `1e−12·gap length`; zeros at
/// the gap edges are snapped to the endpoint.
pub fn companion_divisor(wp: &WeylPair) -> Result<Divisor> {
    let gs = &wp.gs;
    let mut entries = Vec::with_capacity(gs.n());
    for j in 1..=gs.n() {
        let (a, b) = (gs.a(j), gs.b(j));
        let pad = 1e-9 * (b - a);
        let (pole, pole_eps) = wp.div.entries[j - 1];
        let pole_interior = !is_endpoint(gs, j, pole);

        let bisect = |f: &dyn Fn(f64) -> Result<f64>,
                      mut lo: f64,
                      mut hi: f64,
                      mut flo: f64|
         -> Result<f64> {
            while hi - lo > 1e-12 * (b - a) {
                let mid = 0.5 * (lo + hi);
                let fm = f(mid)?;
                if fm == 0.0 {
                    return Ok(mid);
                }
                if flo * fm < 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fm;
                }
            }
            Ok(0.5 * (lo + hi))
        };
        // Sign scan over a list of abscissas; `None` entries break the
        // chain (used to avoid comparing across the pole).
        let scan = |f: &dyn Fn(f64) -> Result<f64>,
                    xs: &[Option<f64>]|
         -> Result<Option<f64>> {
            let mut prev: Option<(f64, f64)> = None;
            for &ox in xs {
                let x = match ox {
                    Some(x) => x,
                    None => {
                        prev = None;
                        continue;
                    }
                };
                let v = f(x)?;
                if let Some((xp, vp)) = prev {
                    if vp * v < 0.0 {
                        return Ok(Some(bisect(f, xp, x, vp)?));
                    }
                }
                prev = Some((x, v));
            }
            Ok(None)
        };

        let mut found: Option<(f64, i8)> = None;
        for (func, eps) in [(0u8, 1i8), (1u8, -1i8)] {
            let f: &dyn Fn(f64) -> Result<f64> = if func == 0 {
                &|x| wp.n_plus(x)
            } else {
                &|x| wp.n_minus(x)
            };
            // The pole of `m_±` at an interior λ_j survives in `n_+`
            // only for ε = +1 and in `n_−` only for ε = −1 (it cancels
            // against the zero of R otherwise); on that branch a plain
            // sign scan would bisect into the pole, so exclude a window
            // around it and probe the window separately, geometrically
            // from its edges toward the pole.
            let has_pole = pole_interior
                && ((func == 0 && pole_eps == 1) || (func == 1 && pole_eps == -1));
            let m = 64usize;
            let window = 2.0 * (b - a) / m as f64;
            let coarse: Vec<Option<f64>> = (0..=m)
                .map(|i| {
                    let x = a + pad + (b - a - 2.0 * pad) * i as f64 / m as f64;
                    if has_pole && (x - pole).abs() < window {
                        None
                    } else {
                        Some(x)
                    }
                })
                .collect();
            if let Some(x) = scan(f, &coarse)? {
                found = Some((x, eps));
                break;
            }
            if has_pole {
                // Geometric probes on each side of the pole, stopping
                // short of the cancellation zone.
                for side in [1.0f64, -1.0] {
                    let xs: Vec<Option<f64>> = (0..30)
                        .map(|i| {
                            let x = pole + side * window * 0.5f64.powi(i);
                            if x > a + pad && x < b - pad {
                                Some(x)
                            } else {
                                None
                            }
                        })
                        .collect();
                    if let Some(x) = scan(f, &xs)? {
                        found = Some((x, eps));
                        break;
                    }
                }
                if found.is_some() {
                    break;
                }
            }
        }
        let entry = match found {
            Some(e) => e,
            None => {
                // The zero sits at a gap edge: pick the endpoint where
                // |n_+|·|n_−| is smallest (the vanishing branch decays
                // like √distance there), with the glued ε = +1.
                let probe = |x: f64| -> Result<f64> {
                    Ok(wp.n_plus(x)?.abs().minf(wp.n_minus(x)?.abs()))
                };
                let da = probe(a + pad)?;
                let db = probe(b - pad)?;
                if da <= db {
                    (a, 1)
                } else {
                    (b, 1)
                }
            }
        };
        entries.push(entry);
    }
    Divisor { entries }.validated(gs)
}

/// Trace-formula data of a divisor.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceData {
    /// `Q₁ = Σ ((a_j+b_j)/2 − λ_j)` (resolvent `1/z` coefficient).
    pub q1: f64,
    /// `Q₂ = Σ M(λ_j)·ε_j` (Martin-weighted signed sum).
    pub q2: f64,
    /// `V₀ = Q₁/2` (potential normalization).
    pub v0: f64,
}

/// Computes `Q₁`, `Q₂ = Σ M(λ_j) ε_j`, and `V₀ = Q₁/2`.
pub fn trace_data(diff: &Differentials, div: &Divisor, tol: f64) -> Result<TraceData> {
    let gs = &diff.gs;
    let div = div.validated(gs)?;
    let mut q1 = 0.0;
    let mut q2 = 0.0;
    for (j, &(lam, eps)) in div.entries.iter().enumerate() {
        let (a, b) = (gs.a(j + 1), gs.b(j + 1));
        q1 += 0.5 * (a + b) - lam;
        q2 += f64::from(eps) * diff.martin_value(lam, tol)?;
    }
    Ok(TraceData { q1, q2, v0: 0.5 * q1 })
}

/// Canonical product `L_D` on the negative axis, with the Green
/// representations of the interior divisor points cached.
pub struct CanonicalProduct {
    gs: GapSet,
    div: Divisor,
    /// One solved Green representation per interior entry (`None` for
    /// endpoint entries, whose Green factor is identically 1).
    reps: Vec<Option<GreenRep>>,
}

impl CanonicalProduct {
    /// Solves the Green representations for all interior entries.
    pub fn new(gs: &GapSet, div: &Divisor, tol: f64) -> Result<CanonicalProduct> {
        let div = div.validated(gs)?;
        let mut reps = Vec::with_capacity(div.entries.len());
        for (j, &(lam, _)) in div.entries.iter().enumerate() {
            if is_endpoint(gs, j + 1, lam) {
                reps.push(None);
            } else {
                reps.push(Some(GreenRep::solve(gs, lam, tol)?));
            }
        }
        Ok(CanonicalProduct {
            gs: gs.clone(),
            div,
            reps,
        })
    }

    /// `L_D(−s) = ∏ √((s+λ_j)/(s+b_j)) · exp(−ε_j·G(−s, λ_j)/2)` for
    /// `s > 0`.
    pub fn eval_neg(&self, s: f64) -> Result<f64> {
        if s <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "canonical product expects s > 0, got {s}"
            )));
        }
        let mut acc = 1.0;
        for (j, &(lam, eps)) in self.div.entries.iter().enumerate() {
            let b = self.gs.b(j + 1);
            acc *= ((s + lam) / (s + b)).sqrt();
            if let Some(rep) = &self.reps[j] {
                acc *= (-f64::from(eps) * rep.eval(-s)? / 2.0).exp();
            }
        }
        Ok(acc)
    }
}

/// Residual of the Wronskian-type identity
/// `n_+(−s) + √s · L_{D₁}(−s)/L_D(−s) = 0`.
pub fn ratio_identity_residual(
    gs: &GapSet,
    div: &Divisor,
    s_values: &[f64],
    tol: f64,
) -> Result<f64> {
    let wp = WeylPair::new(gs, div)?;
    let d1 = companion_divisor(&wp)?;
    let l_d = CanonicalProduct::new(gs, &wp.div, tol)?;
    let l_d1 = CanonicalProduct::new(gs, &d1, tol)?;
    let mut worst = 0.0f64;
    for &s in s_values {
        let n_plus = wp.n_plus(-s)?;
        let ratio = l_d1.eval_neg(s)? / l_d.eval_neg(s)?;
        worst = worst.maxf((n_plus + s.sqrt() * ratio).abs());
    }
    Ok(worst)
}

/// Estimates `Q₁` from the resolvent's large-`|z|` behavior:
/// `z·(2√(−z)·R_D(z) − 1)` at `z = −s`.
pub fn q1_from_asymptotics(gs: &GapSet, div: &Divisor, s: f64) -> Result<f64> {
    let r = resolvent_real(gs, div, -s)?;
    Ok(-s * (2.0 * s.sqrt() * r - 1.0))
}

/// Estimates `Q₂` from the canonical product: `√s·(1 − L_D(−s))`.
pub fn q2_from_asymptotics(lp: &CanonicalProduct, s: f64) -> Result<f64> {
    Ok(s.sqrt() * (1.0 - lp.eval_neg(s)?))
}

/// Reflectionless defect: `sup |Re(m_+ + m_−)|` over band probe points
/// approached from above with offset `δ`.
pub fn reflectionless_defect(wp: &WeylPair, delta: f64, probes_per_band: usize) -> f64 {
    let gs = &wp.gs;
    let mut worst = 0.0f64;
    for m in 1..=gs.n() {
        let (lo, hi) = gs.band(m);
        for i in 1..=probes_per_band {
            let x = lo + (hi - lo) * i as f64 / (probes_per_band as f64 + 1.0);
            let z = Complex64::new(x, delta);
            let v = (wp.m_plus(z) + wp.m_minus(z)).re;
            worst = worst.maxf(v.abs());
        }
    }
    worst
}
