//! Elementary Potapov factors, their action on Weyl functions, and the
//! rank-one trace model behind the comb construction.
//!
//! With the signature matrix `J = [[0, 1], [−1, 0]]`, an elementary
//! factor with mass `ρ > 0` at the origin in direction `φ` is
//!
//! `𝔄(z) = I − (1/z)·ℰ·J`,  `ℰ = ρ·(cos φ, sin φ)ᵀ(cos φ, sin φ)`,
//!
//! which is `J`-inner in the upper half-plane:
//! `(J − 𝔄(z)·J·𝔄(z)*)/(z − z̄) = ℰ/|z|² ⪰ 0`.  Because `(ℰJ)² = 0`
//! the inverse is `𝔄⁻¹(z) = I + (1/z)·ℰ·J`, and it is the inverse that
//! acts on Herglotz functions by rows,
//!
//! `r₊ = (n₊·𝔅₁₁ + 𝔅₂₁)/(n₊·𝔅₁₂ + 𝔅₂₂)`,  `𝔅 = 𝔄⁻¹`,
//!
//! increasing the row form `(1/i)·v𝔅J𝔅*v*` by `2·Im z·(vℰv*)/|z|²` and
//! hence preserving `Im > 0`.  For `φ = 0` this is the point-mass shift
//! `1/r₊ = 1/n₊ + ρ/z`.

use crate::math::FloatExt;
use crate::{Error, Result};
use alloc::format;
use num_complex::Complex64;

/// A 2×2 complex matrix, rows-of-arrays.
pub type Mat2 = [[Complex64; 2]; 2];

/// The signature matrix `J = [[0, 1], [−1, 0]]`.
pub fn j_matrix() -> Mat2 {
    let (o, l) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
    [[o, l], [-l, o]]
}

fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut c = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (i, row) in c.iter_mut().enumerate() {
        for (j, cij) in row.iter_mut().enumerate() {
            *cij = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

fn mat_adjoint(a: &Mat2) -> Mat2 {
    [
        [a[0][0].conj(), a[1][0].conj()],
        [a[0][1].conj(), a[1][1].conj()],
    ]
}

/// An elementary factor: mass `ρ > 0` in direction `φ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElementaryFactor {
    /// Point mass.
    pub rho: f64,
    /// Direction angle.
    pub phi: f64,
}

impl ElementaryFactor {
    /// Validates `ρ > 0`.
    pub fn new(rho: f64, phi: f64) -> Result<ElementaryFactor> {
        if rho.partial_cmp(&0.0) != Some(core::cmp::Ordering::Greater)
            || !rho.is_finite()
            || !phi.is_finite()
        {
            return Err(Error::InvalidParameter(format!(
                "elementary factor needs finite rho > 0 and phi, got rho={rho}, phi={phi}"
            )));
        }
        Ok(ElementaryFactor { rho, phi })
    }

    /// The rank-one form `ℰ = ρ·vvᵀ`, `v = (cos φ, sin φ)`.
    pub fn form(&self) -> [[f64; 2]; 2] {
        let (c, s) = (self.phi.cos(), self.phi.sin());
        [
            [self.rho * c * c, self.rho * c * s],
            [self.rho * s * c, self.rho * s * s],
        ]
    }

    /// The factor matrix `𝔄(z) = I − (1/z)·ℰ·J`.
    pub fn matrix(&self, z: Complex64) -> Mat2 {
        let e = self.form();
        // ℰ·J = [[−ℰ₀₁, ℰ₀₀], [−ℰ₁₁, ℰ₁₀]] with J = [[0,1],[−1,0]].
        let one = Complex64::new(1.0, 0.0);
        let inv_z = one / z;
        [
            [one + inv_z * e[0][1], -inv_z * e[0][0]],
            [inv_z * e[1][1], one - inv_z * e[1][0]],
        ]
    }

    /// The inverse factor `𝔄⁻¹(z) = I + (1/z)·ℰ·J` (exact because
    /// `(ℰJ)² = 0`).
    pub fn inverse_matrix(&self, z: Complex64) -> Mat2 {
        let e = self.form();
        let one = Complex64::new(1.0, 0.0);
        let inv_z = one / z;
        [
            [one - inv_z * e[0][1], inv_z * e[0][0]],
            [-inv_z * e[1][1], one + inv_z * e[1][0]],
        ]
    }

    /// Residual of the `J`-form identity
    /// `(J − 𝔄JA*)/(z − z̄) − ℰ/|z|²` (max entry modulus), together
    /// with the smallest eigenvalue of the Hermitian left-hand side.
    pub fn j_form_residual(&self, z: Complex64) -> Result<(f64, f64)> {
        if z.im <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "J-form check needs Im z > 0, got {z}"
            )));
        }
        let a = self.matrix(z);
        let j = j_matrix();
        let aja = mat_mul(&mat_mul(&a, &j), &mat_adjoint(&a));
        let denom = z - z.conj();
        let mut lhs = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (i, row) in lhs.iter_mut().enumerate() {
            for (k, v) in row.iter_mut().enumerate() {
                *v = (j[i][k] - aja[i][k]) / denom;
            }
        }
        let e = self.form();
        let scale = 1.0 / z.norm_sqr();
        let mut resid = 0.0f64;
        for i in 0..2 {
            for k in 0..2 {
                resid = resid.maxf((lhs[i][k] - e[i][k] * scale).norm());
            }
        }
        // Smallest eigenvalue of the 2×2 Hermitian matrix.
        let tr = lhs[0][0].re + lhs[1][1].re;
        let det = lhs[0][0].re * lhs[1][1].re - lhs[0][1].norm_sqr();
        let disc = (0.25 * tr * tr - det).maxf(0.0).sqrt();
        Ok((resid, 0.5 * tr - disc))
    }

    /// Row action of the inverse factor on a Herglotz value:
    /// `r₊ = (n₊·𝔅₁₁ + 𝔅₂₁)/(n₊·𝔅₁₂ + 𝔅₂₂)` with `𝔅 = 𝔄⁻¹`.
    pub fn transform(&self, z: Complex64, n_plus: Complex64) -> Complex64 {
        let a = self.inverse_matrix(z);
        (n_plus * a[0][0] + a[1][0]) / (n_plus * a[0][1] + a[1][1])
    }

    /// Row action at a real point (real input, real output).
    pub fn transform_real(&self, x: f64, n_plus: f64) -> f64 {
        let v = self.transform(Complex64::new(x, 0.0), Complex64::new(n_plus, 0.0));
        v.re
    }

    /// The constant term of the transformed function at the origin,
    /// `r₊(0) = −tan φ`.
    pub fn constant_term(&self) -> f64 {
        -self.phi.tan()
    }
}

/// Two-term expansion data of a Herglotz function near the origin:
/// `f(z) ≈ constant + slope·z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoTerm {
    /// Value at the origin.
    pub constant: f64,
    /// Slope `(f(z) − constant)/z` at the finest probe.
    pub slope: f64,
    /// Slope spread between the two finest probes (a convergence
    /// diagnostic; large spread signals a genuinely infinite
    /// derivative, where the slope is probe-scale data, not a limit).
    pub spread: f64,
}

/// Extracts the two-term data from probe samples `(z_i, f(z_i))` on the
/// negative axis, given the known constant term.  Probes are used in
/// order of decreasing `|z|`; the slope comes from the finest probe.
pub fn two_term_expansion(samples: &[(f64, f64)], constant: f64) -> Result<TwoTerm> {
    if samples.len() < 2 {
        return Err(Error::InvalidParameter(
            "two_term_expansion needs at least two probes".into(),
        ));
    }
    let mut sorted: alloc::vec::Vec<(f64, f64)> = samples.to_vec();
    sorted.sort_by(|p, q| q.0.abs().partial_cmp(&p.0.abs()).unwrap());
    let slopes: alloc::vec::Vec<f64> = sorted
        .iter()
        .map(|&(z, f)| (f - constant) / z)
        .collect();
    let m = slopes.len();
    Ok(TwoTerm {
        constant,
        slope: slopes[m - 1],
        spread: (slopes[m - 1] - slopes[m - 2]).abs(),
    })
}

/// Slope transfer under an elementary factor with `φ = 0`:
/// `1/slope(r₊) = 1/slope(n₊) + ρ` (exact probe by probe).
pub fn transferred_slope(slope_n: f64, rho: f64) -> f64 {
    1.0 / (1.0 / slope_n + rho)
}

/// The trace model on the double cover: half-trace of the product of
/// the shear `𝔄_ρ = [[1, 2ρμ], [0, 1]]` with the rotation by `πμ`,
///
/// `f_ρ(μ) = ½·tr(𝔄_ρ·𝔅(μ)) = cos πμ − ρ·μ·sin πμ`.
pub fn trace_model(rho: f64, mu: f64) -> f64 {
    let t = core::f64::consts::PI * mu;
    t.cos() - rho * mu * t.sin()
}

/// The two matrices of the trace model, for direct inspection.
pub fn trace_model_matrices(rho: f64, mu: f64) -> ([[f64; 2]; 2], [[f64; 2]; 2]) {
    let t = core::f64::consts::PI * mu;
    (
        [[1.0, 2.0 * rho * mu], [0.0, 1.0]],
        [[t.cos(), t.sin()], [-t.sin(), t.cos()]],
    )
}
