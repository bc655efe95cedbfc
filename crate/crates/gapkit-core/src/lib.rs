//! Numerical core for finite-gap spectral computations.
//!
//! A finite-gap set is a closed subset of the half-line,
//! `E = [0, ∞) \ ∪ (a_k, b_k)`, obtained by removing finitely many open
//! gaps ordered so that `0 < a_n < b_n < … < a_1 < b_1`.  Everything in
//! this crate is built on the hyperelliptic curve `w² = T(z)` with
//! `T(z) = z · ∏ (z − a_k)(z − b_k)`:
//!
//! * [`curve`] — gap sets, the branch-consistent square root of `T`, and
//!   singular-endpoint quadrature,
//! * [`abelian`] — normalized abelian differentials, KdV frequency
//!   vectors, and the Martin function,
//! * [`potential`] — Green functions, harmonic measures, and Widom-type
//!   diagnostics,
//! * [`freqmap`] — the frequency variation matrix and the damped Newton
//!   inversion of the gap-ends ↦ frequencies map,
//! * [`divisor`] — Dirichlet divisors, Weyl functions, companion
//!   divisors, trace data, and canonical products on the negative axis,
//! * [`abel`] — the Abel map from divisors to characters of the torus,
//! * [`potapov`] — elementary J-contractive factors and their action on
//!   Weyl data,
//! * [`comb`] — the one-parameter family of combs `Δ_ρ` and the spectral
//!   sets they generate,
//! * [`adic`] — exact 3-adic torus arithmetic and avoidance
//!   certificates.
//!
//! The crate is `no_std` (with `alloc`); all floating point is `f64`
//! with transcendentals from `libm`, and the [`adic`] module uses exact
//! `i128` rational arithmetic only.

#![no_std]
#![deny(unsafe_code)]
#![warn(missing_docs)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod abel;
pub mod abelian;
pub mod adic;
pub mod comb;
pub mod curve;
pub mod divisor;
pub mod freqmap;
pub mod linalg;
pub mod math;
pub mod poly;
pub mod potapov;
pub mod potential;
pub mod quad;
pub mod sampling;

mod error;

pub use error::Error;
pub use num_complex;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
