//! `no_std` float helpers backed by `libm`.

/// Extension trait supplying the transcendental functions that `core`
/// does not provide.  Inherent methods (when available) take priority,
/// so this is purely additive.
pub trait FloatExt {
    /// Absolute value.
    fn abs(self) -> f64;
    /// Square root.
    fn sqrt(self) -> f64;
    /// Natural logarithm.
    fn ln(self) -> f64;
    /// Exponential.
    fn exp(self) -> f64;
    /// Cosine.
    fn cos(self) -> f64;
    /// Sine.
    fn sin(self) -> f64;
    /// Tangent.
    fn tan(self) -> f64;
    /// Arc cosine.
    fn acos(self) -> f64;
    /// Inverse hyperbolic cosine.
    fn acosh(self) -> f64;
    /// Hyperbolic cosine.
    fn cosh(self) -> f64;
    /// Power.
    fn powf(self, e: f64) -> f64;
    /// Integer power.
    fn powi(self, e: i32) -> f64;
    /// Floor.
    fn floor(self) -> f64;
    /// Euclidean remainder against 1 mapped to `[0, 1)`.
    fn fract_unit(self) -> f64;
    /// Largest of two values.
    fn maxf(self, other: f64) -> f64;
    /// Smallest of two values.
    fn minf(self, other: f64) -> f64;
}

impl FloatExt for f64 {
    fn abs(self) -> f64 {
        libm::fabs(self)
    }
    fn sqrt(self) -> f64 {
        libm::sqrt(self)
    }
    fn ln(self) -> f64 {
        libm::log(self)
    }
    fn exp(self) -> f64 {
        libm::exp(self)
    }
    fn cos(self) -> f64 {
        libm::cos(self)
    }
    fn sin(self) -> f64 {
        libm::sin(self)
    }
    fn tan(self) -> f64 {
        libm::tan(self)
    }
    fn acos(self) -> f64 {
        libm::acos(self)
    }
    fn acosh(self) -> f64 {
        libm::acosh(self)
    }
    fn cosh(self) -> f64 {
        libm::cosh(self)
    }
    fn powf(self, e: f64) -> f64 {
        libm::pow(self, e)
    }
    fn powi(self, e: i32) -> f64 {
        libm::pow(self, e as f64)
    }
    fn floor(self) -> f64 {
        libm::floor(self)
    }
    fn fract_unit(self) -> f64 {
        let f = self - libm::floor(self);
        if f >= 1.0 {
            0.0
        } else {
            f
        }
    }
    fn maxf(self, other: f64) -> f64 {
        if self > other {
            self
        } else {
            other
        }
    }
    fn minf(self, other: f64) -> f64 {
        if self < other {
            self
        } else {
            other
        }
    }
}
