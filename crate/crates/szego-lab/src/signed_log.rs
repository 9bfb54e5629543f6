//! Sign/phase plus log-magnitude representation of determinant-scale values.
//!
//! Quantities like `G(φ)^n`, `u^{2n}` or zero-mode products underflow or
//! overflow `f64` for moderate `n`; every determinant and asymptotic factor in
//! this crate is therefore carried as `phase · exp(log_abs)` with a unit
//! complex `phase` and a real `log_abs` (`-∞` encodes an exact zero).

use num_complex::Complex64;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedLogValue {
    /// Natural log of the magnitude; `-∞` is an exact zero.
    pub log_abs: f64,
    /// Unit-modulus phase (±1 for real quantities). Meaningless for zero.
    pub phase: Complex64,
}

impl SignedLogValue {
    pub const ONE: SignedLogValue = SignedLogValue {
        log_abs: 0.0,
        phase: Complex64::new(1.0, 0.0),
    };

    pub fn zero() -> Self {
        SignedLogValue { log_abs: f64::NEG_INFINITY, phase: Complex64::new(1.0, 0.0) }
    }

    pub fn new(log_abs: f64, phase: Complex64) -> Self {
        let norm = phase.norm();
        let phase = if norm > 0.0 { phase / norm } else { Complex64::new(1.0, 0.0) };
        SignedLogValue { log_abs, phase }
    }

    pub fn from_complex(z: Complex64) -> Self {
        let r = z.norm();
        if r == 0.0 {
            Self::zero()
        } else {
            SignedLogValue { log_abs: r.ln(), phase: z / r }
        }
    }

    pub fn from_real(x: f64) -> Self {
        Self::from_complex(Complex64::new(x, 0.0))
    }

    pub fn is_zero(&self) -> bool {
        self.log_abs == f64::NEG_INFINITY
    }

    /// Materialize the value; overflows to ±∞ and underflows to 0 like `exp`.
    pub fn value(&self) -> Complex64 {
        self.phase * self.log_abs.exp()
    }

    pub fn abs(&self) -> f64 {
        self.log_abs.exp()
    }

    pub fn mul(&self, other: &SignedLogValue) -> SignedLogValue {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self::new(self.log_abs + other.log_abs, self.phase * other.phase)
    }

    /// Division; division by an exact zero yields `log_abs = +∞`.
    pub fn div(&self, other: &SignedLogValue) -> SignedLogValue {
        if self.is_zero() {
            return Self::zero();
        }
        Self::new(self.log_abs - other.log_abs, self.phase / other.phase)
    }

    /// Integer power, sign-exact.
    pub fn powi(&self, n: i64) -> SignedLogValue {
        if self.is_zero() {
            return if n == 0 { Self::ONE } else { Self::zero() };
        }
        Self::new(self.log_abs * n as f64, self.phase.powi(n as i32))
    }

    pub fn neg(&self) -> SignedLogValue {
        SignedLogValue { log_abs: self.log_abs, phase: -self.phase }
    }

    /// `|self/other|` as a plain float (∞-safe).
    pub fn abs_ratio(&self, other: &SignedLogValue) -> f64 {
        (self.log_abs - other.log_abs).exp()
    }
}

impl fmt::Display for SignedLogValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0")
        } else if self.phase.im.abs() < 1e-15 {
            write!(f, "{}exp({:.6})", if self.phase.re >= 0.0 { "+" } else { "-" }, self.log_abs)
        } else {
            write!(f, "exp({:.6} + {:.6}i)", self.log_abs, self.phase.arg())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_and_multiplication() {
        let a = SignedLogValue::from_real(-3.5);
        let b = SignedLogValue::from_real(2.0);
        let p = a.mul(&b);
        assert!((p.value().re + 7.0).abs() < 1e-12);
        assert!((p.value().im).abs() < 1e-15);
    }

    #[test]
    fn zero_absorbs() {
        let z = SignedLogValue::zero();
        let a = SignedLogValue::from_real(4.0);
        assert!(z.mul(&a).is_zero());
        assert_eq!(z.value(), Complex64::new(0.0, 0.0));
        assert!(z.powi(3).is_zero());
        assert_eq!(z.powi(0), SignedLogValue::ONE);
    }

    #[test]
    fn huge_powers_stay_finite_in_log_form() {
        // 0.3^{2n} for n = 500 underflows f64; the log form does not.
        let u = SignedLogValue::from_real(0.3);
        let p = u.powi(1000);
        assert!((p.log_abs - 1000.0 * 0.3f64.ln()).abs() < 1e-9);
        assert!((p.phase.re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn complex_phase_tracks() {
        let i = SignedLogValue::from_complex(Complex64::new(0.0, 2.0));
        let sq = i.mul(&i);
        assert!((sq.value().re + 4.0).abs() < 1e-12);
    }
}
