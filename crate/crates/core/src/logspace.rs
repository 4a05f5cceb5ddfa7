//! Complex numbers stored as `(log|w|, arg w)`.
//!
//! Products of the crate grow like `exp(pi/2 |z|^2)`, which leaves the range
//! of `f64` near `|z| = 21`. Every evaluator therefore reports values in this
//! form; the exact zero is the `-inf` log-magnitude sentinel.

use num_complex::Complex64;
use std::f64::consts::{PI, TAU};
use std::fmt;
use std::ops::{Div, Mul, MulAssign};

/// Reduce an angle to `(-pi, pi]`.
pub fn wrap_arg(a: f64) -> f64 {
    if a > -PI && a <= PI {
        return a;
    }
    let r = (a + PI).rem_euclid(TAU) - PI;
    if r == -PI {
        PI
    } else {
        r
    }
}

/// `ln w` with the log-magnitude taken as `ln(|w|^2)/2` (no hypot).
#[inline]
pub fn cln(w: Complex64) -> Complex64 {
    Complex64::new(0.5 * w.norm_sqr().ln(), w.im.atan2(w.re))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogComplex {
    log_mag: f64,
    arg: f64,
}

impl LogComplex {
    pub const ZERO: LogComplex = LogComplex {
        log_mag: f64::NEG_INFINITY,
        arg: 0.0,
    };
    pub const ONE: LogComplex = LogComplex {
        log_mag: 0.0,
        arg: 0.0,
    };

    /// Build from a log-magnitude and an unwrapped argument.
    pub fn new(log_mag: f64, arg: f64) -> Self {
        if log_mag == f64::NEG_INFINITY {
            return Self::ZERO;
        }
        Self {
            log_mag,
            arg: wrap_arg(arg),
        }
    }

    /// `exp(w)` for a complex exponent.
    pub fn exp(w: Complex64) -> Self {
        Self::new(w.re, w.im)
    }

    pub fn from_complex(w: Complex64) -> Self {
        if w.re == 0.0 && w.im == 0.0 {
            return Self::ZERO;
        }
        let scale = w.re.abs().max(w.im.abs());
        // scaled to avoid under/overflow in |w|^2
        let s = w / scale;
        Self::new(scale.ln() + 0.5 * s.norm_sqr().ln(), w.im.atan2(w.re))
    }

    pub fn from_real(x: f64) -> Self {
        Self::from_complex(Complex64::new(x, 0.0))
    }

    pub fn log_mag(&self) -> f64 {
        self.log_mag
    }

    pub fn arg(&self) -> f64 {
        self.arg
    }

    pub fn is_zero(&self) -> bool {
        self.log_mag == f64::NEG_INFINITY
    }

    /// Principal logarithm; `None` at zero.
    pub fn ln(&self) -> Option<Complex64> {
        (!self.is_zero()).then(|| Complex64::new(self.log_mag, self.arg))
    }

    /// Back to a plain complex number; may overflow to infinity.
    pub fn to_complex(&self) -> Complex64 {
        if self.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        Complex64::from_polar(self.log_mag.exp(), self.arg)
    }

    /// Real power of the modulus, `|w|^p` in log form.
    pub fn log_abs_pow(&self, p: f64) -> f64 {
        if self.is_zero() {
            f64::NEG_INFINITY
        } else {
            p * self.log_mag
        }
    }

    /// Division; `None` when dividing by zero.
    pub fn checked_div(self, rhs: LogComplex) -> Option<LogComplex> {
        if rhs.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::ZERO);
        }
        Some(Self::new(self.log_mag - rhs.log_mag, self.arg - rhs.arg))
    }

    pub fn powi(self, k: i32) -> Self {
        if self.is_zero() {
            return if k == 0 { Self::ONE } else { Self::ZERO };
        }
        Self::new(k as f64 * self.log_mag, k as f64 * self.arg)
    }
}

impl Mul for LogComplex {
    type Output = LogComplex;
    fn mul(self, rhs: LogComplex) -> LogComplex {
        if self.is_zero() || rhs.is_zero() {
            return Self::ZERO;
        }
        Self::new(self.log_mag + rhs.log_mag, self.arg + rhs.arg)
    }
}

impl MulAssign for LogComplex {
    fn mul_assign(&mut self, rhs: LogComplex) {
        *self = *self * rhs;
    }
}

impl Div for LogComplex {
    type Output = LogComplex;
    /// Panics on division by zero; use [`LogComplex::checked_div`] otherwise.
    fn div(self, rhs: LogComplex) -> LogComplex {
        self.checked_div(rhs).expect("division by LogComplex::ZERO")
    }
}

impl fmt::Display for LogComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "exp({} + {}i)", self.log_mag, self.arg)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wrap_arg_range() {
        assert_eq!(wrap_arg(PI), PI);
        assert_eq!(wrap_arg(-PI), PI);
        assert!((wrap_arg(3.0 * PI) - PI).abs() < 1e-12);
        assert!((wrap_arg(-0.5 - TAU * 7.0) + 0.5).abs() < 1e-12);
    }

    #[test]
    fn round_trip_and_products() {
        let a = Complex64::new(3.0, -4.0);
        let b = Complex64::new(-0.5, 0.25);
        let la = LogComplex::from_complex(a);
        assert!((la.log_mag() - 5f64.ln()).abs() < 1e-15);
        let p = (la * LogComplex::from_complex(b)).to_complex();
        assert!((p - a * b).norm() < 1e-13);
        let q = (la / LogComplex::from_complex(b)).to_complex();
        assert!((q - a / b).norm() < 1e-12);
        assert!((la * LogComplex::ZERO).is_zero());
        assert!(la.checked_div(LogComplex::ZERO).is_none());
    }

    #[test]
    fn huge_values_stay_finite() {
        let big = LogComplex::exp(Complex64::new(2000.0, 1.0));
        let sq = big * big;
        assert_eq!(sq.log_mag(), 4000.0);
        assert!((sq.arg() - 2.0).abs() < 1e-15);
        let tiny = LogComplex::from_complex(Complex64::new(1e-300, 1e-300));
        assert!(tiny.log_mag().is_finite());
    }
}
