use super::EntireFunction;
use crate::error::{Error, Result};
use crate::logspace::LogComplex;
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, LN_2, PI};

/// Beyond this `|Im u|` the sine is evaluated through its dominant exponential.
const ASYMPTOTIC_IM: f64 = 20.0;

/// `ln sin u` in log-space, accurate for arbitrarily large `|Im u|`.
pub fn log_sin(u: Complex64) -> LogComplex {
    if u.im.abs() < ASYMPTOTIC_IM {
        return LogComplex::from_complex(u.sin());
    }
    if u.im < 0.0 {
        let c = log_sin(u.conj());
        return LogComplex::new(c.log_mag(), -c.arg());
    }
    // sin u = (i/2) e^{−iu} (1 − e^{2iu}), |e^{2iu}| < e^{−40}
    let x = (Complex64::i() * 2.0 * u).exp();
    let rest = -x - x * x / 2.0;
    LogComplex::new(-LN_2 + u.im + rest.re, FRAC_PI_2 - u.re + rest.im)
}

/// `ln sin(πw)`, reducing `Re w` modulo 1 first so that values near the
/// integer zeros keep full relative accuracy.
fn log_sin_pi(w: Complex64) -> LogComplex {
    let k = w.re.round();
    let f = Complex64::new(w.re - k, w.im);
    let v = log_sin(PI * f);
    if k.rem_euclid(2.0) == 1.0 {
        LogComplex::new(v.log_mag(), v.arg() + PI)
    } else {
        v
    }
}

/// True when `z` is, to rounding of `z²`, a zero of `sin(πz²/2)` other than 0.
fn on_sine_zero(z: Complex64) -> bool {
    let w = z * z * 0.5;
    if w.im != 0.0 || w.re == 0.0 {
        return false;
    }
    let k = w.re.round();
    k != 0.0 && (w.re - k).abs() <= 4.0 * f64::EPSILON * w.re.abs()
}

/// `ln( sin(πz²/2) / (πz²/2) )`, equal to 0 at the origin.
fn log_sinc_half(z: Complex64) -> LogComplex {
    if on_sine_zero(z) {
        return LogComplex::ZERO;
    }
    let w = z * z * 0.5;
    let u = PI * w;
    if u.norm() < 1e-3 {
        let u2 = u * u;
        let series = Complex64::new(1.0, 0.0) - u2 / 6.0 + u2 * u2 / 120.0 - u2 * u2 * u2 / 5040.0;
        return LogComplex::from_complex(series);
    }
    log_sin_pi(w).checked_div(LogComplex::from_complex(u)).expect("u is nonzero")
}

/// The explicit entire functions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ClosedForm {
    /// `s(z) = sin(πz²/2)/z²`, `s(0) = π/2`.
    SincS,
    /// `S(z) = (z²−1) sin(πz²/2)/(πz²)`, `S(0) = −1/2`.
    S,
    /// `G_Γ`, the same function as `S`.
    GGamma,
    /// Reproducing kernel `K_w(z) = e^{π w̄ z}`.
    Kernel(Complex64),
    Constant(Complex64),
    /// `z^k`.
    Monomial(u32),
}

impl ClosedForm {
    /// Parse `s`, `S`, `g-gamma`, `kernel`, `constant`, `monomial`; `param`
    /// supplies `w`, the constant, or the degree (real part).
    pub fn from_name(name: &str, param: Option<Complex64>) -> Result<Self> {
        let need = |what: &str| {
            param.ok_or_else(|| Error::InvalidParameter(format!("{name} requires {what}")))
        };
        match name {
            "s" => Ok(Self::SincS),
            "S" => Ok(Self::S),
            "g-gamma" | "G_Gamma" => Ok(Self::GGamma),
            "kernel" => Ok(Self::Kernel(need("w")?)),
            "constant" => Ok(Self::Constant(need("a value")?)),
            "monomial" => {
                let k = need("a degree")?.re;
                if !(k >= 0.0 && k.fract() == 0.0 && k <= u32::MAX as f64) {
                    return Err(Error::InvalidParameter(format!("bad monomial degree {k}")));
                }
                Ok(Self::Monomial(k as u32))
            }
            other => Err(Error::InvalidParameter(format!("unknown closed form '{other}'"))),
        }
    }
}

impl EntireFunction for ClosedForm {
    fn eval(&self, z: Complex64) -> Result<LogComplex> {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::InvalidParameter("non-finite argument".into()));
        }
        Ok(match *self {
            ClosedForm::SincS => LogComplex::from_real(FRAC_PI_2) * log_sinc_half(z),
            ClosedForm::S | ClosedForm::GGamma => {
                let one = Complex64::new(1.0, 0.0);
                LogComplex::from_complex(z - one)
                    * LogComplex::from_complex(z + one)
                    * LogComplex::from_real(0.5)
                    * log_sinc_half(z)
            }
            ClosedForm::Kernel(w) => LogComplex::exp(PI * w.conj() * z),
            ClosedForm::Constant(c) => LogComplex::from_complex(c),
            ClosedForm::Monomial(k) => LogComplex::from_complex(z).powi(k as i32),
        })
    }

    fn domain_radius(&self) -> f64 {
        f64::INFINITY
    }

    fn describe(&self) -> String {
        match self {
            ClosedForm::SincS => "s(z) = sin(pi z^2/2)/z^2".into(),
            ClosedForm::S => "S(z) = (z^2-1) sin(pi z^2/2)/(pi z^2)".into(),
            ClosedForm::GGamma => "G_Gamma(z) = (z^2-1) sin(pi z^2/2)/(pi z^2)".into(),
            ClosedForm::Kernel(w) => format!("K_w(z) = exp(pi conj(w) z), w = ({}, {})", w.re, w.im),
            ClosedForm::Constant(c) => format!("constant ({}, {})", c.re, c.im),
            ClosedForm::Monomial(k) => format!("z^{k}"),
        }
    }
}
