//! Entire functions evaluated in log-space: closed forms, truncated genus-2
//! lattice products, shell-grouped axis products, and growth statistics.

mod als;
mod closed;
mod grid;
mod growth;
mod lattice;

pub use als::AlsProductEvaluator;
pub use closed::{log_sin, ClosedForm};
pub use grid::{evaluate_grid, grid_csv, GridSample, GridSpec};
pub use growth::{log_max_modulus, order_type_estimate, OrderType};
pub use lattice::{LatticeProductEvaluator, DEFAULT_K_TAIL};

use crate::error::{Error, Result};
use crate::logspace::LogComplex;
use crate::sequences::PointCloud;
use crate::spatial::SpatialIndex;
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, TAU};

/// An entire function with a disk on which it can be evaluated.
pub trait EntireFunction: Send + Sync {
    fn eval(&self, z: Complex64) -> Result<LogComplex>;

    /// Radius of the evaluation disk (`∞` for closed forms).
    fn domain_radius(&self) -> f64;

    fn describe(&self) -> String;

    /// Error unless `|z|` lies in the evaluation disk.
    fn check_domain(&self, z: Complex64) -> Result<()> {
        let m = z.norm();
        let limit = self.domain_radius();
        if m <= limit {
            Ok(())
        } else {
            Err(Error::OutsideDomain { modulus: m, limit })
        }
    }
}

impl<F: EntireFunction + ?Sized> EntireFunction for &F {
    fn eval(&self, z: Complex64) -> Result<LogComplex> {
        (**self).eval(z)
    }
    fn domain_radius(&self) -> f64 {
        (**self).domain_radius()
    }
    fn describe(&self) -> String {
        (**self).describe()
    }
}

impl<F: EntireFunction + ?Sized> EntireFunction for Box<F> {
    fn eval(&self, z: Complex64) -> Result<LogComplex> {
        (**self).eval(z)
    }
    fn domain_radius(&self) -> f64 {
        (**self).domain_radius()
    }
    fn describe(&self) -> String {
        (**self).describe()
    }
}

/// `log|f(z)| − (π/2)|z|²`; `−∞` at zeros.
pub fn weighted_log_mag<F: EntireFunction + ?Sized>(f: &F, z: Complex64) -> Result<f64> {
    Ok(f.eval(z)?.log_mag() - FRAC_PI_2 * z.norm_sqr())
}

/// Exact distance from `z` to the nearest point of the set.
pub fn dist_to_set<C: PointCloud + ?Sized>(set: &C, z: Complex64) -> Result<f64> {
    Ok(SpatialIndex::new(set.cloud())?.distance(z))
}

/// Points closer than this (relative to `max(1, |λ|)`) to the removed zero
/// are evaluated through the mean-value property on a small circle.
const REMOVABLE_RADIUS: f64 = 1e-6;
const MEAN_VALUE_RADIUS: f64 = 1e-3;
const MEAN_VALUE_NODES: usize = 16;

/// `f(z) / (z − λ)`, entire when `f(λ) = 0`.
#[derive(Clone, Debug)]
pub struct DivideByLinear<F> {
    pub f: F,
    pub lambda: Complex64,
}

impl<F: EntireFunction> DivideByLinear<F> {
    /// Errors unless `f` vanishes at `λ`.
    pub fn new(f: F, lambda: Complex64) -> Result<Self> {
        if !f.eval(lambda)?.is_zero() {
            return Err(Error::InvalidParameter(format!(
                "{} does not vanish at ({}, {})",
                f.describe(),
                lambda.re,
                lambda.im
            )));
        }
        Ok(Self { f, lambda })
    }

    fn direct(&self, z: Complex64) -> Result<LogComplex> {
        let num = self.f.eval(z)?;
        Ok(num
            .checked_div(LogComplex::from_complex(z - self.lambda))
            .expect("z differs from the removed zero"))
    }
}

impl<F: EntireFunction> EntireFunction for DivideByLinear<F> {
    fn eval(&self, z: Complex64) -> Result<LogComplex> {
        self.check_domain(z)?;
        let scale = self.lambda.norm().max(1.0);
        if (z - self.lambda).norm() > REMOVABLE_RADIUS * scale {
            return self.direct(z);
        }
        // holomorphic g: g(z) is the mean of g over a circle centred at z
        let r = MEAN_VALUE_RADIUS * scale;
        let vals = (0..MEAN_VALUE_NODES)
            .map(|j| {
                let w = z + Complex64::from_polar(r, TAU * j as f64 / MEAN_VALUE_NODES as f64);
                self.direct(w)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(log_mean(&vals))
    }

    fn domain_radius(&self) -> f64 {
        self.f.domain_radius()
    }

    fn describe(&self) -> String {
        format!("{} / (z - ({}, {}))", self.f.describe(), self.lambda.re, self.lambda.im)
    }
}

/// Arithmetic mean of log-space values.
fn log_mean(vals: &[LogComplex]) -> LogComplex {
    let top = vals
        .iter()
        .map(LogComplex::log_mag)
        .fold(f64::NEG_INFINITY, f64::max);
    if top == f64::NEG_INFINITY {
        return LogComplex::ZERO;
    }
    let sum: Complex64 = vals
        .iter()
        .filter(|v| !v.is_zero())
        .map(|v| Complex64::from_polar((v.log_mag() - top).exp(), v.arg()))
        .sum::<Complex64>()
        / vals.len() as f64;
    let m = LogComplex::from_complex(sum);
    if m.is_zero() {
        m
    } else {
        LogComplex::new(m.log_mag() + top, m.arg())
    }
}

/// `z^k · f(z)`.
#[derive(Clone, Debug)]
pub struct TimesMonomial<F> {
    pub f: F,
    pub k: u32,
}

impl<F: EntireFunction> EntireFunction for TimesMonomial<F> {
    fn eval(&self, z: Complex64) -> Result<LogComplex> {
        self.check_domain(z)?;
        Ok(LogComplex::from_complex(z).powi(self.k as i32) * self.f.eval(z)?)
    }

    fn domain_radius(&self) -> f64 {
        self.f.domain_radius()
    }

    fn describe(&self) -> String {
        format!("z^{} * {}", self.k, self.f.describe())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::{gen_als, gen_gamma_nu};

    #[test]
    fn removable_point_matches_derivative() {
        // s(z) has a simple zero at √2 with s'(√2) = π·√2·cos(π)/2 = −π/√2
        let a = std::f64::consts::SQRT_2;
        let g = DivideByLinear::new(ClosedForm::SincS, Complex64::new(a, 0.0)).unwrap();
        let v = g.eval(Complex64::new(a, 0.0)).unwrap().to_complex();
        let expect = -std::f64::consts::PI / a;
        assert!((v.re - expect).abs() < 1e-9 * expect.abs(), "{v}");
        assert!(v.im.abs() < 1e-9);
        let near = g.eval(Complex64::new(a + 1e-4, 0.0)).unwrap().to_complex();
        assert!((near.re - expect).abs() < 1e-3);
        assert!(DivideByLinear::new(ClosedForm::SincS, Complex64::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn monomial_times() {
        let f = TimesMonomial {
            f: ClosedForm::Constant(Complex64::new(2.0, 0.0)),
            k: 3,
        };
        let v = f.eval(Complex64::new(0.0, 2.0)).unwrap().to_complex();
        assert!((v - Complex64::new(0.0, -16.0)).norm() < 1e-13);
    }

    #[test]
    fn distances() {
        let g = gen_gamma_nu(0.0, 5.0).unwrap();
        let d = dist_to_set(&g, Complex64::new(0.5, 0.5)).unwrap();
        assert!((d - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert_eq!(dist_to_set(&g, Complex64::new(2.0, -3.0)).unwrap(), 0.0);
        let d = dist_to_set(&gen_als(6.0).unwrap(), Complex64::new(1.2, 0.0)).unwrap();
        assert!((d - 0.2).abs() < 1e-15);
    }
}
