//! Gaussian and weighted measures on the plane, log-space polar quadrature
//! and radius-ladder norm estimates.

mod quadrature;

pub use quadrature::{log_annulus, log_ladder, AngularRule, Ladder, QuadratureSpec};

use crate::error::{Error, Result};
use crate::numeric::{fit_line, log_sum_exp};
use crate::products::EntireFunction;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// `dμ_β = (β/2π) e^{−β|z|²/2} dA`, a probability measure.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaussianMeasure {
    pub beta: f64,
}

impl GaussianMeasure {
    pub fn new(beta: f64) -> Result<Self> {
        if !(beta > 0.0 && beta.is_finite()) {
            return Err(Error::InvalidParameter(format!("beta must be positive, got {beta}")));
        }
        Ok(Self { beta })
    }

    /// The measure `μ_{pπ}` used by the `F^p` norm.
    pub fn fock(p: f64) -> Result<Self> {
        Self::new(p * PI)
    }

    pub fn log_density(&self, z: Complex64) -> f64 {
        (self.beta / (2.0 * PI)).ln() - 0.5 * self.beta * z.norm_sqr()
    }

    /// `∫|z|^{2k} dμ_β = (2/β)^k k!`.
    pub fn moment(&self, k: u32) -> f64 {
        (1..=k).fold(1.0, |acc, j| acc * j as f64 * 2.0 / self.beta)
    }

    /// `ln ∫_{|z|≤R} exp(ℓ(z)) dμ_β`.
    pub fn log_integral<L>(&self, log_f: &L, spec: &QuadratureSpec, radius: f64) -> Result<f64>
    where
        L: Fn(Complex64) -> Result<f64> + Sync,
    {
        let g = |z: Complex64| Ok(log_f(z)? + self.log_density(z));
        log_annulus(&g, spec, 0.0, radius)
    }

    /// Relative error of the quadrature total mass on `|z| ≤ R`.
    pub fn mass_defect(&self, spec: &QuadratureSpec, radius: f64) -> Result<f64> {
        let m = self.log_integral(&|_| Ok(0.0), spec, radius)?.exp();
        Ok((m - 1.0).abs())
    }
}

/// Unnormalized weight
/// `((1+|z|²)/(1+|Im z²|))^{αp} (1+|z|)^{−pβ} e^{−pπ|z|²/2} dA`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NuMeasure {
    pub p: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl NuMeasure {
    pub fn new(p: f64, alpha: f64, beta: f64) -> Result<Self> {
        if !(p >= 1.0 && p.is_finite()) {
            return Err(Error::InvalidParameter(format!("p must lie in [1, inf), got {p}")));
        }
        if !(alpha.is_finite() && beta.is_finite()) {
            return Err(Error::InvalidParameter("alpha and beta must be finite".into()));
        }
        Ok(Self { p, alpha, beta })
    }

    /// Hölder conjugate `q`, `1/p + 1/q = 1` (`∞` at `p = 1`).
    pub fn conjugate(&self) -> f64 {
        if self.p == 1.0 {
            f64::INFINITY
        } else {
            self.p / (self.p - 1.0)
        }
    }

    pub fn log_density(&self, z: Complex64) -> f64 {
        let r2 = z.norm_sqr();
        let im = (2.0 * z.re * z.im).abs();
        self.alpha * self.p * ((1.0 + r2).ln() - (1.0 + im).ln())
            - self.p * self.beta * (1.0 + r2.sqrt()).ln()
            - 0.5 * self.p * PI * r2
    }

    /// Membership threshold for `G_Γ`: integrable iff `β > 1/p`.
    pub fn beta_threshold(&self) -> f64 {
        1.0 / self.p
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Converged,
    Diverging,
    Inconclusive,
}

/// Exponent magnitude below which a ladder trend is inconclusive.
pub const VERDICT_THRESHOLD: f64 = 0.15;

/// Increments used for the exponent fit.
pub const FIT_WINDOW: usize = 4;

/// Inside the band `|e| ≤ VERDICT_THRESHOLD` the sign of `e` decides once
/// `|e|` exceeds this many standard errors of the fitted slope.
pub const RESOLVED_SIGMAS: f64 = 4.0;

/// In-band exponents below this magnitude stay inconclusive.
pub const RESOLVED_FLOOR: f64 = 0.02;

/// Standard error of a least-squares slope from its RMS residual.
fn slope_error(xs: &[f64], rms: f64) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    rms * (n / (n - 2.0)).sqrt() / sxx.sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Partial {
    #[serde(rename = "R")]
    pub r: f64,
    #[serde(rename = "I")]
    pub i: f64,
}

/// Ladder of partial integrals `I(R_k)` with a convergence verdict.
///
/// `exponent` is the least-squares slope of `ln ΔI_k` against `ln R_k` over
/// the last increments. Beyond `±0.15` its sign is the verdict; inside the
/// band the sign decides only when the fit resolves it. A converged verdict carries `tail_bound`, a
/// geometric bound on `∫_{|z|>R_top}` with ratio `q = max(2^{e/2}, ΔI_K/ΔI_{K−1})`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormEstimate {
    pub partials: Vec<Partial>,
    pub verdict: Verdict,
    pub exponent: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail_bound: Option<f64>,
    /// `ln ΔI_k`, with the disk `|z| ≤ R_0` first.
    #[serde(skip)]
    pub log_increments: Vec<f64>,
}

impl NormEstimate {
    pub fn from_log_increments(radii: &[f64], log_inc: Vec<f64>) -> Result<Self> {
        if radii.len() != log_inc.len() || radii.is_empty() {
            return Err(Error::InvalidParameter("ladder and increments differ in length".into()));
        }
        let mut partials = Vec::with_capacity(radii.len());
        for k in 0..radii.len() {
            partials.push(Partial {
                r: radii[k],
                i: log_sum_exp(&log_inc[..=k]).exp(),
            });
        }
        let total = partials.last().map(|p| p.i).unwrap_or(0.0);
        let mut est = Self {
            partials,
            verdict: Verdict::Inconclusive,
            exponent: None,
            value: None,
            tail_bound: None,
            log_increments: log_inc,
        };
        let inc = &est.log_increments[1..];
        if inc.is_empty() {
            return Ok(est);
        }
        let last = *inc.last().expect("nonempty");
        if last == f64::NEG_INFINITY {
            // identically zero beyond the ladder
            est.verdict = Verdict::Converged;
            est.value = Some(total);
            est.tail_bound = Some(0.0);
            return Ok(est);
        }
        let start = inc.len().saturating_sub(FIT_WINDOW);
        let (xs, ys): (Vec<f64>, Vec<f64>) = (start..inc.len())
            .filter(|&j| inc[j].is_finite())
            .map(|j| (radii[j + 1].ln(), inc[j]))
            .unzip();
        if xs.len() < 3 {
            return Ok(est);
        }
        let fit = fit_line(&xs, &ys).ok_or_else(|| Error::Numerical("exponent fit failed".into()))?;
        let e = fit.slope;
        est.exponent = Some(e);
        let resolved = e.abs() >= RESOLVED_FLOOR && e.abs() >= RESOLVED_SIGMAS * slope_error(&xs, fit.residual);
        if e > VERDICT_THRESHOLD || (e > 0.0 && resolved) {
            est.verdict = Verdict::Diverging;
        } else if e < -VERDICT_THRESHOLD || (e < 0.0 && resolved) {
            let step = (radii[radii.len() - 1] / radii[radii.len() - 2]).ln();
            let q_fit = (e * step).exp();
            let q_obs = (last - inc[inc.len() - 2]).exp();
            let q = q_fit.max(if q_obs.is_nan() { 0.0 } else { q_obs });
            if q < 1.0 {
                est.verdict = Verdict::Converged;
                est.value = Some(total);
                est.tail_bound = Some(last.exp() * q / (1.0 - q));
            }
        }
        Ok(est)
    }

    pub fn total(&self) -> f64 {
        self.partials.last().map(|p| p.i).unwrap_or(0.0)
    }
}

fn ladder_estimate<L>(log_f: &L, spec: &QuadratureSpec, ladder: &Ladder) -> Result<NormEstimate>
where
    L: Fn(Complex64) -> Result<f64> + Sync,
{
    let inc = log_ladder(log_f, spec, ladder)?;
    NormEstimate::from_log_increments(&ladder.radii(), inc)
}

fn check_reach<F: EntireFunction + ?Sized>(f: &F, ladder: &Ladder) -> Result<()> {
    let top = ladder.top();
    if top > f.domain_radius() {
        return Err(Error::OutsideDomain {
            modulus: top,
            limit: f.domain_radius(),
        });
    }
    Ok(())
}

fn check_p(p: f64) -> Result<()> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::InvalidParameter(format!("p must lie in [1, inf), got {p}")));
    }
    Ok(())
}

fn fock_log_integrand<F: EntireFunction + ?Sized>(f: &F, p: f64) -> impl Fn(Complex64) -> Result<f64> + Sync + '_ {
    let norm = (0.5 * p).ln();
    move |z| Ok(f.eval(z)?.log_abs_pow(p) - 0.5 * p * PI * z.norm_sqr() + norm)
}

/// `‖f‖_{F^p}` from the ladder; `value` is the `p`-th root of the top partial,
/// `partials` hold `∫|f|^p dμ_{pπ}` over each disk.
pub fn fock_p_norm<F: EntireFunction + ?Sized>(
    f: &F,
    p: f64,
    spec: &QuadratureSpec,
    ladder: &Ladder,
) -> Result<NormEstimate> {
    check_p(p)?;
    check_reach(f, ladder)?;
    let mut est = ladder_estimate(&fock_log_integrand(f, p), spec, ladder)?;
    est.value = est.value.map(|v| v.powf(1.0 / p));
    Ok(est)
}

/// Ladder verdict for `f ∈ F^p`; `value` is left empty.
pub fn membership_trend<F: EntireFunction + ?Sized>(
    f: &F,
    p: f64,
    spec: &QuadratureSpec,
    ladder: &Ladder,
) -> Result<NormEstimate> {
    let mut est = fock_p_norm(f, p, spec, ladder)?;
    est.value = None;
    Ok(est)
}

/// `∫|f|^p dν_{p,α,β}` from the ladder; `value` is the integral itself.
pub fn nu_integral<F: EntireFunction + ?Sized>(
    f: &F,
    nu: &NuMeasure,
    spec: &QuadratureSpec,
    ladder: &Ladder,
) -> Result<NormEstimate> {
    check_reach(f, ladder)?;
    let lf = |z: Complex64| Ok(f.eval(z)?.log_abs_pow(nu.p) + nu.log_density(z));
    ladder_estimate(&lf, spec, ladder)
}
