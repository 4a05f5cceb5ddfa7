use super::report::{Condition, Relation, TheoremReport};
use crate::error::{Error, Result};
use crate::numeric::{fit_line, least_squares};
use crate::products::{AlsProductEvaluator, ClosedForm, EntireFunction, GridSpec, LatticeProductEvaluator};
use crate::sequences::gen_als;
use crate::spatial::SpatialIndex;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, SQRT_2};

/// Minimum number of grid points outside the excluded disks.
pub const MIN_ADMISSIBLE: usize = 500;

/// Upper clamp of the fitted envelope exponent `M`.
pub const M_MAX: f64 = 10.0;

/// Tolerance on the diagonal-ray exponent.
pub const RAY_TOLERANCE: f64 = 0.2;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EnvelopeConfig {
    pub grid: GridSpec,
    /// Grid points closer than this to a zero are skipped.
    pub excl: f64,
    /// Slack added to `δ` and removed from `δ̂`.
    pub eps: f64,
    /// Window estimate of `δ(Λ)` (or `Δ(Λ)` for the axis sequence).
    pub delta: f64,
    /// Window estimate of `δ̂(Λ)`.
    pub delta_hat: f64,
    /// Moduli range of the diagonal-ray fit.
    pub ray: [f64; 2],
    /// Samples per lattice period along the ray.
    pub ray_samples: usize,
}

impl Default for EnvelopeConfig {
    fn default() -> Self {
        Self {
            grid: GridSpec::Polar { r: [1.0, 12.0], n_r: 45, n_theta: 48 },
            excl: 0.1,
            eps: 0.01,
            delta: 0.0,
            delta_hat: 0.0,
            ray: [4.0, 12.0],
            ray_samples: 64,
        }
    }
}

/// Two-sided envelope fitted to a product on a grid.
///
/// `y = c + a·x₁ + b·x₂` is fitted by least squares; `M = min(|b|, 10)`
/// fixes the envelope shapes, whose constants are the extreme offsets of
/// the data from them. `ratio_min`/`ratio_max` are the extremes of the
/// measured quantity relative to the fitted surface.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeFit {
    pub intercept: f64,
    /// Coefficient of `ln(1+|z|)`.
    pub radial_exponent: f64,
    /// Coefficient of the transverse regressor.
    pub transverse_exponent: f64,
    pub m: f64,
    pub delta: f64,
    pub delta_hat: f64,
    pub lower_constant: f64,
    pub upper_constant: f64,
    pub ratio_min: f64,
    pub ratio_max: f64,
    pub excluded_radius: f64,
    pub admissible_points: usize,
    /// Slope of the period-averaged log ratio along `arg z = π/4` against `ln|z|`.
    pub diagonal_slope: Option<f64>,
    pub diagonal_expected: Option<[f64; 2]>,
    pub pass: bool,
}

struct Sample {
    y: f64,
    x1: f64,
    x2: f64,
}

struct Shapes {
    /// `(coefficient of x₁, coefficient of x₂)` for the lower and upper envelope.
    lower: (f64, f64),
    upper: (f64, f64),
}

fn fit_samples(samples: &[Sample], shapes: impl Fn(f64) -> Shapes) -> Result<(Vec<f64>, f64, f64, f64, f64, f64)> {
    let rows: Vec<Vec<f64>> = samples.iter().map(|s| vec![1.0, s.x1, s.x2]).collect();
    let ys: Vec<f64> = samples.iter().map(|s| s.y).collect();
    let coef = least_squares(&rows, &ys).unwrap_or_else(|| {
        // constant data: the normal equations are singular in the slopes
        let mean = ys.iter().sum::<f64>() / ys.len() as f64;
        vec![mean, 0.0, 0.0]
    });
    let m = coef[2].abs().min(M_MAX);
    let sh = shapes(m);
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut rmin, mut rmax) = (f64::INFINITY, f64::NEG_INFINITY);
    for s in samples {
        lo = lo.min(s.y - sh.lower.0 * s.x1 - sh.lower.1 * s.x2);
        hi = hi.max(s.y - sh.upper.0 * s.x1 - sh.upper.1 * s.x2);
        let r = s.y - coef[0] - coef[1] * s.x1 - coef[2] * s.x2;
        rmin = rmin.min(r);
        rmax = rmax.max(r);
    }
    Ok((coef, m, lo, hi, rmin, rmax))
}

fn admissible<F>(pts: &[Complex64], f: F) -> Result<Vec<Sample>>
where
    F: Fn(Complex64) -> Result<Option<Sample>> + Sync,
{
    let out: Vec<Option<Sample>> = pts.par_iter().map(|&z| f(z)).collect::<Result<_>>()?;
    let out: Vec<Sample> = out.into_iter().flatten().collect();
    if out.len() < MIN_ADMISSIBLE {
        return Err(Error::InsufficientData(format!(
            "{} admissible grid points, need {MIN_ADMISSIBLE}",
            out.len()
        )));
    }
    Ok(out)
}

fn check_config(cfg: &EnvelopeConfig, limit: f64) -> Result<Vec<Complex64>> {
    if !(cfg.excl > 0.0) || !(cfg.eps >= 0.0) {
        return Err(Error::InvalidParameter("excl must be positive and eps nonnegative".into()));
    }
    let pts = cfg.grid.points()?;
    let ext = pts.iter().map(|z| z.norm()).fold(0.0, f64::max).max(cfg.ray[1]);
    if ext > limit {
        return Err(Error::OutsideDomain { modulus: ext, limit });
    }
    Ok(pts)
}

/// Envelope of `|G_Λ(z)|e^{−π|z|²/2}/dist(z, Λ)` against `(1+|z|)` and
/// `(1+|Im z|)`, plus the directional exponent along the diagonal ray,
/// expected in `[δ̂ − ν − 0.2, δ − ν + 0.2]`.
pub fn envelope_verify_lattice(ev: &LatticeProductEvaluator, nu: f64, cfg: &EnvelopeConfig) -> Result<EnvelopeFit> {
    let pts = check_config(cfg, ev.domain_radius())?;
    let index = SpatialIndex::new(ev.zeros().to_vec())?;
    let y_at = |z: Complex64| -> Result<Option<f64>> {
        let d = index.distance(z);
        if d < cfg.excl {
            return Ok(None);
        }
        Ok(Some(ev.eval(z)?.log_mag() - FRAC_PI_2 * z.norm_sqr() - d.ln()))
    };
    let samples = admissible(&pts, |z| {
        Ok(y_at(z)?.map(|y| Sample { y, x1: z.norm().ln_1p(), x2: z.im.abs().ln_1p() }))
    })?;
    let delta = cfg.delta + cfg.eps;
    let delta_hat = cfg.delta_hat - cfg.eps;
    let (coef, m, lo, hi, rmin, rmax) = fit_samples(&samples, |m| Shapes {
        lower: (-(nu - delta_hat + m), m),
        upper: (-nu + delta + m, -m),
    })?;

    // period-averaged log ratio along the diagonal; the ray meets the
    // lattice every √2
    let periods = ((cfg.ray[1] - cfg.ray[0]) / SQRT_2).floor() as usize;
    if periods < 3 || cfg.ray_samples < 4 {
        return Err(Error::InsufficientData("diagonal ray covers fewer than 3 periods".into()));
    }
    let dir = Complex64::from_polar(1.0, FRAC_PI_4);
    let mut xs = Vec::with_capacity(periods);
    let mut ys = Vec::with_capacity(periods);
    for k in 0..periods {
        let t0 = cfg.ray[0] + SQRT_2 * k as f64;
        let vals: Vec<f64> = (0..cfg.ray_samples)
            .into_par_iter()
            .map(|j| y_at(dir * (t0 + SQRT_2 * (j as f64 + 0.5) / cfg.ray_samples as f64)))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        if vals.is_empty() {
            continue;
        }
        xs.push((t0 + 0.5 * SQRT_2).ln());
        ys.push(vals.iter().sum::<f64>() / vals.len() as f64);
    }
    let slope = fit_line(&xs, &ys).map(|f| f.slope);
    let expected = [delta_hat - nu - RAY_TOLERANCE, delta - nu + RAY_TOLERANCE];
    let pass = lo.is_finite()
        && hi.is_finite()
        && slope.is_some_and(|s| s >= expected[0] && s <= expected[1]);
    Ok(EnvelopeFit {
        intercept: coef[0],
        radial_exponent: coef[1],
        transverse_exponent: coef[2],
        m,
        delta,
        delta_hat,
        lower_constant: lo.exp(),
        upper_constant: hi.exp(),
        ratio_min: rmin.exp(),
        ratio_max: rmax.exp(),
        excluded_radius: cfg.excl,
        admissible_points: samples.len(),
        diagonal_slope: slope,
        diagonal_expected: Some(expected),
        pass,
    })
}

/// Envelope of `(|G_Λ|/|G_Γ|)·(dist(z, Γ)/dist(z, Λ))` against `(1+|z|)`
/// and `(1+|Im z²|)`, with `δ = Δ(Λ) + ε`.
pub fn envelope_verify_als(ev: &AlsProductEvaluator, cfg: &EnvelopeConfig) -> Result<EnvelopeFit> {
    let pts = check_config(cfg, ev.domain_radius())?;
    let lambda = SpatialIndex::new(ev.zeros().to_vec())?;
    let n = ev.n_max() as f64;
    let gamma = SpatialIndex::new(gen_als((2.0 * n).sqrt() * (1.0 + 1e-12))?.zs().collect())?;
    let g = ClosedForm::GGamma;
    let samples = admissible(&pts, |z| {
        let (dl, dg) = (lambda.distance(z), gamma.distance(z));
        if dl < cfg.excl || dg < cfg.excl {
            return Ok(None);
        }
        let y = ev.eval(z)?.log_mag() - g.eval(z)?.log_mag() - dl.ln() + dg.ln();
        Ok(Some(Sample { y, x1: z.norm().ln_1p(), x2: (2.0 * z.re * z.im).abs().ln_1p() }))
    })?;
    let delta = cfg.delta + cfg.eps;
    let (coef, m, lo, hi, rmin, rmax) = fit_samples(&samples, |m| Shapes {
        lower: (-(2.0 * delta + 2.0 * m), m),
        upper: (2.0 * delta + 2.0 * m, -m),
    })?;
    Ok(EnvelopeFit {
        intercept: coef[0],
        radial_exponent: coef[1],
        transverse_exponent: coef[2],
        m,
        delta,
        delta_hat: -delta,
        lower_constant: lo.exp(),
        upper_constant: hi.exp(),
        ratio_min: rmin.exp(),
        ratio_max: rmax.exp(),
        excluded_radius: cfg.excl,
        admissible_points: samples.len(),
        diagonal_slope: None,
        diagonal_expected: None,
        pass: lo.is_finite() && hi.is_finite() && rmin.is_finite() && rmax.is_finite(),
    })
}

impl EnvelopeFit {
    /// Report form: finite positive constants and, for lattices, the
    /// diagonal exponent inside its band.
    pub fn to_report(&self, theorem: &str, config: serde_json::Value) -> TheoremReport {
        let op = if self.diagonal_slope.is_some() { "envelope_verify_lattice" } else { "envelope_verify_als" };
        let mut conds = vec![
            Condition::new("lower_constant", self.lower_constant, Relation::Gt, 0.0, op, config.clone()),
            Condition::new("upper_constant", self.upper_constant, Relation::Finite, 0.0, op, config.clone()),
            Condition::new("ratio_spread", self.ratio_max / self.ratio_min, Relation::Finite, 0.0, op, config.clone())
                .informational(),
            Condition::new("fitted_m", self.m, Relation::Le, M_MAX, op, config.clone()).informational(),
        ];
        if let (Some(s), Some([lo, hi])) = (self.diagonal_slope, self.diagonal_expected) {
            conds.push(Condition::new("diagonal_slope_lower", s, Relation::Ge, lo, op, config.clone()));
            conds.push(Condition::new("diagonal_slope_upper", s, Relation::Le, hi, op, config.clone()));
        }
        TheoremReport::new(theorem, conds, serde_json::json!({ "envelope": config, "fit": self }))
    }
}
