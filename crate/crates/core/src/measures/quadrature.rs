use crate::error::{Error, Result};
use crate::numeric::{gauss_legendre, log_add_exp, log_sum_exp};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_4, TAU};

/// Angular rule on each circle `|z| = r`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum AngularRule {
    /// Trapezoid with `max(min_nodes, ⌈nodes_per_arc · 2πr⌉)` nodes, rounded
    /// up to a multiple of 8.
    Uniform { nodes_per_arc: f64, min_nodes: usize },
    /// Gauss–Legendre panels, denser inside `|θ − (2j+1)π/4| ≤ window`.
    Diagonal {
        order: usize,
        window: f64,
        /// Panel arc length inside the diagonal windows.
        arc_in: f64,
        /// Panel arc length elsewhere.
        arc_out: f64,
    },
}

/// Radial adaptivity and angular rule for plane integrals in polar form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureSpec {
    /// Gauss–Legendre order per radial panel.
    pub order: usize,
    /// Initial radial panel width.
    pub panel_width: f64,
    /// Relative tolerance of the panel-versus-halves comparison.
    pub rel_tol: f64,
    pub max_depth: u32,
    pub angular: AngularRule,
}

impl QuadratureSpec {
    /// High-accuracy rule for smooth integrands (golden values).
    pub fn precise() -> Self {
        Self {
            order: 10,
            panel_width: 0.5,
            rel_tol: 1e-12,
            max_depth: 12,
            angular: AngularRule::Uniform {
                nodes_per_arc: 6.0,
                min_nodes: 64,
            },
        }
    }

    /// Cheaper rule for ladder trends of expensive product evaluators.
    pub fn coarse() -> Self {
        Self {
            order: 6,
            panel_width: 1.0,
            rel_tol: 1e-4,
            max_depth: 6,
            angular: AngularRule::Uniform {
                nodes_per_arc: 6.0,
                min_nodes: 32,
            },
        }
    }

    /// Diagonal-refined rule for integrands concentrated on `|Im z²| ≈ |z|²`.
    pub fn diagonal() -> Self {
        Self {
            order: 8,
            panel_width: 1.0,
            rel_tol: 1e-6,
            max_depth: 8,
            angular: AngularRule::Diagonal {
                order: 8,
                window: 0.2,
                arc_in: 0.75,
                arc_out: 3.0,
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidParameter(format!("quadrature: {m}")));
        if self.order < 1 || self.order > 64 {
            return bad("order must lie in 1..=64");
        }
        if !(self.panel_width > 0.0 && self.panel_width.is_finite()) {
            return bad("panel width must be positive");
        }
        if !(self.rel_tol > 0.0 && self.rel_tol < 1.0) {
            return bad("rel_tol must lie in (0, 1)");
        }
        match self.angular {
            AngularRule::Uniform {
                nodes_per_arc,
                min_nodes,
            } => {
                if !(nodes_per_arc > 0.0 && nodes_per_arc.is_finite()) || min_nodes < 8 {
                    return bad("uniform rule needs nodes_per_arc > 0 and min_nodes >= 8");
                }
            }
            AngularRule::Diagonal {
                order,
                window,
                arc_in,
                arc_out,
            } => {
                if order < 1 || order > 64 || !(window > 0.0 && window < FRAC_PI_4) {
                    return bad("diagonal rule needs order in 1..=64 and window in (0, pi/4)");
                }
                if !(arc_in > 0.0 && arc_out > 0.0) {
                    return bad("diagonal rule needs positive panel arcs");
                }
            }
        }
        Ok(())
    }
}

/// Radii `R_k = r0 · 2^{k/2}`, `k = 0..=steps`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Ladder {
    pub r0: f64,
    pub steps: usize,
}

impl Ladder {
    pub fn new(r0: f64, steps: usize) -> Result<Self> {
        if !(r0 > 0.0 && r0.is_finite()) {
            return Err(Error::InvalidParameter(format!("ladder base must be positive, got {r0}")));
        }
        Ok(Self { r0, steps })
    }

    /// Ladder from `R_0 = 4` up to the last rung not exceeding `r_max`.
    pub fn up_to(r_max: f64) -> Result<Self> {
        if !(r_max >= 4.0) {
            return Err(Error::InvalidParameter(format!("ladder top must be >= 4, got {r_max}")));
        }
        let steps = (2.0 * (r_max / 4.0).log2() + 1e-9).floor() as usize;
        Self::new(4.0, steps)
    }

    pub fn radii(&self) -> Vec<f64> {
        (0..=self.steps)
            .map(|k| self.r0 * 2f64.powf(k as f64 / 2.0))
            .collect()
    }

    pub fn top(&self) -> f64 {
        *self.radii().last().expect("at least one rung")
    }
}

struct Angular {
    thetas: Vec<f64>,
    log_w: Vec<f64>,
}

fn gl_on(a: f64, b: f64, order: usize, out: &mut Angular) {
    let (x, w) = gauss_legendre(order);
    let h = 0.5 * (b - a);
    for (xi, wi) in x.iter().zip(&w) {
        out.thetas.push(a + h * (xi + 1.0));
        out.log_w.push((h * wi).ln());
    }
}

fn angular_nodes(rule: &AngularRule, r: f64) -> Angular {
    let mut out = Angular {
        thetas: Vec::new(),
        log_w: Vec::new(),
    };
    match *rule {
        AngularRule::Uniform {
            nodes_per_arc,
            min_nodes,
        } => {
            let n = ((nodes_per_arc * TAU * r).ceil() as usize).max(min_nodes).div_ceil(8) * 8;
            let lw = (TAU / n as f64).ln();
            for j in 0..n {
                out.thetas.push(TAU * j as f64 / n as f64);
                out.log_w.push(lw);
            }
        }
        AngularRule::Diagonal {
            order,
            window,
            arc_in,
            arc_out,
        } => {
            // breakpoints at (2j+1)π/4 ± window; segments alternate out/in
            let mut cuts = Vec::with_capacity(9);
            for j in 0..4 {
                let d = (2 * j + 1) as f64 * FRAC_PI_4;
                cuts.push((d - window, false));
                cuts.push((d + window, true));
            }
            let mut prev = -window + FRAC_PI_4 - (FRAC_PI_4 * 2.0 - 2.0 * window);
            for (cut, inside) in cuts {
                let arc = if inside { arc_in } else { arc_out };
                let n = (((cut - prev) * r / arc).ceil() as usize).max(1);
                let h = (cut - prev) / n as f64;
                for i in 0..n {
                    gl_on(prev + h * i as f64, prev + h * (i + 1) as f64, order, &mut out);
                }
                prev = cut;
            }
        }
    }
    out
}

/// Log of `r ∫_0^{2π} exp(ℓ(re^{iθ})) dθ`.
fn log_ring<L>(log_f: &L, rule: &AngularRule, r: f64) -> Result<f64>
where
    L: Fn(Complex64) -> Result<f64> + Sync,
{
    let ang = angular_nodes(rule, r);
    let mut vals = Vec::with_capacity(ang.thetas.len());
    for (t, lw) in ang.thetas.iter().zip(&ang.log_w) {
        let v = log_f(Complex64::from_polar(r, *t))?;
        if v.is_nan() {
            return Err(Error::Numerical(format!("integrand is NaN at r = {r}, theta = {t}")));
        }
        vals.push(v + lw);
    }
    Ok(r.ln() + log_sum_exp(&vals))
}

struct Radial {
    x: Vec<f64>,
    w: Vec<f64>,
}

fn log_panel<L>(log_f: &L, spec: &QuadratureSpec, gl: &Radial, a: f64, b: f64) -> Result<f64>
where
    L: Fn(Complex64) -> Result<f64> + Sync,
{
    let h = 0.5 * (b - a);
    let mut vals = Vec::with_capacity(gl.x.len());
    for (xi, wi) in gl.x.iter().zip(&gl.w) {
        let r = a + h * (xi + 1.0);
        vals.push((h * wi).ln() + log_ring(log_f, &spec.angular, r)?);
    }
    Ok(log_sum_exp(&vals))
}

/// Accept when the halves agree with the whole to `rel_tol`, or when the
/// panel is negligible against `floor` (a log-value).
#[allow(clippy::too_many_arguments)]
fn adapt<L>(
    log_f: &L,
    spec: &QuadratureSpec,
    gl: &Radial,
    a: f64,
    b: f64,
    whole: f64,
    floor: f64,
    depth: u32,
) -> Result<f64>
where
    L: Fn(Complex64) -> Result<f64> + Sync,
{
    let m = 0.5 * (a + b);
    let left = log_panel(log_f, spec, gl, a, m)?;
    let right = log_panel(log_f, spec, gl, m, b)?;
    let halves = log_add_exp(left, right);
    if halves == f64::NEG_INFINITY && whole == f64::NEG_INFINITY {
        return Ok(halves);
    }
    let rel = if halves == f64::NEG_INFINITY {
        f64::INFINITY
    } else {
        ((whole - halves).exp() - 1.0).abs()
    };
    if rel <= spec.rel_tol || halves.max(whole) < floor || depth >= spec.max_depth {
        return Ok(halves);
    }
    let l = adapt(log_f, spec, gl, a, m, left, floor, depth + 1)?;
    let r = adapt(log_f, spec, gl, m, b, right, floor, depth + 1)?;
    Ok(log_add_exp(l, r))
}

/// `ln ∫_{a<|z|≤b} exp(ℓ(z)) dA(z)` for a log-integrand `ℓ`.
pub fn log_annulus<L>(log_f: &L, spec: &QuadratureSpec, a: f64, b: f64) -> Result<f64>
where
    L: Fn(Complex64) -> Result<f64> + Sync,
{
    spec.validate()?;
    if !(a >= 0.0 && b > a && b.is_finite()) {
        return Err(Error::InvalidParameter(format!("bad annulus [{a}, {b}]")));
    }
    let (x, w) = gauss_legendre(spec.order);
    let gl = Radial { x, w };
    let n = ((b - a) / spec.panel_width).ceil().max(1.0) as usize;
    let h = (b - a) / n as f64;
    let edges: Vec<(f64, f64)> = (0..n)
        .map(|i| (a + h * i as f64, if i + 1 == n { b } else { a + h * (i + 1) as f64 }))
        .collect();
    let coarse = edges
        .par_iter()
        .map(|&(lo, hi)| log_panel(log_f, spec, &gl, lo, hi))
        .collect::<Result<Vec<f64>>>()?;
    let total = log_sum_exp(&coarse);
    // panels below rel_tol·total/n cannot move the result past tolerance
    let floor = total + (spec.rel_tol / n as f64).ln();
    let refined = edges
        .par_iter()
        .zip(&coarse)
        .map(|(&(lo, hi), &whole)| adapt(log_f, spec, &gl, lo, hi, whole, floor, 0))
        .collect::<Result<Vec<f64>>>()?;
    Ok(log_sum_exp(&refined))
}

/// `ln` of the disk integral `|z| ≤ R_0` followed by the annulus increments
/// between consecutive ladder radii.
pub fn log_ladder<L>(log_f: &L, spec: &QuadratureSpec, ladder: &Ladder) -> Result<Vec<f64>>
where
    L: Fn(Complex64) -> Result<f64> + Sync,
{
    let radii = ladder.radii();
    let mut out = Vec::with_capacity(radii.len());
    let mut prev = 0.0;
    for &r in &radii {
        out.push(log_annulus(log_f, spec, prev, r)?);
        prev = r;
    }
    Ok(out)
}
