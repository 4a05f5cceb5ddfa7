use super::report::{Condition, Relation, TheoremReport};
use super::theorems::theorem1_p_range;
use super::SLOPE_THRESHOLD;
use crate::error::{Error, Result};
use crate::measures::{membership_trend, Ladder, QuadratureSpec, Verdict, VERDICT_THRESHOLD};
use crate::numeric::{fit_line, ExactSum};
use crate::products::{DivideByLinear, EntireFunction, TimesMonomial};
use crate::sequences::{counting_function, in_closed_cone, lindelof_profile, log_grid, PointSet, PointSource};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::json;

/// Which theorem's exponent range applies to a zero-excess run.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ProductFamily {
    Lattice { nu: f64 },
    Als,
}

impl ProductFamily {
    fn p_range(self) -> (f64, f64) {
        match self {
            ProductFamily::Lattice { nu } => theorem1_p_range(nu),
            ProductFamily::Als => (1.0, f64::INFINITY),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ZeroExcessConfig {
    pub quadrature: QuadratureSpec,
    pub ladder_top: f64,
}

impl Default for ZeroExcessConfig {
    fn default() -> Self {
        Self { quadrature: QuadratureSpec::coarse(), ladder_top: 16.0 }
    }
}

fn trend_condition(name: &str, verdict: Verdict, exponent: Option<f64>, want: Verdict, op: &str, cfg: serde_json::Value) -> Condition {
    let (rel, thr) = match want {
        Verdict::Converged => (Relation::Lt, -VERDICT_THRESHOLD),
        _ => (Relation::Gt, VERDICT_THRESHOLD),
    };
    let value = exponent.unwrap_or(f64::NAN);
    Condition::new(name, value, rel, thr, op, cfg).with_pass(verdict == want)
}

/// Membership of `G_Λ/(z − λ)` (expected converged) and of `z·G_Λ`
/// (expected diverging) from ladder trends.
pub fn zero_excess_demo<F: EntireFunction>(
    ev: &F,
    family: ProductFamily,
    lambda: Complex64,
    p: f64,
    cfg: &ZeroExcessConfig,
) -> Result<TheoremReport> {
    let (lo, hi) = family.p_range();
    let pcfg = json!({ "family": family, "p": p });
    let mut conds = vec![
        Condition::new("p_lower", p, Relation::Gt, lo, "zero_excess_demo", pcfg.clone()),
        Condition::new("p_upper", p, Relation::Lt, hi, "zero_excess_demo", pcfg),
    ];
    let configs = json!({ "family": family, "p": p, "lambda": [lambda.re, lambda.im], "zero_excess": cfg });
    if conds.iter().any(|c| !c.pass) {
        return Ok(TheoremReport::new("zero-excess", conds, configs)
            .with_note("p outside the admissible range; membership trends not run"));
    }
    let ladder = Ladder::up_to(cfg.ladder_top)?;
    let quotient = DivideByLinear::new(ev, lambda)?;
    let q = membership_trend(&quotient, p, &cfg.quadrature, &ladder)?;
    let tcfg = json!({ "ladder_top": ladder.top(), "function": quotient.describe() });
    conds.push(trend_condition("quotient_in_fp", q.verdict, q.exponent, Verdict::Converged, "membership_trend", tcfg));
    let times = TimesMonomial { f: ev, k: 1 };
    let t = membership_trend(&times, p, &cfg.quadrature, &ladder)?;
    let tcfg = json!({ "ladder_top": ladder.top(), "function": times.describe() });
    conds.push(trend_condition("times_z_not_in_fp", t.verdict, t.exponent, Verdict::Diverging, "membership_trend", tcfg));
    Ok(TheoremReport::new("zero-excess", conds, configs))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RadialConfig {
    /// Profiles use radii in `[R/span, R]`.
    pub span: f64,
    pub points: usize,
}

impl Default for RadialConfig {
    fn default() -> Self {
        Self { span: 100.0, points: 41 }
    }
}

fn slope(xs: &[f64], ys: &[f64]) -> Result<f64> {
    Ok(fit_line(xs, ys)
        .ok_or_else(|| Error::Numerical("degenerate fit".into()))?
        .slope)
}

/// Both conditions of Lindelöf's theorem at integer order `ρ`:
/// `n(r)/r^ρ` bounded (log-log slope) and `S(r)` bounded (slope of `|S(r)|`
/// against `ln r`), each against the `0.15` threshold.
pub fn lindelof_check<S: PointSource + ?Sized>(src: &S, rho: u32, radius: f64, cfg: &RadialConfig) -> Result<TheoremReport> {
    if rho < 1 {
        return Err(Error::InvalidParameter("rho must be >= 1".into()));
    }
    if !(radius.is_finite() && radius / cfg.span > 0.0) || radius > src.extent() * (1.0 + 1e-12) {
        return Err(Error::InsufficientData(format!(
            "radius {radius} exceeds the source extent {}",
            src.extent()
        )));
    }
    let radii = log_grid(radius / cfg.span, radius, cfg.points)?;
    let counts = counting_function(src, &radii)?;
    if counts.values[0] == 0.0 {
        return Err(Error::InsufficientData(format!(
            "no points within r = {}; the radius span is too small",
            radii[0]
        )));
    }
    let (re, im) = lindelof_profile(src, rho, &radii)?;
    let xs: Vec<f64> = radii.iter().map(|r| r.ln()).collect();
    let ratio: Vec<f64> = counts.values.iter().zip(&radii).map(|(c, r)| c / r.powi(rho as i32)).collect();
    let lr: Vec<f64> = ratio.iter().map(|v| v.ln()).collect();
    let mods: Vec<f64> = re.values.iter().zip(&im.values).map(|(a, b)| a.hypot(*b)).collect();
    let rcfg = json!({ "rho": rho, "r0": radii[0], "r1": radius, "points": cfg.points });
    let conds = vec![
        Condition::new("counting_slope", slope(&xs, &lr)?, Relation::AbsLt, SLOPE_THRESHOLD, "counting_function", rcfg.clone()),
        Condition::new("counting_ratio", *ratio.last().expect("nonempty"), Relation::Finite, 0.0, "counting_function", rcfg.clone())
            .informational(),
        Condition::new("lindelof_slope", slope(&xs, &mods)?, Relation::AbsLt, SLOPE_THRESHOLD, "lindelof_profile", rcfg.clone()),
        Condition::new("lindelof_sup", mods.iter().copied().fold(0.0, f64::max), Relation::Finite, 0.0, "lindelof_profile", rcfg)
            .informational(),
    ];
    Ok(TheoremReport::new("lindelof", conds, json!({ "rho": rho, "radius": radius, "radial": cfg })))
}

/// Angular slack on sector membership for points rotated onto the boundary.
pub const ANGLE_SLACK: f64 = 1e-12;

/// Relative slack on the certified chain for rounding of individual terms.
pub const CHAIN_SLACK: f64 = 1e-12;

/// Certifies `|S(r)|² ≥ (Σ cos(2θ_n)/|z_n|²)² ≥ cos²(2θ)(Σ 1/|z_n|²)²` at
/// every grid radius for a set inside `S(β, θ)`, `0 ≤ θ < π/4`, and reports
/// the slope of `|S(r)|` against `ln r`.
pub fn sector_lemma_demo(set: &PointSet, beta: f64, theta: f64, cfg: &RadialConfig) -> Result<TheoremReport> {
    if !(0.0..std::f64::consts::FRAC_PI_4).contains(&theta) {
        return Err(Error::InvalidParameter(format!("theta must lie in [0, pi/4), got {theta}")));
    }
    if let Some(z) = set.zs().find(|&z| !in_closed_cone(z, beta, theta + ANGLE_SLACK)) {
        return Err(Error::InvalidParameter(format!(
            "point ({}, {}) lies outside the sector",
            z.re, z.im
        )));
    }
    if set.origin_included() {
        return Err(Error::InvalidParameter("the origin must be excluded".into()));
    }
    let radius = set.radius();
    let radii = log_grid(radius / cfg.span, radius, cfg.points)?;
    let rot = Complex64::from_polar(1.0, 2.0 * beta);
    let c2 = (2.0 * theta).cos();
    let (mut s_re, mut s_im, mut cos_sum, mut pow_sum) = (ExactSum::new(), ExactSum::new(), ExactSum::new(), ExactSum::new());
    let mut it = set.points().iter().peekable();
    let mut worst_first = f64::INFINITY;
    let mut worst_second = f64::INFINITY;
    let mut mods = Vec::with_capacity(radii.len());
    for &r in &radii {
        while let Some(p) = it.next_if(|p| p.z.norm() <= r) {
            let m = p.multiplicity as f64;
            let n2 = p.z.norm_sqr();
            let t = p.z.conj() * p.z.conj() / (n2 * n2) * m;
            s_re.add(t.re);
            s_im.add(t.im);
            cos_sum.add((t * rot).re);
            pow_sum.add(m / n2);
        }
        let s2 = s_re.value().powi(2) + s_im.value().powi(2);
        let c = cos_sum.value();
        let bound = c2 * pow_sum.value();
        mods.push(s2.sqrt());
        if c * c > 0.0 {
            worst_first = worst_first.min(s2 / (c * c));
        }
        if bound > 0.0 {
            worst_second = worst_second.min(c.abs() / bound);
        }
    }
    let xs: Vec<f64> = radii.iter().map(|r| r.ln()).collect();
    let scfg = json!({ "beta": beta, "theta": theta, "r0": radii[0], "r1": radius, "points": cfg.points });
    let conds = vec![
        Condition::new("modulus_over_cosine_sum", worst_first, Relation::Ge, 1.0 - CHAIN_SLACK, "sector_lemma_demo", scfg.clone()),
        Condition::new("cosine_sum_over_bound", worst_second, Relation::Ge, 1.0 - CHAIN_SLACK, "sector_lemma_demo", scfg.clone()),
        Condition::new("cos_2theta", c2, Relation::Gt, 0.0, "sector_lemma_demo", scfg.clone()),
        Condition::new("lindelof_slope", slope(&xs, &mods)?, Relation::Finite, 0.0, "sector_lemma_demo", scfg).informational(),
    ];
    Ok(TheoremReport::new("sector-lemma", conds, json!({ "beta": beta, "theta": theta, "radial": cfg })))
}
