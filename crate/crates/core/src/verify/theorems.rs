use super::report::{Condition, Relation, TheoremReport};
use super::SLOPE_THRESHOLD;
use crate::error::{Error, Result};
use crate::numeric::fit_line;
use crate::sequences::{
    als_separation_constant, delta_stats, log_grid, perturb, power_profile, power_sum_with_tail, separation,
    shell_delta_stats, Family, PerturbationSpec, PerturbedSet, PointSet,
};
use serde::{Deserialize, Serialize};
use serde_json::json;

const UNIQUENESS_NOTE: &str =
    "uniqueness with zero excess quantifies over all of F^p; the report checks the hypotheses only";

/// Radius grid for the `δ̂`/`δ` window proxies: `points` radii from
/// `R/span` to the window radius `R`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Theorem1Config {
    pub span: f64,
    pub points: usize,
}

impl Default for Theorem1Config {
    fn default() -> Self {
        Self { span: 100.0, points: 48 }
    }
}

/// Admissible exponent window `2/(1+ν) < p < 2/ν`.
pub fn theorem1_p_range(nu: f64) -> (f64, f64) {
    (2.0 / (1.0 + nu), if nu == 0.0 { f64::INFINITY } else { 2.0 / nu })
}

fn check_nu(nu: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&nu) {
        return Err(Error::InvalidParameter(format!("nu must lie in [0, 1], got {nu}")));
    }
    Ok(())
}

fn p_conditions(nu: f64, p: f64, op: &str) -> Vec<Condition> {
    let (lo, hi) = theorem1_p_range(nu);
    let cfg = json!({ "nu": nu, "p": p });
    vec![
        Condition::new("p_lower", p, Relation::Gt, lo, op, cfg.clone()),
        Condition::new("p_upper", p, Relation::Lt, hi, op, cfg),
    ]
}

fn sup_conditions(set: &PerturbedSet) -> Vec<Condition> {
    let cfg = json!({ "radius": set.radius(), "points": set.len() });
    vec![
        Condition::new("sup_gamma2_delta", set.sup_gamma2_delta(), Relation::Finite, 0.0, "sup_gamma2_delta", cfg.clone()),
        Condition::new("sup_gamma2_theta", set.sup_gamma2_theta(), Relation::Finite, 0.0, "sup_gamma2_theta", cfg),
    ]
}

/// Hypotheses of the lattice stability theorem on a finite window.
///
/// Condition (3) compares the anchored-secant proxies of `δ̂(Λ)` and `δ(Λ)`
/// with the open window `(ν − 2/p, ν + 1 − 2/p)`.
pub fn check_theorem1(set: &PerturbedSet, nu: f64, p: f64, cfg: &Theorem1Config) -> Result<TheoremReport> {
    check_nu(nu)?;
    match set.family() {
        Family::GammaNu { nu: s } if (s - nu).abs() <= 1e-12 => {}
        other => {
            return Err(Error::WrongFamily {
                expected: format!("gamma-nu(nu={nu})"),
                found: other.to_string(),
            })
        }
    }
    let mut conds = p_conditions(nu, p, "check_theorem1");
    conds.push(Condition::new(
        "separation",
        separation(set)?,
        Relation::Gt,
        0.0,
        "separation",
        json!({ "radius": set.radius() }),
    ));
    conds.extend(sup_conditions(set));
    let r = set.radius();
    // δ profile runs over [R/span, R] and needs its left end above 1
    if r <= cfg.span {
        return Err(Error::InsufficientData(format!(
            "theorem 1 needs a set radius above {}, got {r}",
            cfg.span
        )));
    }
    let grid = log_grid(r / cfg.span, r, cfg.points)?;
    let ds = delta_stats(set, &grid)?;
    let dcfg = json!({ "r0": grid[0], "r1": r, "points": cfg.points, "anchor": ds.anchor });
    conds.push(Condition::new(
        "delta_hat_lower",
        ds.delta_hat_proxy,
        Relation::Gt,
        nu - 2.0 / p,
        "delta_stats",
        dcfg.clone(),
    ));
    conds.push(Condition::new(
        "delta_upper",
        ds.delta_sup_proxy,
        Relation::Lt,
        nu + 1.0 - 2.0 / p,
        "delta_stats",
        dcfg,
    ));
    Ok(TheoremReport::new(
        "theorem-1",
        conds,
        json!({ "nu": nu, "p": p, "theorem1": cfg }),
    )
    .with_note(UNIQUENESS_NOTE))
}

/// Builds the perturbed lattice window and checks it; a collision is
/// reported as a failed separation condition rather than an error.
pub fn check_theorem1_from_spec(
    base: &PointSet,
    delta: &PerturbationSpec,
    theta: &PerturbationSpec,
    nu: f64,
    p: f64,
    cfg: &Theorem1Config,
) -> Result<TheoremReport> {
    check_nu(nu)?;
    match perturb(base, delta, theta) {
        Ok(set) => check_theorem1(&set, nu, p, cfg),
        Err(Error::Collision(at)) => {
            let mut conds = p_conditions(nu, p, "check_theorem1");
            conds.push(Condition::new(
                "separation",
                0.0,
                Relation::Gt,
                0.0,
                "perturb",
                json!({ "collision": at }),
            ));
            Ok(TheoremReport::new("theorem-1", conds, json!({ "nu": nu, "p": p, "theorem1": cfg }))
                .with_note("perturbed points coincide; remaining conditions not evaluated"))
        }
        Err(e) => Err(e),
    }
}

/// Window of the Avdonin-type sufficient condition.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Theorem2Config {
    pub avdonin_window: usize,
}

impl Default for Theorem2Config {
    fn default() -> Self {
        Self { avdonin_window: 1 }
    }
}

/// `1/(2·max{p, q})`.
pub fn theorem2_threshold(p: f64) -> f64 {
    let q = p / (p - 1.0);
    1.0 / (2.0 * p.max(q))
}

/// Hypotheses of the axis-sequence stability theorem on a finite window.
pub fn check_theorem2(set: &PerturbedSet, p: f64, cfg: &Theorem2Config) -> Result<TheoremReport> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::InvalidParameter(format!("p must lie in (1, inf), got {p}")));
    }
    let c = als_separation_constant(set)?;
    let stats = shell_delta_stats(set, cfg.avdonin_window)?;
    let thr = theorem2_threshold(p);
    let mut conds = vec![Condition::new(
        "separation_constant",
        c,
        Relation::Gt,
        0.0,
        "als_separation_constant",
        json!({ "radius": set.radius() }),
    )];
    conds.extend(sup_conditions(set));
    conds.push(Condition::new(
        "delta_proxy",
        stats.delta_proxy,
        Relation::Lt,
        thr,
        "shell_delta_stats",
        json!({ "n_max": stats.n_max, "anchor": stats.anchor }),
    ));
    conds.push(
        Condition::new(
            "avdonin_sup",
            stats.avdonin_sup,
            Relation::Lt,
            thr,
            "shell_delta_stats",
            json!({ "n_max": stats.n_max, "window": stats.avdonin_window }),
        )
        .informational(),
    );
    Ok(TheoremReport::new("theorem-2", conds, json!({ "p": p, "theorem2": cfg })).with_note(UNIQUENESS_NOTE))
}

/// Ladder for the power-sum increments.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Theorem3Config {
    /// The fit uses moduli in `[R/span, R]`.
    pub span: f64,
    pub points: usize,
}

impl Default for Theorem3Config {
    fn default() -> Self {
        Self { span: 100.0, points: 14 }
    }
}

/// Slope of `ln ΔS_k` against `ln R_k` for the increments of
/// `S(R) = Σ_{|z|≤R} |z|^{−s}` on a geometric grid; empty rings are skipped.
pub fn power_increment_slope(set: &PointSet, s: f64, radii: &[f64]) -> Result<f64> {
    let prof = power_profile(set, s, radii)?;
    let (xs, ys): (Vec<f64>, Vec<f64>) = (1..radii.len())
        .filter_map(|k| {
            let d = prof.values[k] - prof.values[k - 1];
            (d > 0.0).then(|| (radii[k].ln(), d.ln()))
        })
        .unzip();
    if xs.len() < 4 {
        return Err(Error::InsufficientData(format!(
            "only {} nonempty rings for the increment fit",
            xs.len()
        )));
    }
    Ok(fit_line(&xs, &ys)
        .ok_or_else(|| Error::Numerical("degenerate increment fit".into()))?
        .slope)
}

/// Classifies `Σ|z_n|^{−2}` by its increment slope (convergent below
/// `−0.15`, divergent otherwise) and checks the density exponent against
/// `2 + ε`.
pub fn check_theorem3(set: &PointSet, eps: f64, cfg: &Theorem3Config) -> Result<TheoremReport> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidParameter(format!("eps must be positive, got {eps}")));
    }
    if set.origin_included() {
        return Err(Error::InvalidParameter("the origin must be excluded".into()));
    }
    let moduli: Vec<f64> = set.zs().map(|z| z.norm()).collect();
    let (lo, hi) = match (moduli.first(), moduli.last()) {
        (Some(&a), Some(&b)) => (a, b),
        _ => return Err(Error::EmptySet),
    };
    if hi / lo < 100.0 * (1.0 - 1e-12) || hi / cfg.span < lo * (1.0 - 1e-12) {
        return Err(Error::InsufficientData(format!(
            "moduli span [{lo}, {hi}] is less than the required {} decades",
            cfg.span.log10()
        )));
    }
    let radii = log_grid(hi / cfg.span, hi, cfg.points)?;
    let slope = power_increment_slope(set, 2.0, &radii)?;
    let two = power_sum_with_tail(set, 2.0, hi)?;
    let more = power_sum_with_tail(set, 2.0 + eps, hi)?;
    let lcfg = json!({ "r0": radii[0], "r1": hi, "points": cfg.points });
    let conds = vec![
        Condition::new(
            "inverse_square_increment_slope",
            slope,
            Relation::Lt,
            -SLOPE_THRESHOLD,
            "power_profile",
            json!({ "s": 2.0, "ladder": lcfg }),
        ),
        Condition::new(
            "inverse_square_sum",
            if slope < -SLOPE_THRESHOLD { two.value } else { f64::INFINITY },
            Relation::Finite,
            0.0,
            "power_sum_with_tail",
            json!({ "s": 2.0, "r": hi, "partial": two.partial, "tail": two.tail }),
        )
        .informational(),
        Condition::new(
            "density_exponent",
            more.density_exponent,
            Relation::Lt,
            2.0 + eps,
            "power_sum_with_tail",
            json!({ "s": 2.0 + eps, "r": hi, "value": more.value }),
        ),
    ];
    Ok(TheoremReport::new("theorem-3", conds, json!({ "eps": eps, "theorem3": cfg })).with_note(
        "pass means every subset is a zero set; fail means some subset is not",
    ))
}
