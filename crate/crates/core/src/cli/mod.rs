//! Command-line front end.
//!
//! Every subcommand resolves its flags (or a `--manifest` file) into a
//! [`RunManifest`], executes it, and writes the primary artifact to `--out`
//! (or stdout) with the resolved manifest beside it as `<stem>.manifest.json`
//! (`a.points.json` → `a.points.manifest.json`).
//! Without `--out` the manifest goes to stderr.
//!
//! Exit codes: 0 success, 1 failed verdict, 2 usage or configuration error,
//! 3 numerical-domain error.

pub mod manifest;
pub mod specs;

pub use manifest::{
    CheckConfig, EvalConfig, GenConfig, MeasureSpec, NormConfig, ReportConfig, Run, RunManifest, VerifyTarget,
    SCHEMA_VERSION,
};
pub use specs::{parse_complex, parse_perturbation, read_set, FunctionKind, FunctionSpec, PointsFile, SetSpec};

use crate::error::{Error, Result};
use crate::measures::{fock_p_norm, membership_trend, nu_integral, Ladder, NuMeasure, QuadratureSpec};
use crate::products::{evaluate_grid, grid_csv, AlsProductEvaluator, GridSpec, LatticeProductEvaluator};
use crate::sequences::{
    gen_als, gen_gamma_nu, perturb, Axes, Family, ShellFamily, ShellStream,
};
use crate::verify::{
    check_theorem1, check_theorem1_from_spec, check_theorem2, check_theorem3, envelope_verify_als,
    envelope_verify_lattice, lindelof_check, sector_lemma_demo, zero_excess_demo, EnvelopeConfig, ProductFamily,
    RadialConfig, Theorem1Config, Theorem2Config, Theorem3Config, TheoremReport, ZeroExcessConfig,
};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "FOCKZERO_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "fockzero", version, about = "Zero sets and products in Fock spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a (perturbed) point set as JSON.
    Gen(GenArgs),
    /// Evaluate a function on a grid, CSV output.
    Eval(EvalArgs),
    /// Fock norm or weighted integral over a ladder of disks.
    Norm(NormArgs),
    /// Check theorem hypotheses on a points file.
    Check(CheckArgs),
    /// Run a verification harness on generated data.
    Verify(VerifyArgs),
    /// Bundle earlier outputs into one summary.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
struct Io {
    /// Run from a manifest file; other flags are ignored.
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// Output path; the resolved manifest is written beside it.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct GenArgs {
    /// gamma-nu, als, zeros-of-s, zeros-of-s-real, integers, power:EXP, or a points file.
    #[arg(long, default_value = "gamma-nu")]
    family: String,
    #[arg(long, default_value_t = 0.0)]
    nu: f64,
    #[arg(long, default_value_t = 50.0)]
    radius: f64,
    /// Number of points for integers and power:EXP.
    #[arg(long, default_value_t = 1000)]
    count: u64,
    #[arg(long, default_value = "zero")]
    delta: String,
    #[arg(long, default_value = "zero")]
    theta: String,
    #[command(flatten)]
    io: Io,
}

#[derive(Debug, Args)]
struct FunctionArgs {
    /// lattice, als, s, S, g-gamma, kernel, constant, monomial.
    #[arg(long, default_value = "lattice")]
    function: String,
    /// Parameter of a closed form as `re,im`.
    #[arg(long, allow_hyphen_values = true)]
    param: Option<String>,
    #[arg(long, default_value_t = 0.0)]
    nu: f64,
    #[arg(long, default_value_t = 64.0)]
    r_t: f64,
    #[arg(long, default_value_t = crate::products::DEFAULT_K_TAIL)]
    k_tail: usize,
    #[arg(long, default_value_t = 2000)]
    n_max: u64,
    /// Points file replacing the unperturbed zeros of a product.
    #[arg(long)]
    points: Option<PathBuf>,
    /// Divide by `z - λ`, λ as `re,im`.
    #[arg(long, allow_hyphen_values = true)]
    divide_by: Option<String>,
    /// Multiply by `z^k`.
    #[arg(long, default_value_t = 0)]
    times_z: u32,
}

impl FunctionArgs {
    fn resolve(&self) -> Result<FunctionSpec> {
        let base = match self.function.as_str() {
            "lattice" => FunctionKind::Lattice {
                nu: self.nu,
                r_t: self.r_t,
                k_tail: self.k_tail,
                points: self.points.clone(),
            },
            "als" => FunctionKind::Als { n_max: self.n_max, points: self.points.clone() },
            name => FunctionKind::Closed {
                name: name.into(),
                param: self.param.as_deref().map(parse_pair).transpose()?,
            },
        };
        Ok(FunctionSpec {
            base,
            divide_by: self.divide_by.as_deref().map(parse_pair).transpose()?,
            times_z: self.times_z,
        })
    }
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[command(flatten)]
    function: FunctionArgs,
    /// Polar grid radii `r0,r1`.
    #[arg(long, default_value = "0.5,8", allow_hyphen_values = true)]
    polar: String,
    /// Rectangular grid `re0,re1,im0,im1`; overrides --polar.
    #[arg(long, allow_hyphen_values = true)]
    rect: Option<String>,
    /// Grid resolution `n1,n2` (radial × angular or re × im).
    #[arg(long, default_value = "32,64")]
    n: String,
    #[command(flatten)]
    io: Io,
}

#[derive(Debug, Args)]
struct NormArgs {
    #[command(flatten)]
    function: FunctionArgs,
    #[arg(long, default_value_t = 2.0)]
    p: f64,
    /// fock or nu.
    #[arg(long, default_value = "fock")]
    measure: String,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    beta: f64,
    /// precise, coarse or diagonal.
    #[arg(long, default_value = "precise")]
    quadrature: String,
    #[arg(long, default_value_t = 16.0)]
    ladder_top: f64,
    /// Report the ladder verdict without a value.
    #[arg(long)]
    membership: bool,
    #[command(flatten)]
    io: Io,
}

#[derive(Debug, Args)]
struct CheckArgs {
    /// 1, 2 or 3.
    #[arg(long)]
    theorem: Option<u8>,
    #[arg(long)]
    points: Option<PathBuf>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, default_value_t = 0.01)]
    eps: f64,
    #[command(flatten)]
    io: Io,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// 1, 2, 3, zero-excess, envelope-lattice, envelope-als, lindelof, sector.
    #[arg(long)]
    theorem: Option<String>,
    #[arg(long, default_value_t = 0.5)]
    nu: f64,
    #[arg(long, default_value_t = 2.0)]
    p: f64,
    #[arg(long, default_value = "zero")]
    delta: String,
    #[arg(long, default_value = "zero")]
    theta: String,
    /// Window radius; each target has its own default.
    #[arg(long)]
    radius: Option<f64>,
    /// Point set for theorem 3, lindelof and sector (as in `gen --family`).
    #[arg(long)]
    set: Option<String>,
    #[arg(long, default_value_t = 10_000)]
    count: u64,
    #[arg(long, default_value_t = 0.01)]
    eps: f64,
    #[arg(long, default_value_t = 2)]
    rho: u32,
    /// Sector direction β.
    #[arg(long, default_value_t = 0.0)]
    beta: f64,
    /// Sector half-angle θ.
    #[arg(long, default_value_t = 0.0)]
    half_angle: f64,
    /// Rotation applied to the sector set.
    #[arg(long, default_value_t = 0.0)]
    rotate: f64,
    /// Removed zero for zero-excess, `re,im`.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// lattice or als, for zero-excess.
    #[arg(long, default_value = "lattice")]
    family: String,
    #[arg(long, default_value_t = 64.0)]
    r_t: f64,
    #[arg(long, default_value_t = 2000)]
    n_max: u64,
    #[command(flatten)]
    io: Io,
}

#[derive(Debug, Args)]
struct ReportArgs {
    /// Earlier outputs (reports, norms, points, grids).
    inputs: Vec<PathBuf>,
    #[command(flatten)]
    io: Io,
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

fn parse_pair(s: &str) -> Result<[f64; 2]> {
    let z = parse_complex(s)?;
    Ok([z.re, z.im])
}

fn parse_list(s: &str, n: usize) -> Result<Vec<f64>> {
    let v: std::result::Result<Vec<f64>, _> = s.split(',').map(|t| t.trim().parse::<f64>()).collect();
    match v {
        Ok(v) if v.len() == n => Ok(v),
        _ => Err(usage(format!("expected {n} comma-separated numbers, got '{s}'"))),
    }
}

fn parse_counts(s: &str) -> Result<(usize, usize)> {
    let v = parse_list(s, 2)?;
    if v.iter().any(|x| !(x.fract() == 0.0 && *x >= 1.0)) {
        return Err(usage(format!("grid resolution must be positive integers, got '{s}'")));
    }
    Ok((v[0] as usize, v[1] as usize))
}

fn quadrature_preset(name: &str) -> Result<QuadratureSpec> {
    match name {
        "precise" => Ok(QuadratureSpec::precise()),
        "coarse" => Ok(QuadratureSpec::coarse()),
        "diagonal" => Ok(QuadratureSpec::diagonal()),
        other => Err(usage(format!("unknown quadrature preset '{other}'"))),
    }
}

/// Zero of smallest modulus of `Γ_ν`.
fn first_lattice_zero(nu: f64) -> Result<[f64; 2]> {
    let z = gen_gamma_nu(nu, 2.0)?.zs().next().ok_or(Error::EmptySet)?;
    Ok([z.re, z.im])
}

fn resolve_verify(a: &VerifyArgs) -> Result<VerifyTarget> {
    let target = a.theorem.as_deref().ok_or_else(|| usage("verify needs --theorem or --manifest"))?;
    let delta = || parse_perturbation(&a.delta);
    let theta = || parse_perturbation(&a.theta);
    let set = |default: &str, radius: f64| SetSpec::parse(a.set.as_deref().unwrap_or(default), radius, a.nu, a.count);
    Ok(match target {
        "1" | "theorem-1" => VerifyTarget::Theorem1 {
            nu: a.nu,
            p: a.p,
            radius: a.radius.unwrap_or(200.0),
            delta: delta()?,
            theta: theta()?,
            config: Theorem1Config::default(),
        },
        "2" | "theorem-2" => VerifyTarget::Theorem2 {
            p: a.p,
            radius: a.radius.unwrap_or((2.0f64 * 4000.0).sqrt()),
            delta: delta()?,
            theta: theta()?,
            config: Theorem2Config::default(),
        },
        "3" | "theorem-3" => VerifyTarget::Theorem3 {
            set: set("zeros-of-s", a.radius.unwrap_or(150.0))?,
            eps: a.eps,
            config: Theorem3Config::default(),
        },
        "zero-excess" => {
            let (family, default_lambda) = match a.family.as_str() {
                "lattice" => (ProductFamily::Lattice { nu: a.nu }, first_lattice_zero(a.nu)?),
                "als" => (ProductFamily::Als, [1.0, 0.0]),
                other => return Err(usage(format!("unknown product family '{other}'"))),
            };
            VerifyTarget::ZeroExcess {
                family,
                p: a.p,
                lambda: a.lambda.as_deref().map(parse_pair).transpose()?.unwrap_or(default_lambda),
                r_t: a.r_t,
                n_max: a.n_max,
                config: ZeroExcessConfig::default(),
            }
        }
        "envelope-lattice" => VerifyTarget::EnvelopeLattice { nu: a.nu, r_t: a.r_t, config: EnvelopeConfig::default() },
        "envelope-als" => VerifyTarget::EnvelopeAls {
            n_max: a.n_max,
            delta: delta()?,
            theta: theta()?,
            config: EnvelopeConfig::default(),
        },
        "lindelof" => VerifyTarget::Lindelof {
            set: set("zeros-of-s", a.radius.unwrap_or(1000.0))?,
            rho: a.rho,
            config: RadialConfig::default(),
        },
        "sector" => VerifyTarget::Sector {
            set: set("zeros-of-s-real", a.radius.unwrap_or(300.0))?,
            beta: a.beta,
            theta: a.half_angle,
            rotate: a.rotate,
            config: RadialConfig::default(),
        },
        other => return Err(usage(format!("unknown verification target '{other}'"))),
    })
}

fn resolve(cmd: &Command) -> Result<Run> {
    Ok(match cmd {
        Command::Gen(a) => Run::Gen(GenConfig {
            set: SetSpec::parse(&a.family, a.radius, a.nu, a.count)?,
            delta: parse_perturbation(&a.delta)?,
            theta: parse_perturbation(&a.theta)?,
        }),
        Command::Eval(a) => {
            let (n1, n2) = parse_counts(&a.n)?;
            let grid = match &a.rect {
                Some(r) => {
                    let v = parse_list(r, 4)?;
                    GridSpec::Rect { re: [v[0], v[1]], im: [v[2], v[3]], n_re: n1, n_im: n2 }
                }
                None => {
                    let v = parse_list(&a.polar, 2)?;
                    GridSpec::Polar { r: [v[0], v[1]], n_r: n1, n_theta: n2 }
                }
            };
            Run::Eval(EvalConfig { function: a.function.resolve()?, grid })
        }
        Command::Norm(a) => Run::Norm(NormConfig {
            function: a.function.resolve()?,
            p: a.p,
            measure: match a.measure.as_str() {
                "fock" => MeasureSpec::Fock,
                "nu" => MeasureSpec::Nu { alpha: a.alpha, beta: a.beta },
                other => return Err(usage(format!("unknown measure '{other}'"))),
            },
            quadrature: quadrature_preset(&a.quadrature)?,
            ladder_top: a.ladder_top,
            membership: a.membership,
        }),
        Command::Check(a) => Run::Check(CheckConfig {
            theorem: a.theorem.ok_or_else(|| usage("check needs --theorem or --manifest"))?,
            points: a.points.clone().ok_or_else(|| usage("check needs --points or --manifest"))?,
            p: a.p,
            eps: a.eps,
            theorem1: Theorem1Config::default(),
            theorem2: Theorem2Config::default(),
            theorem3: Theorem3Config::default(),
        }),
        Command::Verify(a) => Run::Verify(resolve_verify(a)?),
        Command::Report(a) => Run::Report(ReportConfig { inputs: a.inputs.clone() }),
    })
}

/// Result of one run before it is written out.
pub struct Output {
    /// Primary artifact (JSON or CSV text).
    pub primary: String,
    /// Plain-text table for reports.
    pub table: Option<String>,
    pub failed: bool,
}

fn report_output(report: &TheoremReport) -> Result<Output> {
    Ok(Output {
        primary: serde_json::to_string_pretty(report)? + "\n",
        table: Some(report.to_table()),
        failed: !report.passed(),
    })
}

fn run_verify(t: &VerifyTarget) -> Result<TheoremReport> {
    match t {
        VerifyTarget::Theorem1 { nu, p, radius, delta, theta, config } => {
            check_theorem1_from_spec(&gen_gamma_nu(*nu, *radius)?, delta, theta, *nu, *p, config)
        }
        VerifyTarget::Theorem2 { p, radius, delta, theta, config } => {
            check_theorem2(&perturb(&gen_als(*radius)?, delta, theta)?, *p, config)
        }
        VerifyTarget::Theorem3 { set, eps, config } => check_theorem3(&set.build()?, *eps, config),
        VerifyTarget::ZeroExcess { family, p, lambda, r_t, n_max, config } => {
            let lambda = num_complex::Complex64::new(lambda[0], lambda[1]);
            match family {
                ProductFamily::Lattice { nu } => {
                    let ev = LatticeProductEvaluator::unperturbed(*nu, *r_t)?;
                    zero_excess_demo(&ev, *family, lambda, *p, config)
                }
                ProductFamily::Als => {
                    let ev = AlsProductEvaluator::unperturbed(*n_max)?;
                    zero_excess_demo(&ev, *family, lambda, *p, config)
                }
            }
        }
        VerifyTarget::EnvelopeLattice { nu, r_t, config } => {
            let ev = LatticeProductEvaluator::unperturbed(*nu, *r_t)?;
            let fit = envelope_verify_lattice(&ev, *nu, config)?;
            Ok(fit.to_report("envelope-lattice", json!({ "nu": nu, "r_t": r_t, "envelope": config })))
        }
        VerifyTarget::EnvelopeAls { n_max, delta, theta, config } => {
            let radius = ((2 * n_max) as f64).sqrt() * (1.0 + 1e-12);
            let set = perturb(&gen_als(radius)?, delta, theta)?;
            let ev = AlsProductEvaluator::new(&set, *n_max)?;
            let fit = envelope_verify_als(&ev, config)?;
            Ok(fit.to_report(
                "envelope-als",
                json!({ "n_max": n_max, "delta": delta, "theta": theta, "envelope": config }),
            ))
        }
        VerifyTarget::Lindelof { set, rho, config } => {
            // axis sets are streamed, so the radius is not bounded by memory
            let stream = |kind, axes| ShellStream::new(kind, axes);
            match set {
                SetSpec::ZerosOfS { radius } => {
                    lindelof_check(&stream(ShellFamily::ZerosOfS, Axes::Both), *rho, *radius, config)
                }
                SetSpec::ZerosOfSReal { radius } => {
                    lindelof_check(&stream(ShellFamily::ZerosOfS, Axes::RealOnly), *rho, *radius, config)
                }
                SetSpec::Als { radius } => lindelof_check(&stream(ShellFamily::Als, Axes::Both), *rho, *radius, config),
                other => {
                    let s = other.build()?;
                    lindelof_check(&s, *rho, s.radius(), config)
                }
            }
        }
        VerifyTarget::Sector { set, beta, theta, rotate, config } => {
            sector_lemma_demo(&set.build()?.rotated(*rotate), *beta, *theta, config)
        }
    }
}

fn run_check(c: &CheckConfig) -> Result<TheoremReport> {
    let set = read_set(&c.points)?;
    match c.theorem {
        1 => {
            let nu = match set.family() {
                Family::GammaNu { nu } => nu,
                other => {
                    return Err(Error::WrongFamily { expected: "gamma-nu".into(), found: other.name().into() })
                }
            };
            check_theorem1(&set, nu, c.p.unwrap_or(2.0), &c.theorem1)
        }
        2 => check_theorem2(&set, c.p.unwrap_or(2.0), &c.theorem2),
        3 => check_theorem3(&set.to_point_set(), c.eps, &c.theorem3),
        other => Err(usage(format!("theorem must be 1, 2 or 3, got {other}"))),
    }
}

fn summarize(path: &Path) -> Result<(Value, String, Option<bool>)> {
    let text = std::fs::read_to_string(path)?;
    if path.extension().is_some_and(|e| e == "csv") {
        let rows = text.lines().count().saturating_sub(1);
        return Ok((json!({ "rows": rows }), "grid".into(), None));
    }
    let v: Value = serde_json::from_str(&text)?;
    let (kind, pass) = if v.get("theorem").is_some() {
        let pass = match v.get("verdict").and_then(Value::as_str) {
            Some("pass") => true,
            Some("fail") => false,
            _ => return Err(usage(format!("{}: report without a verdict", path.display()))),
        };
        ("report", Some(pass))
    } else if v.get("partials").is_some() {
        ("norm", None)
    } else if v.get("entries").is_some() {
        ("points", None)
    } else if v.get("inputs").is_some() {
        let pass = v.get("verdict").and_then(Value::as_str).map(|s| s == "pass");
        ("report-bundle", pass)
    } else {
        return Err(usage(format!("{}: unrecognized output", path.display())));
    };
    let content = if kind == "points" {
        json!({
            "family": v["family"],
            "R": v["R"],
            "count": v["entries"].as_array().map_or(0, Vec::len),
        })
    } else {
        v
    };
    Ok((content, kind.into(), pass))
}

fn run_report(c: &ReportConfig) -> Result<Output> {
    if c.inputs.is_empty() {
        return Err(usage("report needs at least one input"));
    }
    let mut entries = Vec::with_capacity(c.inputs.len());
    let mut table = format!("{:<48} {:<14} {}\n", "input", "kind", "verdict");
    let mut failed = false;
    for path in &c.inputs {
        let (content, kind, pass) = summarize(path)?;
        let verdict = match pass {
            Some(true) => "pass",
            Some(false) => "fail",
            None => content.get("verdict").and_then(Value::as_str).unwrap_or("-"),
        };
        failed |= pass == Some(false);
        table.push_str(&format!("{:<48} {:<14} {}\n", path.display(), kind, verdict));
        entries.push(json!({ "path": path, "kind": kind, "verdict": verdict, "content": content }));
    }
    let verdict = if failed { "fail" } else { "pass" };
    table.push_str(&format!("overall: {verdict}\n"));
    let bundle = json!({ "schema_version": SCHEMA_VERSION, "inputs": entries, "verdict": verdict });
    Ok(Output { primary: serde_json::to_string_pretty(&bundle)? + "\n", table: Some(table), failed })
}

/// Executes a resolved run.
pub fn execute(run: &Run) -> Result<Output> {
    match run {
        Run::Gen(c) => {
            let set = perturb(&c.set.build()?, &c.delta, &c.theta)?;
            Ok(Output {
                primary: serde_json::to_string_pretty(&PointsFile::from_set(&set))? + "\n",
                table: None,
                failed: false,
            })
        }
        Run::Eval(c) => {
            let built = c.function.build()?;
            let samples = evaluate_grid(&*built.f, &built.zeros, &c.grid)?;
            Ok(Output { primary: grid_csv(&samples), table: None, failed: false })
        }
        Run::Norm(c) => {
            let built = c.function.build()?;
            let ladder = Ladder::up_to(c.ladder_top)?;
            let est = match (&c.measure, c.membership) {
                (MeasureSpec::Fock, false) => fock_p_norm(&*built.f, c.p, &c.quadrature, &ladder)?,
                (MeasureSpec::Fock, true) => membership_trend(&*built.f, c.p, &c.quadrature, &ladder)?,
                (MeasureSpec::Nu { alpha, beta }, membership) => {
                    let mut est = nu_integral(&*built.f, &NuMeasure::new(c.p, *alpha, *beta)?, &c.quadrature, &ladder)?;
                    if membership {
                        est.value = None;
                    }
                    est
                }
            };
            Ok(Output { primary: serde_json::to_string_pretty(&est)? + "\n", table: None, failed: false })
        }
        Run::Check(c) => report_output(&run_check(c)?),
        Run::Verify(t) => report_output(&run_verify(t)?),
        Run::Report(c) => run_report(c),
    }
}

/// `dir/name.kind.ext` → `dir/name.kind.manifest.json`.
pub fn manifest_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let stem = if stem.is_empty() { "run".into() } else { stem };
    out.with_file_name(format!("{stem}.manifest.json"))
}

fn load_manifest(path: &Path, expected: &str) -> Result<Run> {
    let m: RunManifest = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    if m.schema_version != SCHEMA_VERSION {
        return Err(usage(format!(
            "manifest schema version {} is not {SCHEMA_VERSION}",
            m.schema_version
        )));
    }
    if m.run.name() != expected {
        return Err(usage(format!("manifest is for '{}', not '{expected}'", m.run.name())));
    }
    Ok(m.run)
}

fn init_threads() -> Result<()> {
    let Ok(v) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .map_err(|_| usage(format!("{THREADS_ENV} must be a thread count, got '{v}'")))?;
    // a pool built earlier in the same process keeps its size
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn io_of(cmd: &Command) -> &Io {
    match cmd {
        Command::Gen(a) => &a.io,
        Command::Eval(a) => &a.io,
        Command::Norm(a) => &a.io,
        Command::Check(a) => &a.io,
        Command::Verify(a) => &a.io,
        Command::Report(a) => &a.io,
    }
}

fn name_of(cmd: &Command) -> &'static str {
    match cmd {
        Command::Gen(_) => "gen",
        Command::Eval(_) => "eval",
        Command::Norm(_) => "norm",
        Command::Check(_) => "check",
        Command::Verify(_) => "verify",
        Command::Report(_) => "report",
    }
}

fn dispatch(cmd: &Command) -> Result<bool> {
    init_threads()?;
    let io = io_of(cmd);
    let run = match &io.manifest {
        Some(path) => load_manifest(path, name_of(cmd))?,
        None => resolve(cmd)?,
    };
    let manifest = RunManifest { schema_version: SCHEMA_VERSION, run };
    let out = execute(&manifest.run)?;
    let manifest_text = serde_json::to_string_pretty(&manifest)? + "\n";
    match &io.out {
        Some(path) => {
            std::fs::write(path, &out.primary)?;
            std::fs::write(manifest_path(path), manifest_text)?;
            if let Some(t) = &out.table {
                print!("{t}");
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(out.primary.as_bytes())?;
            stdout.flush()?;
            let mut stderr = std::io::stderr().lock();
            if let Some(t) = &out.table {
                stderr.write_all(t.as_bytes())?;
            }
            stderr.write_all(manifest_text.as_bytes())?;
        }
    }
    Ok(out.failed)
}

/// Parses `argv` (program name first), runs the subcommand, and returns
/// the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(&cli.command) {
        Ok(false) => EXIT_OK,
        Ok(true) => EXIT_FAIL,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_domain() {
                EXIT_DOMAIN
            } else {
                EXIT_USAGE
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_path_replaces_final_extension() {
        assert_eq!(manifest_path(Path::new("/tmp/a.points.json")), Path::new("/tmp/a.points.manifest.json"));
        assert_eq!(manifest_path(Path::new("b.csv")), Path::new("b.manifest.json"));
    }

    #[test]
    fn manifest_rejects_unknown_keys() {
        let good = json!({
            "schema_version": 1,
            "run": { "command": "report", "config": { "inputs": ["x.json"] } }
        });
        assert!(serde_json::from_value::<RunManifest>(good.clone()).is_ok());
        let mut bad = good.clone();
        bad["run"]["config"]["extra"] = json!(1);
        assert!(serde_json::from_value::<RunManifest>(bad).is_err());
        let mut bad = good;
        bad["colour"] = json!("red");
        assert!(serde_json::from_value::<RunManifest>(bad).is_err());
    }

    #[test]
    fn resolved_verify_round_trips() {
        let cli = Cli::try_parse_from(["fockzero", "verify", "--theorem", "zero-excess", "--nu", "0.5"]).unwrap();
        let run = resolve(&cli.command).unwrap();
        match &run {
            Run::Verify(VerifyTarget::ZeroExcess { lambda, .. }) => assert_eq!(*lambda, [0.5, 0.0]),
            other => panic!("unexpected {other:?}"),
        }
        let m = RunManifest { schema_version: SCHEMA_VERSION, run };
        let text = serde_json::to_string(&m).unwrap();
        assert_eq!(serde_json::from_str::<RunManifest>(&text).unwrap(), m);
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(["fockzero", "frobnicate"]), EXIT_USAGE);
        assert_eq!(run(["fockzero", "verify", "--theorem", "7"]), EXIT_USAGE);
        assert_eq!(run(["fockzero", "--help"]), EXIT_OK);
    }
}
