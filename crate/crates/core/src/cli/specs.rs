use crate::error::{Error, Result};
use crate::products::{
    AlsProductEvaluator, ClosedForm, DivideByLinear, EntireFunction, LatticeProductEvaluator, TimesMonomial,
    DEFAULT_K_TAIL,
};
use crate::sequences::{
    gen_als, gen_gamma_nu, gen_power_sequence, gen_zeros_of_s, Family, PerturbationSpec, PerturbedEntry,
    PerturbedSet, PointSet, ShellSchedule,
};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

/// On-disk point set: `{family, nu?, R, entries:[{base, delta, theta, lambda}]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointsFile {
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<f64>,
    #[serde(rename = "R")]
    pub radius: f64,
    pub entries: Vec<EntryRecord>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryRecord {
    pub base: [f64; 2],
    pub delta: f64,
    pub theta: f64,
    pub lambda: [f64; 2],
}

fn c(p: [f64; 2]) -> Complex64 {
    Complex64::new(p[0], p[1])
}

impl PointsFile {
    pub fn from_set(set: &PerturbedSet) -> Self {
        Self {
            family: set.family().name().into(),
            nu: set.family().nu(),
            radius: set.radius(),
            entries: set
                .entries()
                .iter()
                .map(|e| EntryRecord {
                    base: [e.base.re, e.base.im],
                    delta: e.delta,
                    theta: e.theta,
                    lambda: [e.lambda.re, e.lambda.im],
                })
                .collect(),
        }
    }

    pub fn to_set(&self) -> Result<PerturbedSet> {
        let family = Family::from_name(&self.family, self.nu)?;
        let entries = self
            .entries
            .iter()
            .map(|e| PerturbedEntry {
                base: c(e.base),
                delta: e.delta,
                theta: e.theta,
                lambda: c(e.lambda),
            })
            .collect();
        PerturbedSet::from_entries(family, self.radius, entries)
    }

    pub fn read(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }
}

pub fn read_set(path: &Path) -> Result<PerturbedSet> {
    PointsFile::read(path)?.to_set()
}

/// `zero`, `inverse-square:c`, `harmonic:d`, `alternating:a`, or a JSON
/// object in the tagged form of [`PerturbationSpec`].
pub fn parse_perturbation(s: &str) -> Result<PerturbationSpec> {
    let s = s.trim();
    if s.starts_with('{') {
        return Ok(serde_json::from_str(s)?);
    }
    let (head, arg) = match s.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (s, None),
    };
    let num = || -> Result<f64> {
        arg.ok_or_else(|| Error::InvalidParameter(format!("perturbation '{head}' needs a value")))?
            .parse::<f64>()
            .map_err(|e| Error::InvalidParameter(format!("bad number in '{s}': {e}")))
    };
    match head {
        "zero" => Ok(PerturbationSpec::Zero),
        "inverse-square" => Ok(PerturbationSpec::InverseSquare { c: num()? }),
        "harmonic" => Ok(PerturbationSpec::Shell { schedule: ShellSchedule::Harmonic { d: num()? } }),
        "alternating" => Ok(PerturbationSpec::Shell { schedule: ShellSchedule::Alternating { a: num()? } }),
        other => Err(Error::InvalidParameter(format!("unknown perturbation '{other}'"))),
    }
}

/// `re,im` or a bare real.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let bad = |e: std::num::ParseFloatError| Error::InvalidParameter(format!("bad complex '{s}': {e}"));
    match s.split_once(',') {
        Some((a, b)) => Ok(Complex64::new(a.trim().parse().map_err(bad)?, b.trim().parse().map_err(bad)?)),
        None => Ok(Complex64::new(s.trim().parse().map_err(bad)?, 0.0)),
    }
}

/// Base function of `eval` and `norm`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum FunctionKind {
    /// `s`, `S`, `g-gamma`, `kernel`, `constant`, `monomial`.
    Closed {
        name: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        param: Option<[f64; 2]>,
    },
    /// Lattice product; unperturbed `Γ_ν` unless `points` is given.
    Lattice {
        #[serde(default)]
        nu: f64,
        r_t: f64,
        k_tail: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        points: Option<PathBuf>,
    },
    /// Axis product; unperturbed unless `points` is given.
    Als {
        n_max: u64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        points: Option<PathBuf>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionSpec {
    pub base: FunctionKind,
    /// Divide by `z − λ` (λ must be a zero).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub divide_by: Option<[f64; 2]>,
    /// Multiply by `z^k`.
    #[serde(default)]
    pub times_z: u32,
}

/// A built function together with its zeros (for distances).
pub struct Built {
    pub f: Box<dyn EntireFunction>,
    pub zeros: Vec<Complex64>,
}

impl FunctionSpec {
    pub fn build(&self) -> Result<Built> {
        let (f, mut zeros): (Box<dyn EntireFunction>, Vec<Complex64>) = match &self.base {
            FunctionKind::Closed { name, param } => {
                let cf = ClosedForm::from_name(name, param.map(c))?;
                (Box::new(cf), closed_zeros(&cf))
            }
            FunctionKind::Lattice { nu, r_t, k_tail, points } => {
                let ev = match points {
                    Some(p) => LatticeProductEvaluator::new(&read_set(p)?, *r_t, *k_tail)?,
                    None => {
                        let set = PerturbedSet::unperturbed(&gen_gamma_nu(*nu, *r_t)?)?;
                        LatticeProductEvaluator::new(&set, *r_t, *k_tail)?
                    }
                };
                let z = ev.zeros().to_vec();
                (Box::new(ev), z)
            }
            FunctionKind::Als { n_max, points } => {
                let ev = match points {
                    Some(p) => AlsProductEvaluator::new(&read_set(p)?, *n_max)?,
                    None => AlsProductEvaluator::unperturbed(*n_max)?,
                };
                let z = ev.zeros().to_vec();
                (Box::new(ev), z)
            }
        };
        let f: Box<dyn EntireFunction> = match self.divide_by {
            Some(l) => {
                let l = c(l);
                zeros.retain(|&z| z != l);
                Box::new(DivideByLinear::new(f, l)?)
            }
            None => f,
        };
        let f: Box<dyn EntireFunction> = if self.times_z > 0 {
            zeros.push(Complex64::new(0.0, 0.0));
            Box::new(TimesMonomial { f, k: self.times_z })
        } else {
            f
        };
        Ok(Built { f, zeros })
    }

    pub fn lattice(nu: f64, r_t: f64) -> Self {
        Self {
            base: FunctionKind::Lattice { nu, r_t, k_tail: DEFAULT_K_TAIL, points: None },
            divide_by: None,
            times_z: 0,
        }
    }
}

/// Zeros of closed forms on a generous disk (distance column only).
fn closed_zeros(cf: &ClosedForm) -> Vec<Complex64> {
    const R: f64 = 64.0;
    match cf {
        ClosedForm::SincS => gen_zeros_of_s(R).map(|s| s.zs().collect()).unwrap_or_default(),
        ClosedForm::S | ClosedForm::GGamma => gen_als(R).map(|s| s.zs().collect()).unwrap_or_default(),
        ClosedForm::Monomial(k) if *k > 0 => vec![Complex64::new(0.0, 0.0)],
        _ => Vec::new(),
    }
}

/// Point sets named on the command line.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SetSpec {
    ZerosOfS { radius: f64 },
    /// Real-axis zeros of `s` only.
    ZerosOfSReal { radius: f64 },
    Als { radius: f64 },
    GammaNu { nu: f64, radius: f64 },
    /// `{n^exponent : 1 ≤ n ≤ count}`.
    Power { exponent: f64, count: u64 },
    File { path: PathBuf },
}

impl SetSpec {
    /// `zeros-of-s`, `zeros-of-s-real`, `als`, `gamma-nu`, `integers`,
    /// `power:EXP`, or a path to a points file.
    pub fn parse(name: &str, radius: f64, nu: f64, count: u64) -> Result<Self> {
        Ok(match name {
            "zeros-of-s" => SetSpec::ZerosOfS { radius },
            "zeros-of-s-real" => SetSpec::ZerosOfSReal { radius },
            "als" => SetSpec::Als { radius },
            "gamma-nu" => SetSpec::GammaNu { nu, radius },
            "integers" => SetSpec::Power { exponent: 1.0, count },
            other => match other.strip_prefix("power:") {
                Some(e) => SetSpec::Power {
                    exponent: e
                        .parse()
                        .map_err(|e| Error::InvalidParameter(format!("bad exponent in '{other}': {e}")))?,
                    count,
                },
                None if Path::new(other).exists() => SetSpec::File { path: other.into() },
                None => return Err(Error::InvalidParameter(format!("unknown set '{other}'"))),
            },
        })
    }

    pub fn build(&self) -> Result<PointSet> {
        match self {
            SetSpec::ZerosOfS { radius } => gen_zeros_of_s(*radius),
            SetSpec::ZerosOfSReal { radius } => Ok(gen_zeros_of_s(*radius)?.filter(|z| z.im == 0.0)),
            SetSpec::Als { radius } => gen_als(*radius),
            SetSpec::GammaNu { nu, radius } => gen_gamma_nu(*nu, *radius),
            SetSpec::Power { exponent, count } => gen_power_sequence(*exponent, *count),
            SetSpec::File { path } => Ok(read_set(path)?.to_point_set()),
        }
    }
}
