use super::specs::{FunctionSpec, SetSpec};
use crate::measures::QuadratureSpec;
use crate::products::GridSpec;
use crate::sequences::PerturbationSpec;
use crate::verify::{EnvelopeConfig, ProductFamily, RadialConfig, Theorem1Config, Theorem2Config, Theorem3Config, ZeroExcessConfig};
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

pub const SCHEMA_VERSION: u32 = 1;

/// Fully resolved configuration of one run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunManifest {
    pub schema_version: u32,
    pub run: Run,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", content = "config", rename_all = "kebab-case")]
pub enum Run {
    Gen(GenConfig),
    Eval(EvalConfig),
    Norm(NormConfig),
    Check(CheckConfig),
    Verify(VerifyTarget),
    Report(ReportConfig),
}

impl Run {
    pub fn name(&self) -> &'static str {
        match self {
            Run::Gen(_) => "gen",
            Run::Eval(_) => "eval",
            Run::Norm(_) => "norm",
            Run::Check(_) => "check",
            Run::Verify(_) => "verify",
            Run::Report(_) => "report",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenConfig {
    pub set: SetSpec,
    pub delta: PerturbationSpec,
    pub theta: PerturbationSpec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvalConfig {
    pub function: FunctionSpec,
    pub grid: GridSpec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum MeasureSpec {
    /// `μ_{pπ}`; the estimate value is the `F^p` norm.
    Fock,
    /// `ν_{p,α,β}`; the estimate value is the integral.
    Nu { alpha: f64, beta: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormConfig {
    pub function: FunctionSpec,
    pub p: f64,
    pub measure: MeasureSpec,
    pub quadrature: QuadratureSpec,
    pub ladder_top: f64,
    /// Report the ladder verdict only.
    pub membership: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckConfig {
    pub theorem: u8,
    pub points: PathBuf,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    pub eps: f64,
    pub theorem1: Theorem1Config,
    pub theorem2: Theorem2Config,
    pub theorem3: Theorem3Config,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "target", rename_all = "kebab-case", deny_unknown_fields)]
pub enum VerifyTarget {
    #[serde(rename = "theorem-1")]
    Theorem1 {
        nu: f64,
        p: f64,
        radius: f64,
        delta: PerturbationSpec,
        theta: PerturbationSpec,
        config: Theorem1Config,
    },
    #[serde(rename = "theorem-2")]
    Theorem2 {
        p: f64,
        radius: f64,
        delta: PerturbationSpec,
        theta: PerturbationSpec,
        config: Theorem2Config,
    },
    #[serde(rename = "theorem-3")]
    Theorem3 {
        set: SetSpec,
        eps: f64,
        config: Theorem3Config,
    },
    ZeroExcess {
        family: ProductFamily,
        p: f64,
        lambda: [f64; 2],
        r_t: f64,
        n_max: u64,
        config: ZeroExcessConfig,
    },
    EnvelopeLattice {
        nu: f64,
        r_t: f64,
        config: EnvelopeConfig,
    },
    EnvelopeAls {
        n_max: u64,
        delta: PerturbationSpec,
        theta: PerturbationSpec,
        config: EnvelopeConfig,
    },
    Lindelof {
        set: SetSpec,
        rho: u32,
        config: RadialConfig,
    },
    Sector {
        set: SetSpec,
        beta: f64,
        theta: f64,
        /// Rotation applied to the set before the check.
        rotate: f64,
        config: RadialConfig,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportConfig {
    pub inputs: Vec<PathBuf>,
}
