//! Theorem-level harnesses: hypotheses of the stability theorems on finite
//! windows, envelope fits of the products, the zero-excess and polynomial
//! obstruction trends, and the Lindelöf and sector demonstrations.

mod demos;
mod envelope;
mod report;
mod theorems;

pub use demos::{
    lindelof_check, sector_lemma_demo, zero_excess_demo, ProductFamily, RadialConfig, ZeroExcessConfig, CHAIN_SLACK,
};
pub use envelope::{envelope_verify_als, envelope_verify_lattice, EnvelopeConfig, EnvelopeFit, MIN_ADMISSIBLE};
pub use report::{float, Condition, Relation, ReportVerdict, TheoremReport};
pub use theorems::{
    check_theorem1, check_theorem1_from_spec, check_theorem2, check_theorem3, power_increment_slope,
    theorem1_p_range, theorem2_threshold, Theorem1Config, Theorem2Config, Theorem3Config,
};

/// Threshold on log-log slopes for boundedness and convergence verdicts.
pub const SLOPE_THRESHOLD: f64 = crate::measures::VERDICT_THRESHOLD;
