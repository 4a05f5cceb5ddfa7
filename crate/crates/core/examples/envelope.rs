//! Two-sided growth envelopes of the lattice and axis products and the
//! exponent along the diagonal ray.

use fockzero::products::{AlsProductEvaluator, LatticeProductEvaluator};
use fockzero::verify::{envelope_verify_als, envelope_verify_lattice, EnvelopeConfig};

fn main() -> fockzero::Result<()> {
    let cfg = EnvelopeConfig::default();
    for nu in [0.0, 0.5, 1.0] {
        let ev = LatticeProductEvaluator::unperturbed(nu, 64.0)?;
        let fit = envelope_verify_lattice(&ev, nu, &cfg)?;
        println!(
            "nu = {nu}: constants [{:.3}, {:.3}], diagonal slope {:+.3} (expected {:+.1}), {} points",
            fit.lower_constant,
            fit.upper_constant,
            fit.diagonal_slope.unwrap_or(f64::NAN),
            -nu,
            fit.admissible_points
        );
    }
    let als = AlsProductEvaluator::unperturbed(2000)?;
    let fit = envelope_verify_als(&als, &cfg)?;
    println!("{}", fit.to_report("envelope-als", serde_json::json!({})).to_table());
    Ok(())
}
