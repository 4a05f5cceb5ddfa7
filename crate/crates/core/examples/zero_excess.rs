//! Removing one zero from a product gives an `F^p` function; adding one
//! (multiplying by `z`) leaves the space.

use fockzero::products::{AlsProductEvaluator, LatticeProductEvaluator};
use fockzero::verify::{zero_excess_demo, ProductFamily, ZeroExcessConfig};
use num_complex::Complex64;

fn main() -> fockzero::Result<()> {
    let cfg = ZeroExcessConfig::default();
    let lattice = LatticeProductEvaluator::unperturbed(0.5, 64.0)?;
    let report = zero_excess_demo(&lattice, ProductFamily::Lattice { nu: 0.5 }, Complex64::new(0.5, 0.0), 2.0, &cfg)?;
    println!("{}", report.to_table());

    let als = AlsProductEvaluator::unperturbed(2000)?;
    let report = zero_excess_demo(&als, ProductFamily::Als, Complex64::new(1.0, 0.0), 2.0, &cfg)?;
    println!("{}", report.to_table());
    Ok(())
}
