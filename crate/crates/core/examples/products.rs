//! Evaluate the lattice and axis products in log space, compare the axis
//! product with its closed form, and estimate order and type.

use fockzero::products::{
    order_type_estimate, weighted_log_mag, AlsProductEvaluator, ClosedForm, EntireFunction, LatticeProductEvaluator,
};
use num_complex::Complex64;
use std::f64::consts::PI;

fn main() -> fockzero::Result<()> {
    // sigma-type product: the weighted magnitude is periodic for nu = 0
    let sigma = LatticeProductEvaluator::unperturbed(0.0, 64.0)?;
    let z = Complex64::new(0.3, 0.7);
    for shift in [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)] {
        let w = weighted_log_mag(&sigma, z + shift)?;
        println!("weighted log|G_0({})| = {w:.12}", z + shift);
    }
    println!("truncation bound at |z| = 5: {:.2e}", sigma.error_bound(Complex64::new(5.0, 0.0)));

    // the unperturbed axis product equals -2 G_Gamma
    let als = AlsProductEvaluator::unperturbed(4000)?;
    let closed = ClosedForm::GGamma;
    for z in [Complex64::new(1.3, 0.4), Complex64::new(-2.1, 3.7), Complex64::new(4.2, -1.1)] {
        let a = als.eval(z)?.log_mag();
        let b = closed.eval(z)?.log_mag() + 2f64.ln();
        println!("z = {z}: product {a:.12}  closed form {b:.12}");
    }

    let growth = order_type_estimate(&closed, &[6.0, 7.0, 8.0, 9.0, 10.0, 11.0, 12.0])?;
    println!("G_Gamma: order {:.3}, type {:.4} (pi/2 = {:.4})", growth.rho, growth.tau, PI / 2.0);
    Ok(())
}
