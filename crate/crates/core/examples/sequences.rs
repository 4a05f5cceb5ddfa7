//! Generate the lattice and axis sequences, perturb them, and measure
//! counting, separation and convergence-exponent statistics.

use fockzero::sequences::{
    convergence_exponent, counting_function, delta_stats, gen_als, gen_gamma_nu, log_grid, perturb, separation,
    PerturbationSpec,
};
use std::f64::consts::PI;

fn main() -> fockzero::Result<()> {
    let lattice = gen_gamma_nu(0.5, 60.0)?;
    println!("Gamma_0.5 within 60: {} points (pi R^2 = {:.0})", lattice.len(), PI * 3600.0);

    let radii = log_grid(5.0, 60.0, 5)?;
    let counts = counting_function(&lattice, &radii)?;
    for (r, n) in counts.radii.iter().zip(&counts.values) {
        println!("  n({r:6.2}) = {n:7}   n/(pi r^2) = {:.4}", n / (PI * r * r));
    }
    let rho = convergence_exponent(&lattice)?;
    println!("convergence exponent {:.3} (residual {:.1e})", rho.estimate, rho.residual);

    // delta_gamma = c/|gamma|^2 shifts the radial density by 2 pi c
    let c = 0.05;
    let set = perturb(
        &gen_gamma_nu(0.5, 200.0)?,
        &PerturbationSpec::InverseSquare { c },
        &PerturbationSpec::Zero,
    )?;
    let stats = delta_stats(&set, &log_grid(2.0, 200.0, 48)?)?;
    println!(
        "delta proxies: lower {:.4}, upper {:.4}, 2 pi c = {:.4}",
        stats.delta_hat_proxy,
        stats.delta_sup_proxy,
        2.0 * PI * c
    );
    println!("separation of the perturbed set: {:.4}", separation(&set)?);

    let als = gen_als(20.0)?;
    println!("ALS within 20: {} points, separation {:.4}", als.len(), separation(&als)?);
    Ok(())
}
