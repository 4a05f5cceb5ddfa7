//! Fock norms by log-space polar quadrature and the membership dichotomy
//! of the weighted measures.

use fockzero::measures::{fock_p_norm, nu_integral, Ladder, NuMeasure, QuadratureSpec};
use fockzero::products::ClosedForm;
use num_complex::Complex64;
use std::f64::consts::PI;

fn main() -> fockzero::Result<()> {
    let spec = QuadratureSpec::precise();
    let ladder = Ladder::up_to(16.0)?;

    for p in [1.0, 2.0, 3.0] {
        let est = fock_p_norm(&ClosedForm::Constant(Complex64::new(1.0, 0.0)), p, &spec, &ladder)?;
        println!("||1||_{p} = {:.15}", est.value.unwrap_or(f64::NAN));
    }
    for k in [1u32, 4, 10] {
        let est = fock_p_norm(&ClosedForm::Monomial(k), 2.0, &spec, &ladder)?;
        let exact = (1..=k).map(f64::from).product::<f64>() / PI.powi(k as i32);
        println!("||z^{k}||_2^2 = {:.12e}  (k!/pi^k = {exact:.12e})", est.value.unwrap().powi(2));
    }
    let w = Complex64::new(1.0, 1.0);
    let est = fock_p_norm(&ClosedForm::Kernel(w), 2.0, &spec, &ladder)?;
    println!("||K_w||_2 = {:.10}  (e^(pi|w|^2/2) = {:.10})", est.value.unwrap(), (PI * w.norm_sqr() / 2.0).exp());

    // G_Gamma lies in L^p(nu_{p,alpha,beta}) exactly when beta > 1/p
    let coarse = QuadratureSpec::diagonal();
    let ladder = Ladder::up_to(64.0)?;
    for beta in [0.3, 0.75] {
        let nu = NuMeasure::new(2.0, 1.0, beta)?;
        let est = nu_integral(&ClosedForm::GGamma, &nu, &coarse, &ladder)?;
        println!(
            "beta = {beta}: ladder exponent {:+.3}, verdict {:?}",
            est.exponent.unwrap_or(f64::NAN),
            est.verdict
        );
    }
    Ok(())
}
