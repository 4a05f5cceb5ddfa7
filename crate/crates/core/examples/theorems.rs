//! Hypothesis checkers for the three stability theorems on generated data.

use fockzero::sequences::{gen_als, gen_gamma_nu, gen_power_sequence, gen_zeros_of_s, perturb, PerturbationSpec, ShellSchedule};
use fockzero::verify::{
    check_theorem1_from_spec, check_theorem2, check_theorem3, Theorem1Config, Theorem2Config, Theorem3Config,
};

fn main() -> fockzero::Result<()> {
    // lattice window: 2 pi c must stay inside (nu - 2/p, nu + 1 - 2/p)
    let base = gen_gamma_nu(0.5, 200.0)?;
    for c in [0.05, 0.1] {
        let report = check_theorem1_from_spec(
            &base,
            &PerturbationSpec::InverseSquare { c },
            &PerturbationSpec::Zero,
            0.5,
            2.0,
            &Theorem1Config::default(),
        )?;
        println!("c = {c}\n{}", report.to_table());
    }

    // shell schedule d/n against the 1/(2 max(p, q)) threshold
    let als = gen_als((2.0f64 * 4000.0).sqrt())?;
    for d in [0.2, 0.3] {
        let spec = PerturbationSpec::Shell { schedule: ShellSchedule::Harmonic { d } };
        let set = perturb(&als, &spec, &PerturbationSpec::Zero)?;
        let report = check_theorem2(&set, 2.0, &Theorem2Config::default())?;
        println!("d = {d}\n{}", report.to_table());
    }

    // divergent inverse-square sum on the zeros of s, convergent on {n}
    for (name, set) in [("zeros of s", gen_zeros_of_s(150.0)?), ("integers", gen_power_sequence(1.0, 10_000)?)] {
        let report = check_theorem3(&set, 0.01, &Theorem3Config::default())?;
        println!("{name}\n{}", report.to_table());
    }
    Ok(())
}
