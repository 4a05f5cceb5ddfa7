//! The ten acceptance criteria. Each test writes one `PASS`/`FAIL` line to
//! stderr (uncaptured) and then asserts. Criteria run one at a time so the
//! runtime limits measure a single criterion.

use fockzero::measures::{fock_p_norm, nu_integral, Ladder, NuMeasure, QuadratureSpec, Verdict};
use fockzero::numeric::fit_line;
use fockzero::products::{
    dist_to_set, order_type_estimate, weighted_log_mag, AlsProductEvaluator, ClosedForm, EntireFunction,
    LatticeProductEvaluator,
};
use fockzero::sequences::{
    gen_als, gen_gamma_nu, gen_power_sequence, gen_zeros_of_s, lindelof_profile, log_grid, perturb, Axes,
    PerturbationSpec, ShellFamily, ShellSchedule, ShellStream,
};
use fockzero::verify::{
    check_theorem1_from_spec, check_theorem2, check_theorem3, envelope_verify_lattice, theorem1_p_range,
    zero_excess_demo, EnvelopeConfig, ProductFamily, Theorem1Config, Theorem2Config, Theorem3Config,
    ZeroExcessConfig,
};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::io::Write;
use std::sync::Mutex;
use std::time::{Duration, Instant};

static SERIAL: Mutex<()> = Mutex::new(());

type Outcome = Result<String, String>;

fn criterion(n: u32, title: &str, limit: Option<Duration>, body: impl FnOnce() -> Outcome) {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let mut outcome = body();
    let elapsed = start.elapsed();
    if let (Ok(detail), Some(limit)) = (&outcome, limit) {
        if elapsed > limit {
            outcome = Err(format!("{detail}; runtime {elapsed:.1?} exceeds {limit:?}"));
        }
    }
    let (tag, detail) = match &outcome {
        Ok(d) => ("PASS", d),
        Err(d) => ("FAIL", d),
    };
    let line = format!("criterion {n:>2} {tag} {title}: {detail} [{elapsed:.2?}]\n");
    let _ = std::io::stderr().write_all(line.as_bytes());
    if let Err(d) = outcome {
        panic!("criterion {n} failed: {d}");
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Golden-angle spiral in the disk `|z| ≤ r`, skipping points within
/// `gap` of `zeros` (and of their images under `shifts`).
fn spiral(r: f64, count: usize, zeros: &[Complex64], gap: f64, shifts: &[Complex64]) -> Vec<Complex64> {
    let golden = PI * (3.0 - 5f64.sqrt());
    let oversample = 4 * count;
    let mut out = Vec::with_capacity(count);
    for k in 0..oversample {
        let z = Complex64::from_polar(r * ((k as f64 + 0.5) / oversample as f64).sqrt(), golden * k as f64);
        let clear = |w: Complex64| zeros.iter().all(|g| (g - w).norm() >= gap);
        if clear(z) && shifts.iter().all(|s| clear(z + s)) {
            out.push(z);
        }
    }
    let step = out.len() as f64 / count as f64;
    assert!(step >= 1.0, "spiral too sparse");
    (0..count).map(|j| out[(j as f64 * step) as usize]).collect()
}

fn wrap(a: f64) -> f64 {
    (a + PI).rem_euclid(2.0 * PI) - PI
}

#[test]
fn criterion_01_axis_product_closed_form() {
    criterion(1, "axis product equals -2 G_Gamma", Some(Duration::from_secs(10)), || {
        let ev = AlsProductEvaluator::unperturbed(2000).map_err(|e| e.to_string())?;
        let zs = spiral(6.0, 1000, ev.zeros(), 0.1, &[]);
        let (mut worst_mag, mut worst_arg) = (0.0f64, 0.0f64);
        for z in zs {
            let z2 = z * z;
            // -2 (z² − 1) sin(πz²/2) / (πz²)
            let oracle = -2.0 * (z2 - 1.0) * (PI * z2 / 2.0).sin() / (PI * z2);
            let got = ev.eval(z).map_err(|e| e.to_string())?;
            worst_mag = worst_mag.max((got.log_mag() - oracle.norm().ln()).abs());
            worst_arg = worst_arg.max(wrap(got.arg() - oracle.arg()).abs());
        }
        ensure(worst_mag <= 1e-8 && worst_arg <= 1e-8, || {
            format!("max log-magnitude error {worst_mag:.2e}, max phase error {worst_arg:.2e}")
        })?;
        Ok(format!("1000 points, max log-magnitude error {worst_mag:.2e}, phase {worst_arg:.2e}"))
    });
}

#[test]
fn criterion_02_sigma_periodicity() {
    criterion(2, "sigma weighted magnitude is periodic", None, || {
        let ev = LatticeProductEvaluator::unperturbed(0.0, 64.0).map_err(|e| e.to_string())?;
        let shifts = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)];
        let zs = spiral(5.0, 100, ev.zeros(), 0.1, &shifts);
        let mut worst = 0.0f64;
        for z in zs {
            let w = weighted_log_mag(&ev, z).map_err(|e| e.to_string())?;
            for s in shifts {
                let ws = weighted_log_mag(&ev, z + s).map_err(|e| e.to_string())?;
                worst = worst.max((ws - w).abs());
            }
        }
        ensure(worst <= 1e-6, || format!("max shift defect {worst:.2e}"))?;
        Ok(format!("100 points, max shift defect {worst:.2e}"))
    });
}

#[test]
fn criterion_03_quadrature_golden_values() {
    criterion(3, "quadrature golden values", Some(Duration::from_secs(30)), || {
        let spec = QuadratureSpec::precise();
        let ladder = Ladder::up_to(16.0).map_err(|e| e.to_string())?;
        let norm = |f: &ClosedForm, p: f64| -> Result<f64, String> {
            fock_p_norm(f, p, &spec, &ladder)
                .map_err(|e| e.to_string())?
                .value
                .ok_or_else(|| "no converged value".to_string())
        };
        let mut worst_one = 0.0f64;
        for p in [1.0, 2.0, 3.0] {
            worst_one = worst_one.max((norm(&ClosedForm::Constant(Complex64::new(1.0, 0.0)), p)? - 1.0).abs());
        }
        let mut worst_mono = 0.0f64;
        let mut fact = 1.0;
        for k in 0..=10u32 {
            if k > 0 {
                fact *= k as f64;
            }
            let exact = fact / PI.powi(k as i32);
            worst_mono = worst_mono.max((norm(&ClosedForm::Monomial(k), 2.0)?.powi(2) / exact - 1.0).abs());
        }
        let mut worst_kernel = 0.0f64;
        let ws = [
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 2.0),
            Complex64::new(1.2, -1.6),
            Complex64::new(-2f64.sqrt(), 2f64.sqrt()),
        ];
        for w in ws {
            let exact = (PI * w.norm_sqr() / 2.0).exp();
            worst_kernel = worst_kernel.max((norm(&ClosedForm::Kernel(w), 2.0)? / exact - 1.0).abs());
        }
        ensure(worst_one <= 1e-10 && worst_mono <= 1e-8 && worst_kernel <= 1e-6, || {
            format!("|1|: {worst_one:.2e}, z^k: {worst_mono:.2e}, K_w: {worst_kernel:.2e}")
        })?;
        Ok(format!("max errors |1| {worst_one:.1e}, z^k rel {worst_mono:.1e}, K_w rel {worst_kernel:.1e}"))
    });
}

#[test]
fn criterion_04_weighted_measure_dichotomy() {
    criterion(4, "weighted-measure membership dichotomy", Some(Duration::from_secs(180)), || {
        let ladder = Ladder::up_to(64.0).map_err(|e| e.to_string())?;
        let spec = QuadratureSpec::diagonal();
        let run = |beta: f64| -> Result<(f64, Verdict), String> {
            let nu = NuMeasure::new(2.0, 1.0, beta).map_err(|e| e.to_string())?;
            let est = nu_integral(&ClosedForm::GGamma, &nu, &spec, &ladder).map_err(|e| e.to_string())?;
            Ok((est.exponent.unwrap_or(f64::NAN), est.verdict))
        };
        let mut detail = Vec::new();
        let mut ok = true;
        // ring increments scale as R^{1 − pβ}
        for (beta, want_exp, want) in [
            (0.75, Some(-0.5), Verdict::Converged),
            (0.3, Some(0.4), Verdict::Diverging),
            (0.45, None, Verdict::Diverging),
            (0.55, None, Verdict::Converged),
        ] {
            let (e, v) = run(beta)?;
            ok &= v == want && want_exp.is_none_or(|x| (e - x).abs() <= 0.1);
            detail.push(format!("beta {beta}: {e:+.3} {v:?}"));
        }
        let detail = detail.join(", ");
        ensure(ok, || detail.clone())?;
        Ok(detail)
    });
}

#[test]
fn criterion_05_lindelof_mechanism() {
    criterion(5, "Lindelof sums and inverse-square sums", Some(Duration::from_secs(10)), || {
        let full = ShellStream::new(ShellFamily::ZerosOfS, Axes::Both);
        let radii = log_grid(1.5, 1000.0, 25).map_err(|e| e.to_string())?;
        let (re, im) = lindelof_profile(&full, 2, &radii).map_err(|e| e.to_string())?;
        let full_max = re.values.iter().chain(&im.values).fold(0.0f64, |m, v| m.max(v.abs()));
        ensure(full_max <= 1e-12, || format!("full-set |S(r)| reaches {full_max:.2e}"))?;

        let real = ShellStream::new(ShellFamily::ZerosOfS, Axes::RealOnly);
        let radii = log_grid(100.0, 1e4, 21).map_err(|e| e.to_string())?;
        let (re, _) = lindelof_profile(&real, 2, &radii).map_err(|e| e.to_string())?;
        let xs: Vec<f64> = radii.iter().map(|r| r.ln()).collect();
        let slope = fit_line(&xs, &re.values).ok_or("degenerate fit")?.slope;
        // S(r) = H_N with N = ⌊r²/2⌋
        let n = (1e8f64 / 2.0).floor();
        let harmonic = n.ln() + 0.577_215_664_901_532_9 + 1.0 / (2.0 * n) - 1.0 / (12.0 * n * n);
        let top = *re.values.last().unwrap();
        ensure((slope - 2.0).abs() <= 0.05 && (top - harmonic).abs() <= 1e-9, || {
            format!("slope {slope:.4}, S(1e4) = {top:.12} vs H_N = {harmonic:.12}")
        })?;

        let zs = check_theorem3(&gen_zeros_of_s(150.0).map_err(|e| e.to_string())?, 0.01, &Theorem3Config::default())
            .map_err(|e| e.to_string())?;
        let ints = check_theorem3(&gen_power_sequence(1.0, 10_000).map_err(|e| e.to_string())?, 0.01, &Theorem3Config::default())
            .map_err(|e| e.to_string())?;
        let conv = |r: &fockzero::verify::TheoremReport| r.condition("inverse_square_increment_slope").map(|c| c.pass);
        let value = ints.condition("inverse_square_sum").map_or(f64::NAN, |c| c.value);
        ensure(conv(&zs) == Some(false) && conv(&ints) == Some(true) && (value - PI * PI / 6.0).abs() <= 1e-6, || {
            format!("zeros of s convergent: {:?}, integers convergent: {:?}, sum {value:.9}", conv(&zs), conv(&ints))
        })?;
        Ok(format!(
            "full |S| <= {full_max:.1e}, real-axis slope {slope:.4}, sum over n = {value:.9} (pi^2/6 = {:.9}), zeros of s divergent",
            PI * PI / 6.0
        ))
    });
}

#[test]
fn criterion_06_condition_checker_calibration() {
    criterion(6, "theorem-1 window calibration", Some(Duration::from_secs(60)), || {
        let mut pairs = Vec::new();
        for nu in [0.0, 0.5, 1.0] {
            let (lo, hi) = theorem1_p_range(nu);
            for p in [1.5, 2.0, 3.0] {
                if p > lo && p < hi {
                    pairs.push((nu, p));
                }
            }
        }
        ensure(pairs.len() == 5, || format!("admissible pairs {pairs:?}"))?;
        let mut worst_proxy = 0.0f64;
        let mut runs = 0;
        for &nu in &[0.0, 0.5, 1.0] {
            let base = gen_gamma_nu(nu, 500.0).map_err(|e| e.to_string())?;
            for &(_, p) in pairs.iter().filter(|(n, _)| *n == nu) {
                let (lower, upper) = (nu - 2.0 / p, nu + 1.0 - 2.0 / p);
                for (target, inside) in
                    [(lower + 0.05, true), (lower - 0.05, false), (upper - 0.05, true), (upper + 0.05, false)]
                {
                    let c = target / (2.0 * PI);
                    let report = check_theorem1_from_spec(
                        &base,
                        &PerturbationSpec::InverseSquare { c },
                        &PerturbationSpec::Zero,
                        nu,
                        p,
                        &Theorem1Config::default(),
                    )
                    .map_err(|e| e.to_string())?;
                    ensure(report.passed() == inside, || {
                        format!("nu {nu} p {p} 2 pi c = {target:.3}: expected pass = {inside}\n{}", report.to_table())
                    })?;
                    for name in ["delta_hat_lower", "delta_upper"] {
                        let v = report.condition(name).ok_or("missing proxy")?.value;
                        worst_proxy = worst_proxy.max((v / target - 1.0).abs());
                    }
                    runs += 1;
                }
            }
        }
        ensure(worst_proxy <= 0.05, || format!("delta proxy off by {:.2}%", 100.0 * worst_proxy))?;
        Ok(format!("{runs} runs over 5 pairs flip at the boundaries, worst proxy error {:.2}%", 100.0 * worst_proxy))
    });
}

#[test]
fn criterion_07_envelope_diagonal_exponents() {
    criterion(7, "envelope diagonal exponents", Some(Duration::from_secs(120)), || {
        let mut detail = Vec::new();
        for nu in [0.0, 0.5, 1.0] {
            let ev = LatticeProductEvaluator::unperturbed(nu, 64.0).map_err(|e| e.to_string())?;
            let fit = envelope_verify_lattice(&ev, nu, &EnvelopeConfig::default()).map_err(|e| e.to_string())?;
            let s = fit.diagonal_slope.ok_or("no diagonal slope")?;
            ensure((s + nu).abs() <= 0.2, || format!("nu {nu}: slope {s:.3}"))?;
            detail.push(format!("nu {nu}: {s:+.3}"));
        }
        Ok(detail.join(", "))
    });
}

#[test]
fn criterion_08_zero_excess() {
    criterion(8, "zero-excess membership trends", Some(Duration::from_secs(180)), || {
        let cfg = ZeroExcessConfig::default();
        let lattice = LatticeProductEvaluator::unperturbed(0.5, 64.0).map_err(|e| e.to_string())?;
        let lam = Complex64::new(0.5, 0.0);
        ensure(dist_to_set(lattice.zeros(), lam).map_err(|e| e.to_string())? == 0.0, || "lambda is not a zero".into())?;
        let r = zero_excess_demo(&lattice, ProductFamily::Lattice { nu: 0.5 }, lam, 2.0, &cfg).map_err(|e| e.to_string())?;
        ensure(r.passed(), || r.to_table())?;
        let als = AlsProductEvaluator::unperturbed(2000).map_err(|e| e.to_string())?;
        let a = zero_excess_demo(&als, ProductFamily::Als, Complex64::new(1.0, 0.0), 2.0, &cfg).map_err(|e| e.to_string())?;
        let q = a.condition("quotient_in_fp").ok_or("missing quotient condition")?;
        ensure(q.pass, || a.to_table())?;
        let v = |r: &fockzero::verify::TheoremReport, n: &str| r.condition(n).map_or(f64::NAN, |c| c.value);
        Ok(format!(
            "lattice quotient {:+.2}, times z {:+.2}; axis quotient {:+.2}",
            v(&r, "quotient_in_fp"),
            v(&r, "times_z_not_in_fp"),
            q.value
        ))
    });
}

#[test]
fn criterion_09_order_and_type() {
    criterion(9, "order and type of G_Gamma", None, || {
        let radii: Vec<f64> = (6..=12).map(f64::from).collect();
        let ot = order_type_estimate(&ClosedForm::GGamma, &radii).map_err(|e| e.to_string())?;
        ensure((ot.rho - 2.0).abs() <= 0.05 && (ot.tau / (PI / 2.0) - 1.0).abs() <= 0.05, || {
            format!("rho {:.4}, tau {:.4}", ot.rho, ot.tau)
        })?;
        Ok(format!("rho {:.4}, tau {:.4} (pi/2 = {:.4})", ot.rho, ot.tau, PI / 2.0))
    });
}

#[test]
fn criterion_10_shell_threshold() {
    criterion(10, "theorem-2 shell threshold", None, || {
        let base = gen_als((2.0f64 * 1e4).sqrt() * (1.0 + 1e-12)).map_err(|e| e.to_string())?;
        let threshold = 1.0 / (2.0 * 2f64.max(2.0));
        let mut detail = Vec::new();
        for (d, want) in [(0.2, true), (0.3, false)] {
            let spec = PerturbationSpec::Shell { schedule: ShellSchedule::Harmonic { d } };
            let set = perturb(&base, &spec, &PerturbationSpec::Zero).map_err(|e| e.to_string())?;
            let r = check_theorem2(&set, 2.0, &Theorem2Config::default()).map_err(|e| e.to_string())?;
            let proxy = r.condition("delta_proxy").ok_or("missing proxy")?;
            ensure(r.passed() == want && proxy.threshold == threshold && (proxy.value / d - 1.0).abs() <= 0.05, || {
                format!("d {d}: proxy {:.4} vs threshold {}\n{}", proxy.value, proxy.threshold, r.to_table())
            })?;
            detail.push(format!("d {d}: proxy {:.4} {}", proxy.value, if want { "pass" } else { "fail" }));
        }
        Ok(detail.join(", "))
    });
}
