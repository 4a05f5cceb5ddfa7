use super::EntireFunction;
use crate::error::{Error, Result};
use crate::logspace::LogComplex;
use crate::numeric::power_tail;
use crate::sequences::{bits, Family, PerturbedSet};
use num_complex::Complex64;
use std::collections::HashSet;

const SERIES_TERMS: usize = 64;

/// Shell-grouped product `Π (1 − z/λ)` over the perturbed axis sequence.
///
/// Shells `k ≤ n_max` are multiplied directly (unperturbed shells as the
/// collapsed factor `1 − z⁴/(4k²)`); shells beyond `n_max` are taken
/// unperturbed and summed in closed form through `ζ`-tails.
#[derive(Clone, Debug)]
pub struct AlsProductEvaluator {
    n_max: u64,
    /// `4k²` of unperturbed shells.
    collapsed: Vec<f64>,
    /// Individually multiplied zeros.
    singles: Vec<Complex64>,
    /// `Σ_{k>n_max} k^{−2j}` at index `j − 1`.
    zeta: Vec<f64>,
    zeros: Vec<Complex64>,
    zero_bits: HashSet<(u64, u64)>,
    perturbation_tail: f64,
}

impl AlsProductEvaluator {
    pub fn new(set: &PerturbedSet, n_max: u64) -> Result<Self> {
        if set.family() != Family::Als {
            return Err(Error::WrongFamily {
                expected: Family::Als.name().into(),
                found: set.family().to_string(),
            });
        }
        if n_max < 1 {
            return Err(Error::InvalidParameter("n_max must be >= 1".into()));
        }
        let mut shells: Vec<Vec<(Complex64, bool)>> = vec![Vec::new(); n_max as usize + 1];
        let mut perturbation_tail = 0.0;
        for e in set.entries() {
            match crate::sequences::shell_of(e.base) {
                Some(k) if k <= n_max => shells[k as usize].push((e.lambda, e.is_identity())),
                Some(_) => {
                    perturbation_tail +=
                        4.0 / 3.0 * (e.lambda - e.base).norm() / (e.base.norm() * e.lambda.norm())
                }
                None => shells[0].push((e.lambda, e.is_identity())),
            }
        }
        if shells[0].len() != 2 || shells[1..].iter().any(|s| s.len() != 4) {
            return Err(Error::InvalidParameter(format!(
                "window does not contain the {n_max} shells plus the pair ±1"
            )));
        }
        let mut collapsed = Vec::new();
        let mut singles: Vec<Complex64> = shells[0].iter().map(|p| p.0).collect();
        for (k, shell) in shells.iter().enumerate().skip(1) {
            if shell.iter().all(|p| p.1) {
                collapsed.push(4.0 * (k as f64) * (k as f64));
            } else {
                singles.extend(shell.iter().map(|p| p.0));
            }
        }
        let zeros: Vec<Complex64> = shells.iter().flatten().map(|p| p.0).collect();
        Ok(Self::assemble(n_max, collapsed, singles, zeros, perturbation_tail))
    }

    /// The unperturbed sequence, built without materializing a set.
    pub fn unperturbed(n_max: u64) -> Result<Self> {
        if n_max < 1 {
            return Err(Error::InvalidParameter("n_max must be >= 1".into()));
        }
        let collapsed = (1..=n_max).map(|k| 4.0 * (k as f64) * (k as f64)).collect();
        let singles = vec![Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)];
        let mut zeros = singles.clone();
        for k in 1..=n_max {
            let a = ((2 * k) as f64).sqrt();
            zeros.extend([
                Complex64::new(a, 0.0),
                Complex64::new(-a, 0.0),
                Complex64::new(0.0, a),
                Complex64::new(0.0, -a),
            ]);
        }
        Ok(Self::assemble(n_max, collapsed, singles, zeros, 0.0))
    }

    fn assemble(
        n_max: u64,
        collapsed: Vec<f64>,
        singles: Vec<Complex64>,
        zeros: Vec<Complex64>,
        perturbation_tail: f64,
    ) -> Self {
        let zeta = (1..=SERIES_TERMS)
            .map(|j| power_tail(2.0 * j as f64, 0.0, n_max + 1))
            .collect();
        let zero_bits = zeros.iter().map(|&z| bits(z)).collect();
        Self {
            n_max,
            collapsed,
            singles,
            zeta,
            zeros,
            zero_bits,
            perturbation_tail,
        }
    }

    pub fn n_max(&self) -> u64 {
        self.n_max
    }

    /// Zeros multiplied directly: `±1` and the shells up to `n_max`.
    pub fn zeros(&self) -> &[Complex64] {
        &self.zeros
    }

    /// Estimated log-magnitude error at `z`.
    pub fn error_bound(&self, z: Complex64) -> f64 {
        let factors = (self.collapsed.len() + self.singles.len()) as f64;
        4.0 * f64::EPSILON * factors + self.perturbation_tail * z.norm()
    }
}

impl EntireFunction for AlsProductEvaluator {
    fn eval(&self, z: Complex64) -> Result<LogComplex> {
        self.check_domain(z)?;
        if self.zero_bits.contains(&bits(z)) {
            return Ok(LogComplex::ZERO);
        }
        let z2 = z * z;
        let z4 = z2 * z2;
        let mut lm = 0.0;
        let mut arg = 0.0;
        for &q in &self.collapsed {
            let w = (q - z4) / q;
            lm += 0.5 * w.norm_sqr().ln();
            arg += w.im.atan2(w.re);
        }
        for &lambda in &self.singles {
            let w = (lambda - z) / lambda;
            lm += 0.5 * w.norm_sqr().ln();
            arg += w.im.atan2(w.re);
        }
        // Σ_{k>n_max} ln(1 − u²/k²) = −Σ_j u^{2j} ζ_tail(2j) / j, u = z²/2
        let u2 = z4 * 0.25;
        let mut p = Complex64::new(1.0, 0.0);
        let mut t = Complex64::new(0.0, 0.0);
        for (j, zt) in self.zeta.iter().enumerate() {
            p *= u2;
            let term = p * (*zt / (j + 1) as f64);
            t -= term;
            if term.norm() < 1e-18 * (1.0 + t.norm()) {
                break;
            }
        }
        Ok(LogComplex::new(lm + t.re, arg + t.im))
    }

    fn domain_radius(&self) -> f64 {
        ((2 * self.n_max) as f64).sqrt() / 2.0
    }

    fn describe(&self) -> String {
        format!("axis-sequence product (n_max = {})", self.n_max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::products::{ClosedForm, DivideByLinear};
    use crate::sequences::{gen_als, perturb, PerturbationSpec, ShellSchedule};

    fn minus_two_g(z: Complex64) -> LogComplex {
        LogComplex::from_real(-2.0) * ClosedForm::GGamma.eval(z).unwrap()
    }

    #[test]
    fn matches_closed_form() {
        let ev = AlsProductEvaluator::unperturbed(100_000).unwrap();
        let z = Complex64::new(1.0, 0.3);
        let (a, b) = (ev.eval(z).unwrap(), minus_two_g(z));
        assert!((a.log_mag() - b.log_mag()).abs() < 1e-8);
        let small = AlsProductEvaluator::unperturbed(500).unwrap();
        for i in 0..200 {
            let (x, y) = crate::numeric::kronecker_point(i);
            let z = Complex64::new(12.0 * x - 6.0, 12.0 * y - 6.0);
            if z.norm() > 6.0 {
                continue;
            }
            let (a, b) = (small.eval(z).unwrap(), minus_two_g(z));
            let d = (a.log_mag() - b.log_mag()).abs();
            assert!(d < 1e-8 || b.log_mag() < -20.0, "{z}: {d}");
            let da = crate::logspace::wrap_arg(a.arg() - b.arg()).abs();
            assert!(da < 1e-7 || b.log_mag() < -20.0, "{z}: arg {da}");
        }
    }

    #[test]
    fn origin_and_zeros() {
        let ev = AlsProductEvaluator::unperturbed(50).unwrap();
        let v = ev.eval(Complex64::new(0.0, 0.0)).unwrap();
        assert_eq!((v.log_mag(), v.arg()), (0.0, 0.0));
        for &z in ev.zeros() {
            if z.norm() <= ev.domain_radius() {
                assert!(ev.eval(z).unwrap().is_zero());
            }
        }
        assert!(ev.eval(Complex64::new(6.0, 0.0)).is_err());
    }

    #[test]
    fn set_based_matches_unperturbed_builder() {
        let set = PerturbedSet::unperturbed(&gen_als(30.0).unwrap()).unwrap();
        let a = AlsProductEvaluator::new(&set, 450).unwrap();
        let b = AlsProductEvaluator::unperturbed(450).unwrap();
        let z = Complex64::new(2.1, -1.7);
        assert!((a.eval(z).unwrap().log_mag() - b.eval(z).unwrap().log_mag()).abs() < 1e-12);
        assert!(AlsProductEvaluator::new(&set, 451).is_err());
    }

    #[test]
    fn perturbed_zeros_move() {
        let base = gen_als(20.0).unwrap();
        let spec = PerturbationSpec::Shell {
            schedule: ShellSchedule::Harmonic { d: 0.1 },
        };
        let p = perturb(&base, &spec, &PerturbationSpec::Zero).unwrap();
        let ev = AlsProductEvaluator::new(&p, 200).unwrap();
        let moved = p.entries().iter().find(|e| !e.is_identity()).unwrap();
        assert!(ev.eval(moved.lambda).unwrap().is_zero());
        assert!(!ev.eval(moved.base).unwrap().is_zero());
        let g = DivideByLinear::new(&ev, Complex64::new(1.0, 0.0)).unwrap();
        assert!(g.eval(Complex64::new(1.0, 0.0)).unwrap().log_mag().is_finite());
    }
}
