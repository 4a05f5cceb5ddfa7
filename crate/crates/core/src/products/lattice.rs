use super::EntireFunction;
use crate::error::{Error, Result};
use crate::logspace::LogComplex;
use crate::numeric::{power_tail, ExactSum};
use crate::sequences::{bits, gen_gamma_nu, Family, LatticeIndex, PerturbedSet};
use num_complex::Complex64;
use std::collections::HashMap;
use std::f64::consts::TAU;

/// Highest tail order carried by the evaluator.
const K_MAX: usize = 16;

/// Default tail order; with `|z| ≤ R_t/4` the first omitted lattice term is
/// `k = 20`, far below `1e−6`.
pub const DEFAULT_K_TAIL: usize = 16;

/// Eisenstein sums `G_4`, `G_8` of `ℤ[i]` as double-double `(hi, lo)`;
/// `G_4 = Γ(1/4)^8 / (960π²)` and `G_8 = 3G_4²/7`.
const G4: (f64, f64) = (3.151_212_002_153_897_6, -9.066_893_522_845_901e-17);
const G8: (f64, f64) = (4.255_773_035_365_189_5, 4.675_672_664_494_071_5e-17);

/// `Σ_{|γ|>R} |γ|^{−k}` over any set whose points own disjoint unit squares.
fn abs_tail_bound(r: f64, k: usize) -> f64 {
    let a = r - 1.5;
    let k = k as f64;
    TAU * (a.powf(2.0 - k) / (k - 2.0) + a.powf(1.0 - k) / (k - 1.0))
}

/// Truncated genus-2 product over a perturbed `Γ_ν`:
/// `(z − λ₀₀) Π′ (1 − z/λ) exp(z/γ + z²/(2γ²))` over `|γ| ≤ R_t`, times
/// `exp(−Σ_{k=3}^{K} T_k z^k / k)` with `T_k = Σ_{|γ|>R_t} γ^{−k}`, times
/// the zero-free drift correction `exp(−a z − b z²/2)`.
///
/// The shifted row leaves `a = Σ_{m≥1} (1/(m+ν) − 1/m)` and
/// `b = Σ_{m≥1} (1/(m+ν)² − 1/m²)` uncancelled in the genus-2 exponents;
/// without the correction `|G|e^{−π|z|²/2}` picks up `e^{Re(az + bz²/2)}`
/// instead of the `(1+|z|)^{−ν}` envelope. Both vanish at `ν = 0`.
///
/// Points beyond `R_t` enter only through `T_k`, i.e. unperturbed.
#[derive(Clone, Debug)]
pub struct LatticeProductEvaluator {
    nu: f64,
    r_t: f64,
    k_tail: usize,
    special: Complex64,
    /// `γ⁴` of unperturbed orbits `{γ, iγ, −γ, −iγ}`.
    quads: Vec<Complex64>,
    /// `(λ, 1/γ)` of the remaining factors.
    singles: Vec<(Complex64, Complex64)>,
    /// `−T_k / k` at index `k`.
    coeffs: [Complex64; K_MAX + 1],
    abs_t: [f64; K_MAX + 1],
    /// Orders whose tail beyond `2R_t` is dropped.
    dropped: Vec<usize>,
    /// `Σ (4/3)|λ−γ|/(|γ||λ|)` over window points beyond `R_t`.
    perturbation_tail: f64,
    window_lambdas: Vec<Complex64>,
    drift: (f64, f64),
}

impl LatticeProductEvaluator {
    pub fn new(set: &PerturbedSet, r_t: f64, k_tail: usize) -> Result<Self> {
        let nu = match set.family() {
            Family::GammaNu { nu } => nu,
            other => {
                return Err(Error::WrongFamily {
                    expected: "gamma-nu".into(),
                    found: other.to_string(),
                })
            }
        };
        if !(r_t.is_finite() && r_t >= 4.0) {
            return Err(Error::InvalidParameter(format!("R_t must be >= 4, got {r_t}")));
        }
        if set.radius() < r_t {
            return Err(Error::InvalidParameter(format!(
                "window radius {} is smaller than R_t = {r_t}",
                set.radius()
            )));
        }
        if k_tail > K_MAX {
            return Err(Error::InvalidParameter(format!("K_tail must be <= {K_MAX}, got {k_tail}")));
        }
        let special_base = Complex64::new(nu, 0.0);
        let mut special = None;
        let mut unperturbed: HashMap<(u64, u64), usize> = HashMap::new();
        let inner: Vec<_> = set.entries().iter().filter(|e| e.base.norm() <= r_t).collect();
        for (i, e) in inner.iter().enumerate() {
            if e.base == special_base {
                special = Some(e.lambda);
            } else if e.is_identity() {
                unperturbed.insert(bits(e.base), i);
            }
        }
        let special = special.ok_or_else(|| {
            Error::InvalidParameter("window lacks the point of index (0, 0)".into())
        })?;
        let mut used = vec![false; inner.len()];
        let mut quads = Vec::new();
        let mut singles = Vec::new();
        for (i, e) in inner.iter().enumerate() {
            if used[i] || e.base == special_base {
                continue;
            }
            let g = e.base;
            let orbit = [
                Complex64::new(-g.im, g.re),
                Complex64::new(-g.re, -g.im),
                Complex64::new(g.im, -g.re),
            ];
            let partners: Option<Vec<usize>> = e
                .is_identity()
                .then(|| orbit.iter().map(|w| unperturbed.get(&bits(*w)).copied()).collect())
                .flatten();
            match partners {
                Some(js) if js.iter().all(|&j| !used[j]) => {
                    used[i] = true;
                    js.iter().for_each(|&j| used[j] = true);
                    let g2 = g * g;
                    quads.push(g2 * g2);
                }
                _ => {
                    used[i] = true;
                    singles.push((e.lambda, g.inv()));
                }
            }
        }
        let perturbation_tail = set
            .entries()
            .iter()
            .filter(|e| e.base.norm() > r_t && !e.is_identity())
            .map(|e| 4.0 / 3.0 * (e.lambda - e.base).norm() / (e.base.norm() * e.lambda.norm()))
            .sum();
        let window_lambdas = set
            .entries()
            .iter()
            .filter(|e| e.base.norm() <= r_t)
            .map(|e| e.lambda)
            .collect();
        let (coeffs, abs_t, dropped) = tail_sums(nu, r_t);
        Ok(Self {
            nu,
            r_t,
            k_tail,
            special,
            quads,
            singles,
            coeffs,
            abs_t,
            dropped,
            perturbation_tail,
            window_lambdas,
            drift: row_drift(nu),
        })
    }

    /// Evaluator for the unperturbed `Γ_ν` with the default tail order.
    pub fn unperturbed(nu: f64, r_t: f64) -> Result<Self> {
        let set = PerturbedSet::unperturbed(&gen_gamma_nu(nu, r_t)?)?;
        Self::new(&set, r_t, DEFAULT_K_TAIL)
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    /// `(a, b)` of the removed factor `exp(a z + b z²/2)`.
    pub fn drift(&self) -> (f64, f64) {
        self.drift
    }

    pub fn truncation_radius(&self) -> f64 {
        self.r_t
    }

    pub fn k_tail(&self) -> usize {
        self.k_tail
    }

    /// Perturbed points with `|γ| ≤ R_t` (the listed zeros).
    pub fn zeros(&self) -> &[Complex64] {
        &self.window_lambdas
    }

    /// `T_k = Σ_{|γ|>R_t} γ^{−k}` for `3 ≤ k ≤ 16`.
    pub fn tail_sum(&self, k: usize) -> Option<Complex64> {
        (3..=K_MAX).contains(&k).then(|| -self.coeffs[k] * k as f64)
    }

    /// Estimated bound on the log-magnitude error at `z`: omitted tail
    /// orders, dropped far tails, perturbations beyond `R_t`, rounding.
    pub fn error_bound(&self, z: Complex64) -> f64 {
        let m = z.norm();
        let mut b = 0.0;
        let start = self.k_tail.max(2) + 1;
        for k in start..=K_MAX {
            b += m.powi(k as i32) * self.abs_t[k] / k as f64;
        }
        for &k in &self.dropped {
            if k <= self.k_tail {
                b += m.powi(k as i32) * abs_tail_bound(2.0 * self.r_t, k) / k as f64;
            }
        }
        let mut k = K_MAX + 1;
        loop {
            let t = m.powi(k as i32) * abs_tail_bound(self.r_t, k) / k as f64;
            b += t;
            if t < 1e-30 || k > 400 {
                break;
            }
            k += 1;
        }
        let factors = (self.quads.len() + self.singles.len() + 1) as f64;
        b += 4.0 * f64::EPSILON * factors;
        if self.k_tail >= 4 {
            b += 1e-16 * (m.powi(4) / 4.0 + if self.k_tail >= 8 { m.powi(8) / 8.0 } else { 0.0 });
        }
        b + self.perturbation_tail * m
    }
}

type TailTables = ([Complex64; K_MAX + 1], [f64; K_MAX + 1], Vec<usize>);

/// Tail sums `T_k` for `Γ_ν` beyond `R_t`: direct over `R_t < |γ| ≤ 2R_t`,
/// shifted-row correction beyond, and the `ℤ[i]` remainder beyond `2R_t`
/// from Eisenstein sums for `k = 4, 8` (dropped, and bounded, for `k ≥ 12`).
fn tail_sums(nu: f64, r_t: f64) -> TailTables {
    let r2 = 2.0 * r_t;
    let mut acc: Vec<(ExactSum, ExactSum)> = (0..=K_MAX).map(|_| (ExactSum::new(), ExactSum::new())).collect();
    let kk = r2.floor() as i64;
    let mut zi_partial = [ExactSum::new(), ExactSum::new()];
    zi_partial[0].add(G4.0);
    zi_partial[0].add(G4.1);
    zi_partial[1].add(G8.0);
    zi_partial[1].add(G8.1);
    for n in -kk..=kk {
        for m in -kk - 1..=kk {
            let inv_powers = |g: Complex64| {
                let w = g.inv();
                let mut p = w * w;
                let mut out = [Complex64::new(0.0, 0.0); K_MAX + 1];
                for slot in out.iter_mut().skip(3) {
                    p *= w;
                    *slot = p;
                }
                out
            };
            let g = LatticeIndex::new(m, n, nu).gamma();
            let gm = g.norm();
            if gm > r_t && gm <= r2 {
                let p = inv_powers(g);
                for k in 3..=K_MAX {
                    acc[k].0.add(p[k].re);
                    acc[k].1.add(p[k].im);
                }
            }
            // plain Gauss integers for the Eisenstein remainder
            let q = Complex64::new(m as f64, n as f64);
            let qm = q.norm();
            if qm > 0.0 && qm <= r2 {
                let p = inv_powers(q);
                zi_partial[0].add(-p[4].re);
                zi_partial[1].add(-p[8].re);
            }
        }
    }
    let mut coeffs = [Complex64::new(0.0, 0.0); K_MAX + 1];
    let mut abs_t = [0.0; K_MAX + 1];
    let mut dropped = Vec::new();
    let m1 = {
        // first m ≥ 0 with m + ν > 2R_t
        let mut m = (r2 - nu).floor().max(0.0) as u64;
        while m as f64 + nu <= r2 {
            m += 1;
        }
        m
    };
    let m2 = r2.floor() as u64 + 1;
    for k in 3..=K_MAX {
        let mut re = acc[k].0.clone();
        let s = k as f64;
        re.add(power_tail(s, nu, m1));
        re.add(-power_tail(s, 0.0, m2));
        match k {
            4 => re.add(zi_partial[0].value()),
            8 => re.add(zi_partial[1].value()),
            k if k % 4 == 0 => dropped.push(k),
            _ => {}
        }
        let t = Complex64::new(re.value(), acc[k].1.value());
        coeffs[k] = -t / s;
        abs_t[k] = t.norm();
    }
    (coeffs, abs_t, dropped)
}

/// `(Σ_{m≥1} (1/(m+ν) − 1/m), Σ_{m≥1} (1/(m+ν)² − 1/m²))`.
pub(crate) fn row_drift(nu: f64) -> (f64, f64) {
    if nu == 0.0 {
        return (0.0, 0.0);
    }
    const M: u64 = 64;
    let mut a = ExactSum::new();
    for m in 1..=M {
        let m = m as f64;
        a.add(1.0 / (m + nu));
        a.add(-1.0 / m);
    }
    // 1/(m+ν) − 1/m = Σ_j (−ν)^j m^{−j−1} for m > ν
    let mut c = 1.0;
    for j in 1..=40 {
        c *= -nu;
        a.add(c * power_tail((j + 1) as f64, 0.0, M + 1));
    }
    let b = power_tail(2.0, nu, 1) - power_tail(2.0, 0.0, 1);
    (a.value(), b)
}

impl EntireFunction for LatticeProductEvaluator {
    fn eval(&self, z: Complex64) -> Result<LogComplex> {
        self.check_domain(z)?;
        let lead = LogComplex::from_complex(z - self.special);
        if lead.is_zero() {
            return Ok(lead);
        }
        let mut lm = lead.log_mag();
        let mut arg = lead.arg();
        let z2 = z * z;
        let z4 = z2 * z2;
        for &g4 in &self.quads {
            let w = (g4 - z4) / g4;
            let n2 = w.norm_sqr();
            if n2 == 0.0 {
                return Ok(LogComplex::ZERO);
            }
            lm += 0.5 * n2.ln();
            arg += w.im.atan2(w.re);
        }
        for &(lambda, ig) in &self.singles {
            let w = (lambda - z) / lambda;
            let n2 = w.norm_sqr();
            if n2 == 0.0 {
                return Ok(LogComplex::ZERO);
            }
            let zg = z * ig;
            let e = zg + 0.5 * zg * zg;
            lm += 0.5 * n2.ln() + e.re;
            arg += w.im.atan2(w.re) + e.im;
        }
        if self.k_tail >= 3 {
            let mut p = z2;
            let mut t = Complex64::new(0.0, 0.0);
            for k in 3..=self.k_tail {
                p *= z;
                t += self.coeffs[k] * p;
            }
            lm += t.re;
            arg += t.im;
        }
        let (a, b) = self.drift;
        let d = -(a * z + 0.5 * b * z2);
        Ok(LogComplex::new(lm + d.re, arg + d.im))
    }

    fn domain_radius(&self) -> f64 {
        self.r_t / 4.0
    }

    fn describe(&self) -> String {
        format!(
            "lattice product (nu = {}, R_t = {}, K_tail = {})",
            self.nu, self.r_t, self.k_tail
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::products::weighted_log_mag;
    use crate::sequences::{perturb, PerturbationSpec};

    #[test]
    fn row_drift_closed_forms() {
        let (a, b) = row_drift(1.0);
        assert!((a + 1.0).abs() < 1e-15 && (b + 1.0).abs() < 1e-14, "{a} {b}");
        // ψ(3/2) + γ = 2 − 2 ln 2, ψ′(3/2) = π²/2 − 4
        let (a, b) = row_drift(0.5);
        assert!((a + 2.0 - 2.0 * 2f64.ln()).abs() < 1e-15, "{a}");
        assert!((b - (std::f64::consts::PI.powi(2) / 3.0 - 4.0)).abs() < 1e-14, "{b}");
    }

    #[test]
    fn unit_shift_is_sigma_over_z() {
        // Γ_1 = ℤ[i] \ {0}, so the normalized product is −σ(z)/z
        let g1 = LatticeProductEvaluator::unperturbed(1.0, 64.0).unwrap();
        let g0 = LatticeProductEvaluator::unperturbed(0.0, 64.0).unwrap();
        for z in [Complex64::new(0.3, 0.7), Complex64::new(-3.2, 5.1), Complex64::new(10.5, -6.25)] {
            let lhs = (g1.eval(z).unwrap() * LogComplex::from_complex(-z)).to_complex();
            let rhs = g0.eval(z).unwrap().to_complex();
            assert!((lhs / rhs - 1.0).norm() < 1e-9, "{z}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn eisenstein_constants_match_lattice_sums() {
        let mut s4 = ExactSum::new();
        let mut s8 = ExactSum::new();
        let r = 300i64;
        for m in -r..=r {
            for n in -r..=r {
                if (m, n) == (0, 0) || m * m + n * n > r * r {
                    continue;
                }
                let w = Complex64::new(m as f64, n as f64).inv();
                let w4 = (w * w) * (w * w);
                s4.add(w4.re);
                s8.add((w4 * w4).re);
            }
        }
        assert!((s4.value() - G4.0).abs() < 1e-8, "{}", s4.value());
        assert!((s8.value() - G8.0).abs() < 1e-14, "{}", s8.value());
    }

    #[test]
    fn sigma_periodicity() {
        let ev = LatticeProductEvaluator::unperturbed(0.0, 64.0).unwrap();
        for i in 0..40 {
            let (a, b) = crate::numeric::kronecker_point(i);
            let z = Complex64::new(8.0 * a - 4.0, 8.0 * b - 4.0);
            let w0 = weighted_log_mag(&ev, z).unwrap();
            for shift in [Complex64::new(1.0, 0.0), Complex64::i()] {
                let w1 = weighted_log_mag(&ev, z + shift).unwrap();
                assert!((w0 - w1).abs() < 1e-6, "{z} {shift}: {w0} vs {w1}");
            }
        }
    }

    #[test]
    fn zeros_are_sentinels() {
        for nu in [0.0, 0.5, 1.0] {
            let ev = LatticeProductEvaluator::unperturbed(nu, 32.0).unwrap();
            for &z in ev.zeros().iter().filter(|z| z.norm() <= 8.0) {
                assert!(ev.eval(z).unwrap().is_zero(), "nu={nu} {z}");
            }
            let v = ev.eval(Complex64::new(0.25, 0.4)).unwrap();
            assert!(v.log_mag().is_finite());
            assert!(ev.eval(Complex64::new(9.0, 0.0)).is_err());
        }
    }

    #[test]
    fn doubling_truncation_stays_within_bound() {
        for nu in [0.0, 0.5] {
            let a = LatticeProductEvaluator::unperturbed(nu, 32.0).unwrap();
            let b = LatticeProductEvaluator::unperturbed(nu, 64.0).unwrap();
            for i in 0..30 {
                let (x, y) = crate::numeric::kronecker_point(i);
                let z = Complex64::new(16.0 * x - 8.0, 16.0 * y - 8.0);
                if z.norm() > 8.0 {
                    continue;
                }
                let d = (a.eval(z).unwrap().log_mag() - b.eval(z).unwrap().log_mag()).abs();
                assert!(d <= a.error_bound(z) + b.error_bound(z), "nu={nu} {z}: {d}");
                assert!(a.error_bound(z) < 1e-6);
            }
        }
    }

    #[test]
    fn corrected_product_matches_long_plain_product() {
        let base = PerturbedSet::unperturbed(&gen_gamma_nu(0.0, 512.0).unwrap()).unwrap();
        let plain = LatticeProductEvaluator::new(&base, 512.0, 0).unwrap();
        let short = LatticeProductEvaluator::unperturbed(0.0, 64.0).unwrap();
        let z = Complex64::new(0.5, 0.5);
        let d = plain.eval(z).unwrap().log_mag() - short.eval(z).unwrap().log_mag();
        assert!(d.abs() < 1e-6, "{d}");
    }

    #[test]
    fn conjugate_symmetry() {
        let ev = LatticeProductEvaluator::unperturbed(0.5, 32.0).unwrap();
        for i in 0..20 {
            let (x, y) = crate::numeric::kronecker_point(i);
            let z = Complex64::new(12.0 * x - 6.0, 6.0 * y + 0.1);
            let a = ev.eval(z).unwrap().log_mag();
            let b = ev.eval(z.conj()).unwrap().log_mag();
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn genus_factors_use_unperturbed_points() {
        let base = gen_gamma_nu(0.5, 16.0).unwrap();
        let p = perturb(
            &base,
            &PerturbationSpec::InverseSquare { c: 0.2 },
            &PerturbationSpec::InverseSquare { c: -0.1 },
        )
        .unwrap();
        let ev = LatticeProductEvaluator::new(&p, 16.0, 0).unwrap();
        let z = Complex64::new(1.3, -0.7);
        let manual = |use_lambda: bool| {
            let mut acc = Complex64::new(0.0, 0.0);
            for e in p.entries() {
                if e.base == Complex64::new(0.5, 0.0) {
                    acc += crate::logspace::cln(z - e.lambda);
                    continue;
                }
                let g = if use_lambda { e.lambda } else { e.base };
                acc += crate::logspace::cln((e.lambda - z) / e.lambda) + z / g + z * z / (2.0 * g * g);
            }
            let (a, b) = ev.drift();
            (acc - a * z - 0.5 * b * z * z).re
        };
        let v = ev.eval(z).unwrap().log_mag();
        assert!((v - manual(false)).abs() < 1e-10);
        assert!((v - manual(true)).abs() > 1e-3);
    }
}
