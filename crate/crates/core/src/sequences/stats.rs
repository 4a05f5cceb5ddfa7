use super::perturb::shell_of;
use super::{Family, PerturbedSet, PointSet, PointSource};
use crate::error::{Error, Result};
use crate::numeric::{fit_line, ExactSum};
use crate::spatial::SpatialIndex;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

/// Tag of a radial profile.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Statistic {
    DeltaSum,
    ShellSum,
    Counting,
    PowerSum,
    LindelofReal,
    LindelofImag,
}

/// A statistic sampled on an increasing radius grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadialStats {
    pub statistic: Statistic,
    pub radii: Vec<f64>,
    pub values: Vec<f64>,
}

impl RadialStats {
    pub fn new(statistic: Statistic, radii: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        check_grid(&radii)?;
        if values.len() != radii.len() {
            return Err(Error::InvalidParameter("one value per radius required".into()));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::Numerical(format!("non-finite radial value {v}")));
        }
        Ok(Self {
            statistic,
            radii,
            values,
        })
    }

    /// CSV with header `r,value`; floats use shortest round-trip formatting.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("r,value\n");
        for (r, v) in self.radii.iter().zip(&self.values) {
            let _ = writeln!(out, "{r},{v}");
        }
        out
    }

    /// Least-squares slope of `values` against `ln r` over radii in `[lo, hi]`.
    pub fn log_slope(&self, lo: f64, hi: f64) -> Option<f64> {
        let (xs, ys): (Vec<f64>, Vec<f64>) = self
            .radii
            .iter()
            .zip(&self.values)
            .filter(|(r, _)| **r >= lo && **r <= hi)
            .map(|(r, v)| (r.ln(), *v))
            .unzip();
        fit_line(&xs, &ys).map(|f| f.slope)
    }
}

fn check_grid(radii: &[f64]) -> Result<()> {
    if radii.is_empty() {
        return Err(Error::InvalidParameter("empty radius grid".into()));
    }
    if radii.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
        return Err(Error::InvalidParameter("radii must be finite and positive".into()));
    }
    if radii.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter("radii must be strictly increasing".into()));
    }
    Ok(())
}

/// `n` radii from `r0` to `r1` in geometric progression (endpoints exact).
pub fn log_grid(r0: f64, r1: f64, n: usize) -> Result<Vec<f64>> {
    if !(r0 > 0.0 && r1 > r0 && r1.is_finite()) || n < 2 {
        return Err(Error::InvalidParameter(format!(
            "log grid needs 0 < r0 < r1 and n >= 2, got ({r0}, {r1}, {n})"
        )));
    }
    let ratio = (r1 / r0).ln();
    let mut g: Vec<f64> = (0..n)
        .map(|i| r0 * (ratio * i as f64 / (n - 1) as f64).exp())
        .collect();
    g[0] = r0;
    g[n - 1] = r1;
    Ok(g)
}

/// One pass over `src` up to the last radius, reading the accumulator as
/// each radius is crossed. Points are visited in canonical order.
fn sweep<S, T, X>(
    src: &S,
    radii: &[f64],
    mut acc: T,
    mut visit: impl FnMut(&mut T, Complex64, u32),
    read: impl Fn(&T) -> X,
) -> Vec<X>
where
    S: PointSource + ?Sized,
{
    let mut out = Vec::with_capacity(radii.len());
    let last = *radii.last().expect("grid is nonempty");
    src.for_each_within(last, |z, m| {
        let r = z.norm();
        while out.len() < radii.len() && radii[out.len()] < r {
            out.push(read(&acc));
        }
        visit(&mut acc, z, m);
    });
    while out.len() < radii.len() {
        out.push(read(&acc));
    }
    out
}

/// `n(r)`: points with `|z| ≤ r`, with multiplicity.
pub fn counting_function<S: PointSource + ?Sized>(src: &S, radii: &[f64]) -> Result<RadialStats> {
    check_grid(radii)?;
    let counts = sweep(src, radii, 0u64, |c, _, m| *c += m as u64, |c| *c as f64);
    RadialStats::new(Statistic::Counting, radii.to_vec(), counts)
}

fn check_exponent(s: f64) -> Result<()> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::InvalidParameter(format!("exponent s must be positive, got {s}")));
    }
    Ok(())
}

fn power_term(z: Complex64, m: u32, s: f64) -> f64 {
    m as f64 * z.norm().powf(-s)
}

/// `Σ_{0<|z|≤r} |z|^{−s}`.
pub fn power_sum<S: PointSource + ?Sized>(src: &S, s: f64, r: f64) -> Result<f64> {
    Ok(power_profile(src, s, &[r])?.values[0])
}

/// `Σ_{0<|z|≤r} |z|^{−s}` at every radius of the grid.
pub fn power_profile<S: PointSource + ?Sized>(src: &S, s: f64, radii: &[f64]) -> Result<RadialStats> {
    check_exponent(s)?;
    check_grid(radii)?;
    let values = sweep(
        src,
        radii,
        ExactSum::new(),
        |acc, z, m| {
            if z.norm_sqr() > 0.0 {
                acc.add(power_term(z, m, s));
            }
        },
        ExactSum::value,
    );
    RadialStats::new(Statistic::PowerSum, radii.to_vec(), values)
}

/// Partial power sum plus a tail estimate from a two-point density fit
/// `n(t) ≈ A t^ρ` with `ρ = log₂(n(r)/n(r/2))`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TailCorrectedSum {
    pub partial: f64,
    /// `∫_r^∞ t^{−s} d(A t^ρ)`; infinite when `s ≤ ρ`.
    pub tail: f64,
    pub value: f64,
    pub density_exponent: f64,
    pub density_constant: f64,
}

pub fn power_sum_with_tail<S: PointSource + ?Sized>(src: &S, s: f64, r: f64) -> Result<TailCorrectedSum> {
    check_exponent(s)?;
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidParameter(format!("radius must be positive, got {r}")));
    }
    let counts = sweep(
        src,
        &[r / 2.0, r],
        0u64,
        |c, z, m| {
            if z.norm_sqr() > 0.0 {
                *c += m as u64
            }
        },
        |c| *c as f64,
    );
    if counts[0] == 0.0 {
        return Err(Error::InsufficientData(format!(
            "no points in the half window |z| <= {}",
            r / 2.0
        )));
    }
    let partial = power_sum(src, s, r)?;
    let rho = (counts[1] / counts[0]).log2();
    let a = counts[1] / r.powf(rho);
    let tail = if s > rho {
        a * rho * r.powf(rho - s) / (s - rho)
    } else {
        f64::INFINITY
    };
    Ok(TailCorrectedSum {
        partial,
        tail,
        value: partial + tail,
        density_exponent: rho,
        density_constant: a,
    })
}

/// `z^{−ρ} = z̄^ρ / |z|^{2ρ}`; rounding commutes with `z → iz`, so
/// symmetric sets cancel exactly.
fn lindelof_term(z: Complex64, rho: u32) -> Complex64 {
    let c = z.conj();
    let mut t = c;
    for _ in 1..rho {
        t *= c;
    }
    t / z.norm_sqr().powi(rho as i32)
}

fn check_rho(rho: u32) -> Result<()> {
    if rho < 1 {
        return Err(Error::InvalidParameter("rho must be >= 1".into()));
    }
    Ok(())
}

/// `S(r) = Σ_{0<|z|≤r} z^{−ρ}`, summed exactly in canonical order.
pub fn lindelof_sum<S: PointSource + ?Sized>(src: &S, rho: u32, r: f64) -> Result<Complex64> {
    let (re, im) = lindelof_profile(src, rho, &[r])?;
    Ok(Complex64::new(re.values[0], im.values[0]))
}

/// Real and imaginary parts of `S(r)` on a radius grid.
pub fn lindelof_profile<S: PointSource + ?Sized>(
    src: &S,
    rho: u32,
    radii: &[f64],
) -> Result<(RadialStats, RadialStats)> {
    check_rho(rho)?;
    check_grid(radii)?;
    let vals = sweep(
        src,
        radii,
        (ExactSum::new(), ExactSum::new()),
        |(re, im), z, m| {
            if z.norm_sqr() > 0.0 {
                let t = lindelof_term(z, rho) * m as f64;
                re.add(t.re);
                im.add(t.im);
            }
        },
        |(re, im)| (re.value(), im.value()),
    );
    let (re, im): (Vec<f64>, Vec<f64>) = vals.into_iter().unzip();
    Ok((
        RadialStats::new(Statistic::LindelofReal, radii.to_vec(), re)?,
        RadialStats::new(Statistic::LindelofImag, radii.to_vec(), im)?,
    ))
}

/// Least-squares exponent estimate with its fit residual.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExponentEstimate {
    pub estimate: f64,
    /// Root-mean-square residual of the log-log fit.
    pub residual: f64,
    pub r_min: f64,
    pub r_max: f64,
}

/// Slope of `ln n(r)` against `ln r` over the top decade of moduli.
pub fn convergence_exponent(set: &PointSet) -> Result<ExponentEstimate> {
    let moduli: Vec<f64> = set.zs().map(|z| z.norm()).filter(|&m| m > 0.0).collect();
    if set.total_count() < 100 {
        return Err(Error::InsufficientData(format!(
            "need at least 100 points, have {}",
            set.total_count()
        )));
    }
    let (lo, hi) = (moduli[0], *moduli.last().expect("nonempty"));
    let r_min = hi / 10.0;
    if !(lo <= r_min) {
        return Err(Error::InsufficientData(format!(
            "moduli span [{lo}, {hi}] is less than a decade"
        )));
    }
    let radii = log_grid(r_min, hi, 32)?;
    let n = counting_function(set, &radii)?;
    let xs: Vec<f64> = radii.iter().map(|r| r.ln()).collect();
    let ys: Vec<f64> = n.values.iter().map(|c| c.ln()).collect();
    let fit = fit_line(&xs, &ys).ok_or_else(|| Error::Numerical("degenerate fit".into()))?;
    Ok(ExponentEstimate {
        estimate: fit.slope,
        residual: fit.residual,
        r_min,
        r_max: hi,
    })
}

/// Radial δ profile and the liminf/limsup window proxies.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeltaStats {
    /// `D(R) = Σ_{|γ|≤R} δ_γ / ln R`.
    pub profile: RadialStats,
    /// Smallest anchored secant over the top half of the grid.
    pub delta_hat_proxy: f64,
    /// Largest anchored secant over the top half of the grid.
    pub delta_sup_proxy: f64,
    /// Radius `R₀` the secants are anchored at.
    pub anchor: f64,
}

/// Secant `(Σ(R) − Σ(R₀)) / ln(R/R₀)` removes the bounded offset of the
/// partial sums, which `D(R)` only shakes off at rate `1/ln R`.
pub fn delta_stats(set: &PerturbedSet, radii: &[f64]) -> Result<DeltaStats> {
    check_grid(radii)?;
    if radii[0] <= 1.0 {
        return Err(Error::InvalidParameter(format!(
            "delta statistics need radii > 1, got {}",
            radii[0]
        )));
    }
    let last = *radii.last().expect("nonempty");
    if last / radii[0] < 100.0 * (1.0 - 1e-9) {
        return Err(Error::InsufficientData(format!(
            "radius grid [{}, {last}] spans less than two decades",
            radii[0]
        )));
    }
    let mut sums = Vec::with_capacity(radii.len());
    let mut acc = ExactSum::new();
    let mut entries = set.entries().iter().peekable();
    for &r in radii {
        while let Some(e) = entries.next_if(|e| e.base.norm() <= r) {
            acc.add(e.delta);
        }
        sums.push(acc.value());
    }
    let profile: Vec<f64> = sums.iter().zip(radii).map(|(s, r)| s / r.ln()).collect();
    let anchor = radii[0];
    let half = radii.len() / 2;
    let secants: Vec<f64> = (half.max(1)..radii.len())
        .map(|i| (sums[i] - sums[0]) / (radii[i] / anchor).ln())
        .collect();
    Ok(DeltaStats {
        profile: RadialStats::new(Statistic::DeltaSum, radii.to_vec(), profile)?,
        delta_hat_proxy: secants.iter().copied().fold(f64::INFINITY, f64::min),
        delta_sup_proxy: secants.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        anchor,
    })
}

/// Shell sums `Δ_k` of an axis sequence and the derived window statistics.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShellDeltaStats {
    /// `Δ_k` for `k = 1..=n_max`.
    pub deltas: Vec<f64>,
    /// `Σ_{j≤k} Δ_j` against `k`.
    pub partial_sums: RadialStats,
    /// Largest `|Σ_{j≤n} Δ_j − Σ_{j≤n₀} Δ_j| / ln(n/n₀)` over `n` in the top
    /// half, with `n₀ = ⌊√n_max⌋`.
    pub delta_proxy: f64,
    pub anchor: u64,
    pub avdonin_window: usize,
    /// `max_n ((n+1)/N)|Σ_{k=n+1}^{n+N} Δ_k|`.
    pub avdonin_sup: f64,
    pub n_max: u64,
}

pub fn shell_delta_stats(set: &PerturbedSet, window: usize) -> Result<ShellDeltaStats> {
    if set.family() != Family::Als {
        return Err(Error::WrongFamily {
            expected: Family::Als.name().into(),
            found: set.family().to_string(),
        });
    }
    if window < 1 {
        return Err(Error::InvalidParameter("Avdonin window N must be >= 1".into()));
    }
    let n_max = set
        .entries()
        .iter()
        .filter_map(|e| shell_of(e.base))
        .max()
        .unwrap_or(0);
    if n_max < 4 {
        return Err(Error::InsufficientData(format!("only {n_max} shells in the window")));
    }
    let mut deltas = vec![0.0; n_max as usize];
    for e in set.entries() {
        if let Some(k) = shell_of(e.base) {
            deltas[k as usize - 1] += e.delta;
        }
    }
    let mut acc = ExactSum::new();
    let mut partial = Vec::with_capacity(deltas.len() + 1);
    partial.push(0.0);
    for d in &deltas {
        acc.add(*d);
        partial.push(acc.value());
    }
    let n0 = ((n_max as f64).sqrt().floor() as u64).max(1);
    let delta_proxy = (n_max.div_ceil(2).max(n0 + 1)..=n_max)
        .map(|n| (partial[n as usize] - partial[n0 as usize]).abs() / (n as f64 / n0 as f64).ln())
        .fold(0.0, f64::max);
    let avdonin_sup = (0..=(n_max as usize).saturating_sub(window))
        .map(|n| (n + 1) as f64 / window as f64 * (partial[n + window] - partial[n]).abs())
        .fold(0.0, f64::max);
    let ks: Vec<f64> = (1..=n_max).map(|k| k as f64).collect();
    Ok(ShellDeltaStats {
        partial_sums: RadialStats::new(Statistic::ShellSum, ks, partial[1..].to_vec())?,
        deltas,
        delta_proxy,
        anchor: n0,
        avdonin_window: window,
        avdonin_sup,
        n_max,
    })
}

/// Points of a set as a flat list, repeated by multiplicity.
pub trait PointCloud {
    fn cloud(&self) -> Vec<Complex64>;
}

impl PointCloud for PointSet {
    fn cloud(&self) -> Vec<Complex64> {
        self.points()
            .iter()
            .flat_map(|p| std::iter::repeat(p.z).take(p.multiplicity as usize))
            .collect()
    }
}

impl PointCloud for PerturbedSet {
    fn cloud(&self) -> Vec<Complex64> {
        self.lambdas().collect()
    }
}

impl PointCloud for [Complex64] {
    fn cloud(&self) -> Vec<Complex64> {
        self.to_vec()
    }
}

/// `min |λ − λ′|` over distinct pairs of the window.
pub fn separation<C: PointCloud + ?Sized>(set: &C) -> Result<f64> {
    let pts = set.cloud();
    if pts.len() < 2 {
        return Err(Error::InsufficientData("separation needs at least 2 points".into()));
    }
    SpatialIndex::new(pts)?.min_pair_distance()
}

/// Best `c` with `|λ_γ − λ_γ′| ≥ c / min{|γ|, |γ′|}` over the window.
pub fn als_separation_constant(set: &PerturbedSet) -> Result<f64> {
    if set.family() != Family::Als {
        return Err(Error::WrongFamily {
            expected: Family::Als.name().into(),
            found: set.family().to_string(),
        });
    }
    let e = set.entries();
    if e.len() < 2 {
        return Err(Error::InsufficientData("need at least 2 points".into()));
    }
    let idx = SpatialIndex::new(set.lambdas().collect())?;
    let weight = |i: usize, j: usize| (e[i].lambda - e[j].lambda).norm() * e[i].base.norm().min(e[j].base.norm());
    let mut best = (0..e.len())
        .filter_map(|i| idx.nearest_other(i).map(|(j, _)| weight(i, j)))
        .fold(f64::INFINITY, f64::min);
    // a pair beating `best` with |γ_i| ≤ |γ_j| has |λ_i − λ_j| < best/|γ_i|
    for i in 0..e.len() {
        let gi = e[i].base.norm();
        if gi == 0.0 {
            continue;
        }
        for j in idx.within(e[i].lambda, best / gi) {
            if j != i && e[j].base.norm() >= gi {
                best = best.min(weight(i, j));
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::{
        gen_als, gen_gamma_nu, gen_power_sequence, gen_zeros_of_s, perturb, PerturbationSpec,
        ShellSchedule,
    };

    #[test]
    fn log_grid_endpoints() {
        let g = log_grid(2.0, 500.0, 7).unwrap();
        assert_eq!(g[0], 2.0);
        assert_eq!(g[6], 500.0);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert!(log_grid(3.0, 2.0, 4).is_err());
    }

    #[test]
    fn csv_header() {
        let s = RadialStats::new(Statistic::Counting, vec![1.0, 2.5], vec![3.0, 0.1]).unwrap();
        assert_eq!(s.to_csv(), "r,value\n1,3\n2.5,0.1\n");
        assert!(RadialStats::new(Statistic::Counting, vec![2.0, 1.0], vec![0.0, 0.0]).is_err());
    }

    #[test]
    fn gauss_circle_counts() {
        let set = gen_gamma_nu(0.0, 100.0).unwrap();
        let radii = log_grid(1.0, 100.0, 40).unwrap();
        let n = counting_function(&set, &radii).unwrap();
        for (r, c) in radii.iter().zip(&n.values) {
            // brute-force lattice count
            let k = r.floor() as i64;
            let mut brute = 0u64;
            for a in -k..=k {
                for b in -k..=k {
                    if ((a * a + b * b) as f64).sqrt() <= *r {
                        brute += 1;
                    }
                }
            }
            assert_eq!(*c, brute as f64);
            assert!((c - std::f64::consts::PI * r * r).abs() <= 8.0 * r);
        }
    }

    #[test]
    fn als_count_formula() {
        let set = gen_als(40.0).unwrap();
        let radii = log_grid(1.0, 40.0, 50).unwrap();
        let n = counting_function(&set, &radii).unwrap();
        for (r, c) in radii.iter().zip(&n.values) {
            let shells = (0..).take_while(|k| ((2 * (k + 1)) as f64).sqrt() <= *r).count();
            assert_eq!(*c as usize, 4 * shells + 2);
        }
    }

    #[test]
    fn basel_with_tail() {
        let set = gen_power_sequence(1.0, 10_000).unwrap();
        let t = power_sum_with_tail(&set, 2.0, 10_000.0).unwrap();
        let basel = std::f64::consts::PI.powi(2) / 6.0;
        assert!((t.value - basel).abs() < 1e-6, "{t:?}");
        assert!((t.partial - basel).abs() > 5e-5);
    }

    #[test]
    fn lindelof_zero_for_full_zero_set() {
        let set = gen_zeros_of_s(60.0).unwrap();
        let radii = log_grid(1.5, 60.0, 20).unwrap();
        let (re, im) = lindelof_profile(&set, 2, &radii).unwrap();
        assert!(re.values.iter().chain(&im.values).all(|v| *v == 0.0));
    }

    #[test]
    fn lindelof_real_axis_slope() {
        let set = gen_zeros_of_s(400.0).unwrap().filter(|z| z.re != 0.0);
        let radii = log_grid(10.0, 400.0, 30).unwrap();
        let (re, _) = lindelof_profile(&set, 2, &radii).unwrap();
        let slope = re.log_slope(10.0, 400.0).unwrap();
        assert!((slope - 2.0).abs() < 0.05, "{slope}");
    }

    #[test]
    fn exponent_estimates() {
        let e = convergence_exponent(&gen_gamma_nu(0.0, 200.0).unwrap()).unwrap();
        assert!((e.estimate - 2.0).abs() < 0.05, "{e:?}");
        let e = convergence_exponent(&gen_power_sequence(1.0, 10_000).unwrap()).unwrap();
        assert!((e.estimate - 1.0).abs() < 0.05, "{e:?}");
        let shell = PointSet::new(
            Family::Custom,
            2.0,
            (0..200).map(|k| Complex64::from_polar(2.0, k as f64 * 0.01)),
        )
        .unwrap();
        assert!(matches!(convergence_exponent(&shell), Err(Error::InsufficientData(_))));
    }

    #[test]
    fn delta_proxies() {
        let base = gen_gamma_nu(0.0, 250.0).unwrap();
        let radii = log_grid(2.5, 250.0, 24).unwrap();
        let zero = perturb(&base, &PerturbationSpec::Zero, &PerturbationSpec::Zero).unwrap();
        let d = delta_stats(&zero, &radii).unwrap();
        assert_eq!((d.delta_hat_proxy, d.delta_sup_proxy), (0.0, 0.0));
        let c = 0.05;
        let p = perturb(&base, &PerturbationSpec::InverseSquare { c }, &PerturbationSpec::Zero).unwrap();
        let d = delta_stats(&p, &radii).unwrap();
        let target = 2.0 * std::f64::consts::PI * c;
        assert!((d.delta_sup_proxy / target - 1.0).abs() < 0.05, "{d:?}");
        assert!((d.delta_hat_proxy / target - 1.0).abs() < 0.05, "{d:?}");
        assert!(delta_stats(&p, &log_grid(2.5, 20.0, 5).unwrap()).is_err());
    }

    #[test]
    fn shell_statistics() {
        let base = gen_als(100.0).unwrap();
        let spec = |schedule| PerturbationSpec::Shell { schedule };
        let h = perturb(&base, &spec(ShellSchedule::Harmonic { d: 0.3 }), &PerturbationSpec::Zero).unwrap();
        let s = shell_delta_stats(&h, 2).unwrap();
        assert_eq!(s.n_max, 5000);
        assert!((s.deltas[9] - 0.03).abs() < 1e-15);
        assert!((s.delta_proxy / 0.3 - 1.0).abs() < 0.05, "{}", s.delta_proxy);
        let a = perturb(&base, &spec(ShellSchedule::Alternating { a: 0.1 }), &PerturbationSpec::Zero).unwrap();
        let s = shell_delta_stats(&a, 2).unwrap();
        assert_eq!(s.avdonin_sup, 0.0);
        assert!(s.delta_proxy <= 0.1 / (2500.0f64 / 70.0).ln() + 1e-12);
        let z = PerturbedSet::unperturbed(&base).unwrap();
        let s = shell_delta_stats(&z, 3).unwrap();
        assert_eq!((s.delta_proxy, s.avdonin_sup), (0.0, 0.0));
        let lat = PerturbedSet::unperturbed(&gen_gamma_nu(0.0, 5.0).unwrap()).unwrap();
        assert!(matches!(shell_delta_stats(&lat, 2), Err(Error::WrongFamily { .. })));
    }

    #[test]
    fn separations() {
        assert_eq!(separation(&gen_gamma_nu(0.0, 10.0).unwrap()).unwrap(), 1.0);
        assert_eq!(separation(&gen_gamma_nu(0.5, 3.0).unwrap()).unwrap(), 1.0);
        let line = [0.0, 3.0, 7.0].map(|x| Complex64::new(x, 0.0));
        assert_eq!(separation(&line[..]).unwrap(), 3.0);
        assert!(separation(&line[..1]).is_err());
    }

    #[test]
    fn als_constant_matches_brute_force() {
        let set = PerturbedSet::unperturbed(&gen_als(20.0).unwrap()).unwrap();
        let e = set.entries();
        let mut brute = f64::INFINITY;
        for i in 0..e.len() {
            for j in 0..i {
                let w = (e[i].lambda - e[j].lambda).norm() * e[i].base.norm().min(e[j].base.norm());
                brute = brute.min(w);
            }
        }
        assert_eq!(als_separation_constant(&set).unwrap(), brute);
        assert!((brute - (std::f64::consts::SQRT_2 - 1.0)).abs() < 1e-15);
        let lat = PerturbedSet::unperturbed(&gen_gamma_nu(0.0, 3.0).unwrap()).unwrap();
        assert!(als_separation_constant(&lat).is_err());
    }
}
