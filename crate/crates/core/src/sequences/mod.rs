//! Point sequences: the perturbed lattices `Γ_ν`, the axis sequence
//! `{±√(2n), ±i√(2n)} ∪ {±1}`, the zeros of `sin(πz²/2)/z²`, their
//! perturbations `λ = γ·e^δ·e^{iθ}`, and the radial statistics built on them.

mod generate;
mod perturb;
mod sectors;
mod source;
mod stats;

pub use generate::{gen_als, gen_gamma_nu, gen_power_sequence, gen_zeros_of_s, LatticeIndex};
pub use perturb::{perturb, PerturbationSpec, ShellSchedule, TableEntry};
pub(crate) use perturb::shell_of;
pub(crate) use sectors::in_closed_cone;
pub use sectors::{in_sector, sector_index, sector_partition};
pub use source::{Axes, PointSource, ShellFamily, ShellStream};
pub use stats::{
    als_separation_constant, convergence_exponent, counting_function, delta_stats, lindelof_profile,
    lindelof_sum, log_grid, power_profile, power_sum, power_sum_with_tail, separation,
    shell_delta_stats, DeltaStats, ExponentEstimate, PointCloud, RadialStats, ShellDeltaStats, Statistic,
    TailCorrectedSum,
};

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::cmp::Ordering;
use std::fmt;

/// Which construction a set came from.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Family {
    /// Square lattice with the nonnegative real row shifted by `nu`.
    GammaNu { nu: f64 },
    /// `{±√(2n), ±i√(2n) : n ≥ 1} ∪ {±1}`.
    Als,
    /// `{±√(2n), ±i√(2n) : n ≥ 1}`.
    ZerosOfS,
    Custom,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::GammaNu { .. } => "gamma-nu",
            Family::Als => "als",
            Family::ZerosOfS => "zeros-of-s",
            Family::Custom => "custom",
        }
    }

    pub fn nu(&self) -> Option<f64> {
        match self {
            Family::GammaNu { nu } => Some(*nu),
            _ => None,
        }
    }

    pub fn from_name(name: &str, nu: Option<f64>) -> Result<Self> {
        match name {
            "gamma-nu" => {
                let nu = nu.ok_or_else(|| Error::InvalidParameter("gamma-nu requires nu".into()))?;
                Ok(Family::GammaNu { nu })
            }
            "als" => Ok(Family::Als),
            "zeros-of-s" => Ok(Family::ZerosOfS),
            "custom" => Ok(Family::Custom),
            other => Err(Error::InvalidParameter(format!("unknown family '{other}'"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::GammaNu { nu } => write!(f, "gamma-nu(nu={nu})"),
            other => f.write_str(other.name()),
        }
    }
}

/// A point with multiplicity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point {
    pub z: Complex64,
    pub multiplicity: u32,
}

/// Canonical ordering: by modulus, then by principal argument.
pub fn canonical_cmp(a: Complex64, b: Complex64) -> Ordering {
    a.norm()
        .total_cmp(&b.norm())
        .then_with(|| a.arg().total_cmp(&b.arg()))
}

/// Replace `-0.0` components with `+0.0` so that equal points hash equally.
pub(crate) fn normalize(z: Complex64) -> Complex64 {
    Complex64::new(z.re + 0.0, z.im + 0.0)
}

pub(crate) fn bits(z: Complex64) -> (u64, u64) {
    let z = normalize(z);
    (z.re.to_bits(), z.im.to_bits())
}

pub(crate) fn fmt_point(z: Complex64) -> String {
    format!("({}, {})", z.re, z.im)
}

/// Finite multiset of complex points, kept in canonical order with
/// duplicates merged into multiplicities.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet {
    family: Family,
    radius: f64,
    points: Vec<Point>,
    origin_included: bool,
}

impl PointSet {
    /// Simple points; exact duplicates are merged.
    pub fn new<I: IntoIterator<Item = Complex64>>(family: Family, radius: f64, zs: I) -> Result<Self> {
        Self::with_multiplicities(
            family,
            radius,
            zs.into_iter().map(|z| Point { z, multiplicity: 1 }),
        )
    }

    pub fn with_multiplicities<I: IntoIterator<Item = Point>>(
        family: Family,
        radius: f64,
        pts: I,
    ) -> Result<Self> {
        let mut keyed: Vec<(f64, f64, Point)> = Vec::new();
        for mut p in pts {
            if !(p.z.re.is_finite() && p.z.im.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "non-finite point {}",
                    fmt_point(p.z)
                )));
            }
            if p.multiplicity == 0 {
                return Err(Error::InvalidParameter("multiplicity must be >= 1".into()));
            }
            p.z = normalize(p.z);
            keyed.push((p.z.norm(), p.z.arg(), p));
        }
        keyed.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.total_cmp(&b.1)));
        let mut points: Vec<Point> = Vec::with_capacity(keyed.len());
        for (_, _, p) in keyed {
            match points.last_mut() {
                Some(last) if last.z == p.z => last.multiplicity += p.multiplicity,
                _ => points.push(p),
            }
        }
        let origin_included = points.first().is_some_and(|p| p.z == Complex64::new(0.0, 0.0));
        Ok(Self {
            family,
            radius,
            points,
            origin_included,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Window radius: the set holds the points of modulus at most this.
    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn origin_included(&self) -> bool {
        self.origin_included
    }

    /// Number of points counted with multiplicity.
    pub fn total_count(&self) -> u64 {
        self.points.iter().map(|p| p.multiplicity as u64).sum()
    }

    pub fn zs(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.points.iter().map(|p| p.z)
    }

    pub fn contains(&self, z: Complex64) -> bool {
        let z = normalize(z);
        let m = z.norm();
        let start = self.points.partition_point(|p| p.z.norm() < m);
        self.points[start..]
            .iter()
            .take_while(|p| p.z.norm() == m)
            .any(|p| p.z == z)
    }

    /// Keep the points matching `keep`; the result is tagged `Custom`.
    pub fn filter<F: Fn(Complex64) -> bool>(&self, keep: F) -> PointSet {
        let points: Vec<Point> = self.points.iter().copied().filter(|p| keep(p.z)).collect();
        let origin_included = points.first().is_some_and(|p| p.z == Complex64::new(0.0, 0.0));
        PointSet {
            family: Family::Custom,
            radius: self.radius,
            points,
            origin_included,
        }
    }

    /// The set rotated by `angle` about the origin, tagged `Custom`.
    pub fn rotated(&self, angle: f64) -> PointSet {
        let rot = Complex64::from_polar(1.0, angle);
        Self::with_multiplicities(
            Family::Custom,
            self.radius,
            self.points.iter().map(|p| Point {
                z: p.z * rot,
                multiplicity: p.multiplicity,
            }),
        )
        .expect("rotation of finite points is finite")
    }
}

/// One perturbed point `λ = γ·e^δ·e^{iθ}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PerturbedEntry {
    pub base: Complex64,
    pub delta: f64,
    pub theta: f64,
    pub lambda: Complex64,
}

impl PerturbedEntry {
    pub fn new(base: Complex64, delta: f64, theta: f64) -> Self {
        let base = normalize(base);
        let lambda = if delta == 0.0 && theta == 0.0 {
            base
        } else {
            normalize(base * Complex64::from_polar(delta.exp(), theta))
        };
        Self {
            base,
            delta,
            theta,
            lambda,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.lambda == self.base
    }
}

/// A base sequence together with its perturbation.
#[derive(Clone, Debug, PartialEq)]
pub struct PerturbedSet {
    family: Family,
    radius: f64,
    entries: Vec<PerturbedEntry>,
    sup_gamma2_delta: f64,
    sup_gamma2_theta: f64,
}

impl PerturbedSet {
    /// Assemble from entries; checks `λ = γ e^δ e^{iθ}` and rejects coinciding
    /// perturbed points.
    pub fn from_entries(family: Family, radius: f64, mut entries: Vec<PerturbedEntry>) -> Result<Self> {
        for e in &entries {
            let expect = e.base * Complex64::from_polar(e.delta.exp(), e.theta);
            let scale = e.base.norm().max(1.0) * e.delta.exp().max(1.0);
            if !(e.delta.is_finite() && e.theta.is_finite())
                || (expect - e.lambda).norm() > 64.0 * f64::EPSILON * scale
            {
                return Err(Error::InvalidParameter(format!(
                    "entry at base {} violates lambda = base*exp(delta + i theta)",
                    fmt_point(e.base)
                )));
            }
        }
        entries.sort_by(|a, b| canonical_cmp(a.base, b.base));
        let mut seen = std::collections::HashSet::with_capacity(entries.len());
        let mut seen_base = std::collections::HashSet::with_capacity(entries.len());
        for e in &entries {
            if !seen_base.insert(bits(e.base)) {
                return Err(Error::InvalidParameter(format!(
                    "duplicate base point {}",
                    fmt_point(e.base)
                )));
            }
            if !seen.insert(bits(e.lambda)) {
                return Err(Error::Collision(fmt_point(e.lambda)));
            }
        }
        let sup = |f: fn(&PerturbedEntry) -> f64| {
            entries
                .iter()
                .map(|e| e.base.norm_sqr() * f(e).abs())
                .fold(0.0, f64::max)
        };
        let sup_gamma2_delta = sup(|e| e.delta);
        let sup_gamma2_theta = sup(|e| e.theta);
        Ok(Self {
            family,
            radius,
            entries,
            sup_gamma2_delta,
            sup_gamma2_theta,
        })
    }

    /// The identity perturbation of a simple point set.
    pub fn unperturbed(set: &PointSet) -> Result<Self> {
        perturb(set, &PerturbationSpec::Zero, &PerturbationSpec::Zero)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn entries(&self) -> &[PerturbedEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `sup |γ|²|δ_γ|` over the window.
    pub fn sup_gamma2_delta(&self) -> f64 {
        self.sup_gamma2_delta
    }

    /// `sup |γ|²|θ_γ|` over the window.
    pub fn sup_gamma2_theta(&self) -> f64 {
        self.sup_gamma2_theta
    }

    pub fn lambdas(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.entries.iter().map(|e| e.lambda)
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().all(PerturbedEntry::is_identity)
    }

    /// The perturbed points as a point set (same family tag, same window).
    pub fn to_point_set(&self) -> PointSet {
        PointSet::new(self.family, self.radius, self.lambdas())
            .expect("perturbed points are finite")
    }

    pub fn base_set(&self) -> PointSet {
        PointSet::new(self.family, self.radius, self.entries.iter().map(|e| e.base))
            .expect("base points are finite")
    }
}
