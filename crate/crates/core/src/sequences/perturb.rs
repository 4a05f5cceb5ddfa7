use super::{bits, fmt_point, Family, PerturbedEntry, PerturbedSet, PointSet};
use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Values on the shells `|γ|² = 2k`, placed on the positive real point
/// `+√(2k)` of each shell (the other three shell points stay fixed).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ShellSchedule {
    /// `d / k`
    Harmonic { d: f64 },
    /// `(-1)^k a`
    Alternating { a: f64 },
    /// `values[k - 1]`, zero beyond the table.
    Explicit { values: Vec<f64> },
}

impl ShellSchedule {
    pub fn value(&self, k: u64) -> f64 {
        match self {
            ShellSchedule::Harmonic { d } => d / k as f64,
            ShellSchedule::Alternating { a } => {
                if k % 2 == 0 {
                    *a
                } else {
                    -a
                }
            }
            ShellSchedule::Explicit { values } => values.get(k as usize - 1).copied().unwrap_or(0.0),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableEntry {
    pub base: [f64; 2],
    pub value: f64,
}

/// A rule assigning `δ_γ` (or `θ_γ`) to every base point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PerturbationSpec {
    Zero,
    /// `c / |γ|²`; the origin gets 0.
    InverseSquare { c: f64 },
    /// Shell schedule on the axis sequences.
    Shell { schedule: ShellSchedule },
    /// Explicit values; points missing from the table take `default`, or are
    /// an error when no default is given.
    Table {
        entries: Vec<TableEntry>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        default: Option<f64>,
    },
}

/// Shell number `k` when `z = +√(2k)` (up to rounding of the square root).
pub(crate) fn positive_shell(z: Complex64) -> Option<u64> {
    if z.im != 0.0 || z.re <= 0.0 {
        return None;
    }
    shell_of(z)
}

/// Shell number `k ≥ 1` when `|z|² = 2k` to rounding.
pub(crate) fn shell_of(z: Complex64) -> Option<u64> {
    let half = z.norm_sqr() / 2.0;
    let k = half.round();
    (k >= 1.0 && (half - k).abs() <= 1e-9 * k).then_some(k as u64)
}

struct Resolved<'a> {
    spec: &'a PerturbationSpec,
    table: HashMap<(u64, u64), f64>,
}

impl<'a> Resolved<'a> {
    fn new(spec: &'a PerturbationSpec) -> Self {
        let table = match spec {
            PerturbationSpec::Table { entries, .. } => entries
                .iter()
                .map(|e| (bits(Complex64::new(e.base[0], e.base[1])), e.value))
                .collect(),
            _ => HashMap::new(),
        };
        Self { spec, table }
    }

    fn value(&self, base: Complex64, family: Family) -> Result<f64> {
        match self.spec {
            PerturbationSpec::Zero => Ok(0.0),
            PerturbationSpec::InverseSquare { c } => {
                let m2 = base.norm_sqr();
                Ok(if m2 == 0.0 { 0.0 } else { c / m2 })
            }
            PerturbationSpec::Shell { schedule } => match family {
                Family::Als | Family::ZerosOfS => {
                    Ok(positive_shell(base).map_or(0.0, |k| schedule.value(k)))
                }
                _ => Err(Error::UndefinedPerturbation(format!(
                    "{} (shell schedules need an axis family, got {family})",
                    fmt_point(base)
                ))),
            },
            PerturbationSpec::Table { default, .. } => match self.table.get(&bits(base)) {
                Some(v) => Ok(*v),
                None => default.ok_or_else(|| Error::UndefinedPerturbation(fmt_point(base))),
            },
        }
    }
}

/// Apply `λ_γ = γ·e^{δ_γ}·e^{iθ_γ}` to every point of `base`.
///
/// Coinciding perturbed points are reported as [`Error::Collision`].
pub fn perturb(
    base: &PointSet,
    delta: &PerturbationSpec,
    theta: &PerturbationSpec,
) -> Result<PerturbedSet> {
    let family = base.family();
    let d = Resolved::new(delta);
    let t = Resolved::new(theta);
    let mut entries = Vec::with_capacity(base.len());
    for p in base.points() {
        if p.multiplicity != 1 {
            return Err(Error::InvalidParameter(format!(
                "cannot perturb multiple point {}",
                fmt_point(p.z)
            )));
        }
        let dv = d.value(p.z, family)?;
        let tv = t.value(p.z, family)?;
        if p.z.norm_sqr() == 0.0 && tv != 0.0 {
            return Err(Error::InvalidParameter(
                "a rotation angle at the origin is meaningless".into(),
            ));
        }
        if !(dv.is_finite() && tv.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "non-finite perturbation at {}",
                fmt_point(p.z)
            )));
        }
        let e = PerturbedEntry::new(p.z, dv, tv);
        if !(e.lambda.re.is_finite() && e.lambda.im.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "perturbed point overflows at {} (delta = {dv})",
                fmt_point(p.z)
            )));
        }
        entries.push(e);
    }
    PerturbedSet::from_entries(family, base.radius(), entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::{gen_als, gen_gamma_nu};

    #[test]
    fn zero_spec_is_identity() {
        let s = gen_gamma_nu(0.5, 6.0).unwrap();
        let p = perturb(&s, &PerturbationSpec::Zero, &PerturbationSpec::Zero).unwrap();
        assert!(p.is_identity());
        for (e, q) in p.entries().iter().zip(s.points()) {
            assert_eq!(e.lambda, q.z);
        }
        assert_eq!(p.sup_gamma2_delta(), 0.0);
    }

    #[test]
    fn inverse_square_sup() {
        let s = gen_gamma_nu(0.0, 10.0).unwrap();
        let p = perturb(
            &s,
            &PerturbationSpec::InverseSquare { c: 0.3 },
            &PerturbationSpec::InverseSquare { c: -0.1 },
        )
        .unwrap();
        assert!((p.sup_gamma2_delta() - 0.3).abs() < 1e-14);
        assert!((p.sup_gamma2_theta() - 0.1).abs() < 1e-14);
        for e in p.entries() {
            let expect = e.base * Complex64::from_polar(e.delta.exp(), e.theta);
            assert!((expect - e.lambda).norm() <= 4.0 * f64::EPSILON * e.base.norm().max(1.0));
        }
    }

    #[test]
    fn shell_schedule_on_als() {
        let s = gen_als(10.0).unwrap();
        let spec = PerturbationSpec::Shell {
            schedule: ShellSchedule::Harmonic { d: 0.4 },
        };
        let p = perturb(&s, &spec, &PerturbationSpec::Zero).unwrap();
        for e in p.entries() {
            match positive_shell(e.base) {
                Some(k) => assert!((e.delta - 0.4 / k as f64).abs() < 1e-15),
                None => assert_eq!(e.delta, 0.0),
            }
        }
        // shell schedules are undefined on the lattice
        let lat = gen_gamma_nu(0.0, 3.0).unwrap();
        assert!(matches!(
            perturb(&lat, &spec, &PerturbationSpec::Zero),
            Err(Error::UndefinedPerturbation(_))
        ));
    }

    #[test]
    fn table_requires_coverage_or_default() {
        let s = gen_gamma_nu(0.0, 2.0).unwrap();
        let entries = vec![TableEntry {
            base: [1.0, 0.0],
            value: 0.1,
        }];
        let strict = PerturbationSpec::Table {
            entries: entries.clone(),
            default: None,
        };
        assert!(matches!(
            perturb(&s, &strict, &PerturbationSpec::Zero),
            Err(Error::UndefinedPerturbation(_))
        ));
        let lax = PerturbationSpec::Table {
            entries,
            default: Some(0.0),
        };
        let p = perturb(&s, &lax, &PerturbationSpec::Zero).unwrap();
        let moved = p.entries().iter().filter(|e| !e.is_identity()).count();
        assert_eq!(moved, 1);
    }

    #[test]
    fn exact_collision_is_an_error() {
        let dup = PerturbedSet::from_entries(
            Family::Custom,
            2.0,
            vec![
                PerturbedEntry::new(Complex64::new(1.0, 0.0), 0.0, 0.0),
                PerturbedEntry {
                    base: Complex64::new(2.0, 0.0),
                    delta: -std::f64::consts::LN_2,
                    theta: 0.0,
                    lambda: Complex64::new(1.0, 0.0),
                },
            ],
        );
        assert!(matches!(dup, Err(Error::Collision(_))));
    }

    #[test]
    fn rotation_at_origin_is_rejected() {
        let s = gen_gamma_nu(0.0, 1.0).unwrap();
        let theta = PerturbationSpec::Table {
            entries: vec![TableEntry {
                base: [0.0, 0.0],
                value: 0.3,
            }],
            default: Some(0.0),
        };
        assert!(perturb(&s, &PerturbationSpec::Zero, &theta).is_err());
    }

    #[test]
    fn overflowing_dilation_is_rejected() {
        // γ = 10⁻³ on the shifted row makes δ = 10⁶
        let s = gen_gamma_nu(1e-3, 2.0).unwrap();
        let err = perturb(&s, &PerturbationSpec::InverseSquare { c: 1.0 }, &PerturbationSpec::Zero);
        assert!(matches!(err, Err(Error::InvalidParameter(_))));
    }
}
