use super::{Family, PointSet};
use crate::error::{Error, Result};
use num_complex::Complex64;

/// Index `(m, n)` of the shifted lattice together with the shift `nu`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LatticeIndex {
    pub m: i64,
    pub n: i64,
    pub nu: f64,
}

impl LatticeIndex {
    pub fn new(m: i64, n: i64, nu: f64) -> Self {
        Self { m, n, nu }
    }

    /// `m + in` off the real axis, `m` on the negative real axis and `m + ν`
    /// for `m ≥ 0` on the real axis (so `(0, 0)` maps to `ν`).
    pub fn gamma(&self) -> Complex64 {
        if self.n != 0 {
            Complex64::new(self.m as f64, self.n as f64)
        } else if self.m < 0 {
            Complex64::new(self.m as f64, 0.0)
        } else {
            Complex64::new(self.m as f64 + self.nu, 0.0)
        }
    }
}

fn check_radius(radius: f64, min: f64) -> Result<()> {
    if !(radius.is_finite() && radius >= min) {
        return Err(Error::InvalidParameter(format!(
            "window radius must be a finite number >= {min}, got {radius}"
        )));
    }
    Ok(())
}

/// Points of `Γ_ν` with modulus at most `radius`.
pub fn gen_gamma_nu(nu: f64, radius: f64) -> Result<PointSet> {
    if !(0.0..=1.0).contains(&nu) {
        return Err(Error::InvalidParameter(format!("nu must lie in [0, 1], got {nu}")));
    }
    check_radius(radius, 1.0)?;
    let k = radius.floor() as i64;
    let mut zs = Vec::with_capacity((std::f64::consts::PI * radius * radius * 1.1) as usize + 8);
    for n in -k..=k {
        for m in -k - 1..=k {
            let g = LatticeIndex::new(m, n, nu).gamma();
            if g.norm() <= radius {
                zs.push(g);
            }
        }
    }
    PointSet::new(Family::GammaNu { nu }, radius, zs)
}

fn axis_shells(radius: f64) -> impl Iterator<Item = Complex64> {
    let shells = (radius * radius / 2.0).floor() as u64;
    (1..=shells).flat_map(|n| {
        let a = ((2 * n) as f64).sqrt();
        [
            Complex64::new(a, 0.0),
            Complex64::new(-a, 0.0),
            Complex64::new(0.0, a),
            Complex64::new(0.0, -a),
        ]
    })
}

/// `{±√(2n), ±i√(2n) : 2n ≤ R²} ∪ {±1}`.
pub fn gen_als(radius: f64) -> Result<PointSet> {
    check_radius(radius, 1.0)?;
    let ones = [Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)];
    PointSet::new(Family::Als, radius, ones.into_iter().chain(axis_shells(radius)))
}

/// Zeros of `sin(πz²/2)/z²` with modulus at most `radius` (the origin is a
/// removable singularity, not a zero).
pub fn gen_zeros_of_s(radius: f64) -> Result<PointSet> {
    check_radius(radius, std::f64::consts::SQRT_2)?;
    PointSet::new(Family::ZerosOfS, radius, axis_shells(radius))
}

/// `{n^exponent : 1 ≤ n ≤ count}` on the positive real axis.
pub fn gen_power_sequence(exponent: f64, count: u64) -> Result<PointSet> {
    if !(exponent > 0.0 && exponent.is_finite()) || count == 0 {
        return Err(Error::InvalidParameter(
            "power sequence needs a positive exponent and count".into(),
        ));
    }
    let radius = (count as f64).powf(exponent);
    PointSet::new(
        Family::Custom,
        radius,
        (1..=count).map(|n| Complex64::new((n as f64).powf(exponent), 0.0)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn as_set(s: &PointSet) -> HashSet<(i64, i64)> {
        s.zs()
            .map(|z| ((z.re * 1e9).round() as i64, (z.im * 1e9).round() as i64))
            .collect()
    }

    #[test]
    fn gamma_zero_is_gauss_integers() {
        for r in [1.0, 1.5, 2.0, 3.7, 10.0, 50.0] {
            let s = gen_gamma_nu(0.0, r).unwrap();
            let k = r as i64 + 1;
            let mut expect = HashSet::new();
            for a in -k..=k {
                for b in -k..=k {
                    if ((a * a + b * b) as f64) <= r * r {
                        expect.insert((a * 1_000_000_000, b * 1_000_000_000));
                    }
                }
            }
            assert_eq!(as_set(&s), expect, "R={r}");
            assert!(s.points().iter().all(|p| p.multiplicity == 1));
        }
    }

    #[test]
    fn small_windows() {
        let s = gen_gamma_nu(0.0, 1.5).unwrap();
        assert_eq!(s.len(), 9);
        assert!(s.origin_included());
        let s = gen_gamma_nu(1.0, 1.5).unwrap();
        assert_eq!(s.len(), 8);
        assert!(!s.contains(Complex64::new(0.0, 0.0)));
        let s = gen_gamma_nu(0.5, 2.0).unwrap();
        for x in [0.5, 1.5, -1.0, -2.0] {
            assert!(s.contains(Complex64::new(x, 0.0)), "missing {x}");
        }
        assert!(!s.contains(Complex64::new(0.0, 0.0)));
        assert!(!s.contains(Complex64::new(1.0, 0.0)));
        assert!(gen_gamma_nu(1.5, 2.0).is_err());
        assert!(gen_gamma_nu(0.5, 0.5).is_err());
    }

    #[test]
    fn lattice_index_mapping() {
        assert_eq!(LatticeIndex::new(0, 0, 0.3).gamma(), Complex64::new(0.3, 0.0));
        assert_eq!(LatticeIndex::new(-2, 0, 0.3).gamma(), Complex64::new(-2.0, 0.0));
        assert_eq!(LatticeIndex::new(2, -1, 0.3).gamma(), Complex64::new(2.0, -1.0));
    }

    #[test]
    fn als_windows_and_counts() {
        let s = gen_als(1.0).unwrap();
        assert_eq!(s.len(), 2);
        let s = gen_als(2.0).unwrap();
        assert_eq!(s.len(), 10);
        for r in [1.0, 1.3, 2.0, 5.5, 10.0, 31.7] {
            let n = gen_als(r).unwrap().len();
            // brute enumeration of shells
            let mut count = 2;
            let mut k = 1;
            while (2 * k) as f64 <= r * r {
                count += 4;
                k += 1;
            }
            assert_eq!(n, count);
            assert_eq!(n as u64, 4 * (r * r / 2.0).floor() as u64 + 2);
        }
    }

    #[test]
    fn zeros_of_s_windows() {
        let s = gen_zeros_of_s(2.0).unwrap();
        assert_eq!(s.len(), 8);
        let s = gen_zeros_of_s(std::f64::consts::SQRT_2).unwrap();
        assert_eq!(s.len(), 4);
        assert!(gen_zeros_of_s(1.0).is_err());
    }
}
