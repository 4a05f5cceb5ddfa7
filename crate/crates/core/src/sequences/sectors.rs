use super::PointSet;
use crate::error::{Error, Result};
use crate::logspace::wrap_arg;
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_4, FRAC_PI_8, PI};

/// Closed double cone `|arg z − β| ≤ θ` or `|arg(−z) − β| ≤ θ`, angles
/// compared modulo 2π; the origin belongs to every cone. Accepts `θ = 0`.
pub(crate) fn in_closed_cone(z: Complex64, beta: f64, theta: f64) -> bool {
    if z.norm_sqr() == 0.0 {
        return true;
    }
    let d1 = wrap_arg(z.arg() - beta).abs();
    let d2 = wrap_arg((-z).arg() - beta).abs();
    d1.min(d2) <= theta
}

/// Membership in the sector `S(β, θ)` with `θ ∈ (0, π]`.
pub fn in_sector(z: Complex64, beta: f64, theta: f64) -> Result<bool> {
    if !(theta > 0.0 && theta <= PI) {
        return Err(Error::InvalidParameter(format!(
            "sector half-width must lie in (0, pi], got {theta}"
        )));
    }
    Ok(in_closed_cone(z, beta, theta))
}

/// `k ∈ 0..8` with `−π/8 ≤ arg z − kπ/4 < π/8` (mod 2π); the origin is in 0.
pub fn sector_index(z: Complex64) -> usize {
    if z.norm_sqr() == 0.0 {
        return 0;
    }
    (((z.arg() + FRAC_PI_8) / FRAC_PI_4).floor() as i64).rem_euclid(8) as usize
}

/// The eight one-sided sectors around the directions `kπ/4`.
pub fn sector_partition(set: &PointSet) -> [PointSet; 8] {
    std::array::from_fn(|k| set.filter(|z| sector_index(z) == k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::gen_als;

    #[test]
    fn double_cone() {
        assert!(in_sector(Complex64::new(1.0, 0.0), 0.0, 0.1).unwrap());
        assert!(in_sector(Complex64::new(-1.0, 0.0), 0.0, 0.1).unwrap());
        assert!(!in_sector(Complex64::new(0.0, 1.0), 0.0, 0.1).unwrap());
        assert!(in_sector(Complex64::new(-1.0, -0.05), PI, 0.1).unwrap());
        assert!(in_sector(Complex64::new(1.0, 0.0), 0.0, 0.0).is_err());
    }

    #[test]
    fn indices_on_axes() {
        assert_eq!(sector_index(Complex64::new(1.0, 0.0)), 0);
        assert_eq!(sector_index(Complex64::new(0.0, 1.0)), 2);
        assert_eq!(sector_index(Complex64::new(-1.0, 0.0)), 4);
        assert_eq!(sector_index(Complex64::new(0.0, -1.0)), 6);
        assert_eq!(sector_index(Complex64::new(1.0, 1.0)), 1);
        assert_eq!(sector_index(Complex64::new(1.0, -1.0)), 7);
    }

    #[test]
    fn partition_covers_als() {
        let set = gen_als(10.0).unwrap();
        let parts = sector_partition(&set);
        let total: usize = parts.iter().map(PointSet::len).sum();
        assert_eq!(total, set.len());
        for z in set.zs() {
            let k = sector_index(z);
            assert!(parts[k].contains(z));
            assert_eq!(parts.iter().filter(|p| p.contains(z)).count(), 1);
        }
        assert!(parts[0].zs().all(|z| z.im == 0.0 && z.re > 0.0));
        assert!(parts[2].zs().all(|z| z.re == 0.0 && z.im > 0.0));
        assert!(parts[1].is_empty() && parts[3].is_empty());
        // each part sits in the closed double cone around π/8 + kπ/4 ± (π/8 + ε)
        for (k, part) in parts.iter().enumerate() {
            let beta = k as f64 * FRAC_PI_4;
            assert!(part.zs().all(|z| in_closed_cone(z, beta, FRAC_PI_8 + 1e-3)));
        }
    }
}
