use super::EntireFunction;
use crate::error::{Error, Result};
use crate::numeric::fit_line;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

const ANGLES: usize = 1024;
const REFINE_CANDIDATES: usize = 4;

fn log_abs_on_circle<F: EntireFunction + ?Sized>(f: &F, r: f64, t: f64) -> Result<f64> {
    Ok(f.eval(Complex64::from_polar(r, t))?.log_mag())
}

/// `ln M(r, f) = max_{|z|=r} ln|f(z)|` from 1024 equally spaced angles,
/// with golden-section refinement around the best samples.
pub fn log_max_modulus<F: EntireFunction + ?Sized>(f: &F, r: f64) -> Result<f64> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidParameter(format!("radius must be positive, got {r}")));
    }
    let h = TAU / ANGLES as f64;
    let samples = (0..ANGLES)
        .map(|j| log_abs_on_circle(f, r, h * j as f64))
        .collect::<Result<Vec<f64>>>()?;
    let mut order: Vec<usize> = (0..ANGLES).collect();
    order.sort_by(|&a, &b| samples[b].total_cmp(&samples[a]));
    let mut best = samples[order[0]];
    if best == f64::NEG_INFINITY {
        return Ok(best);
    }
    let mut seen: Vec<usize> = Vec::new();
    for &j in &order {
        if seen.len() == REFINE_CANDIDATES {
            break;
        }
        let prev = samples[(j + ANGLES - 1) % ANGLES];
        let next = samples[(j + 1) % ANGLES];
        let is_peak = samples[j] >= prev && samples[j] >= next;
        if !is_peak || seen.iter().any(|&s| s.abs_diff(j).min(ANGLES - s.abs_diff(j)) <= 1) {
            continue;
        }
        seen.push(j);
        best = best.max(golden_max(f, r, h * j as f64 - h, h * j as f64 + h)?);
    }
    Ok(best)
}

fn golden_max<F: EntireFunction + ?Sized>(f: &F, r: f64, mut a: f64, mut b: f64) -> Result<f64> {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let mut fc = log_abs_on_circle(f, r, c)?;
    let mut fd = log_abs_on_circle(f, r, d)?;
    for _ in 0..60 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = log_abs_on_circle(f, r, c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = log_abs_on_circle(f, r, d)?;
        }
        if (b - a).abs() < 1e-12 {
            break;
        }
    }
    Ok(fc.max(fd))
}

/// Order and type estimates from `ln M(r)` on a radius grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrderType {
    /// Slope of `ln ln M` against `ln r`; `ln M` is floored at 1 so bounded
    /// functions report order 0.
    pub rho: f64,
    /// Nearest integer to `rho`.
    pub rho_round: i32,
    /// Mean of `ln M(r) / r^{rho_round}` over the upper half of the grid.
    pub tau: f64,
    pub radii: Vec<f64>,
    pub log_max: Vec<f64>,
}

pub fn order_type_estimate<F: EntireFunction + ?Sized>(f: &F, radii: &[f64]) -> Result<OrderType> {
    if radii.len() < 2 || radii.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter(
            "need at least two strictly increasing radii".into(),
        ));
    }
    if radii[0] < 2.0 {
        return Err(Error::InvalidParameter(format!("radii must be >= 2, got {}", radii[0])));
    }
    let log_max = radii
        .iter()
        .map(|&r| log_max_modulus(f, r))
        .collect::<Result<Vec<f64>>>()?;
    if log_max.iter().all(|m| *m == f64::NEG_INFINITY) {
        return Err(Error::InvalidParameter("function vanishes on every circle".into()));
    }
    let xs: Vec<f64> = radii.iter().map(|r| r.ln()).collect();
    let ys: Vec<f64> = log_max.iter().map(|m| m.max(1.0).ln()).collect();
    let rho = fit_line(&xs, &ys)
        .ok_or_else(|| Error::Numerical("degenerate order fit".into()))?
        .slope;
    let rho_round = rho.round() as i32;
    let top = radii.len() / 2;
    let tau = radii[top..]
        .iter()
        .zip(&log_max[top..])
        .map(|(r, m)| m / r.powi(rho_round))
        .sum::<f64>()
        / (radii.len() - top) as f64;
    Ok(OrderType {
        rho,
        rho_round,
        tau,
        radii: radii.to_vec(),
        log_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::products::ClosedForm;
    use crate::sequences::log_grid;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn g_gamma_order_two_type_half_pi() {
        let radii = log_grid(6.0, 12.0, 8).unwrap();
        let ot = order_type_estimate(&ClosedForm::GGamma, &radii).unwrap();
        assert!((ot.rho - 2.0).abs() < 0.05, "{ot:?}");
        assert_eq!(ot.rho_round, 2);
        assert!((ot.tau / FRAC_PI_2 - 1.0).abs() < 0.05, "{ot:?}");
    }

    #[test]
    fn kernel_order_one() {
        let w = Complex64::new(0.7, 0.4);
        let radii = log_grid(4.0, 40.0, 8).unwrap();
        let ot = order_type_estimate(&ClosedForm::Kernel(w), &radii).unwrap();
        assert!((ot.rho - 1.0).abs() < 0.05, "{ot:?}");
        assert!((ot.tau - PI * w.norm()).abs() < 1e-9);
        // log M(r) = π|w|r exactly
        let m = log_max_modulus(&ClosedForm::Kernel(w), 3.0).unwrap();
        assert!((m - 3.0 * PI * w.norm()).abs() < 1e-12);
    }

    #[test]
    fn constant_order_zero() {
        let radii = log_grid(2.0, 50.0, 6).unwrap();
        let ot = order_type_estimate(&ClosedForm::Constant(Complex64::new(5.0, 0.0)), &radii).unwrap();
        assert!(ot.rho.abs() < 1e-12);
        assert!(order_type_estimate(&ClosedForm::Constant(Complex64::new(0.0, 0.0)), &radii).is_err());
        assert!(order_type_estimate(&ClosedForm::GGamma, &[1.0, 3.0]).is_err());
    }
}
