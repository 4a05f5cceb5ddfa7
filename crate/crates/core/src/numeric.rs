//! Small numerical kernels shared by the rest of the crate: exact summation,
//! log-sum-exp, least squares, Gauss-Legendre rules and power-series tails.

use std::f64::consts::PI;

/// Shewchuk-style exact accumulator; `value()` is the correctly rounded sum
/// of everything added, independent of the order of addition.
#[derive(Debug, Clone, Default)]
pub struct ExactSum {
    partials: Vec<f64>,
}

impl ExactSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, mut x: f64) {
        let mut i = 0;
        for j in 0..self.partials.len() {
            let mut y = self.partials[j];
            if x.abs() < y.abs() {
                std::mem::swap(&mut x, &mut y);
            }
            let hi = x + y;
            let lo = y - (hi - x);
            if lo != 0.0 {
                self.partials[i] = lo;
                i += 1;
            }
            x = hi;
        }
        self.partials.truncate(i);
        self.partials.push(x);
    }

    pub fn value(&self) -> f64 {
        let p = &self.partials;
        let mut n = p.len();
        if n == 0 {
            return 0.0;
        }
        n -= 1;
        let mut hi = p[n];
        let mut lo = 0.0;
        while n > 0 {
            let x = hi;
            n -= 1;
            let y = p[n];
            hi = x + y;
            let yr = hi - x;
            lo = y - yr;
            if lo != 0.0 {
                break;
            }
        }
        // round-half-even correction across the remaining partials
        if n > 0 && ((lo < 0.0 && p[n - 1] < 0.0) || (lo > 0.0 && p[n - 1] > 0.0)) {
            let y = lo * 2.0;
            let x = hi + y;
            let yr = x - hi;
            if y == yr {
                hi = x;
            }
        }
        hi
    }
}

impl Extend<f64> for ExactSum {
    fn extend<T: IntoIterator<Item = f64>>(&mut self, iter: T) {
        for x in iter {
            self.add(x);
        }
    }
}

/// Exact (correctly rounded) sum of a sequence of floats.
pub fn exact_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut acc = ExactSum::new();
    acc.extend(values);
    acc.value()
}

/// `log(sum(exp(x)))`, returning `-inf` for an empty or all `-inf` input.
pub fn log_sum_exp(values: &[f64]) -> f64 {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    if max == f64::INFINITY {
        return f64::INFINITY;
    }
    let s: f64 = values.iter().map(|&v| (v - max).exp()).sum();
    max + s.ln()
}

/// `log(exp(a) + exp(b))`.
pub fn log_add_exp(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if lo == f64::NEG_INFINITY {
        return hi;
    }
    hi + (lo - hi).exp().ln_1p()
}

/// Ordinary least-squares line `y = intercept + slope * x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual.
    pub residual: f64,
}

pub fn fit_line(xs: &[f64], ys: &[f64]) -> Option<LineFit> {
    let n = xs.len();
    if n < 2 || ys.len() != n {
        return None;
    }
    let mx = xs.iter().sum::<f64>() / n as f64;
    let my = ys.iter().sum::<f64>() / n as f64;
    let (mut sxx, mut sxy) = (0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    Some(LineFit {
        slope,
        intercept,
        residual: (ss / n as f64).sqrt(),
    })
}

/// Least squares for `y ≈ X c` with a handful of columns, solved through the
/// normal equations with partial pivoting. Rows are feature vectors.
pub fn least_squares(rows: &[Vec<f64>], ys: &[f64]) -> Option<Vec<f64>> {
    let k = rows.first()?.len();
    if rows.len() < k || rows.len() != ys.len() {
        return None;
    }
    let mut a = vec![vec![0.0; k + 1]; k];
    for (row, y) in rows.iter().zip(ys) {
        for i in 0..k {
            for j in 0..k {
                a[i][j] += row[i] * row[j];
            }
            a[i][k] += row[i] * y;
        }
    }
    for col in 0..k {
        let piv = (col..k).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, piv);
        for r in 0..k {
            if r != col {
                let f = a[r][col] / a[col][col];
                for c in col..=k {
                    a[r][c] -= f * a[col][c];
                }
            }
        }
    }
    Some((0..k).map(|i| a[i][k] / a[i][i]).collect())
}

/// Gauss-Legendre nodes and weights on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "Gauss-Legendre order must be positive");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p1, mut p2) = (1.0, 0.0);
            for j in 1..=n {
                let p3 = p2;
                p2 = p1;
                p1 = ((2 * j - 1) as f64 * z * p2 - (j - 1) as f64 * p3) / j as f64;
            }
            dp = n as f64 * (z * p1 - p2) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() <= 1e-15 {
                break;
            }
        }
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// `sum_{m >= start} (m + shift)^(-s)` for `s > 1` and `start + shift > 0`.
///
/// Direct summation over the first 32 terms, then Euler-Maclaurin with four
/// Bernoulli corrections.
pub fn power_tail(s: f64, shift: f64, start: u64) -> f64 {
    debug_assert!(s > 1.0);
    const DIRECT: u64 = 32;
    let mut acc = ExactSum::new();
    for m in start..start + DIRECT {
        acc.add((m as f64 + shift).powf(-s));
    }
    let y = (start + DIRECT) as f64 + shift;
    // sum_{k>=0} f(y+k) = int_y^inf f + f(y)/2 - sum_j B_2j/(2j)! f^(2j-1)(y)
    let f = y.powf(-s);
    acc.add(y.powf(1.0 - s) / (s - 1.0));
    acc.add(f / 2.0);
    const BERNOULLI: [f64; 4] = [1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0];
    let mut fact = 1.0; // (2j)!
    for (j, b) in BERNOULLI.iter().enumerate() {
        let order = 2 * j + 1; // derivative order
        fact *= ((2 * j + 1) * (2 * j + 2)) as f64;
        // f^(order)(y) = (-1)^order s(s+1)...(s+order-1) y^(-s-order)
        let mut rising = 1.0;
        for i in 0..order {
            rising *= s + i as f64;
        }
        let deriv = -rising * y.powf(-s - order as f64);
        acc.add(-b / fact * deriv);
    }
    acc.value()
}

/// Deterministic low-discrepancy point in the unit square (Kronecker
/// sequence with the plastic-number increments).
pub fn kronecker_point(i: usize) -> (f64, f64) {
    const A1: f64 = 0.754_877_666_246_692_7;
    const A2: f64 = 0.569_840_290_998_053_3;
    let t = i as f64 + 0.5;
    ((t * A1).fract(), (t * A2).fract())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_sum_cancels_exactly() {
        let v = [1e16, 1.0, -1e16, 3.0, 0.1, -0.1];
        assert_eq!(exact_sum(v), 4.0);
        let v = [0.25, -0.75, 0.75, -0.25];
        assert_eq!(exact_sum(v), 0.0);
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        for n in 1..=12 {
            let (x, w) = gauss_legendre(n);
            for deg in 0..(2 * n) {
                let q: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32)).sum();
                let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
                assert!((q - exact).abs() < 1e-13, "n={n} deg={deg} q={q}");
            }
        }
    }

    #[test]
    fn power_tail_matches_zeta() {
        // zeta(2) - sum_{m<=10} m^-2, zeta(4) similarly
        let z2 = PI * PI / 6.0;
        let head: f64 = (1..=10).map(|m| 1.0 / (m * m) as f64).sum();
        assert!((power_tail(2.0, 0.0, 11) - (z2 - head)).abs() < 1e-15);
        let z4 = PI.powi(4) / 90.0;
        assert!((power_tail(4.0, 0.0, 1) - z4).abs() < 1e-15);
        // Hurwitz shift: sum_{m>=0} (m+1/2)^-2 = 3 zeta(2)
        assert!((power_tail(2.0, 0.5, 0) - 3.0 * z2).abs() < 1e-13);
    }

    #[test]
    fn line_and_plane_fits() {
        let xs: Vec<f64> = (0..10).map(|i| i as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 2.0 * x - 1.0).collect();
        let f = fit_line(&xs, &ys).unwrap();
        assert!((f.slope - 2.0).abs() < 1e-12 && (f.intercept + 1.0).abs() < 1e-12);
        let rows: Vec<Vec<f64>> = (0..20)
            .map(|i| vec![1.0, i as f64, ((i * 7) % 5) as f64])
            .collect();
        let ys: Vec<f64> = rows.iter().map(|r| 0.5 + 3.0 * r[1] - 2.0 * r[2]).collect();
        let c = least_squares(&rows, &ys).unwrap();
        assert!((c[0] - 0.5).abs() < 1e-10 && (c[1] - 3.0).abs() < 1e-10 && (c[2] + 2.0).abs() < 1e-10);
    }

    #[test]
    fn log_sum_exp_is_overflow_safe() {
        let v = [1000.0, 1000.0];
        assert!((log_sum_exp(&v) - (1000.0 + 2f64.ln())).abs() < 1e-12);
        assert_eq!(log_sum_exp(&[f64::NEG_INFINITY]), f64::NEG_INFINITY);
        assert!((log_add_exp(0.0, 0.0) - 2f64.ln()).abs() < 1e-15);
    }
}
