use super::EntireFunction;
use crate::error::{Error, Result};
use crate::spatial::SpatialIndex;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, TAU};
use std::fmt::Write;

/// Evaluation grid in the plane.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum GridSpec {
    /// `n_re × n_im` nodes on a closed rectangle, real index fastest.
    Rect {
        re: [f64; 2],
        im: [f64; 2],
        n_re: usize,
        n_im: usize,
    },
    /// `n_r` radii on `[r₀, r₁]` times `n_theta` angles `2πj/n_theta`
    /// (offset by half a step so that no node lies on an axis).
    Polar { r: [f64; 2], n_r: usize, n_theta: usize },
}

fn lin(a: f64, b: f64, n: usize, i: usize) -> f64 {
    if n == 1 {
        a
    } else {
        a + (b - a) * i as f64 / (n - 1) as f64
    }
}

impl GridSpec {
    pub fn points(&self) -> Result<Vec<Complex64>> {
        match *self {
            GridSpec::Rect { re, im, n_re, n_im } => {
                if n_re == 0 || n_im == 0 || !(re[0] <= re[1] && im[0] <= im[1]) {
                    return Err(Error::InvalidParameter("empty rectangle grid".into()));
                }
                Ok((0..n_im)
                    .flat_map(|j| {
                        (0..n_re).map(move |i| Complex64::new(lin(re[0], re[1], n_re, i), lin(im[0], im[1], n_im, j)))
                    })
                    .collect())
            }
            GridSpec::Polar { r, n_r, n_theta } => {
                if n_r == 0 || n_theta == 0 || !(0.0 <= r[0] && r[0] <= r[1]) {
                    return Err(Error::InvalidParameter("empty polar grid".into()));
                }
                Ok((0..n_r)
                    .flat_map(|i| {
                        let rad = lin(r[0], r[1], n_r, i);
                        (0..n_theta).map(move |j| {
                            Complex64::from_polar(rad, TAU * (j as f64 + 0.5) / n_theta as f64)
                        })
                    })
                    .collect())
            }
        }
    }

    /// Largest modulus on the grid.
    pub fn extent(&self) -> Result<f64> {
        Ok(self.points()?.iter().map(|z| z.norm()).fold(0.0, f64::max))
    }
}

/// One evaluated grid node.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSample {
    pub z: Complex64,
    pub log_mag: f64,
    pub arg: f64,
    pub weighted_log_mag: f64,
    pub dist: f64,
}

/// Evaluates `f` at every node, with the distance to `zeros`.
pub fn evaluate_grid<F: EntireFunction + ?Sized>(
    f: &F,
    zeros: &[Complex64],
    grid: &GridSpec,
) -> Result<Vec<GridSample>> {
    use rayon::prelude::*;
    let pts = grid.points()?;
    let index = if zeros.is_empty() {
        None
    } else {
        Some(SpatialIndex::new(zeros.to_vec())?)
    };
    pts.par_iter()
        .map(|&z| {
            let v = f.eval(z)?;
            Ok(GridSample {
                z,
                log_mag: v.log_mag(),
                arg: v.arg(),
                weighted_log_mag: v.log_mag() - FRAC_PI_2 * z.norm_sqr(),
                dist: index.as_ref().map_or(f64::INFINITY, |ix| ix.distance(z)),
            })
        })
        .collect()
}

fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:?}")
    } else if x > 0.0 {
        "inf".into()
    } else if x < 0.0 {
        "-inf".into()
    } else {
        "nan".into()
    }
}

/// `z_re,z_im,log_mag,arg,weighted_log_mag,dist` with shortest round-trip floats.
pub fn grid_csv(samples: &[GridSample]) -> String {
    let mut s = String::from("z_re,z_im,log_mag,arg,weighted_log_mag,dist\n");
    for g in samples {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{}",
            num(g.z.re),
            num(g.z.im),
            num(g.log_mag),
            num(g.arg),
            num(g.weighted_log_mag),
            num(g.dist)
        );
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::products::ClosedForm;

    #[test]
    fn grid_shapes() {
        let r = GridSpec::Rect { re: [-1.0, 1.0], im: [0.0, 2.0], n_re: 3, n_im: 2 };
        let p = r.points().unwrap();
        assert_eq!(p.len(), 6);
        assert_eq!(p[1], Complex64::new(0.0, 0.0));
        assert_eq!(p[5], Complex64::new(1.0, 2.0));
        let q = GridSpec::Polar { r: [1.0, 2.0], n_r: 2, n_theta: 4 }.points().unwrap();
        assert_eq!(q.len(), 8);
        assert!(q.iter().all(|z| z.re != 0.0 && z.im != 0.0));
        assert!((GridSpec::Polar { r: [1.0, 2.0], n_r: 2, n_theta: 4 }.extent().unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn csv_marks_zeros() {
        let grid = GridSpec::Rect { re: [0.0, 2f64.sqrt()], im: [0.0, 0.0], n_re: 2, n_im: 1 };
        let zeros = [Complex64::new(2f64.sqrt(), 0.0)];
        let s = evaluate_grid(&ClosedForm::SincS, &zeros, &grid).unwrap();
        let csv = grid_csv(&s);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[2].contains("-inf"), "{}", lines[2]);
        assert!(lines[2].ends_with(",0.0"));
    }
}
