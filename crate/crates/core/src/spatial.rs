//! Uniform-grid index over a finite point cloud.

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Bucket grid for nearest-point and disk queries.
///
/// Cell side is chosen from the bounding box so that a cell holds O(1)
/// points for lattice-like clouds.
#[derive(Clone, Debug)]
pub struct SpatialIndex {
    points: Vec<Complex64>,
    x0: f64,
    y0: f64,
    h: f64,
    cols: i64,
    rows: i64,
    start: Vec<usize>,
    slots: Vec<usize>,
}

impl SpatialIndex {
    pub fn new(points: Vec<Complex64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptySet);
        }
        if points.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::InvalidParameter("non-finite point in index".into()));
        }
        let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for z in &points {
            x0 = x0.min(z.re);
            x1 = x1.max(z.re);
            y0 = y0.min(z.im);
            y1 = y1.max(z.im);
        }
        let n = points.len() as f64;
        let (w, hgt) = (x1 - x0, y1 - y0);
        let mut h = (w * hgt / n).sqrt().max(w.max(hgt) / n);
        if !(h > 0.0) {
            h = 1.0;
        }
        let cols = (w / h).floor() as i64 + 1;
        let rows = (hgt / h).floor() as i64 + 1;
        let mut idx = Self {
            points,
            x0,
            y0,
            h,
            cols,
            rows,
            start: Vec::new(),
            slots: Vec::new(),
        };
        let ncell = (cols * rows) as usize;
        let cell_of: Vec<usize> = idx
            .points
            .iter()
            .map(|&z| {
                let (c, r) = idx.cell(z);
                (r.clamp(0, rows - 1) * cols + c.clamp(0, cols - 1)) as usize
            })
            .collect();
        let mut start = vec![0usize; ncell + 1];
        for &c in &cell_of {
            start[c + 1] += 1;
        }
        for i in 0..ncell {
            start[i + 1] += start[i];
        }
        let mut fill = start.clone();
        let mut slots = vec![0usize; cell_of.len()];
        for (i, &c) in cell_of.iter().enumerate() {
            slots[fill[c]] = i;
            fill[c] += 1;
        }
        idx.start = start;
        idx.slots = slots;
        Ok(idx)
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    fn cell(&self, z: Complex64) -> (i64, i64) {
        let c = ((z.re - self.x0) / self.h).floor();
        let r = ((z.im - self.y0) / self.h).floor();
        (c.clamp(-1e15, 1e15) as i64, r.clamp(-1e15, 1e15) as i64)
    }

    fn bucket(&self, c: i64, r: i64) -> &[usize] {
        if c < 0 || r < 0 || c >= self.cols || r >= self.rows {
            return &[];
        }
        let k = (r * self.cols + c) as usize;
        &self.slots[self.start[k]..self.start[k + 1]]
    }

    /// Index and distance of the point nearest to `z`, skipping index `skip`.
    fn nearest_impl(&self, z: Complex64, skip: Option<usize>) -> Option<(usize, f64)> {
        let (qc, qr) = self.cell(z);
        let dc = (-qc).max(qc - (self.cols - 1)).max(0);
        let dr = (-qr).max(qr - (self.rows - 1)).max(0);
        let kmin = dc.max(dr);
        let kmax = [
            (qc).abs(),
            (qc - self.cols + 1).abs(),
            (qr).abs(),
            (qr - self.rows + 1).abs(),
        ]
        .into_iter()
        .max()
        .unwrap_or(0);
        let mut best: Option<(usize, f64)> = None;
        for k in kmin..=kmax {
            let mut visit = |c: i64, r: i64| {
                for &i in self.bucket(c, r) {
                    if Some(i) == skip {
                        continue;
                    }
                    let d = (self.points[i] - z).norm();
                    if best.map_or(true, |(_, b)| d < b) {
                        best = Some((i, d));
                    }
                }
            };
            if k == 0 {
                visit(qc, qr);
            } else {
                let (cl, ch) = ((qc - k).max(0), (qc + k).min(self.cols - 1));
                for c in cl..=ch {
                    visit(c, qr - k);
                    visit(c, qr + k);
                }
                let (rl, rh) = ((qr - k + 1).max(0), (qr + k - 1).min(self.rows - 1));
                for r in rl..=rh {
                    visit(qc - k, r);
                    visit(qc + k, r);
                }
            }
            // every unvisited point lies at least k·h away
            if let Some((_, b)) = best {
                if b <= k as f64 * self.h {
                    break;
                }
            }
        }
        best
    }

    /// Nearest point to `z`: `(index, distance)`.
    pub fn nearest(&self, z: Complex64) -> (usize, f64) {
        self.nearest_impl(z, None).expect("index is nonempty")
    }

    /// Nearest point other than the one stored at `i`.
    pub fn nearest_other(&self, i: usize) -> Option<(usize, f64)> {
        self.nearest_impl(self.points[i], Some(i))
    }

    pub fn distance(&self, z: Complex64) -> f64 {
        self.nearest(z).1
    }

    /// Indices of points with `|p − z| ≤ r`, in increasing index order.
    pub fn within(&self, z: Complex64, r: f64) -> Vec<usize> {
        let mut out = Vec::new();
        if !(r >= 0.0) {
            return out;
        }
        let (c0, r0) = self.cell(z - Complex64::new(r, r));
        let (c1, r1) = self.cell(z + Complex64::new(r, r));
        for row in r0.max(0)..=r1.min(self.rows - 1) {
            for col in c0.max(0)..=c1.min(self.cols - 1) {
                out.extend(
                    self.bucket(col, row)
                        .iter()
                        .copied()
                        .filter(|&i| (self.points[i] - z).norm() <= r),
                );
            }
        }
        out.sort_unstable();
        out
    }

    /// Whether `z` is stored with identical coordinates.
    pub fn contains_exact(&self, z: Complex64) -> bool {
        let (c, r) = self.cell(z);
        self.bucket(c.clamp(0, self.cols - 1), r.clamp(0, self.rows - 1))
            .iter()
            .any(|&i| self.points[i] == z)
    }

    /// Minimum distance between two stored entries (0 for repeated points).
    pub fn min_pair_distance(&self) -> Result<f64> {
        if self.points.len() < 2 {
            return Err(Error::InsufficientData("separation needs at least 2 points".into()));
        }
        Ok((0..self.points.len())
            .filter_map(|i| self.nearest_other(i).map(|(_, d)| d))
            .fold(f64::INFINITY, f64::min))
    }
}
