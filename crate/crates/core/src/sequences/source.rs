use super::{Family, PerturbedSet, PointSet};
use num_complex::Complex64;

/// Anything that can enumerate its points of modulus at most `r` in
/// canonical order (modulus, then principal argument).
///
/// Streaming sources let radial statistics run on windows far larger than
/// what is worth materializing.
pub trait PointSource {
    fn family(&self) -> Family;

    /// Call `f(z, multiplicity)` for every point with `|z| ≤ radius`.
    fn for_each_within<F: FnMut(Complex64, u32)>(&self, radius: f64, f: F);

    /// Largest modulus the source can enumerate (`∞` for unbounded streams).
    fn extent(&self) -> f64;
}

impl PointSource for PointSet {
    fn family(&self) -> Family {
        PointSet::family(self)
    }

    fn for_each_within<F: FnMut(Complex64, u32)>(&self, radius: f64, mut f: F) {
        for p in self.points() {
            if p.z.norm() > radius {
                break;
            }
            f(p.z, p.multiplicity);
        }
    }

    fn extent(&self) -> f64 {
        self.points().last().map_or(0.0, |p| p.z.norm())
    }
}

impl PointSource for PerturbedSet {
    fn family(&self) -> Family {
        PerturbedSet::family(self)
    }

    /// Enumerates the perturbed points `λ`; ordering follows the canonical
    /// order of the perturbed points.
    fn for_each_within<F: FnMut(Complex64, u32)>(&self, radius: f64, mut f: F) {
        let set = self.to_point_set();
        set.for_each_within(radius, &mut f);
    }

    fn extent(&self) -> f64 {
        self.lambdas().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Which axis sequence a [`ShellStream`] enumerates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShellFamily {
    /// `{±√(2n), ±i√(2n)}`.
    ZerosOfS,
    /// `{±√(2n), ±i√(2n)} ∪ {±1}`.
    Als,
}

/// Which axes a [`ShellStream`] keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axes {
    Both,
    RealOnly,
    ImaginaryOnly,
}

/// Unbounded, unmaterialized stream of the axis shells.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShellStream {
    pub kind: ShellFamily,
    pub axes: Axes,
}

impl ShellStream {
    pub fn new(kind: ShellFamily, axes: Axes) -> Self {
        Self { kind, axes }
    }
}

impl PointSource for ShellStream {
    fn family(&self) -> Family {
        match (self.kind, self.axes) {
            (ShellFamily::ZerosOfS, Axes::Both) => Family::ZerosOfS,
            (ShellFamily::Als, Axes::Both) => Family::Als,
            _ => Family::Custom,
        }
    }

    fn for_each_within<F: FnMut(Complex64, u32)>(&self, radius: f64, mut f: F) {
        let real = self.axes != Axes::ImaginaryOnly;
        let imag = self.axes != Axes::RealOnly;
        if self.kind == ShellFamily::Als && real && radius >= 1.0 {
            f(Complex64::new(1.0, 0.0), 1);
            f(Complex64::new(-1.0, 0.0), 1);
        }
        if !(radius >= 0.0) {
            return;
        }
        let mut n: u64 = 1;
        loop {
            let a = ((2 * n) as f64).sqrt();
            if a > radius {
                break;
            }
            // arguments -π/2, 0, π/2, π
            if imag {
                f(Complex64::new(0.0, -a), 1);
            }
            if real {
                f(Complex64::new(a, 0.0), 1);
            }
            if imag {
                f(Complex64::new(0.0, a), 1);
            }
            if real {
                f(Complex64::new(-a, 0.0), 1);
            }
            n += 1;
        }
    }

    fn extent(&self) -> f64 {
        f64::INFINITY
    }
}
