//! Uniform radial grids shared by eigenfunctions and propagated states.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Scalar;

/// Uniform radial grid with a power-of-two point count.
///
/// Points are `r_j = r_min + j Δr`, `j = 0..n`, with
/// `Δr = (r_max − r_min)/(n − 1)`. The FFT wavenumbers treat the samples as
/// one period of length `n Δr`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadialGrid<T> {
    r_min: T,
    r_max: T,
    n: usize,
}

impl<T: Scalar> RadialGrid<T> {
    pub fn new(r_min: T, r_max: T, n: usize) -> Result<Self> {
        if !(r_max > r_min) {
            return Err(Error::InvalidPotential(format!(
                "grid needs r_max > r_min (got {r_min} .. {r_max})"
            )));
        }
        if n < 2 || !n.is_power_of_two() {
            return Err(Error::InvalidPotential(format!(
                "grid point count must be a power of two >= 2 (got {n})"
            )));
        }
        Ok(Self { r_min, r_max, n })
    }

    pub fn r_min(&self) -> T {
        self.r_min
    }

    pub fn r_max(&self) -> T {
        self.r_max
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> T {
        (self.r_max - self.r_min) / T::of((self.n - 1) as f64)
    }

    pub fn point(&self, j: usize) -> T {
        self.r_min + T::of(j as f64) * self.spacing()
    }

    pub fn points(&self) -> impl Iterator<Item = T> + '_ {
        (0..self.n).map(move |j| self.point(j))
    }

    /// Angular wavenumber associated with FFT bin `j` (wrapped ordering).
    pub fn wavenumber(&self, j: usize) -> T {
        let n = self.n as isize;
        let j = j as isize;
        let wrapped = if j <= n / 2 { j } else { j - n };
        let period = self.spacing() * T::of(self.n as f64);
        T::of(wrapped as f64) * T::TAU() / period
    }

    /// Largest resolvable |k| on this grid.
    pub fn k_max(&self) -> T {
        T::PI() / self.spacing()
    }

    /// Trapezoid-free quadrature weight (plain Riemann sum weight Δr); the
    /// sampled functions decay to ~0 at both ends, so the end correction is
    /// negligible and a uniform weight keeps inner products bilinear.
    pub fn weight(&self) -> T {
        self.spacing()
    }

    /// Numeric identity used to verify operands share a grid.
    pub fn fingerprint(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.r_min.to_f64_lossy().to_bits().hash(&mut h);
        self.r_max.to_f64_lossy().to_bits().hash(&mut h);
        self.n.hash(&mut h);
        h.finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spacing_and_points() {
        let g = RadialGrid::<f64>::new(1.0, 3.0, 4).unwrap();
        assert!((g.spacing() - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(g.points().count(), 4);
        assert!((g.point(3) - 3.0).abs() < 1e-15);
    }

    #[test]
    fn wavenumbers_wrap() {
        let g = RadialGrid::<f64>::new(0.0, 7.0, 8).unwrap();
        assert_eq!(g.wavenumber(0), 0.0);
        assert!(g.wavenumber(5) < 0.0);
        assert!((g.wavenumber(1) + g.wavenumber(7)).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(RadialGrid::<f64>::new(2.0, 1.0, 8).is_err());
        assert!(RadialGrid::<f64>::new(0.0, 1.0, 6).is_err());
    }
}
