//! Analytic Morse potentials, their bound spectra and eigenfunctions.
//!
//! Everything downstream (overlap spectra, pulse design, propagation,
//! free-evolution phase rotation) consumes the closed forms implemented
//! here, so this module carries the tightest invariants in the crate:
//! grid-sampled eigenfunctions are normalized to 1e-9 and mutually
//! orthogonal to below 1e-6.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::RadialGrid;
use crate::Scalar;

/// Fraction-of-peak amplitude permitted at a grid boundary before a level
/// counts as truncated.
const BOUNDARY_AMPLITUDE: f64 = 1.0e-8;

/// Norm fraction allowed outside the grid (`morse_wavefunction` error
/// threshold).
const TRUNCATION_NORM_LIMIT: f64 = 1.0e-6;

/// One electronic surface: `V(r) = T_e + D_e (1 − e^{−a(r−r_e)})²`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MorsePotential<T> {
    /// Well depth D_e (energy above the minimum at dissociation).
    pub dissociation_energy: T,
    /// Width parameter a (inverse length); larger is steeper.
    pub width: T,
    /// Equilibrium distance r_e.
    pub equilibrium_distance: T,
    /// Electronic offset T_e of the well minimum (0 for the ground surface).
    pub electronic_offset: T,
    /// Reduced mass μ of the vibrating pair.
    pub reduced_mass: T,
}

impl<T: Scalar> MorsePotential<T> {
    pub fn new(
        dissociation_energy: T,
        width: T,
        equilibrium_distance: T,
        electronic_offset: T,
        reduced_mass: T,
    ) -> Result<Self> {
        let p = Self {
            dissociation_energy,
            width,
            equilibrium_distance,
            electronic_offset,
            reduced_mass,
        };
        if !(dissociation_energy > T::zero())
            || !(width > T::zero())
            || !(equilibrium_distance > T::zero())
            || !(reduced_mass > T::zero())
        {
            return Err(Error::InvalidPotential(
                "D_e, a, r_e and the reduced mass must all be positive".into(),
            ));
        }
        if p.bound_level_count() == 0 {
            return Err(Error::InvalidPotential(format!(
                "lambda = {} < 1/2: no bound level",
                p.lambda()
            )));
        }
        Ok(p)
    }

    /// Depth parameter `λ = √(2 μ D_e) / a`; the well holds
    /// `⌊λ − 1/2⌋ + 1` levels.
    pub fn lambda(&self) -> T {
        (T::of(2.0) * self.reduced_mass * self.dissociation_energy).sqrt() / self.width
    }

    /// Harmonic frequency at the well bottom, `ω₀ = a √(2 D_e / μ)`.
    pub fn omega0(&self) -> T {
        self.width * (T::of(2.0) * self.dissociation_energy / self.reduced_mass).sqrt()
    }

    /// Anharmonicity `χ = ω₀² / (4 D_e)`, so `E_v = ω₀ y − χ y²` with
    /// `y = v + 1/2`.
    pub fn anharmonicity(&self) -> T {
        let w = self.omega0();
        w * w / (T::of(4.0) * self.dissociation_energy)
    }

    /// Index of the highest bound level.
    pub fn v_max(&self) -> usize {
        let x = (self.lambda() - T::of(0.5)).to_f64_lossy();
        // Bound levels satisfy v + 1/2 < λ strictly; an exactly half-integer
        // λ puts the marginal level at E = D_e, which is not bound.
        let f = x.floor();
        if x <= 0.0 {
            0 // count()==0 is rejected by the constructor
        } else if x == f {
            (f as usize).saturating_sub(1)
        } else {
            f as usize
        }
    }

    pub fn bound_level_count(&self) -> usize {
        let x = (self.lambda() - T::of(0.5)).to_f64_lossy();
        if x <= 0.0 {
            0
        } else if x == x.floor() {
            x as usize
        } else {
            x.floor() as usize + 1
        }
    }

    /// Bound-level energy above the well minimum:
    /// `E_v = ω₀(v+1/2) − [ω₀(v+1/2)]²/(4 D_e)`.
    pub fn energy(&self, v: usize) -> Result<T> {
        let v_max = self.v_max();
        if v > v_max {
            return Err(Error::UnboundLevel { v, v_max });
        }
        let y = T::of(v as f64 + 0.5) * self.omega0();
        Ok(y - y * y / (T::of(4.0) * self.dissociation_energy))
    }

    /// Energy of level `v` including the electronic offset.
    pub fn absolute_energy(&self, v: usize) -> Result<T> {
        Ok(self.electronic_offset + self.energy(v)?)
    }

    /// Well-relative potential value `D_e (1 − e^{−a(r−r_e)})²`.
    pub fn well_value(&self, r: T) -> T {
        let u = T::one() - (-self.width * (r - self.equilibrium_distance)).exp();
        self.dissociation_energy * u * u
    }

    /// Absolute potential value including the electronic offset.
    pub fn value(&self, r: T) -> T {
        self.electronic_offset + self.well_value(r)
    }

    /// Classical turning points `(r_inner, r_outer)` at well-relative
    /// energy `e`.
    pub fn turning_points(&self, e: T) -> Result<(T, T)> {
        if !(e > T::zero()) || e >= self.dissociation_energy {
            return Err(Error::InvalidPotential(format!(
                "turning points need 0 < E < D_e (got {e})"
            )));
        }
        let s = (e / self.dissociation_energy).sqrt();
        let inner = self.equilibrium_distance - (T::one() + s).ln() / self.width;
        let outer = self.equilibrium_distance - (T::one() - s).ln() / self.width;
        Ok((inner, outer))
    }

    /// Local classical vibration period from the level spacing around
    /// `v_center`: `τ = 2π / [(E_{v+1} − E_{v−1}) / 2]`.
    pub fn vibration_period(&self, v_center: usize) -> Result<T> {
        let v_max = self.v_max();
        if v_center == 0 || v_center + 1 > v_max {
            return Err(Error::PeriodEdge { v: v_center, v_max });
        }
        let spacing = (self.energy(v_center + 1)? - self.energy(v_center - 1)?) / T::of(2.0);
        Ok(T::TAU() / spacing)
    }

    /// Closed-form eigenfunction of level `v` sampled on `grid`, normalized
    /// to `Σ|ψ|²Δr = 1` and signed positive at the inner turning point.
    pub fn wavefunction(&self, v: usize, grid: &RadialGrid<T>) -> Result<VibrationalLevel<T>> {
        let v_max = self.v_max();
        if v > v_max {
            return Err(Error::UnboundLevel { v, v_max });
        }
        let lambda = self.lambda();
        let alpha = T::of(2.0) * lambda - T::of(2.0 * v as f64) - T::one();
        let exponent = lambda - T::of(v as f64) - T::of(0.5);

        let n = grid.len();
        let mut ln_mag = vec![T::neg_infinity(); n];
        let mut sign = vec![T::one(); n];
        let mut ln_peak = T::neg_infinity();
        for (j, r) in grid.points().enumerate() {
            let z = T::of(2.0) * lambda * (-self.width * (r - self.equilibrium_distance)).exp();
            let (lag, lag_ln_scale) = guarded_laguerre(v, alpha, z);
            if lag == T::zero() {
                ln_mag[j] = T::neg_infinity();
                continue;
            }
            let ln = exponent * z.ln() - z / T::of(2.0) + lag.abs().ln() + lag_ln_scale;
            ln_mag[j] = ln;
            sign[j] = if lag < T::zero() { -T::one() } else { T::one() };
            if ln > ln_peak {
                ln_peak = ln;
            }
        }

        // Deep repulsive-side asymptote of L_v carries (−1)^v; flipping it
        // out pins the lobe at the inner turning point positive.
        let parity = if v % 2 == 1 { -T::one() } else { T::one() };

        let mut samples: Vec<T> = (0..n)
            .map(|j| {
                if ln_mag[j] == T::neg_infinity() {
                    T::zero()
                } else {
                    parity * sign[j] * (ln_mag[j] - ln_peak).exp()
                }
            })
            .collect();

        let dr = grid.weight();
        let norm2: T = samples.iter().map(|&x| x * x).sum::<T>() * dr;
        if !(norm2 > T::zero()) {
            return Err(Error::GridTruncation {
                lost: 1.0,
                limit: TRUNCATION_NORM_LIMIT,
            });
        }
        let inv = norm2.sqrt().recip();
        for s in samples.iter_mut() {
            *s = *s * inv;
        }

        let level = VibrationalLevel {
            potential_id: self.fingerprint(),
            v,
            energy: self.energy(v)?,
            grid: grid.clone(),
            samples,
        };

        let lost = level.truncation_estimate(self);
        if lost > T::of(TRUNCATION_NORM_LIMIT) {
            return Err(Error::GridTruncation {
                lost: lost.to_f64_lossy(),
                limit: TRUNCATION_NORM_LIMIT,
            });
        }
        Ok(level)
    }

    /// Numeric identity for cross-checking that two levels came from the
    /// same potential.
    pub fn fingerprint(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        for x in [
            self.dissociation_energy,
            self.width,
            self.equilibrium_distance,
            self.electronic_offset,
            self.reduced_mass,
        ] {
            x.to_f64_lossy().to_bits().hash(&mut h);
        }
        h.finish()
    }

    /// WKB boundary for level `v`: walks outward (or inward) from the
    /// turning point until the decaying amplitude drops to
    /// [`BOUNDARY_AMPLITUDE`] of its peak.
    fn wkb_boundary(&self, v: usize, outward: bool) -> Result<T> {
        let e = self.energy(v)?;
        let (inner, outer) = self.turning_points(e)?;
        let target = T::of(-(BOUNDARY_AMPLITUDE.ln())); // ∫κ dr budget
        let step = T::of(0.02) / self.width;
        let two_mu = T::of(2.0) * self.reduced_mass;
        let mut r = if outward { outer } else { inner };
        let mut acc = T::zero();
        let mut kappa_prev = T::zero();
        for _ in 0..100_000 {
            let r_next = if outward { r + step } else { r - step };
            let dv = self.well_value(r_next) - e;
            let kappa = if dv > T::zero() {
                (two_mu * dv).sqrt()
            } else {
                T::zero()
            };
            acc += (kappa + kappa_prev) / T::of(2.0) * step;
            kappa_prev = kappa;
            r = r_next;
            if acc >= target {
                return Ok(r);
            }
            if !outward && r <= step {
                return Ok(step); // hard wall close to r = 0
            }
        }
        Ok(r)
    }
}

/// Smallest grid that holds every `(potential, v)` entry: spans all
/// classical turning points with at least 10% margin per side and reaches
/// the 1e-8-of-peak amplitude contour of each level.
pub fn auto_grid<T: Scalar>(
    levels: &[(&MorsePotential<T>, usize)],
    n_points: usize,
) -> Result<RadialGrid<T>> {
    if levels.is_empty() {
        return Err(Error::EmptyWindow);
    }
    let mut tp_lo = T::infinity();
    let mut tp_hi = T::neg_infinity();
    let mut lo = T::infinity();
    let mut hi = T::neg_infinity();
    for &(p, v) in levels {
        let e = p.energy(v)?;
        let (inner, outer) = p.turning_points(e)?;
        tp_lo = tp_lo.min(inner);
        tp_hi = tp_hi.max(outer);
        lo = lo.min(p.wkb_boundary(v, false)?);
        hi = hi.max(p.wkb_boundary(v, true)?);
    }
    let margin = (tp_hi - tp_lo) * T::of(0.1);
    lo = lo.min(tp_lo - margin).max(T::of(1e-6));
    hi = hi.max(tp_hi + margin);
    RadialGrid::new(lo, hi, n_points)
}

/// Generalized Laguerre `L_v^{(α)}(z)` by the three-term recurrence, with
/// rescaling so intermediate terms stay finite at high `v` and large `z`.
/// Returns `(value_scaled, ln_scale)` with the true value
/// `value_scaled · e^{ln_scale}`.
fn guarded_laguerre<T: Scalar>(v: usize, alpha: T, z: T) -> (T, T) {
    if v == 0 {
        return (T::one(), T::zero());
    }
    let mut lkm1 = T::one();
    let mut lk = T::one() + alpha - z;
    let mut ln_scale = T::zero();
    let big = T::max_value().sqrt() * T::of(1e-6);
    for k in 1..v {
        let kf = T::of(k as f64);
        let next = ((T::of(2.0) * kf + T::one() + alpha - z) * lk - (kf + alpha) * lkm1)
            / (kf + T::one());
        lkm1 = lk;
        lk = next;
        let m = lk.abs().max(lkm1.abs());
        if m > big {
            lkm1 = lkm1 / big;
            lk = lk / big;
            ln_scale += big.ln();
        }
    }
    (lk, ln_scale)
}

/// Bound eigenstate of a Morse potential sampled on `grid`.
///
/// Samples are real (Morse eigenfunctions are), signed positive at the
/// inner turning point.
#[derive(Clone, Debug)]
pub struct VibrationalLevel<T> {
    pub potential_id: u64,
    pub v: usize,
    /// Energy above the potential minimum.
    pub energy: T,
    pub grid: RadialGrid<T>,
    pub samples: Vec<T>,
}

impl<T: Scalar> VibrationalLevel<T> {
    /// `Σ ψ² Δr` (should be 1 to 1e-9).
    pub fn norm_squared(&self) -> T {
        self.samples.iter().map(|&x| x * x).sum::<T>() * self.grid.weight()
    }

    /// Number of interior sign changes, ignoring sub-threshold tails.
    pub fn node_count(&self) -> usize {
        let peak = self
            .samples
            .iter()
            .fold(T::zero(), |m, &x| m.max(x.abs()));
        let floor = peak * T::of(1e-6);
        let mut nodes = 0;
        let mut last = T::zero();
        for &x in &self.samples {
            if x.abs() < floor {
                continue;
            }
            if last != T::zero() && x.signum() != last.signum() {
                nodes += 1;
            }
            last = x;
        }
        nodes
    }

    /// Estimated norm fraction lost outside the grid, from the WKB decay
    /// rate at both boundaries.
    pub fn truncation_estimate(&self, potential: &MorsePotential<T>) -> T {
        let two_mu = T::of(2.0) * potential.reduced_mass;
        let mut lost = T::zero();
        for (idx, r) in [(0usize, self.grid.r_min()), (self.samples.len() - 1, self.grid.r_max())]
        {
            let amp2 = self.samples[idx] * self.samples[idx];
            let dv = potential.well_value(r) - self.energy;
            if dv > T::zero() {
                let kappa = (two_mu * dv).sqrt();
                lost += amp2 / (T::of(2.0) * kappa);
            } else {
                // Boundary inside the classically allowed region: the grid
                // cannot contain this level at all.
                lost += amp2 * (self.grid.r_max() - self.grid.r_min());
                lost += T::of(1.0);
            }
        }
        lost
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// μ=1, D_e=8, a=1, r_e=2 → λ=4, ω₀=4: four bound levels at
    /// 1.875, 4.875, 6.875, 7.875.
    fn toy() -> MorsePotential<f64> {
        MorsePotential::new(8.0, 1.0, 2.0, 0.0, 1.0).unwrap()
    }

    #[test]
    fn toy_spectrum_closed_form() {
        let p = toy();
        assert_eq!(p.bound_level_count(), 4);
        assert!((p.energy(0).unwrap() - 1.875).abs() < 1e-12);
        assert!((p.energy(1).unwrap() - 4.875).abs() < 1e-12);
        assert!((p.energy(2).unwrap() - 6.875).abs() < 1e-12);
        assert!((p.energy(3).unwrap() - 7.875).abs() < 1e-12);
        assert!(p.energy(3).unwrap() < p.dissociation_energy);
        assert!(matches!(
            p.energy(4),
            Err(Error::UnboundLevel { v: 4, v_max: 3 })
        ));
    }

    #[test]
    fn shallow_well_has_single_level() {
        // λ = 0.6
        let p = MorsePotential::new(0.18, 1.0, 2.0, 0.0, 1.0).unwrap();
        assert_eq!(p.bound_level_count(), 1);
        assert!(p.energy(1).is_err());
    }

    #[test]
    fn no_bound_level_is_rejected() {
        assert!(MorsePotential::<f64>::new(0.02, 1.0, 2.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn toy_period_from_level_spacing() {
        let p = toy();
        let tau = p.vibration_period(1).unwrap();
        assert!((tau - std::f64::consts::TAU / 2.5).abs() < 1e-12);
        assert!(p.vibration_period(0).is_err());
        assert!(p.vibration_period(3).is_err());
    }

    #[test]
    fn harmonic_limit_period() {
        // D_e → large at fixed ω₀ = 1: τ → 2π within 0.1%.
        let de = 5.0e4_f64;
        let mu = 1.0;
        let w0 = 1.0;
        let a = w0 * (mu / (2.0 * de)).sqrt();
        let p = MorsePotential::new(de, a, 5.0, 0.0, mu).unwrap();
        let tau = p.vibration_period(1).unwrap();
        assert!((tau - std::f64::consts::TAU).abs() / std::f64::consts::TAU < 1e-3);
    }

    #[test]
    fn period_grows_with_v() {
        let p = toy();
        let t1 = p.vibration_period(1).unwrap();
        let t2 = p.vibration_period(2).unwrap();
        assert!(t2 > t1);
    }

    #[test]
    fn ground_state_is_nodeless_and_normalized() {
        let p = toy();
        let g = auto_grid(&[(&p, 0)], 1024).unwrap();
        let psi = p.wavefunction(0, &g).unwrap();
        assert_eq!(psi.node_count(), 0);
        assert!((psi.norm_squared() - 1.0).abs() < 1e-9);
        // single maximum near r_e
        let peak_j = psi
            .samples
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.abs().partial_cmp(&b.1.abs()).unwrap())
            .unwrap()
            .0;
        let r_peak = g.point(peak_j);
        assert!((r_peak - p.equilibrium_distance).abs() < 0.2);
    }

    #[test]
    fn node_count_matches_index() {
        let p = toy();
        let g = auto_grid(&[(&p, 3)], 2048).unwrap();
        for v in 0..=3 {
            let psi = p.wavefunction(v, &g).unwrap();
            assert_eq!(psi.node_count(), v, "v = {v}");
        }
    }

    #[test]
    fn inner_lobe_positive() {
        let p = toy();
        let g = auto_grid(&[(&p, 3)], 2048).unwrap();
        for v in 0..=3 {
            let psi = p.wavefunction(v, &g).unwrap();
            let peak = psi.samples.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
            let first_significant = psi
                .samples
                .iter()
                .find(|&&x| x.abs() > 1e-3 * peak)
                .copied()
                .unwrap();
            assert!(first_significant > 0.0, "v = {v}");
        }
    }

    #[test]
    fn truncated_grid_is_reported() {
        let p = toy();
        let tight = RadialGrid::new(1.4, 3.2, 256).unwrap();
        assert!(matches!(
            p.wavefunction(3, &tight),
            Err(Error::GridTruncation { .. })
        ));
    }

    #[test]
    fn orthonormality_on_shared_grid() {
        let p = toy();
        let g = auto_grid(&[(&p, 3)], 4096).unwrap();
        let levels: Vec<_> = (0..=3).map(|v| p.wavefunction(v, &g).unwrap()).collect();
        let dr = g.weight();
        for a in &levels {
            for b in &levels {
                let s: f64 = a
                    .samples
                    .iter()
                    .zip(&b.samples)
                    .map(|(&x, &y)| x * y)
                    .sum::<f64>()
                    * dr;
                let expect = if a.v == b.v { 1.0 } else { 0.0 };
                assert!(
                    (s - expect).abs() < 1e-7,
                    "<{}|{}> = {s}",
                    a.v,
                    b.v
                );
            }
        }
    }

    #[test]
    fn f32_instantiation_works() {
        let p = MorsePotential::<f32>::new(8.0, 1.0, 2.0, 0.0, 1.0).unwrap();
        assert_eq!(p.bound_level_count(), 4);
        assert!((p.energy(0).unwrap() - 1.875).abs() < 1e-5);
        let g = auto_grid(&[(&p, 1)], 512).unwrap();
        let psi = p.wavefunction(1, &g).unwrap();
        assert!((psi.norm_squared() - 1.0).abs() < 1e-5);
        assert_eq!(psi.node_count(), 1);
    }
}
