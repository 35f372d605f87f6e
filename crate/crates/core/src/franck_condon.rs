//! Vibrational overlap (Franck-Condon) amplitudes between manifolds under
//! the Condon approximation: a constant electronic dipole multiplies the
//! signed wavefunction overlap.

use crate::error::{Error, Result};
use crate::potentials::{MorsePotential, VibrationalLevel};
use crate::{grid::RadialGrid, Scalar};

/// Signed overlap `⟨a|b⟩ = Σ_j ψ_a(r_j) ψ_b(r_j) Δr` of two levels on one
/// grid. Signs follow the positive-inner-lobe normalization, so repeated
/// runs are reproducible.
pub fn fc_factor<T: Scalar>(a: &VibrationalLevel<T>, b: &VibrationalLevel<T>) -> Result<T> {
    if a.grid != b.grid {
        return Err(Error::MismatchedGrids);
    }
    let dr = a.grid.weight();
    Ok(a.samples
        .iter()
        .zip(&b.samples)
        .map(|(&x, &y)| x * y)
        .sum::<T>()
        * dr)
}

/// One entry of an [`FcSpectrum`]: excited level index, its detuning from
/// the pulse carrier, and the signed dipole amplitude.
#[derive(Clone, Copy, Debug)]
pub struct FcEntry<T> {
    pub v_excited: usize,
    pub detuning: T,
    pub amplitude: T,
}

/// Dipole transition amplitudes from one anchor level to every excited
/// bound level inside a detuning window, on the common detuning axis.
#[derive(Clone, Debug)]
pub struct FcSpectrum<T> {
    pub anchor_potential_id: u64,
    pub anchor_v: usize,
    /// Absolute energy (electronic offset included) of the anchor level.
    pub anchor_energy: T,
    pub excited_potential_id: u64,
    pub electronic_dipole: T,
    pub carrier: T,
    /// Entries sorted by excited index; detunings strictly increasing.
    pub entries: Vec<FcEntry<T>>,
}

impl<T: Scalar> FcSpectrum<T> {
    /// Σ|F|² over the window (bounded by d_el² by completeness).
    pub fn weight(&self) -> T {
        self.entries.iter().map(|e| e.amplitude * e.amplitude).sum()
    }

    /// Linear interpolation of the signed amplitude at detuning `omega`,
    /// zero outside the sampled window.
    pub fn amplitude_at(&self, omega: T) -> T {
        interp_linear(&self.entries, omega, |e| e.amplitude)
    }

    /// Smallest and largest entry detunings.
    pub fn span(&self) -> (T, T) {
        (
            self.entries.first().map(|e| e.detuning).unwrap_or(T::zero()),
            self.entries.last().map(|e| e.detuning).unwrap_or(T::zero()),
        )
    }
}

pub(crate) fn interp_linear<T: Scalar, E>(entries: &[E], omega: T, f: impl Fn(&E) -> T) -> T
where
    E: HasDetuning<T>,
{
    if entries.is_empty() {
        return T::zero();
    }
    let first = entries.first().unwrap().detuning();
    let last = entries.last().unwrap().detuning();
    if omega < first || omega > last {
        return T::zero();
    }
    let mut lo = 0;
    let mut hi = entries.len() - 1;
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if entries[mid].detuning() <= omega {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (w0, w1) = (entries[lo].detuning(), entries[hi].detuning());
    let t = if w1 > w0 { (omega - w0) / (w1 - w0) } else { T::zero() };
    f(&entries[lo]) * (T::one() - t) + f(&entries[hi]) * t
}

pub(crate) trait HasDetuning<T> {
    fn detuning(&self) -> T;
}

impl<T: Copy> HasDetuning<T> for FcEntry<T> {
    fn detuning(&self) -> T {
        self.detuning
    }
}

/// Builds the dipole spectrum from `anchor` into the bound levels of
/// `excited` whose transition detuning from `carrier` lies in
/// `window = (lo, hi)`.
///
/// The detuning of excited level v is
/// `(T_e + E_v) − E_anchor_abs − carrier`.
pub fn fc_spectrum<T: Scalar>(
    anchor: &VibrationalLevel<T>,
    anchor_absolute_energy: T,
    excited: &MorsePotential<T>,
    electronic_dipole: T,
    carrier: T,
    window: (T, T),
    grid: &RadialGrid<T>,
) -> Result<FcSpectrum<T>> {
    if *grid != anchor.grid {
        return Err(Error::MismatchedGrids);
    }
    if !(window.1 > window.0) {
        return Err(Error::EmptyWindow);
    }
    let mut entries = Vec::new();
    for v in 0..excited.bound_level_count() {
        let detuning = excited.absolute_energy(v)? - anchor_absolute_energy - carrier;
        if detuning < window.0 || detuning > window.1 {
            continue;
        }
        let psi = excited.wavefunction(v, grid)?;
        let amplitude = electronic_dipole * fc_factor(anchor, &psi)?;
        entries.push(FcEntry {
            v_excited: v,
            detuning,
            amplitude,
        });
    }
    if entries.is_empty() {
        return Err(Error::EmptyWindow);
    }
    Ok(FcSpectrum {
        anchor_potential_id: anchor.potential_id,
        anchor_v: anchor.v,
        anchor_energy: anchor_absolute_energy,
        excited_potential_id: excited.fingerprint(),
        electronic_dipole,
        carrier,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potentials::auto_grid;

    fn toy() -> MorsePotential<f64> {
        MorsePotential::new(8.0, 1.0, 2.0, 0.0, 1.0).unwrap()
    }

    #[test]
    fn normalization_and_orthogonality() {
        let p = toy();
        let g = auto_grid(&[(&p, 2)], 2048).unwrap();
        let a = p.wavefunction(1, &g).unwrap();
        let b = p.wavefunction(2, &g).unwrap();
        assert!((fc_factor(&a, &a).unwrap() - 1.0).abs() < 1e-9);
        assert!(fc_factor(&a, &b).unwrap().abs() < 1e-7);
    }

    #[test]
    fn mismatched_grids_rejected() {
        let p = toy();
        let g1 = auto_grid(&[(&p, 1)], 1024).unwrap();
        let g2 = auto_grid(&[(&p, 2)], 1024).unwrap();
        let a = p.wavefunction(1, &g1).unwrap();
        let b = p.wavefunction(1, &g2).unwrap();
        assert!(matches!(fc_factor(&a, &b), Err(Error::MismatchedGrids)));
    }

    /// Two harmonic-limit wells with equal ω, displaced by Δr:
    /// |⟨0|0'⟩|² = e^{−d²/2} with d = Δr √(μω).
    #[test]
    fn displaced_harmonic_overlap() {
        let mu = 1.0;
        let w0 = 1.0;
        let de = 2.0e4_f64;
        let a = w0 * (mu / (2.0 * de)).sqrt();
        let shift = 0.9_f64;
        let p1 = MorsePotential::new(de, a, 12.0, 0.0, mu).unwrap();
        let p2 = MorsePotential::new(de, a, 12.0 + shift, 0.0, mu).unwrap();
        let g = RadialGrid::new(6.0, 19.0, 4096).unwrap();
        let l1 = p1.wavefunction(0, &g).unwrap();
        let l2 = p2.wavefunction(0, &g).unwrap();
        let d = shift * (mu * w0).sqrt();
        let expect = (-d * d / 2.0).exp();
        let got = fc_factor(&l1, &l2).unwrap().powi(2);
        assert!(
            (got - expect).abs() < 1e-4,
            "got {got}, expected {expect}"
        );
    }

    #[test]
    fn spectrum_consistent_with_pairwise_factors() {
        let ground = toy();
        let excited = MorsePotential::new(9.0, 0.9, 2.4, 10.0, 1.0).unwrap();
        let g = auto_grid(&[(&ground, 1), (&excited, 4)], 2048).unwrap();
        let anchor = ground.wavefunction(1, &g).unwrap();
        let carrier = 10.0 + excited.energy(2).unwrap() - ground.energy(1).unwrap();
        let spec = fc_spectrum(&anchor, ground.energy(1).unwrap(), &excited, 1.0, carrier,
            (-3.0, 3.0), &g).unwrap();
        assert!(!spec.entries.is_empty());
        for e in &spec.entries {
            let psi = excited.wavefunction(e.v_excited, &g).unwrap();
            let f = fc_factor(&anchor, &psi).unwrap();
            assert!((e.amplitude - f).abs() < 1e-14);
        }
        // detunings strictly increasing
        for w in spec.entries.windows(2) {
            assert!(w[1].detuning > w[0].detuning);
        }
        // completeness bound
        assert!(spec.weight() <= 1.0 + 1e-6);
    }

    #[test]
    fn single_level_window() {
        let ground = toy();
        let excited = MorsePotential::new(9.0, 0.9, 2.4, 10.0, 1.0).unwrap();
        let g = auto_grid(&[(&ground, 0), (&excited, 3)], 2048).unwrap();
        let anchor = ground.wavefunction(0, &g).unwrap();
        let carrier = 10.0 + excited.energy(2).unwrap() - ground.energy(0).unwrap();
        let half = 0.5 * (excited.energy(3).unwrap() - excited.energy(2).unwrap());
        let spec = fc_spectrum(&anchor, ground.energy(0).unwrap(), &excited, 0.7, carrier,
            (-half, half), &g).unwrap();
        assert_eq!(spec.entries.len(), 1);
        let psi = excited.wavefunction(spec.entries[0].v_excited, &g).unwrap();
        let f = 0.7 * fc_factor(&anchor, &psi).unwrap();
        assert!((spec.entries[0].amplitude - f).abs() < 1e-14);
    }

    #[test]
    fn empty_window_rejected() {
        let ground = toy();
        let excited = MorsePotential::new(9.0, 0.9, 2.4, 10.0, 1.0).unwrap();
        let g = auto_grid(&[(&ground, 0), (&excited, 2)], 1024).unwrap();
        let anchor = ground.wavefunction(0, &g).unwrap();
        let spec = fc_spectrum(&anchor, 0.0, &excited, 1.0, 12.0, (1e-9, 2e-9), &g);
        assert!(matches!(spec, Err(Error::EmptyWindow)));
    }
}
