//! Spectral-domain pulses and the design rules that make a pump-dump pair
//! transfer cleanly: differential shaping against the two overlap spectra,
//! the inter-pulse dispersion phase, common chirping, time-domain
//! synthesis, and effective-area calibration.
//!
//! Conventions, used consistently by the perturbative module and the
//! propagator:
//!
//! * a pulse is its complex spectrum `E(ω)` on a uniform detuning grid,
//!   with the time-domain envelope synthesized as
//!   `ℰ(t) = field_scale · (Δω/2π) Σ_k E(ω_k) e^{−iω_k (t − t_c)}`;
//! * first-order excitation of a transition detuned by `ω_v` reads
//!   `E(ω_v)` directly;
//! * a spectral phase `e^{iφ(ω)}` with `φ = −ωT` delays the envelope by
//!   `T` relative to its placement center;
//! * positive group-delay dispersion puts red before blue.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::franck_condon::FcSpectrum;
use crate::potentials::MorsePotential;
use crate::{Scalar, C};

/// Uniform detuning axis, symmetric about zero.
#[derive(Clone, Debug, PartialEq)]
pub struct DetuningGrid<T> {
    half_span: T,
    n: usize,
}

impl<T: Scalar> DetuningGrid<T> {
    pub fn new(half_span: T, n: usize) -> Result<Self> {
        if !(half_span > T::zero()) || n < 2 {
            return Err(Error::DegenerateDesign(
                "detuning grid needs a positive span and at least two points".into(),
            ));
        }
        Ok(Self { half_span, n })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn half_span(&self) -> T {
        self.half_span
    }

    pub fn spacing(&self) -> T {
        T::of(2.0) * self.half_span / T::of((self.n - 1) as f64)
    }

    pub fn value(&self, k: usize) -> T {
        -self.half_span + T::of(k as f64) * self.spacing()
    }

    pub fn values(&self) -> impl Iterator<Item = T> + '_ {
        (0..self.n).map(move |k| self.value(k))
    }
}

/// Complex spectral amplitude on a detuning grid plus its carrier.
///
/// `field_scale` maps the dimensionless shape onto a field amplitude in
/// a.u.; the stored shape is kept max-normalized by the design routines.
#[derive(Clone, Debug)]
pub struct SpectralPulse<T> {
    pub carrier: T,
    pub grid: DetuningGrid<T>,
    pub amplitude: Vec<C<T>>,
    pub field_scale: T,
}

impl<T: Scalar> SpectralPulse<T> {
    pub fn new(carrier: T, grid: DetuningGrid<T>, amplitude: Vec<C<T>>, field_scale: T) -> Result<Self> {
        if amplitude.len() != grid.len() {
            return Err(Error::MismatchedGrids);
        }
        let energy: T = amplitude.iter().map(|a| a.norm_sqr()).sum();
        if !(energy > T::zero()) || !energy.is_finite() {
            return Err(Error::DegenerateDesign("pulse spectrum carries no energy".into()));
        }
        Ok(Self { carrier, grid, amplitude, field_scale })
    }

    /// Complex amplitude linearly interpolated at detuning `omega`
    /// (shape only; `field_scale` not applied).
    pub fn amplitude_at(&self, omega: T) -> C<T> {
        let lo = -self.grid.half_span();
        if omega < lo || omega > self.grid.half_span() {
            return C::new(T::zero(), T::zero());
        }
        let x = (omega - lo) / self.grid.spacing();
        let k = (x.floor().to_f64_lossy() as usize).min(self.grid.len() - 2);
        let t = x - T::of(k as f64);
        self.amplitude[k] * Complex::new(T::one() - t, T::zero())
            + self.amplitude[k + 1] * Complex::new(t, T::zero())
    }

    /// `Σ|E|²Δω` of the dimensionless shape.
    pub fn shape_energy(&self) -> T {
        self.amplitude.iter().map(|a| a.norm_sqr()).sum::<T>() * self.grid.spacing()
    }

    /// Rescales the shape so `max|E| = 1`.
    pub fn max_normalize(&mut self) {
        let m = self
            .amplitude
            .iter()
            .fold(T::zero(), |m, a| m.max(a.norm()));
        if m > T::zero() {
            let inv = m.recip();
            for a in self.amplitude.iter_mut() {
                *a = *a * Complex::new(inv, T::zero());
            }
        }
    }
}

/// Spectral phase acquired by the excited wave-packet between the pulses of
/// a pair: the half-vibration delay plus the wave-packet dispersion, which
/// on the detuning axis is the single linear law `φ(ω) = −ω·delay`.
/// Between level detunings the samples are linear interpolation of the
/// on-resonance values (collinear here, so the grid samples are exact).
#[derive(Clone, Debug)]
pub struct DispersionPhase<T> {
    pub grid: DetuningGrid<T>,
    pub phase: Vec<T>,
    /// The delay this phase encodes (τ_vib/2 for a standard pair).
    pub delay: T,
}

impl<T: Scalar> DispersionPhase<T> {
    /// Zero phase (no inter-pulse evolution).
    pub fn zero(grid: DetuningGrid<T>) -> Self {
        let phase = vec![T::zero(); grid.len()];
        Self { grid, phase, delay: T::zero() }
    }

    /// Phase linearly interpolated from the grid samples (clamped at the
    /// window edges).
    pub fn phase_at(&self, omega: T) -> T {
        let lo = -self.grid.half_span();
        if omega <= lo {
            return self.phase[0];
        }
        if omega >= self.grid.half_span() {
            return *self.phase.last().unwrap();
        }
        let x = (omega - lo) / self.grid.spacing();
        let k = (x.floor().to_f64_lossy() as usize).min(self.grid.len() - 2);
        let t = x - T::of(k as f64);
        self.phase[k] * (T::one() - t) + self.phase[k + 1] * t
    }

    pub fn factor_at(&self, omega: T) -> C<T> {
        let p = self.phase_at(omega);
        C::new(p.cos(), p.sin())
    }
}

/// Builds the dispersion phase for a delay `T` on `grid`.
///
/// `carrier_resonant_energy` is the excited-manifold energy (above the
/// excited minimum) at which the detuning vanishes; the zero of phase is
/// pinned there. At every excited level `φ(ω_v) = −(E_v − E_ref)·delay`,
/// and the grid carries the interpolated values.
pub fn dispersion_phase<T: Scalar>(
    excited: &MorsePotential<T>,
    carrier_resonant_energy: T,
    delay: T,
    grid: &DetuningGrid<T>,
) -> Result<DispersionPhase<T>> {
    if delay < T::zero() {
        return Err(Error::DegenerateDesign("negative inter-pulse delay".into()));
    }
    let mut any = false;
    for v in 0..excited.bound_level_count() {
        let w = excited.energy(v)? - carrier_resonant_energy;
        if w.abs() <= grid.half_span() {
            any = true;
            break;
        }
    }
    if !any {
        return Err(Error::EmptyWindow);
    }
    let phase = grid.values().map(|w| -w * delay).collect();
    Ok(DispersionPhase { grid: grid.clone(), phase, delay })
}

/// Gaussian common amplitude with the given intensity-FWHM bandwidth.
pub fn gaussian_amplitude<T: Scalar>(grid: &DetuningGrid<T>, fwhm_omega: T) -> Vec<T> {
    let c = T::of(2.0) * T::of(std::f64::consts::LN_2) / (fwhm_omega * fwhm_omega);
    grid.values().map(|w| (-c * w * w).exp()).collect()
}

/// Differential shaping of a pump-dump pair: the pump is shaped by the
/// dump's overlap spectrum and vice versa, the dump additionally carrying
/// the inter-pulse dispersion phase, so the pumped packet — evolved to the
/// dump — matches the mode the dump can empty into the target.
///
/// `E_p(ω) ∝ F_d(ω)·A(ω)`, `E_d(ω) ∝ F_p(ω)·A(ω)·e^{iφ_D(ω)}`, each
/// max-normalized with `field_scale = 1`.
///
/// Only the on-level values act at first order. Between levels the dump
/// interpolates the complex product `F_p(ω_v) e^{iφ_D(ω_v)}` rather than
/// the two factors separately: at a half-vibration delay the phase factor
/// cancels the sign alternation of `F_p` level by level, so the product is
/// the smooth function and interpolating it keeps the synthesized envelope
/// in one piece at the placement center.
pub fn design_pair<T: Scalar>(
    fc_pump: &FcSpectrum<T>,
    fc_dump: &FcSpectrum<T>,
    common_amplitude: &[T],
    phase: &DispersionPhase<T>,
) -> Result<(SpectralPulse<T>, SpectralPulse<T>)> {
    let grid = &phase.grid;
    if common_amplitude.len() != grid.len() {
        return Err(Error::MismatchedGrids);
    }
    if common_amplitude.iter().all(|a| *a == T::zero()) {
        return Err(Error::DegenerateDesign("common amplitude A(ω) is identically zero".into()));
    }
    let dump_nodes: Vec<(T, C<T>)> = fc_pump
        .entries
        .iter()
        .map(|e| {
            let ph = phase.phase_at(e.detuning);
            (e.detuning, C::from_polar(e.amplitude, T::zero()) * C::new(ph.cos(), ph.sin()))
        })
        .collect();
    let mut pump = Vec::with_capacity(grid.len());
    let mut dump = Vec::with_capacity(grid.len());
    for (k, w) in grid.values().enumerate() {
        let a = common_amplitude[k];
        let fd = fc_dump.amplitude_at(w);
        pump.push(C::new(fd * a, T::zero()));
        dump.push(interp_complex(&dump_nodes, w) * C::new(a, T::zero()));
    }
    let peak = |v: &Vec<C<T>>| v.iter().fold(T::zero(), |m, a: &C<T>| m.max(a.norm()));
    if !(peak(&pump) > T::zero()) || !(peak(&dump) > T::zero()) {
        return Err(Error::DegenerateDesign(
            "pump and dump spectra are disjoint over the common window".into(),
        ));
    }
    let mut e_p = SpectralPulse::new(fc_pump.carrier, grid.clone(), pump, T::one())?;
    let mut e_d = SpectralPulse::new(fc_dump.carrier, grid.clone(), dump, T::one())?;
    e_p.max_normalize();
    e_d.max_normalize();
    Ok((e_p, e_d))
}

fn interp_complex<T: Scalar>(nodes: &[(T, C<T>)], omega: T) -> C<T> {
    let zero = C::new(T::zero(), T::zero());
    if nodes.is_empty() {
        return zero;
    }
    if omega < nodes[0].0 || omega > nodes[nodes.len() - 1].0 {
        return zero;
    }
    let mut lo = 0;
    let mut hi = nodes.len() - 1;
    if hi == 0 {
        return nodes[0].1;
    }
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if nodes[mid].0 <= omega {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (w0, c0) = nodes[lo];
    let (w1, c1) = nodes[hi];
    let t = if w1 > w0 { (omega - w0) / (w1 - w0) } else { T::zero() };
    c0 * C::new(T::one() - t, T::zero()) + c1 * C::new(t, T::zero())
}

/// Multiplies the spectrum by `e^{i (gdd/2) ω²}`: pure group-delay
/// dispersion. Positive `gdd` orders red before blue in time.
pub fn apply_chirp<T: Scalar>(pulse: &SpectralPulse<T>, gdd: T) -> SpectralPulse<T> {
    let mut out = pulse.clone();
    for (k, w) in pulse.grid.values().enumerate() {
        let p = gdd / T::of(2.0) * w * w;
        out.amplitude[k] = pulse.amplitude[k] * C::new(p.cos(), p.sin());
    }
    out
}

/// Complex time-domain envelope on a uniform axis.
#[derive(Clone, Debug)]
pub struct TimeEnvelope<T> {
    pub t_start: T,
    pub dt: T,
    pub samples: Vec<C<T>>,
}

impl<T: Scalar> TimeEnvelope<T> {
    pub fn time(&self, j: usize) -> T {
        self.t_start + T::of(j as f64) * self.dt
    }

    /// `∫|ℰ|² dt` by the midpoint rule.
    pub fn energy(&self) -> T {
        self.samples.iter().map(|s| s.norm_sqr()).sum::<T>() * self.dt
    }

    /// Intensity full width at half maximum, by linear interpolation of the
    /// |ℰ|² crossings around the global peak.
    pub fn intensity_fwhm(&self) -> T {
        let i: Vec<T> = self.samples.iter().map(|s| s.norm_sqr()).collect();
        let (jpk, &pk) = i
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .unwrap();
        let half = pk / T::of(2.0);
        let mut left = T::zero();
        for j in (1..=jpk).rev() {
            if i[j - 1] <= half && i[j] > half {
                let t = (half - i[j - 1]) / (i[j] - i[j - 1]);
                left = self.time(j - 1) + t * self.dt;
                break;
            }
        }
        let mut right = T::zero();
        for j in jpk..self.samples.len() - 1 {
            if i[j] > half && i[j + 1] <= half {
                let t = (i[j] - half) / (i[j] - i[j + 1]);
                right = self.time(j) + t * self.dt;
                break;
            }
        }
        right - left
    }
}

/// Synthesizes the envelope onto an arbitrary uniform time axis whose
/// origin is the pulse placement center:
/// `ℰ(t_j) = field_scale (Δω/2π) Σ_k E(ω_k) e^{−iω_k t_j}`.
pub fn synthesize_onto<T: Scalar>(
    pulse: &SpectralPulse<T>,
    t_start: T,
    dt: T,
    m: usize,
) -> Result<TimeEnvelope<T>> {
    let wmax = pulse.grid.half_span();
    if dt * wmax > T::PI() {
        return Err(Error::Undersampled {
            dt: dt.to_f64_lossy(),
            omega_max: wmax.to_f64_lossy(),
        });
    }
    let norm = pulse.field_scale * pulse.grid.spacing() / T::TAU();
    let mut samples = vec![C::new(T::zero(), T::zero()); m];
    let floor = pulse
        .amplitude
        .iter()
        .fold(T::zero(), |mx, a| mx.max(a.norm()))
        * T::of(1e-14);
    for (k, w) in pulse.grid.values().enumerate() {
        let a = pulse.amplitude[k];
        if a.norm() <= floor {
            continue;
        }
        let a = a * C::new(norm, T::zero());
        // phasor recurrence over the time axis, resynced periodically
        let step = C::from_polar(T::one(), -w * dt);
        let mut ph = C::from_polar(T::one(), -w * t_start);
        for (j, s) in samples.iter_mut().enumerate() {
            if j % 512 == 0 {
                ph = C::from_polar(T::one(), -w * (t_start + T::of(j as f64) * dt));
            }
            *s = *s + a * ph;
            ph = ph * step;
        }
    }
    Ok(TimeEnvelope { t_start, dt, samples })
}

/// Synthesizes over a symmetric span centered on the pulse, rejecting
/// windows that clip more than 1e-6 of the energy at the edges.
pub fn synthesize_time_domain<T: Scalar>(
    pulse: &SpectralPulse<T>,
    dt: T,
    span: T,
) -> Result<TimeEnvelope<T>> {
    let m = (span / dt).to_f64_lossy().floor() as usize + 1;
    let env = synthesize_onto(pulse, -span / T::of(2.0), dt, m)?;
    let total = env.energy();
    let edge = (m / 100).max(1);
    let edge_energy: T = env.samples[..edge]
        .iter()
        .chain(env.samples[m - edge..].iter())
        .map(|s| s.norm_sqr())
        .sum::<T>()
        * dt;
    let fraction = edge_energy / total;
    if fraction >= T::of(1e-6) {
        return Err(Error::Aliasing {
            fraction: fraction.to_f64_lossy(),
        });
    }
    Ok(env)
}

/// Field scale that gives the pulse an effective area `A` on the anchor
/// transition of `fc`: first-order theory excites the fraction
/// `p = sin²(A/2)` out of the source level. Strong areas (beyond ~π/3)
/// should be refined against full propagation; see the propagator module.
pub fn calibrate_area<T: Scalar>(
    pulse: &SpectralPulse<T>,
    fc: &FcSpectrum<T>,
    source_population: T,
    area: T,
) -> Result<T> {
    let pi = T::PI();
    if !(area > T::zero()) || area > pi + T::of(1e-12) {
        return Err(Error::AreaOutOfRange {
            area: area.to_f64_lossy(),
        });
    }
    if !(source_population > T::zero()) {
        return Err(Error::AreaUnachievable("source population is zero".into()));
    }
    let p_unit = first_order_fraction_unit_scale(pulse, fc);
    if !(p_unit > T::zero()) {
        return Err(Error::AreaUnachievable(
            "pulse spectrum has no weight on any transition in the window".into(),
        ));
    }
    let half = area / T::of(2.0);
    Ok(half.sin() / p_unit.sqrt())
}

/// First-order excited fraction for `field_scale = 1`:
/// `Σ_v |E(ω_v) F_v / 2|²`.
pub fn first_order_fraction_unit_scale<T: Scalar>(pulse: &SpectralPulse<T>, fc: &FcSpectrum<T>) -> T {
    fc.entries
        .iter()
        .map(|e| {
            let c = pulse.amplitude_at(e.detuning) * C::new(e.amplitude / T::of(2.0), T::zero());
            c.norm_sqr()
        })
        .sum()
}
