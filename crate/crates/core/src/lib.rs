//! Shaped pump-dump pulse pairs and phase-coherent pulse trains for
//! vibrational Raman transfer, simulated with three wave-packets on three
//! Morse surfaces.
//!
//! The crate is organized bottom-up:
//!
//! * [`potentials`] — analytic Morse curves, bound spectra, eigenfunctions
//! * [`franck_condon`] — vibrational overlap spectra between manifolds
//! * [`pulses`] — spectral pulse objects, the differential shaping rule,
//!   chirping, time-domain synthesis, area calibration
//! * [`perturbative`] — first-order wave-packets and the pump/dump overlap
//! * [`propagator`] — split-operator solver for the coupled three-surface
//!   Schrödinger equation in the rotating-wave frame
//! * [`accumulation`] — area schedules, the pulse-train driver, leakage and
//!   robustness analyses
//! * [`config`] / [`scenario`] — TOML-driven reproducible runs behind the
//!   `combctl` binary
//!
//! All internal quantities are in Hartree atomic units (ħ = mₑ = e = 1);
//! [`units`] converts at the configuration boundary.
//!
//! Core numerics are generic over the floating-point scalar through
//! [`Scalar`]; the `*64` aliases below fix the production types.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssignOps};
use rustfft::FftNum;

pub mod accumulation;
pub mod config;
pub mod error;
pub mod franck_condon;
pub mod grid;
pub mod output;
pub mod perturbative;
pub mod potentials;
pub mod propagator;
pub mod pulses;
pub mod scenario;
pub mod units;

pub use error::Error;

/// Floating-point scalar the core numerics are generic over.
///
/// `f32` and `f64` both satisfy the bound; acceptance-grade tolerances
/// assume `f64`.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + NumAssignOps + Sum + FftNum + Debug + Display + LowerExp
{
    /// Lossy conversion from `f64`, panicking only for non-representable
    /// exotic types (never for `f32`/`f64`).
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("scalar conversion")
    }

    /// Lossy conversion to `f64` for reporting and serialization.
    fn to_f64_lossy(self) -> f64;
}

impl Scalar for f64 {
    fn to_f64_lossy(self) -> f64 {
        self
    }
}

impl Scalar for f32 {
    fn to_f64_lossy(self) -> f64 {
        self as f64
    }
}

/// Complex number over a generic scalar.
pub type C<T> = num_complex::Complex<T>;

pub type Morse64 = potentials::MorsePotential<f64>;
pub type Level64 = potentials::VibrationalLevel<f64>;
pub type Grid64 = grid::RadialGrid<f64>;
pub type FcSpectrum64 = franck_condon::FcSpectrum<f64>;







