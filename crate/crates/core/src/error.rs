//! Crate-wide error type.

use thiserror::Error;

#[derive(Error, Debug)]
pub enum Error {
    #[error("invalid potential: {0}")]
    InvalidPotential(String),

    #[error("level v={v} is unbound (v_max = {v_max})")]
    UnboundLevel { v: usize, v_max: usize },

    #[error("vibration period needs v-1 and v+1 bound (v = {v}, v_max = {v_max})")]
    PeriodEdge { v: usize, v_max: usize },

    #[error("grid too small: truncated norm fraction {lost:.3e} exceeds {limit:.1e}")]
    GridTruncation { lost: f64, limit: f64 },

    #[error("operands sampled on different grids")]
    MismatchedGrids,

    #[error("operands belong to different potentials")]
    MismatchedPotentials,

    #[error("no bound level falls inside the requested window")]
    EmptyWindow,

    #[error("degenerate pulse design: {0}")]
    DegenerateDesign(String),

    #[error("aliasing: {fraction:.3e} of pulse energy at the time-window edges")]
    Aliasing { fraction: f64 },

    #[error("time step does not resolve the spectrum (dt = {dt:.3e}, max detuning {omega_max:.3e})")]
    Undersampled { dt: f64, omega_max: f64 },

    #[error("pulse truncated by the propagation window ({fraction:.3e} of energy outside)")]
    PulseTruncated { fraction: f64 },

    #[error("time step dt = {dt:.3e} violates the stability policy (max phase/step {phase:.3} rad > {limit})")]
    UnstableTimeStep { dt: f64, phase: f64, limit: f64 },

    #[error("non-finite amplitude detected at step {step}: {diagnostic}")]
    NumericalBlowup { step: usize, diagnostic: String },

    #[error("bound-basis projection on surface {surface} captures only {captured:.9} of the norm")]
    ProjectionLeak { surface: &'static str, captured: f64 },

    #[error("zero-norm wave-packet")]
    ZeroNorm,

    #[error("requested transfer is not achievable: {0}")]
    AreaUnachievable(String),

    #[error("area {area} rad outside (0, pi]")]
    AreaOutOfRange { area: f64 },

    #[error("schedule needs at least one pulse pair")]
    EmptySchedule,

    #[error("leak-population fit skipped: {0}")]
    LeakFitDegenerate(String),

    #[error("config error at `{key}`: {message}")]
    Config { key: String, message: String },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("toml parse error: {0}")]
    Toml(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn config(key: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            key: key.into(),
            message: message.into(),
        }
    }

    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
