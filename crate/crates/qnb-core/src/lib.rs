//! Noise-budget calculator and squeezing optimizer for interferometric
//! position measurement.
//!
//! The library composes the quantum (and extra-force) noise spectrum of an
//! interferometric length measurement from the quadrature spectra of the
//! field entering the unused input port, the mechanical susceptibility of
//! the mirrors, and the laser parameters; averages it over a detection
//! filter; and minimizes it under the generalized Heisenberg constraint on
//! the input spectra. Four strategies are available: intensity
//! optimization (the standard quantum limit), static phase squeezing,
//! and correlated squeezing optimized per frequency or broadband, the
//! latter two reaching below the standard quantum limit.

pub mod bandavg;
pub mod error;
pub mod interp;
pub mod mechanics;
pub mod noise;
pub mod optimize;
pub mod quad;
pub mod report;
pub mod scenario;
pub mod spectra;

pub use bandavg::{filtered_noise, BandFilter, FilteredNoise};
pub use error::{Error, Result};
pub use mechanics::{recoil_damping_min, signal_fidelity_check, FidelityReport, Susceptibility};
pub use noise::{
    interferometer_noise_spectrum, linearized_intensity_phase, signal_transfer,
    single_mirror_noise_spectrum, ExtraForceSpectrum, LaserParams, NoiseBudget,
};
pub use optimize::{
    broadband_optimum, caves, equivalent_tau, per_frequency_optimum, sql, OptimizeConfig,
    SqueezeState, StrategyResult,
};
pub use scenario::{GridScale, GridSpec, Scenario, StrategyName, Units};
pub use spectra::{heisenberg_margin, QuadratureSpectra, SpectraSample, SqueezeParams};
