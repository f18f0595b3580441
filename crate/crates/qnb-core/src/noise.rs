//! Composition of the measurement noise spectrum from the quadrature
//! spectra of the input field, the mechanical susceptibility, the laser
//! parameters and extra (non-quantum) force fluctuations.
//!
//! Two-sided spectral convention throughout: all spectra are densities
//! over Omega in (-inf, inf) with measure dOmega/2pi.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interp;
use crate::mechanics::Susceptibility;
use crate::spectra::{QuadratureSpectra, EPS_FEAS};

/// CODATA value, J s.
pub const HBAR_SI: f64 = 1.0545718e-34;
/// Speed of light, m/s.
pub const C_SI: f64 = 299_792_458.0;

/// Laser field parameters. `intensity` is the mean photon flux into the
/// main input port (photons/s).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LaserParams {
    pub hbar: f64,
    pub omega0: f64,
    pub c: f64,
    pub k0: f64,
    pub intensity: f64,
}

impl LaserParams {
    pub fn new(hbar: f64, omega0: f64, c: f64, k0: f64, intensity: f64) -> Result<Self> {
        for (name, v) in [
            ("laser.hbar", hbar),
            ("laser.omega0", omega0),
            ("laser.c", c),
            ("laser.k0", k0),
            ("laser.intensity", intensity),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::invalid(name, format!("must be finite and > 0, got {v}")));
            }
        }
        if (k0 - omega0 / c).abs() > 1e-12 * k0 {
            return Err(Error::invalid(
                "laser.k0",
                format!("inconsistent with omega0/c: {k0} vs {}", omega0 / c),
            ));
        }
        Ok(LaserParams {
            hbar,
            omega0,
            c,
            k0,
            intensity,
        })
    }

    /// SI units: hbar and c fixed, k0 derived from omega0.
    pub fn si(omega0: f64, intensity: f64) -> Result<Self> {
        LaserParams::new(HBAR_SI, omega0, C_SI, omega0 / C_SI, intensity)
    }

    /// Natural units: hbar = c = 1, omega0 = k0.
    pub fn natural(k0: f64, intensity: f64) -> Result<Self> {
        LaserParams::new(1.0, k0, 1.0, k0, intensity)
    }

    pub fn with_intensity(&self, intensity: f64) -> Self {
        LaserParams { intensity, ..*self }
    }
}

/// Spectrum of extra (non-quantum) force fluctuations acting on the
/// mirrors, N^2 s, even in Omega.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ExtraForceSpectrum {
    #[default]
    Zero,
    Constant { sff: f64 },
    Tabulated { omega: Vec<f64>, sff: Vec<f64> },
}

impl ExtraForceSpectrum {
    pub fn validate(&self) -> Result<()> {
        match self {
            ExtraForceSpectrum::Zero => Ok(()),
            ExtraForceSpectrum::Constant { sff } => {
                if !(*sff >= 0.0) || !sff.is_finite() {
                    Err(Error::invalid("extra_force.sff", format!("must be finite and >= 0, got {sff}")))
                } else {
                    Ok(())
                }
            }
            ExtraForceSpectrum::Tabulated { omega, sff } => {
                interp::check_grid("extra_force.omega", omega)?;
                interp::check_len("extra_force.sff", sff, omega.len())?;
                if sff.iter().any(|&v| v < 0.0) {
                    return Err(Error::invalid("extra_force.sff", "values must be >= 0"));
                }
                Ok(())
            }
        }
    }

    pub fn evaluate(&self, omega: f64) -> Result<f64> {
        match self {
            ExtraForceSpectrum::Zero => Ok(0.0),
            ExtraForceSpectrum::Constant { sff } => Ok(*sff),
            ExtraForceSpectrum::Tabulated { omega: grid, sff } => {
                interp::linear(grid, sff, omega.abs())
            }
        }
    }
}

/// Decomposed noise spectrum at one frequency, m^2 s.
///
/// pc: photon counting, rp: radiation pressure, xc: cross-correlation,
/// ef: extra force. `total` is their sum by construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseBudget {
    pub pc: f64,
    pub xc: f64,
    pub rp: f64,
    pub ef: f64,
    pub total: f64,
}

impl NoiseBudget {
    fn compose(pc: f64, xc: f64, rp: f64, ef: f64) -> NoiseBudget {
        NoiseBudget {
            pc,
            xc,
            rp,
            ef,
            total: pc + xc + rp + ef,
        }
    }
}

/// Interferometer noise spectrum:
///
///   S_ss = S_qq/(4 k0^2 I_A) + 2 hbar chi_R S_pq
///        + (chi_R^2 + chi_I^2)(4 hbar^2 k0^2 I_A S_pp + S_ff)
///
/// with the port-B spectra triple (S_pp, S_qq, S_pq).
pub fn interferometer_noise_spectrum(
    laser: &LaserParams,
    mech: &Susceptibility,
    port_b: &QuadratureSpectra,
    extra: &ExtraForceSpectrum,
    omega: f64,
) -> Result<NoiseBudget> {
    let chi = mech.chi(omega)?;
    let s = port_b.check_feasible(omega, EPS_FEAS)?;
    let sff = extra.evaluate(omega)?;
    let k2i = laser.k0 * laser.k0 * laser.intensity;
    let chi2 = chi.norm_sqr();
    let pc = s.sqq / (4.0 * k2i);
    let xc = 2.0 * laser.hbar * chi.re * s.spq;
    let rp = chi2 * 4.0 * laser.hbar * laser.hbar * k2i * s.spp;
    let ef = chi2 * sff;
    Ok(NoiseBudget::compose(pc, xc, rp, ef))
}

/// Single-mirror position noise spectrum.
///
/// From the error terms dz_pc = dq/(4 k0 sqrt(I)), dz_rp = chi 2 hbar k0
/// sqrt(I) dp, dz_ef = chi df:
///
///   S_zz = S_qq/(16 k0^2 I) + hbar chi_R S_pq
///        + (chi_R^2 + chi_I^2)(4 hbar^2 k0^2 I S_pp + S_ff)
///
/// The cross coefficient is 2 * (1/(4 k0)) * (2 hbar k0) * chi_R = hbar
/// chi_R, half the interferometer's, reflecting the 4 k0 (vs 2 k0)
/// phase-to-length conversion of the single-mirror readout.
pub fn single_mirror_noise_spectrum(
    laser: &LaserParams,
    mech: &Susceptibility,
    input: &QuadratureSpectra,
    extra: &ExtraForceSpectrum,
    omega: f64,
) -> Result<NoiseBudget> {
    let chi = mech.chi(omega)?;
    let s = input.check_feasible(omega, EPS_FEAS)?;
    let sff = extra.evaluate(omega)?;
    let k2i = laser.k0 * laser.k0 * laser.intensity;
    let chi2 = chi.norm_sqr();
    let pc = s.sqq / (16.0 * k2i);
    let xc = laser.hbar * chi.re * s.spq;
    let rp = chi2 * 4.0 * laser.hbar * laser.hbar * k2i * s.spp;
    let ef = chi2 * sff;
    Ok(NoiseBudget::compose(pc, xc, rp, ef))
}

/// Complex signal transfer -M Omega^2 chi(Omega) multiplying the true
/// signal in the estimator.
pub fn signal_transfer(mech: &Susceptibility, mass: f64, omega: f64) -> Result<Complex64> {
    Ok(-mass * omega * omega * mech.chi(omega)?)
}

/// Linearization of the field around its mean amplitude:
/// I = <p>^2/4, dI = sqrt(I) dp, dphi = dq/(2 sqrt(I)).
pub fn linearized_intensity_phase(p_mean: f64, dp: f64, dq: f64) -> Result<(f64, f64, f64)> {
    if !(p_mean > 0.0) {
        return Err(Error::Domain(format!(
            "linearization needs a positive mean field, got <p> = {p_mean}"
        )));
    }
    let intensity = 0.25 * p_mean * p_mean;
    Ok((intensity, intensity.sqrt() * dp, dq / (2.0 * intensity.sqrt())))
}
