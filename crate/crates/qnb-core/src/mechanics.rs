//! Mechanical susceptibility of the mirrors and the signal-fidelity
//! condition on the detection band.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interp;

/// Linear mechanical response chi(omega) of mirror position to force, in m/N.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Susceptibility {
    /// chi = 1 / (M (omega_m^2 - omega^2 - i gamma omega))
    DampedHarmonic {
        mass: f64,
        omega_m: f64,
        gamma: f64,
    },
    /// chi = -1 / (M omega^2); the omega_m = gamma = 0 limit, singular at 0.
    FreeMass { mass: f64 },
    /// Real and imaginary parts tabulated and interpolated independently.
    /// `mass` is optional and only needed for signal-transfer operations.
    Tabulated {
        omega: Vec<f64>,
        re: Vec<f64>,
        im: Vec<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        mass: Option<f64>,
    },
}

impl Susceptibility {
    pub fn validate(&self) -> Result<()> {
        match self {
            Susceptibility::DampedHarmonic {
                mass,
                omega_m,
                gamma,
            } => {
                if !(*mass > 0.0) {
                    return Err(Error::invalid("mechanics.mass", format!("must be > 0, got {mass}")));
                }
                if !(*omega_m >= 0.0) {
                    return Err(Error::invalid("mechanics.omega_m", format!("must be >= 0, got {omega_m}")));
                }
                if !(*gamma >= 0.0) {
                    return Err(Error::invalid("mechanics.gamma", format!("must be >= 0, got {gamma}")));
                }
                Ok(())
            }
            Susceptibility::FreeMass { mass } => {
                if !(*mass > 0.0) {
                    return Err(Error::invalid("mechanics.mass", format!("must be > 0, got {mass}")));
                }
                Ok(())
            }
            Susceptibility::Tabulated { omega, re, im, mass } => {
                interp::check_grid("mechanics.omega", omega)?;
                interp::check_len("mechanics.re", re, omega.len())?;
                interp::check_len("mechanics.im", im, omega.len())?;
                if let Some(m) = mass {
                    if !(*m > 0.0) {
                        return Err(Error::invalid("mechanics.mass", format!("must be > 0, got {m}")));
                    }
                }
                Ok(())
            }
        }
    }

    /// Mirror mass, when the model carries one.
    pub fn mass(&self) -> Option<f64> {
        match self {
            Susceptibility::DampedHarmonic { mass, .. } => Some(*mass),
            Susceptibility::FreeMass { mass } => Some(*mass),
            Susceptibility::Tabulated { mass, .. } => *mass,
        }
    }

    /// Evaluate chi at `omega`. The reality condition chi(-omega) =
    /// conj(chi(omega)) is built into the formulas.
    pub fn chi(&self, omega: f64) -> Result<Complex64> {
        match self {
            Susceptibility::DampedHarmonic {
                mass,
                omega_m,
                gamma,
            } => {
                let re = mass * (omega_m * omega_m - omega * omega);
                let im = -mass * gamma * omega;
                if re == 0.0 && im == 0.0 {
                    return Err(Error::Singularity {
                        omega,
                        reason: "undamped resonance".into(),
                    });
                }
                if im == 0.0 {
                    return Ok(Complex64::new(1.0 / re, 0.0));
                }
                Ok(Complex64::new(1.0, 0.0) / Complex64::new(re, im))
            }
            Susceptibility::FreeMass { mass } => {
                if omega == 0.0 {
                    return Err(Error::Singularity {
                        omega,
                        reason: "free mass has no static response".into(),
                    });
                }
                Ok(Complex64::new(-1.0 / (mass * (omega * omega)), 0.0))
            }
            Susceptibility::Tabulated { omega: grid, re, im, .. } => {
                // Evaluate at |omega| and conjugate for omega < 0 so the
                // impulse response stays real.
                let w = omega.abs();
                let chi_r = interp::linear(grid, re, w)?;
                let chi_i = interp::linear(grid, im, w)?;
                let sign = if omega < 0.0 { -1.0 } else { 1.0 };
                Ok(Complex64::new(chi_r, sign * chi_i))
            }
        }
    }

    /// First undamped pole in the closed interval [lo, hi], if any.
    /// Used by quadrature callers to refuse integrating through it.
    pub fn pole_in(&self, lo: f64, hi: f64) -> Option<f64> {
        match self {
            Susceptibility::DampedHarmonic { omega_m, gamma, .. } => {
                if *gamma == 0.0 && *omega_m >= lo && *omega_m <= hi {
                    Some(*omega_m)
                } else {
                    None
                }
            }
            Susceptibility::FreeMass { .. } => {
                if lo <= 0.0 && hi >= 0.0 {
                    Some(0.0)
                } else {
                    None
                }
            }
            Susceptibility::Tabulated { .. } => None,
        }
    }
}

/// Result of checking -M omega^2 chi(omega) ~ 1 over the detection band.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FidelityReport {
    pub max_deviation: f64,
    pub worst_omega: f64,
    pub pass: bool,
}

/// Maximum of |-M omega^2 chi(omega) - 1| on a uniform grid over
/// (omega_s - 2B, omega_s + 2B); passes iff it stays within `tol`.
pub fn signal_fidelity_check(
    s: &Susceptibility,
    omega_s: f64,
    bandwidth: f64,
    tol: f64,
    grid_points: usize,
) -> Result<FidelityReport> {
    if !(bandwidth > 0.0) || !(omega_s > 2.0 * bandwidth) {
        return Err(Error::Domain(format!(
            "need omega_s > 2B > 0, got omega_s = {omega_s}, B = {bandwidth}"
        )));
    }
    if grid_points < 2 {
        return Err(Error::invalid("grid_points", "need at least 2"));
    }
    let mass = s.mass().ok_or_else(|| {
        Error::Domain("signal fidelity needs a mirror mass; tabulated susceptibility must carry one".into())
    })?;
    let (lo, hi) = (omega_s - 2.0 * bandwidth, omega_s + 2.0 * bandwidth);
    if let Some(pole) = s.pole_in(lo, hi) {
        return Err(Error::Singularity {
            omega: pole,
            reason: "pole inside the detection band".into(),
        });
    }
    let mut max_deviation = 0.0f64;
    let mut worst_omega = lo;
    for i in 0..grid_points {
        let w = lo + (hi - lo) * i as f64 / (grid_points - 1) as f64;
        let transfer = -mass * w * w * s.chi(w)?;
        let dev = (transfer - 1.0).norm();
        if dev > max_deviation {
            max_deviation = dev;
            worst_omega = w;
        }
    }
    Ok(FidelityReport {
        max_deviation,
        worst_omega,
        pass: max_deviation <= tol,
    })
}

/// Default grid resolution for `signal_fidelity_check`.
pub const FIDELITY_GRID_POINTS: usize = 257;

/// Recoil damping from photon reflection, hbar k0 I / M, evaluated exactly
/// as printed. Advisory figure; the printed combination does not carry
/// rad/s under the photons-per-second intensity convention.
pub fn recoil_damping_min(hbar: f64, k0: f64, intensity: f64, mass: f64) -> f64 {
    hbar * k0 * intensity / mass
}
