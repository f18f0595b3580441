//! Quadrature-fluctuation spectra of the field entering the unused input
//! port, together with the generalized Heisenberg constraint they obey.
//!
//! All spectra are even functions of the analysis frequency; evaluation
//! goes through `|omega|` so the symmetry holds exactly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interp;

/// Default feasibility tolerance for the Heisenberg margin.
pub const EPS_FEAS: f64 = 1e-9;

/// One sample of the quadrature spectra triple at a fixed frequency.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectraSample {
    pub spp: f64,
    pub sqq: f64,
    pub spq: f64,
}

impl SpectraSample {
    pub const VACUUM: SpectraSample = SpectraSample {
        spp: 1.0,
        sqq: 1.0,
        spq: 0.0,
    };

    /// S_pp*S_qq - S_pq^2 - 1. Non-negative (within tolerance) for any
    /// physical state; zero for minimum-uncertainty states.
    pub fn heisenberg_margin(&self) -> f64 {
        heisenberg_margin(self.spp, self.sqq, self.spq)
    }
}

/// S_pp*S_qq - S_pq^2 - 1; feasible when >= -eps, saturated when |.| <= eps.
pub fn heisenberg_margin(spp: f64, sqq: f64, spq: f64) -> f64 {
    spp * sqq - spq * spq - 1.0
}

/// Minimum-uncertainty squeezing parameterized by factor `r` and angle `theta`.
///
/// The induced spectra saturate the Heisenberg inequality exactly:
/// S_pp*S_qq - S_pq^2 = cosh^2(2r) - sinh^2(2r) = 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SqueezeParams {
    pub r: f64,
    pub theta: f64,
}

impl SqueezeParams {
    pub fn new(r: f64, theta: f64) -> Result<Self> {
        if !r.is_finite() || r < 0.0 {
            return Err(Error::invalid("r", format!("squeeze factor must be finite and >= 0, got {r}")));
        }
        if !theta.is_finite() {
            return Err(Error::invalid("theta", format!("squeeze angle must be finite, got {theta}")));
        }
        Ok(SqueezeParams { r, theta })
    }

    /// Caves-style phase squeezing: S_pp = K, S_qq = 1/K, S_pq = 0,
    /// i.e. r = ln(K)/2 and theta = 0.
    pub fn phase_squeezing(k: f64) -> Result<Self> {
        if !(k > 0.0) || !k.is_finite() {
            return Err(Error::invalid("k", format!("squeeze factor K must be finite and > 0, got {k}")));
        }
        SqueezeParams::new(0.5 * k.ln().abs(), if k >= 1.0 { 0.0 } else { 0.5 * std::f64::consts::PI })
    }

    /// Spectra induced by this squeezing, frequency-independent.
    ///
    /// Convention: theta = 0 anti-squeezes the amplitude quadrature
    /// (S_pp = e^{2r}) and squeezes the phase quadrature (S_qq = e^{-2r});
    /// the cross spectrum is S_pq = -sinh(2r) sin(2 theta).
    pub fn spectra(&self) -> SpectraSample {
        let c = (2.0 * self.r).cosh();
        let s = (2.0 * self.r).sinh();
        let (sin2t, cos2t) = (2.0 * self.theta).sin_cos();
        SpectraSample {
            spp: c + s * cos2t,
            sqq: c - s * cos2t,
            spq: -s * sin2t,
        }
    }

    /// Invert `spectra` for a minimum-uncertainty sample. Fails when the
    /// sample does not saturate the Heisenberg equality within `eps`.
    pub fn from_spectra(sample: &SpectraSample, eps: f64) -> Result<Self> {
        let margin = sample.heisenberg_margin();
        let scale = 0.5 * (sample.spp + sample.sqq);
        if margin.abs() > eps * scale.max(1.0) {
            return Err(Error::Domain(format!(
                "spectra are not minimum-uncertainty (margin {margin:.3e})"
            )));
        }
        let c = scale;
        let half_diff = 0.5 * (sample.spp - sample.sqq);
        let s = (half_diff * half_diff + sample.spq * sample.spq).sqrt();
        let r = 0.5 * (c + s).ln().max(0.0);
        let theta = if s == 0.0 {
            0.0
        } else {
            0.5 * f64::atan2(-sample.spq, half_diff)
        };
        SqueezeParams::new(r, theta)
    }
}

/// Quadrature spectra of the input field as a rule frequency -> triple.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum QuadratureSpectra {
    /// Vacuum fluctuations: S_pp = S_qq = 1, S_pq = 0.
    Vacuum,
    /// Frequency-independent minimum-uncertainty squeezing.
    StaticSqueezed { r: f64, theta: f64 },
    /// Squeeze factor and angle tabulated over frequency, interpolated
    /// piecewise-linearly; the induced spectra stay minimum-uncertainty.
    FrequencySqueezed {
        omega: Vec<f64>,
        r: Vec<f64>,
        theta: Vec<f64>,
    },
    /// Spectra triple tabulated on a strictly increasing frequency grid.
    /// Piecewise-linear, no extrapolation.
    Tabulated {
        omega: Vec<f64>,
        spp: Vec<f64>,
        sqq: Vec<f64>,
        spq: Vec<f64>,
    },
}

impl QuadratureSpectra {
    pub fn static_squeezed(params: SqueezeParams) -> Self {
        QuadratureSpectra::StaticSqueezed {
            r: params.r,
            theta: params.theta,
        }
    }

    /// Validate structural invariants (grids strictly increasing, arrays
    /// matching, component positivity on tabulated nodes).
    pub fn validate(&self) -> Result<()> {
        match self {
            QuadratureSpectra::Vacuum => Ok(()),
            QuadratureSpectra::StaticSqueezed { r, theta } => {
                SqueezeParams::new(*r, *theta).map(|_| ())
            }
            QuadratureSpectra::FrequencySqueezed { omega, r, theta } => {
                interp::check_grid("port_b.omega", omega)?;
                interp::check_len("port_b.r", r, omega.len())?;
                interp::check_len("port_b.theta", theta, omega.len())?;
                for (&ri, &ti) in r.iter().zip(theta) {
                    SqueezeParams::new(ri, ti)?;
                }
                Ok(())
            }
            QuadratureSpectra::Tabulated {
                omega,
                spp,
                sqq,
                spq,
            } => {
                interp::check_grid("port_b.omega", omega)?;
                interp::check_len("port_b.spp", spp, omega.len())?;
                interp::check_len("port_b.sqq", sqq, omega.len())?;
                interp::check_len("port_b.spq", spq, omega.len())?;
                for i in 0..omega.len() {
                    if !(spp[i] > 0.0) || !(sqq[i] > 0.0) {
                        return Err(Error::invalid(
                            "port_b",
                            format!("S_pp and S_qq must be > 0 (node {i})"),
                        ));
                    }
                }
                Ok(())
            }
        }
    }

    /// Evaluate the spectra triple at `omega`. Evenness is enforced by
    /// evaluating at `|omega|`.
    pub fn evaluate(&self, omega: f64) -> Result<SpectraSample> {
        if !omega.is_finite() {
            return Err(Error::Domain(format!("non-finite frequency {omega}")));
        }
        let w = omega.abs();
        match self {
            QuadratureSpectra::Vacuum => Ok(SpectraSample::VACUUM),
            QuadratureSpectra::StaticSqueezed { r, theta } => {
                Ok(SqueezeParams { r: *r, theta: *theta }.spectra())
            }
            QuadratureSpectra::FrequencySqueezed { omega, r, theta } => {
                let ri = interp::linear(omega, r, w)?;
                let ti = interp::linear(omega, theta, w)?;
                Ok(SqueezeParams { r: ri, theta: ti }.spectra())
            }
            QuadratureSpectra::Tabulated {
                omega,
                spp,
                sqq,
                spq,
            } => Ok(SpectraSample {
                spp: interp::linear(omega, spp, w)?,
                sqq: interp::linear(omega, sqq, w)?,
                spq: interp::linear(omega, spq, w)?,
            }),
        }
    }

    /// Feasibility of the triple at `omega` against the Heisenberg bound.
    pub fn check_feasible(&self, omega: f64, eps: f64) -> Result<SpectraSample> {
        let sample = self.evaluate(omega)?;
        let margin = sample.heisenberg_margin();
        // Tolerance scales with the determinant magnitude; at large squeeze
        // factors the product S_pp*S_qq cancels near cosh^2(2r).
        let eps = eps * (sample.spp * sample.sqq).max(1.0);
        if margin < -eps {
            return Err(Error::Infeasible { omega, margin });
        }
        Ok(sample)
    }
}
