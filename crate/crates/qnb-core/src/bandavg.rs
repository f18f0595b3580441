//! Detection filters, bandwidth, band averaging, and the filtered noise
//! variance.
//!
//! A filter is an even gain G(omega) with two symmetric lobes at
//! +/- omega_s and G(omega_s) = 1. Internally every shape is a single
//! lobe h centered at omega_s evaluated at |omega|, which keeps the
//! positive half-line single-lobed:
//!
//!   2B = integral dOmega/2pi G(omega)   =>   B = (1/2pi) int_0^inf h
//!   mean(F) = int_0^inf h F / int_0^inf h

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mechanics::Susceptibility;
use crate::noise::{self, ExtraForceSpectrum, LaserParams};
use crate::quad;
use crate::spectra::QuadratureSpectra;

/// Gain values below `G_CUTOFF` times the peak are treated as outside the
/// effective support (Gaussian and Rect; the Lorentzian tail is integrated
/// exactly through an arctangent substitution).
pub const G_CUTOFF: f64 = 1e-12;

/// Detection filter G(omega), even, unit peak at +/- omega_s.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum BandFilter {
    /// Narrowband limit: band averages degenerate to point evaluation at
    /// omega_s. Carries an explicit bandwidth label because the filtered
    /// noise needs B even in the degenerate limit.
    Delta { omega_s: f64, b_label: f64 },
    /// Lobes exp(-(|omega| - omega_s)^2 / 2 sigma^2).
    Gaussian { omega_s: f64, sigma: f64 },
    /// Lobes gamma_f^2 / ((|omega| - omega_s)^2 + gamma_f^2).
    Lorentzian { omega_s: f64, gamma_f: f64 },
    /// Lobes 1 on [omega_s - halfwidth, omega_s + halfwidth].
    Rect { omega_s: f64, halfwidth: f64 },
}

impl BandFilter {
    pub fn validate(&self) -> Result<()> {
        let check = |name: &'static str, v: f64| -> Result<()> {
            if !(v > 0.0) || !v.is_finite() {
                Err(Error::invalid(name, format!("must be finite and > 0, got {v}")))
            } else {
                Ok(())
            }
        };
        match *self {
            BandFilter::Delta { omega_s, b_label } => {
                check("filter.omega_s", omega_s)?;
                check("filter.b_label", b_label)
            }
            BandFilter::Gaussian { omega_s, sigma } => {
                check("filter.omega_s", omega_s)?;
                check("filter.sigma", sigma)
            }
            BandFilter::Lorentzian { omega_s, gamma_f } => {
                check("filter.omega_s", omega_s)?;
                check("filter.gamma_f", gamma_f)
            }
            BandFilter::Rect { omega_s, halfwidth } => {
                check("filter.omega_s", omega_s)?;
                check("filter.halfwidth", halfwidth)
            }
        }
    }

    pub fn omega_s(&self) -> f64 {
        match *self {
            BandFilter::Delta { omega_s, .. }
            | BandFilter::Gaussian { omega_s, .. }
            | BandFilter::Lorentzian { omega_s, .. }
            | BandFilter::Rect { omega_s, .. } => omega_s,
        }
    }

    /// Gain G(omega) in [0, 1], even, with G(+/- omega_s) = 1.
    pub fn gain(&self, omega: f64) -> f64 {
        let w = omega.abs();
        match *self {
            BandFilter::Delta { omega_s, .. } => {
                if w == omega_s {
                    1.0
                } else {
                    0.0
                }
            }
            BandFilter::Gaussian { omega_s, sigma } => {
                let t = (w - omega_s) / sigma;
                (-0.5 * t * t).exp()
            }
            BandFilter::Lorentzian { omega_s, gamma_f } => {
                let d = w - omega_s;
                gamma_f * gamma_f / (d * d + gamma_f * gamma_f)
            }
            BandFilter::Rect { omega_s, halfwidth } => {
                if (w - omega_s).abs() <= halfwidth {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }

    /// Effective support of the positive-frequency lobe, clipped at 0.
    /// Lorentzian support is the full half-line.
    pub fn support(&self) -> (f64, f64) {
        match *self {
            BandFilter::Delta { omega_s, .. } => (omega_s, omega_s),
            BandFilter::Gaussian { omega_s, sigma } => {
                let k = (-2.0 * G_CUTOFF.ln()).sqrt(); // ~7.43
                ((omega_s - k * sigma).max(0.0), omega_s + k * sigma)
            }
            BandFilter::Lorentzian { omega_s, gamma_f } => {
                let k = (1.0 / G_CUTOFF).sqrt();
                (
                    (omega_s - k * gamma_f).max(0.0),
                    omega_s + k * gamma_f,
                )
            }
            BandFilter::Rect { omega_s, halfwidth } => {
                ((omega_s - halfwidth).max(0.0), omega_s + halfwidth)
            }
        }
    }

    /// Integral of the positive lobe, int_0^inf h(omega) dOmega, closed form.
    fn lobe_integral(&self) -> f64 {
        match *self {
            BandFilter::Delta { b_label, .. } => 2.0 * std::f64::consts::PI * b_label,
            BandFilter::Gaussian { omega_s, sigma } => {
                let z = omega_s / (sigma * std::f64::consts::SQRT_2);
                sigma * std::f64::consts::TAU.sqrt() * 0.5 * (1.0 + libm::erf(z))
            }
            BandFilter::Lorentzian { omega_s, gamma_f } => {
                gamma_f * (std::f64::consts::FRAC_PI_2 + (omega_s / gamma_f).atan())
            }
            BandFilter::Rect { omega_s, halfwidth } => {
                let lo = (omega_s - halfwidth).max(0.0);
                omega_s + halfwidth - lo
            }
        }
    }

    /// Detection bandwidth B = (1/2pi) int_{-inf}^{inf} dOmega/2 G(omega).
    pub fn bandwidth(&self) -> f64 {
        self.lobe_integral() / std::f64::consts::TAU
    }

    /// Mean of F over the normalized distribution G/(4 pi B):
    /// int_0^inf h F / int_0^inf h. Delta filters return F(omega_s).
    pub fn band_average<F>(&self, f: F) -> Result<f64>
    where
        F: FnMut(f64) -> Result<f64>,
    {
        self.band_average_tol(f, quad::DEFAULT_REL_TOL)
    }

    pub fn band_average_tol<F>(&self, mut f: F, rel_tol: f64) -> Result<f64>
    where
        F: FnMut(f64) -> Result<f64>,
    {
        match *self {
            BandFilter::Delta { omega_s, .. } => f(omega_s),
            BandFilter::Lorentzian { omega_s, gamma_f } => {
                // substitute u = atan((omega - omega_s)/gamma_f):
                // int_0^inf h F dOmega = gamma_f int_{u0}^{pi/2} F(omega(u)) du
                let u0 = (-omega_s / gamma_f).atan();
                let weighted = quad::integrate(
                    |u| f(omega_s + gamma_f * u.tan()),
                    u0,
                    std::f64::consts::FRAC_PI_2,
                    rel_tol,
                )?;
                Ok(gamma_f * weighted / self.lobe_integral())
            }
            _ => {
                let (lo, hi) = self.support();
                let weighted =
                    quad::integrate(|w| Ok(self.gain(w) * f(w)?), lo, hi, rel_tol)?;
                Ok(weighted / self.lobe_integral())
            }
        }
    }
}

/// Band-averaged, decomposed noise variance over the filter, in m^2.
/// Each term is 2B times the band average of the matching per-frequency
/// term; `total` is their sum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FilteredNoise {
    pub bandwidth: f64,
    pub pc: f64,
    pub xc: f64,
    pub rp: f64,
    pub ef: f64,
    pub total: f64,
}

/// Filtered noise Delta s^2 = 2B mean(S_ss) with the four-term
/// decomposition band-averaged term by term.
pub fn filtered_noise(
    laser: &LaserParams,
    mech: &Susceptibility,
    port_b: &QuadratureSpectra,
    extra: &ExtraForceSpectrum,
    filter: &BandFilter,
) -> Result<FilteredNoise> {
    filtered_noise_tol(laser, mech, port_b, extra, filter, 1e-12)
}

pub fn filtered_noise_tol(
    laser: &LaserParams,
    mech: &Susceptibility,
    port_b: &QuadratureSpectra,
    extra: &ExtraForceSpectrum,
    filter: &BandFilter,
    rel_tol: f64,
) -> Result<FilteredNoise> {
    let (lo, hi) = filter.support();
    if let Some(pole) = mech.pole_in(lo, hi) {
        return Err(Error::Singularity {
            omega: pole,
            reason: "pole inside the filter support".into(),
        });
    }
    let two_b = 2.0 * filter.bandwidth();
    let pc = two_b
        * filter.band_average_tol(
            |w| noise::interferometer_noise_spectrum(laser, mech, port_b, extra, w).map(|n| n.pc),
            rel_tol,
        )?;
    let xc = two_b
        * filter.band_average_tol(
            |w| noise::interferometer_noise_spectrum(laser, mech, port_b, extra, w).map(|n| n.xc),
            rel_tol,
        )?;
    let rp = two_b
        * filter.band_average_tol(
            |w| noise::interferometer_noise_spectrum(laser, mech, port_b, extra, w).map(|n| n.rp),
            rel_tol,
        )?;
    let ef = match extra {
        ExtraForceSpectrum::Zero => 0.0,
        _ => {
            two_b
                * filter.band_average_tol(
                    |w| {
                        noise::interferometer_noise_spectrum(laser, mech, port_b, extra, w)
                            .map(|n| n.ef)
                    },
                    rel_tol,
                )?
        }
    };
    Ok(FilteredNoise {
        bandwidth: filter.bandwidth(),
        pc,
        xc,
        rp,
        ef,
        total: pc + xc + rp + ef,
    })
}
