//! Shared helpers for the integration and acceptance suites: brute-force
//! oracles and randomized scenario generation.
//!
//! Compiled once per test target; not every target uses every helper.
#![allow(dead_code)]

pub mod oracle;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qnb_core::bandavg::BandFilter;
use qnb_core::mechanics::Susceptibility;
use qnb_core::noise::{ExtraForceSpectrum, LaserParams};
use qnb_core::spectra::QuadratureSpectra;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A randomized natural-units scenario kernel (laser, mechanics, filter).
#[derive(Debug, Clone)]
pub struct ScenarioKernel {
    pub laser: LaserParams,
    pub mech: Susceptibility,
    pub filter: BandFilter,
}

fn log_uniform<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    (rng.gen_range(lo.ln()..hi.ln())).exp()
}

/// Random filter around a signal frequency; width a small fraction of it.
pub fn random_filter<R: Rng>(rng: &mut R, omega_s: f64) -> BandFilter {
    match rng.gen_range(0..3) {
        0 => BandFilter::Delta {
            omega_s,
            b_label: log_uniform(rng, 1e-3, 5e-2) * omega_s,
        },
        1 => BandFilter::Gaussian {
            omega_s,
            sigma: log_uniform(rng, 1e-2, 5e-2) * omega_s,
        },
        _ => BandFilter::Rect {
            omega_s,
            halfwidth: log_uniform(rng, 1e-2, 1e-1) * omega_s,
        },
    }
}

/// Soft suspension: eigenfrequency and damping well below the signal
/// frequency, so the signal-fidelity condition holds on the band.
pub fn random_soft_mech<R: Rng>(rng: &mut R, omega_s: f64) -> Susceptibility {
    if rng.gen_bool(0.25) {
        Susceptibility::FreeMass {
            mass: log_uniform(rng, 0.5, 2.0),
        }
    } else {
        Susceptibility::DampedHarmonic {
            mass: log_uniform(rng, 0.5, 2.0),
            omega_m: log_uniform(rng, 1e-3, 5e-2) * omega_s,
            gamma: log_uniform(rng, 1e-3, 5e-2) * omega_s,
        }
    }
}

/// Damped harmonic with guaranteed dissipation (chi_I > 0 on the band),
/// for oracle comparisons that need attainable squeezing optima.
pub fn random_dissipative_mech<R: Rng>(rng: &mut R, omega_s: f64) -> Susceptibility {
    Susceptibility::DampedHarmonic {
        mass: log_uniform(rng, 0.5, 2.0),
        omega_m: log_uniform(rng, 1e-3, 0.5) * omega_s,
        gamma: log_uniform(rng, 1e-2, 0.3) * omega_s,
    }
}

/// Vacuum or a moderately squeezed static input state.
pub fn random_port_b<R: Rng>(rng: &mut R) -> QuadratureSpectra {
    if rng.gen_bool(0.3) {
        QuadratureSpectra::Vacuum
    } else {
        QuadratureSpectra::StaticSqueezed {
            r: rng.gen_range(0.0..1.5),
            theta: rng.gen_range(0.0..std::f64::consts::PI),
        }
    }
}

/// No extra force half the time, otherwise a white force spectrum.
pub fn random_extra<R: Rng>(rng: &mut R) -> ExtraForceSpectrum {
    if rng.gen_bool(0.5) {
        ExtraForceSpectrum::Zero
    } else {
        ExtraForceSpectrum::Constant {
            sff: log_uniform(rng, 1e-3, 1.0),
        }
    }
}

/// Filter-weighted mean of `f` by composite Simpson over the filter
/// support, independent of the adaptive quadrature inside the library.
/// `n` must be odd and >= 3; Delta filters degenerate to f(omega_s).
pub fn simpson_mean<F: Fn(f64) -> f64>(filter: &BandFilter, f: F, n: usize) -> f64 {
    let (lo, hi) = filter.support();
    if lo == hi {
        return f(filter.omega_s());
    }
    assert!(n >= 3 && n % 2 == 1, "simpson needs an odd point count");
    let h = (hi - lo) / (n - 1) as f64;
    let mut num = 0.0;
    let mut den = 0.0;
    for i in 0..n {
        let w = lo + h * i as f64;
        let coeff = if i == 0 || i == n - 1 {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        // a Rect gain is identically 1 on its support; evaluating it at
        // the edge nodes is rounding-sensitive and would cost an order of
        // convergence
        let g = match filter {
            BandFilter::Rect { .. } => 1.0,
            _ => filter.gain(w),
        };
        num += coeff * g * f(w);
        den += coeff * g;
    }
    num / den
}

/// Natural-units kernel with a soft suspension and an intensity within an
/// order of magnitude of the pointwise optimum at omega_s.
pub fn random_kernel<R: Rng>(rng: &mut R, dissipative: bool) -> ScenarioKernel {
    let omega_s = log_uniform(rng, 0.5, 2.0);
    let k0 = log_uniform(rng, 0.5, 2.0);
    let mech = if dissipative {
        random_dissipative_mech(rng, omega_s)
    } else {
        random_soft_mech(rng, omega_s)
    };
    let chi_mag = mech.chi(omega_s).unwrap().norm();
    let intensity = log_uniform(rng, 0.1, 10.0) / (4.0 * k0 * k0 * chi_mag);
    ScenarioKernel {
        laser: LaserParams::natural(k0, intensity).unwrap(),
        mech,
        filter: random_filter(rng, omega_s),
    }
}
