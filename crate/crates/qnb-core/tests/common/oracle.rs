//! Brute-force reference minimizers used to validate the closed-form
//! optimizers. Grid search plus bracket refinement; deliberately
//! independent of the closed-form paths they check.

use qnb_core::bandavg::{filtered_noise, BandFilter};
use qnb_core::mechanics::Susceptibility;
use qnb_core::noise::{ExtraForceSpectrum, LaserParams};
use qnb_core::spectra::{QuadratureSpectra, SqueezeParams};

#[derive(Debug, Clone)]
pub struct GridSearchSpec {
    pub r_max: f64,
    pub log_i_range: (f64, f64),
    pub coarse: usize,
    pub passes: usize,
    pub tol: f64,
}

impl Default for GridSearchSpec {
    fn default() -> Self {
        GridSearchSpec {
            r_max: 12.0,
            log_i_range: (-4.0, 4.0),
            coarse: 41,
            passes: 6,
            tol: 1e-8,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct PointwiseMin {
    pub value: f64,
    pub r: f64,
    pub theta: f64,
    /// final bracket half-width in (r, theta)
    pub achieved: (f64, f64),
}

/// Value of the pointwise quadratic form a S_qq + c S_pq + d S_pp at
/// squeezing (r, theta).
fn form_value(a: f64, c: f64, d: f64, r: f64, theta: f64) -> f64 {
    let s = SqueezeParams { r, theta }.spectra();
    a * s.sqq + c * s.spq + d * s.spp
}

/// Golden-section minimization of a function unimodal on [a, b].
/// Returns (argmin, min).
fn golden<F: FnMut(f64) -> f64>(mut f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - phi * (b - a);
    let mut x2 = a + phi * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while (b - a) > tol {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Exhaustive coarse grid over (r, theta) in [0, r_max] x [0, 2pi),
/// followed by cyclic coordinate descent with golden-section line
/// searches. The value is smooth, strictly convex in r for fixed theta
/// and sinusoidal in 2 theta for fixed r, so each line search sees a
/// unimodal slice once the bracket sits within half a period of the
/// incumbent.
pub fn oracle_min_pointwise(a: f64, c: f64, d: f64, spec: &GridSearchSpec) -> PointwiseMin {
    assert!(a > 0.0 && d > 0.0, "need positive diagonal coefficients");
    let n = spec.coarse.max(3);
    let mut best = (f64::INFINITY, 0.0, 0.0);
    for i in 0..n {
        let r = spec.r_max * i as f64 / (n - 1) as f64;
        for j in 0..n {
            let theta = std::f64::consts::TAU * j as f64 / (n - 1) as f64;
            let v = form_value(a, c, d, r, theta);
            if v < best.0 {
                best = (v, r, theta);
            }
        }
    }
    for _ in 0..spec.passes.max(2) {
        let (theta, _) = golden(
            |t| form_value(a, c, d, best.1, t),
            best.2 - 0.5,
            best.2 + 0.5,
            spec.tol,
        );
        let (r, v) = golden(
            |r| form_value(a, c, d, r, theta),
            0.0,
            spec.r_max,
            spec.tol,
        );
        if v < best.0 {
            best = (v, r, theta);
        }
    }
    PointwiseMin {
        value: best.0,
        r: best.1,
        theta: best.2,
        achieved: (spec.tol, spec.tol),
    }
}

/// Filtered vacuum noise as a function of intensity.
fn vacuum_noise_at(
    laser: &LaserParams,
    mech: &Susceptibility,
    port_b: &QuadratureSpectra,
    extra: &ExtraForceSpectrum,
    filter: &BandFilter,
    intensity: f64,
) -> f64 {
    filtered_noise(&laser.with_intensity(intensity), mech, port_b, extra, filter)
        .expect("oracle scenario must be evaluable")
        .total
}

/// Log-grid scan over the intensity followed by golden-section
/// refinement. Returns (min filtered noise, argmin intensity).
pub fn oracle_min_intensity(
    laser: &LaserParams,
    mech: &Susceptibility,
    port_b: &QuadratureSpectra,
    extra: &ExtraForceSpectrum,
    filter: &BandFilter,
    spec: &GridSearchSpec,
) -> (f64, f64) {
    let eval = |log_i: f64| {
        vacuum_noise_at(laser, mech, port_b, extra, filter, 10f64.powf(log_i))
    };
    let n = spec.coarse.max(3);
    let (lo, hi) = spec.log_i_range;
    let mut best = (f64::INFINITY, lo);
    for i in 0..n {
        let x = lo + (hi - lo) * i as f64 / (n - 1) as f64;
        let v = eval(x);
        if v < best.0 {
            best = (v, x);
        }
    }
    let step = (hi - lo) / (n - 1) as f64;
    let mut a = (best.1 - step).max(lo);
    let mut b = (best.1 + step).min(hi);
    // golden section on the convex-in-log bracket
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - phi * (b - a);
    let mut x2 = a + phi * (b - a);
    let mut f1 = eval(x1);
    let mut f2 = eval(x2);
    while (b - a) > spec.tol {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = eval(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = eval(x2);
        }
    }
    let log_i = 0.5 * (a + b);
    (eval(log_i), 10f64.powf(log_i))
}

/// 3-parameter grid search over (r, theta, log10 I) of the band-integrated
/// quantum noise with frequency-constant squeezing, refined around the
/// incumbent. Returns the best value found. The band averages of chi_R
/// and |chi|^2 are computed numerically once; no stationarity condition
/// or closed-form minimum enters.
pub fn oracle_min_broadband(
    laser: &LaserParams,
    mech: &Susceptibility,
    filter: &BandFilter,
    spec: &GridSearchSpec,
) -> f64 {
    let b = filter.bandwidth();
    let mr = filter
        .band_average(|w| mech.chi(w).map(|chi| chi.re))
        .expect("band average of chi_R");
    let m2 = filter
        .band_average(|w| mech.chi(w).map(|chi| chi.norm_sqr()))
        .expect("band average of |chi|^2");
    let (hbar, k0) = (laser.hbar, laser.k0);
    let eval = |r: f64, theta: f64, log_i: f64| {
        let s = SqueezeParams { r, theta }.spectra();
        let intensity = 10f64.powf(log_i);
        2.0 * b / (4.0 * k0 * k0 * intensity) * s.sqq
            + 4.0 * b * hbar * mr * s.spq
            + 8.0 * b * hbar * hbar * k0 * k0 * intensity * m2 * s.spp
    };
    let n = spec.coarse.max(3);
    let mut best = (f64::INFINITY, 0.0, 0.0, 0.0);
    for i in 0..n {
        let r = spec.r_max * i as f64 / (n - 1) as f64;
        for j in 0..n {
            let theta = std::f64::consts::TAU * j as f64 / (n - 1) as f64;
            for k in 0..n {
                let log_i = spec.log_i_range.0
                    + (spec.log_i_range.1 - spec.log_i_range.0) * k as f64 / (n - 1) as f64;
                let v = eval(r, theta, log_i);
                if v < best.0 {
                    best = (v, r, theta, log_i);
                }
            }
        }
    }
    // cyclic coordinate descent: each slice (theta with period constraints,
    // r by convexity, log I by convexity) is unimodal
    for _ in 0..spec.passes.max(6) {
        let (theta, _) = golden(
            |t| eval(best.1, t, best.3),
            best.2 - 0.5,
            best.2 + 0.5,
            spec.tol,
        );
        let (r, _) = golden(|r| eval(r, theta, best.3), 0.0, spec.r_max, spec.tol);
        let (log_i, v) = golden(
            |x| eval(r, theta, x),
            spec.log_i_range.0,
            spec.log_i_range.1,
            spec.tol,
        );
        if v < best.0 {
            best = (v, r, theta, log_i);
        }
    }
    best.0
}
