//! C ABI over the qnb core: parse a scenario from JSON into an opaque
//! handle, evaluate noise and strategy comparisons, and return results as
//! C strings or plain structs.
//!
//! Conventions:
//! - every fallible call returns a `QnbStatus`; `QNB_STATUS_OK` is 0 and
//!   the numeric values of the error variants match the CLI exit codes
//! - output parameters are written only on success
//! - strings returned through `char **` are owned by the library and must
//!   be released with `qnb_string_free`
//! - scenario handles must be released with `qnb_scenario_free`
//! - on error, `qnb_last_error_message` returns a description of the most
//!   recent failure on the calling thread

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::ptr;

use libc::c_char;

use qnb_core::bandavg::filtered_noise;
use qnb_core::report;
use qnb_core::scenario::{GridScale, GridSpec, Scenario};
use qnb_core::Error;

/// Status code of an FFI call. Error values mirror the CLI exit codes
/// (2 config, 3 numerical); null-argument and encoding failures get their
/// own codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QnbStatus {
    Ok = 0,
    ConfigError = 2,
    NumericalError = 3,
    NullArgument = 4,
    InvalidUtf8 = 5,
}

/// Opaque scenario handle.
pub struct QnbScenario {
    inner: Scenario,
}

/// Band-integrated noise decomposition, m^2.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QnbFilteredNoise {
    pub bandwidth: f64,
    pub photon_counting: f64,
    pub cross_correlation: f64,
    pub radiation_pressure: f64,
    pub extra_force: f64,
    pub total: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " "))
        .unwrap_or_else(|_| CString::new("invalid error message").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> QnbStatus {
    match err.exit_code() {
        2 => QnbStatus::ConfigError,
        _ => QnbStatus::NumericalError,
    }
}

fn fail(err: Error) -> QnbStatus {
    let status = status_of(&err);
    set_last_error(err.to_string());
    status
}

fn fail_null(name: &str) -> QnbStatus {
    set_last_error(format!("null argument: {name}"));
    QnbStatus::NullArgument
}

/// # Safety
/// `ptr` must be null or a valid NUL-terminated string.
unsafe fn read_str<'a>(ptr: *const c_char, name: &str) -> Result<&'a str, QnbStatus> {
    if ptr.is_null() {
        return Err(fail_null(name));
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_last_error(format!("argument {name} is not valid UTF-8"));
        QnbStatus::InvalidUtf8
    })
}

fn emit_string(text: String, out: *mut *mut c_char) -> QnbStatus {
    match CString::new(text) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            QnbStatus::Ok
        }
        Err(_) => {
            set_last_error("result contained an interior NUL byte".into());
            QnbStatus::InvalidUtf8
        }
    }
}

/// Description of the most recent error on this thread, or NULL if none.
/// The caller owns the returned string and must free it with
/// `qnb_string_free`.
#[no_mangle]
pub extern "C" fn qnb_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|slot| match slot.borrow().as_ref() {
        Some(c) => c.clone().into_raw(),
        None => ptr::null_mut(),
    })
}

/// Release a string returned by this library. NULL is a no-op.
///
/// # Safety
/// `s` must be NULL or a pointer previously returned by this library and
/// not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qnb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse and validate a scenario from a JSON document. On success writes
/// a new handle to `out`.
///
/// # Safety
/// `json` must be a valid NUL-terminated string; `out` must be a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn qnb_scenario_parse(
    json: *const c_char,
    out: *mut *mut QnbScenario,
) -> QnbStatus {
    if out.is_null() {
        return fail_null("out");
    }
    let text = match read_str(json, "json") {
        Ok(t) => t,
        Err(status) => return status,
    };
    match Scenario::from_json(text) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(QnbScenario { inner }));
            QnbStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Release a scenario handle. NULL is a no-op.
///
/// # Safety
/// `scenario` must be NULL or a handle from `qnb_scenario_parse` not yet
/// freed.
#[no_mangle]
pub unsafe extern "C" fn qnb_scenario_free(scenario: *mut QnbScenario) {
    if !scenario.is_null() {
        drop(Box::from_raw(scenario));
    }
}

/// Band-integrated noise of the scenario as configured (no optimization).
///
/// # Safety
/// `scenario` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qnb_filtered_noise(
    scenario: *const QnbScenario,
    out: *mut QnbFilteredNoise,
) -> QnbStatus {
    if scenario.is_null() {
        return fail_null("scenario");
    }
    if out.is_null() {
        return fail_null("out");
    }
    let s = &(*scenario).inner;
    let laser = match s.laser() {
        Ok(l) => l,
        Err(e) => return fail(e),
    };
    match filtered_noise(&laser, &s.mechanics, &s.port_b, &s.extra_force, &s.filter) {
        Ok(n) => {
            *out = QnbFilteredNoise {
                bandwidth: n.bandwidth,
                photon_counting: n.pc,
                cross_correlation: n.xc,
                radiation_pressure: n.rp,
                extra_force: n.ef,
                total: n.total,
            };
            QnbStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Run the configured strategies and return the comparison report as a
/// JSON string (same document the CLI `compare` subcommand emits).
///
/// # Safety
/// `scenario` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qnb_compare_json(
    scenario: *const QnbScenario,
    out: *mut *mut c_char,
) -> QnbStatus {
    if scenario.is_null() {
        return fail_null("scenario");
    }
    if out.is_null() {
        return fail_null("out");
    }
    let value = match report::run_compare(&(*scenario).inner) {
        Ok(v) => v,
        Err(e) => return fail(e),
    };
    match report::to_json_string(&value) {
        Ok(text) => emit_string(text, out),
        Err(e) => fail(e),
    }
}

/// Tabulate the noise budget as CSV (`omega,pc,xc,rp,ef,total`) over a
/// frequency grid of `count` points from `min` to `max`, log-spaced when
/// `log_scale` is nonzero.
///
/// # Safety
/// `scenario` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qnb_spectrum_csv(
    scenario: *const QnbScenario,
    min: f64,
    max: f64,
    count: usize,
    log_scale: i32,
    out: *mut *mut c_char,
) -> QnbStatus {
    if scenario.is_null() {
        return fail_null("scenario");
    }
    if out.is_null() {
        return fail_null("out");
    }
    let grid = GridSpec {
        min,
        max,
        count,
        scale: if log_scale != 0 {
            GridScale::Log
        } else {
            GridScale::Lin
        },
    };
    if let Err(e) = grid.validate() {
        return fail(e);
    }
    match report::run_spectrum(&(*scenario).inner, Some(grid)) {
        Ok(text) => emit_string(text, out),
        Err(e) => fail(e),
    }
}
