//! C ABI over the kfrac verification suites.
//!
//! Reports are returned as opaque handles; inspect them through the accessor
//! functions or serialize them to JSON strings. Every returned string must be
//! released with `kfrac_string_free`, every handle with its matching `_free`.

use std::ffi::CString;
use std::os::raw::c_char;
use std::ptr;

use num_complex::Complex64 as C64;

use kfrac::coherent;
use kfrac::fracsusy;
use kfrac::grassmann;
use kfrac::kfermion;
use kfrac::quon;
use kfrac::report::{CheckReport, LimitReport, SpectrumReport};

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum KfracStatus {
    /// The call succeeded.
    Ok = 0,
    /// A pointer argument was null.
    NullArgument = 1,
    /// An argument was outside its documented domain.
    InvalidArgument = 2,
    /// The computation reported a domain error (see `kfrac_last_error`).
    ComputationFailed = 3,
}

/// Verification suite selector for `kfrac_verify`.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum KfracSuite {
    Algebra = 0,
    Grassmann = 1,
    Coherent = 2,
    Susy = 3,
    All = 4,
}

/// Opaque check-report handle.
pub struct KfracCheckReport(CheckReport);
/// Opaque spectrum-report handle.
pub struct KfracSpectrumReport(SpectrumReport);
/// Opaque limit-report handle.
pub struct KfracLimitReport(LimitReport);

thread_local! {
    static LAST_ERROR: std::cell::RefCell<Option<CString>> = const { std::cell::RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg).unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

/// Last error message for this thread, or null if none. Borrowed pointer;
/// valid until the next failing call on the same thread. Do not free.
#[no_mangle]
pub extern "C" fn kfrac_last_error() -> *const c_char {
    LAST_ERROR.with(|e| match &*e.borrow() {
        Some(c) => c.as_ptr(),
        None => ptr::null(),
    })
}

fn to_cstring(s: String) -> *mut c_char {
    match CString::new(s) {
        Ok(c) => c.into_raw(),
        Err(_) => ptr::null_mut(),
    }
}

/// Release a string returned by this library.
#[no_mangle]
pub extern "C" fn kfrac_string_free(s: *mut c_char) {
    if !s.is_null() {
        unsafe { drop(CString::from_raw(s)) };
    }
}

fn run_suite(
    k: usize,
    boson_cutoff: usize,
    tol: f64,
    suite: KfracSuite,
) -> Result<CheckReport, kfrac::KfracError> {
    let mut report = CheckReport::new(format!("suite k={k}"));
    if matches!(suite, KfracSuite::Algebra | KfracSuite::All) {
        report.merge(kfermion::verify_fk_relations(k, tol)?);
        report.merge(fracsusy::verify_weyl_heisenberg(k, boson_cutoff, tol)?);
    }
    if matches!(suite, KfracSuite::Grassmann | KfracSuite::All) {
        report.merge(grassmann::verify_realization(k, tol)?);
    }
    if matches!(suite, KfracSuite::Coherent | KfracSuite::All) {
        report.merge(coherent::check_eigenstate(k, tol)?);
        report.merge(coherent::overlap_exponential_check(k, tol)?);
        report.merge(coherent::overcompleteness_check(k, tol)?);
        let z = C64::new(0.7, 0.4);
        report.merge(coherent::eigenstate_bf_check(z, k, boson_cutoff)?);
        report.merge(coherent::vourdas_decomposition_check(z, k, boson_cutoff, 1e-12)?);
    }
    if matches!(suite, KfracSuite::Susy | KfracSuite::All) {
        report.merge(fracsusy::verify_susy(k, boson_cutoff, tol)?);
    }
    Ok(report)
}

/// Run verification suites for one deformation order.
///
/// `k` in 2..=12, `boson_cutoff >= k + 3`, `tol > 0`. On success writes a
/// handle to `out` and returns `Ok`; the handle must be released with
/// `kfrac_check_report_free`.
#[no_mangle]
pub extern "C" fn kfrac_verify(
    k: usize,
    boson_cutoff: usize,
    tol: f64,
    suite: KfracSuite,
    out: *mut *mut KfracCheckReport,
) -> KfracStatus {
    if out.is_null() {
        return KfracStatus::NullArgument;
    }
    if !(2..=12).contains(&k) || boson_cutoff < k + 3 || !(tol > 0.0) {
        return KfracStatus::InvalidArgument;
    }
    match run_suite(k, boson_cutoff, tol, suite) {
        Ok(report) => {
            unsafe { *out = Box::into_raw(Box::new(KfracCheckReport(report))) };
            KfracStatus::Ok
        }
        Err(e) => {
            set_error(e.to_string());
            KfracStatus::ComputationFailed
        }
    }
}

/// 1 if every check in the report passed, 0 otherwise.
#[no_mangle]
pub extern "C" fn kfrac_check_report_pass(report: *const KfracCheckReport) -> i32 {
    if report.is_null() {
        return 0;
    }
    unsafe { &*report }.0.overall_pass() as i32
}

/// Number of individual checks in the report.
#[no_mangle]
pub extern "C" fn kfrac_check_report_len(report: *const KfracCheckReport) -> usize {
    if report.is_null() {
        return 0;
    }
    unsafe { &*report }.0.checks.len()
}

/// Largest residual over all residual-type checks.
#[no_mangle]
pub extern "C" fn kfrac_check_report_max_residual(report: *const KfracCheckReport) -> f64 {
    if report.is_null() {
        return f64::NAN;
    }
    unsafe { &*report }.0.max_residual()
}

/// Serialize the report to a JSON string (caller frees with
/// `kfrac_string_free`). Returns null on allocation failure.
#[no_mangle]
pub extern "C" fn kfrac_check_report_to_json(report: *const KfracCheckReport) -> *mut c_char {
    if report.is_null() {
        return ptr::null_mut();
    }
    let json = serde_json::to_string(&unsafe { &*report }.0).unwrap_or_default();
    to_cstring(json)
}

/// Release a check-report handle.
#[no_mangle]
pub extern "C" fn kfrac_check_report_free(report: *mut KfracCheckReport) {
    if !report.is_null() {
        unsafe { drop(Box::from_raw(report)) };
    }
}

/// Compute the oscillator spectrum. `k` in 2..=12, `boson_cutoff >= k + 3`.
#[no_mangle]
pub extern "C" fn kfrac_spectrum(
    k: usize,
    boson_cutoff: usize,
    out: *mut *mut KfracSpectrumReport,
) -> KfracStatus {
    if out.is_null() {
        return KfracStatus::NullArgument;
    }
    if !(2..=12).contains(&k) || boson_cutoff < k + 3 {
        return KfracStatus::InvalidArgument;
    }
    match fracsusy::spectrum(k, boson_cutoff) {
        Ok(report) => {
            unsafe { *out = Box::into_raw(Box::new(KfracSpectrumReport(report))) };
            KfracStatus::Ok
        }
        Err(e) => {
            set_error(e.to_string());
            KfracStatus::ComputationFailed
        }
    }
}

/// Number of levels in the spectrum report.
#[no_mangle]
pub extern "C" fn kfrac_spectrum_len(report: *const KfracSpectrumReport) -> usize {
    if report.is_null() {
        return 0;
    }
    unsafe { &*report }.0.levels.len()
}

/// Energy and degeneracy of level `index`. Returns `InvalidArgument` if the
/// index is out of range; output pointers may be null if unwanted.
#[no_mangle]
pub extern "C" fn kfrac_spectrum_level(
    report: *const KfracSpectrumReport,
    index: usize,
    energy: *mut f64,
    degeneracy: *mut usize,
) -> KfracStatus {
    if report.is_null() {
        return KfracStatus::NullArgument;
    }
    let r = &unsafe { &*report }.0;
    let Some(level) = r.levels.get(index) else {
        return KfracStatus::InvalidArgument;
    };
    if !energy.is_null() {
        unsafe { *energy = level.energy };
    }
    if !degeneracy.is_null() {
        unsafe { *degeneracy = level.degeneracy };
    }
    KfracStatus::Ok
}

/// Uniform spacing between adjacent levels.
#[no_mangle]
pub extern "C" fn kfrac_spectrum_spacing(report: *const KfracSpectrumReport) -> f64 {
    if report.is_null() {
        return f64::NAN;
    }
    unsafe { &*report }.0.spacing
}

/// Serialize the spectrum report to JSON (caller frees the string).
#[no_mangle]
pub extern "C" fn kfrac_spectrum_to_json(report: *const KfracSpectrumReport) -> *mut c_char {
    if report.is_null() {
        return ptr::null_mut();
    }
    let json = serde_json::to_string(&unsafe { &*report }.0).unwrap_or_default();
    to_cstring(json)
}

/// Release a spectrum-report handle.
#[no_mangle]
pub extern "C" fn kfrac_spectrum_free(report: *mut KfracSpectrumReport) {
    if !report.is_null() {
        unsafe { drop(Box::from_raw(report)) };
    }
}

/// Run the quon-limit study over an epsilon ladder of length `len`.
/// Each epsilon must lie in (0, 0.5).
#[no_mangle]
pub extern "C" fn kfrac_quon_limit(
    k: usize,
    epsilons: *const f64,
    len: usize,
    boson_cutoff: usize,
    out: *mut *mut KfracLimitReport,
) -> KfracStatus {
    if out.is_null() || epsilons.is_null() {
        return KfracStatus::NullArgument;
    }
    if !(2..=12).contains(&k) || boson_cutoff < k + 3 || len == 0 {
        return KfracStatus::InvalidArgument;
    }
    let eps = unsafe { std::slice::from_raw_parts(epsilons, len) };
    match quon::limit_study(k, eps, boson_cutoff) {
        Ok(report) => {
            unsafe { *out = Box::into_raw(Box::new(KfracLimitReport(report))) };
            KfracStatus::Ok
        }
        Err(e) => {
            set_error(e.to_string());
            KfracStatus::ComputationFailed
        }
    }
}

/// 1 if the deviations decrease monotonically and the operators converge
/// entrywise, 0 otherwise.
#[no_mangle]
pub extern "C" fn kfrac_limit_pass(report: *const KfracLimitReport) -> i32 {
    if report.is_null() {
        return 0;
    }
    unsafe { &*report }.0.pass() as i32
}

/// Serialize the limit report to JSON (caller frees the string).
#[no_mangle]
pub extern "C" fn kfrac_limit_to_json(report: *const KfracLimitReport) -> *mut c_char {
    if report.is_null() {
        return ptr::null_mut();
    }
    let json = serde_json::to_string(&unsafe { &*report }.0).unwrap_or_default();
    to_cstring(json)
}

/// Release a limit-report handle.
#[no_mangle]
pub extern "C" fn kfrac_limit_free(report: *mut KfracLimitReport) {
    if !report.is_null() {
        unsafe { drop(Box::from_raw(report)) };
    }
}

/// Crate version as a borrowed static string. Do not free.
#[no_mangle]
pub extern "C" fn kfrac_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}
