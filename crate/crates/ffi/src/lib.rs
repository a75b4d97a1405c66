//! C interface to orbitlift.
//!
//! Tableaux cross the boundary as opaque handles built from JSON. Every call
//! returns an `OrbitliftStatus`; on anything other than `ORBITLIFT_STATUS_OK`
//! a description is available from `orbitlift_last_error` on the same thread.
//! Strings handed out by the library must be released with
//! `orbitlift_string_free`, handles with `orbitlift_tableau_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use orbitlift::cli::validate_spec;
use orbitlift::dualpair::build_moment_lift;
use orbitlift::tableaux::TableauSpec;
use orbitlift::verify::{verify_all, VerifyOptions};

/// Result of every exported call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitliftStatus {
    Ok = 0,
    /// The computation ran but at least one check failed.
    CheckFailed = 1,
    /// Malformed JSON, an invalid tableau or an impossible request.
    InvalidInput = 2,
    NullPointer = 3,
    InvalidUtf8 = 4,
    /// A Rust panic was caught at the boundary.
    Internal = 5,
}

/// A tableau together with its sign epsilon.
pub struct OrbitliftTableau {
    spec: TableauSpec,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

/// Runs `f`, turning panics into `Internal` and recording the message.
fn guard(f: impl FnOnce() -> Result<OrbitliftStatus, (OrbitliftStatus, String)>) -> OrbitliftStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            OrbitliftStatus::Internal
        }
    }
}

fn invalid(e: impl std::fmt::Display) -> (OrbitliftStatus, String) {
    (OrbitliftStatus::InvalidInput, e.to_string())
}

fn null(what: &str) -> (OrbitliftStatus, String) {
    (OrbitliftStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (OrbitliftStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| (OrbitliftStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn handle<'a>(p: *const OrbitliftTableau) -> Result<&'a OrbitliftTableau, (OrbitliftStatus, String)> {
    p.as_ref().ok_or_else(|| null("tableau"))
}

unsafe fn give_string(out: *mut *mut c_char, s: String) -> Result<(), (OrbitliftStatus, String)> {
    let c = CString::new(s).map_err(|_| (OrbitliftStatus::Internal, "output contains a NUL byte".to_string()))?;
    *out = c.into_raw();
    Ok(())
}

fn status_of(code: i32) -> OrbitliftStatus {
    match code {
        0 => OrbitliftStatus::Ok,
        1 => OrbitliftStatus::CheckFailed,
        _ => OrbitliftStatus::InvalidInput,
    }
}

/// Parses a tableau document (`{"epsilon", "algebra"?, "rows"}`).
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn orbitlift_tableau_from_json(json: *const c_char, out: *mut *mut OrbitliftTableau) -> OrbitliftStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let text = read_str(json, "json")?;
        let value: serde_json::Value = serde_json::from_str(text).map_err(invalid)?;
        let spec = TableauSpec::from_json(&value).map_err(invalid)?;
        *out = Box::into_raw(Box::new(OrbitliftTableau { spec }));
        Ok(OrbitliftStatus::Ok)
    })
}

/// Releases a handle. Null is accepted.
///
/// # Safety
/// `t` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn orbitlift_tableau_free(t: *mut OrbitliftTableau) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Number of boxes, i.e. the dimension of the module the tableau describes.
///
/// # Safety
/// `t` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn orbitlift_tableau_size(t: *const OrbitliftTableau, out: *mut usize) -> OrbitliftStatus {
    guard(|| {
        let t = handle(t)?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = t.spec.tableau.size();
        Ok(OrbitliftStatus::Ok)
    })
}

/// Serializes the tableau back to JSON.
///
/// # Safety
/// `t` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn orbitlift_tableau_to_json(t: *const OrbitliftTableau, out: *mut *mut c_char) -> OrbitliftStatus {
    guard(|| {
        let t = handle(t)?;
        if out.is_null() {
            return Err(null("out"));
        }
        give_string(out, t.spec.to_json().to_string())?;
        Ok(OrbitliftStatus::Ok)
    })
}

/// Checks admissibility, the sl2 relations and the Jordan type.
///
/// Writes the JSON report to `out` and returns `CHECK_FAILED` when some
/// check fails.
///
/// # Safety
/// `t` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn orbitlift_tableau_validate(t: *const OrbitliftTableau, out: *mut *mut c_char) -> OrbitliftStatus {
    guard(|| {
        let t = handle(t)?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let outcome = validate_spec(&t.spec);
        give_string(out, outcome.text)?;
        Ok(status_of(outcome.code))
    })
}

/// Lifts the tableau to a target of dimension `dim_vtilde` (0 for the
/// smallest one) and checks the moment-map identities of the lift.
///
/// On success `out` receives a new handle for the lifted tableau.
///
/// # Safety
/// `t` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn orbitlift_tableau_lift(
    t: *const OrbitliftTableau,
    dim_vtilde: usize,
    out: *mut *mut OrbitliftTableau,
) -> OrbitliftStatus {
    guard(|| {
        let t = handle(t)?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let dim = (dim_vtilde > 0).then_some(dim_vtilde);
        let lift = build_moment_lift(&t.spec.tableau, t.spec.epsilon, dim, None).map_err(invalid)?;
        let checks = lift.checks().map_err(invalid)?;
        if !checks.all() {
            return Err((OrbitliftStatus::CheckFailed, format!("lift checks failed: {checks:?}")));
        }
        let spec = TableauSpec { epsilon: -t.spec.epsilon, tableau: lift.lifted().clone() };
        *out = Box::into_raw(Box::new(OrbitliftTableau { spec }));
        Ok(OrbitliftStatus::Ok)
    })
}

/// Runs every suite on the generated corpus and writes the JSON-lines report.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn orbitlift_verify_all(
    seed: u64,
    samples: usize,
    max_part: usize,
    out: *mut *mut c_char,
) -> OrbitliftStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let opts = VerifyOptions { seed, samples, max_size: max_part, random_max_size: max_part.min(4), ..Default::default() };
        let report = verify_all(&opts, None).map_err(invalid)?;
        give_string(out, report.to_jsonl())?;
        Ok(if report.passed() { OrbitliftStatus::Ok } else { OrbitliftStatus::CheckFailed })
    })
}

/// Message for the last failed call on this thread, or null.
///
/// The pointer stays valid until the next call into the library on the
/// same thread; do not free it.
#[no_mangle]
pub extern "C" fn orbitlift_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by the library. Null is accepted.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn orbitlift_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
