//! C ABI over the `wellpoint` engine.
//!
//! Every fallible call returns a [`WpStatus`]; on failure the message is
//! available from [`wp_last_error`] on the same thread. Handles are opaque
//! and owned by the caller, who releases them with the matching `_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use wellpoint::comparison::{check_proposition_equivalence, comparison_functors};
use wellpoint::dsl::{self, Code, Workspace};
use wellpoint::localise::{algebra_structure, check_well_pointed, localised_hom_carrier, WellPointedEndo};
use wellpoint::stabilise::DEFAULT_WINDOW;
use wellpoint::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WpStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Syntax = 3,
    Undefined = 4,
    Conflict = 5,
    Incomplete = 6,
    Invalid = 7,
    Duplicate = 8,
    NotWellPointed = 9,
    OutOfRange = 10,
    Unsupported = 11,
    LimitExceeded = 12,
    Internal = 13,
}

/// A parsed and elaborated specification.
pub struct WpWorkspace(Workspace);

/// A well-pointed endofunctor `(Ω, θ)` on a finite category.
pub struct WpEndo(WellPointedEndo);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = s);
}

fn fail(status: WpStatus, msg: impl Into<String>) -> WpStatus {
    set_error(msg);
    status
}

fn code_status(c: Code) -> WpStatus {
    match c {
        Code::E001 => WpStatus::Syntax,
        Code::E002 => WpStatus::Undefined,
        Code::E003 => WpStatus::Conflict,
        Code::E004 => WpStatus::Incomplete,
        Code::E005 => WpStatus::Invalid,
        Code::E006 => WpStatus::Duplicate,
    }
}

fn error_status(e: &Error) -> WpStatus {
    match e {
        Error::UnknownObject(_) | Error::UnknownMorphism(_) => WpStatus::Undefined,
        Error::Precondition(m) if m.starts_with("θΩ") => WpStatus::NotWellPointed,
        Error::Unsupported(_) => WpStatus::Unsupported,
        Error::LimitExceeded { .. } => WpStatus::LimitExceeded,
        Error::OracleRefused(_) => WpStatus::Internal,
        _ => WpStatus::Invalid,
    }
}

fn from_error(e: Error) -> WpStatus {
    fail(error_status(&e), e.to_string())
}

fn guard(f: impl FnOnce() -> WpStatus) -> WpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => {
            if s == WpStatus::Ok {
                set_error("");
            }
            s
        }
        Err(_) => fail(WpStatus::Internal, "internal panic"),
    }
}

unsafe fn opt_str<'a>(p: *const c_char) -> Result<Option<&'a str>, WpStatus> {
    if p.is_null() {
        return Ok(None);
    }
    CStr::from_ptr(p).to_str().map(Some).map_err(|_| fail(WpStatus::InvalidUtf8, "string is not valid UTF-8"))
}

/// Message for the last failing call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn wp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

#[no_mangle]
pub extern "C" fn wp_schema_version() -> u32 {
    wellpoint::SCHEMA_VERSION
}

/// Parses and builds DSL source. Diagnostics are joined into the last error,
/// one `line:col: error[E00x]: message` per line; the status reflects the
/// first one.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wp_workspace_parse(text: *const c_char, out: *mut *mut WpWorkspace) -> WpStatus {
    guard(|| {
        if out.is_null() {
            return fail(WpStatus::NullArgument, "out is null");
        }
        *out = ptr::null_mut();
        let text = match opt_str(text) {
            Ok(Some(t)) => t,
            Ok(None) => return fail(WpStatus::NullArgument, "text is null"),
            Err(s) => return s,
        };
        match dsl::load(text) {
            Ok(ws) => {
                *out = Box::into_raw(Box::new(WpWorkspace(ws)));
                WpStatus::Ok
            }
            Err(diags) => {
                let msg = diags.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("\n");
                fail(code_status(diags[0].code), msg)
            }
        }
    })
}

/// # Safety
/// `ws` must be null or a handle from [`wp_workspace_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wp_workspace_free(ws: *mut WpWorkspace) {
    if !ws.is_null() {
        drop(Box::from_raw(ws));
    }
}

/// Extracts the pointed endofunctor named `endo` with pointing `point`.
/// Either name may be null when the workspace has exactly one candidate.
///
/// # Safety
/// `ws` must be a live handle, `out` a valid pointer, and the names null or
/// NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn wp_workspace_endo(
    ws: *const WpWorkspace,
    endo: *const c_char,
    point: *const c_char,
    out: *mut *mut WpEndo,
) -> WpStatus {
    guard(|| {
        if ws.is_null() || out.is_null() {
            return fail(WpStatus::NullArgument, "workspace or out is null");
        }
        *out = ptr::null_mut();
        let (endo, point) = match (opt_str(endo), opt_str(point)) {
            (Ok(e), Ok(p)) => (e, p),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        match (*ws).0.well_pointed(endo, point) {
            Ok(wp) => {
                *out = Box::into_raw(Box::new(WpEndo(wp)));
                WpStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `e` must be null or a handle from [`wp_workspace_endo`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wp_endo_free(e: *mut WpEndo) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Number of objects of the underlying category, or 0 for a null handle.
///
/// # Safety
/// `e` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn wp_endo_object_count(e: *const WpEndo) -> usize {
    if e.is_null() {
        return 0;
    }
    (*e).0.category().object_count()
}

unsafe fn object<'a>(e: *const WpEndo, x: usize) -> Result<&'a WellPointedEndo, WpStatus> {
    if e.is_null() {
        return Err(fail(WpStatus::NullArgument, "endo is null"));
    }
    let wp = &(*e).0;
    if x >= wp.category().object_count() {
        return Err(fail(WpStatus::OutOfRange, format!("object index {x} out of range")));
    }
    Ok(wp)
}

/// Writes whether object `x` carries an Ω-algebra structure.
///
/// # Safety
/// `e` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wp_endo_is_algebra(e: *const WpEndo, x: usize, out: *mut bool) -> WpStatus {
    guard(|| {
        if out.is_null() {
            return fail(WpStatus::NullArgument, "out is null");
        }
        match object(e, x) {
            Ok(wp) => {
                *out = algebra_structure(wp, x).is_some();
                WpStatus::Ok
            }
            Err(s) => s,
        }
    })
}

/// Writes the size (Set) or dimension (Vect) of `L_Ω C(x, y)`.
///
/// # Safety
/// `e` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wp_endo_localised_hom_size(e: *const WpEndo, x: usize, y: usize, out: *mut usize) -> WpStatus {
    guard(|| {
        if out.is_null() {
            return fail(WpStatus::NullArgument, "out is null");
        }
        let wp = match object(e, x).and_then(|_| object(e, y)) {
            Ok(wp) => wp,
            Err(s) => return s,
        };
        match localised_hom_carrier(wp, x, y) {
            Ok(c) => {
                *out = c.size();
                WpStatus::Ok
            }
            Err(err) => from_error(err),
        }
    })
}

/// Writes whether θ commutes with Ω; always true for a handle built by
/// [`wp_workspace_endo`].
///
/// # Safety
/// `e` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wp_endo_is_well_pointed(e: *const WpEndo, out: *mut bool) -> WpStatus {
    guard(|| {
        if e.is_null() || out.is_null() {
            return fail(WpStatus::NullArgument, "endo or out is null");
        }
        let wp = &(*e).0;
        match check_well_pointed(&wp.omega, &wp.theta) {
            Ok(r) => {
                *out = r.well_pointed;
                WpStatus::Ok
            }
            Err(err) => from_error(err),
        }
    })
}

/// Runs the stabilisation/spectra comparison and writes the verdict.
/// A `window` of 0 selects the default.
///
/// # Safety
/// `e` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wp_endo_compare(e: *const WpEndo, window: i64, out: *mut bool) -> WpStatus {
    guard(|| {
        if e.is_null() || out.is_null() {
            return fail(WpStatus::NullArgument, "endo or out is null");
        }
        let w = if window == 0 { DEFAULT_WINDOW } else { window };
        match comparison_functors(&(*e).0, w) {
            Ok(c) => {
                *out = check_proposition_equivalence(&c).verdict();
                WpStatus::Ok
            }
            Err(err) => from_error(err),
        }
    })
}
