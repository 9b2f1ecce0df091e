//! C ABI over the `dhyper` workbench.
//!
//! Handles are opaque and owned by the caller until passed to the matching
//! `_free` function. Strings returned through `char **` outputs are owned by
//! the caller and released with `dh_string_free`. Every fallible function
//! returns a `DhStatus`; on failure `dh_last_error` describes the cause.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use dhyper::exact::IntMatrix;
use dhyper::groebner::{groebner_weyl, TermOrder};
use dhyper::json;
use dhyper::systems::toric_ideal;
use dhyper::weyl::WeylOperator;
use dhyper::Error;

/// Status codes. Values 3 to 10 match the CLI exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DhStatus {
    Ok = 0,
    VerdictFailed = 1,
    NullArgument = 2,
    Parse = 3,
    DimensionMismatch = 4,
    UnsupportedCharacter = 5,
    RankDeficient = 6,
    InvalidInput = 7,
    InvalidOperator = 8,
    NotToral = 9,
    Series = 10,
    InvalidUtf8 = 11,
    Panic = 12,
}

impl DhStatus {
    fn from_code(code: i32) -> Self {
        match code {
            1 => DhStatus::VerdictFailed,
            3 => DhStatus::Parse,
            4 => DhStatus::DimensionMismatch,
            5 => DhStatus::UnsupportedCharacter,
            6 => DhStatus::RankDeficient,
            7 => DhStatus::InvalidInput,
            8 => DhStatus::InvalidOperator,
            9 => DhStatus::NotToral,
            10 => DhStatus::Series,
            _ => DhStatus::Parse,
        }
    }
}

/// An integer matrix.
pub struct DhMatrix(IntMatrix);

/// An element of the Weyl algebra.
pub struct DhOperator(WeylOperator);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

enum Fail {
    Status(DhStatus, String),
    Core(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Core(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> DhStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DhStatus::Ok,
        Ok(Err(Fail::Status(s, msg))) => {
            set_error(&msg);
            s
        }
        Ok(Err(Fail::Core(e))) => {
            set_error(&e.to_string());
            DhStatus::from_code(e.code())
        }
        Err(_) => {
            set_error("internal panic");
            DhStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Status(DhStatus::NullArgument, format!("{what} is null")));
    }
    // SAFETY: the caller passes a NUL-terminated string that outlives the call.
    unsafe { CStr::from_ptr(p) }
        .to_str()
        .map_err(|_| Fail::Status(DhStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

fn parse_json(text: &str) -> Result<serde_json::Value, Fail> {
    serde_json::from_str(text).map_err(|e| Fail::Core(Error::from(e)))
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Status(DhStatus::NullArgument, "output pointer is null".into()));
    }
    // SAFETY: checked non-null; the caller provides writable storage.
    unsafe { *out = Box::into_raw(Box::new(value)) };
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Status(DhStatus::NullArgument, "output pointer is null".into()));
    }
    let c = CString::new(s).map_err(|_| Fail::Status(DhStatus::Parse, "interior NUL in output".into()))?;
    // SAFETY: checked non-null.
    unsafe { *out = c.into_raw() };
    Ok(())
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    // SAFETY: a non-null handle was produced by this library and not yet freed.
    unsafe { p.as_ref() }.ok_or_else(|| Fail::Status(DhStatus::NullArgument, format!("{what} is null")))
}

/// Message for the last failure on this thread, or null. Valid until the
/// next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn dh_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` is null or was returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dh_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: produced by `CString::into_raw` in this library.
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Parses a matrix from its JSON encoding.
///
/// # Safety
/// `text` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn dh_matrix_from_json(text: *const c_char, out: *mut *mut DhMatrix) -> DhStatus {
    guard(|| {
        let v = parse_json(unsafe { read_str(text, "text") }?)?;
        let m = json::matrix_from_json(&v)?;
        unsafe { write_out(out, DhMatrix(m)) }
    })
}

/// # Safety
/// `m` is null or a live matrix handle.
#[no_mangle]
pub unsafe extern "C" fn dh_matrix_free(m: *mut DhMatrix) {
    if !m.is_null() {
        // SAFETY: produced by `Box::into_raw` in this library.
        drop(unsafe { Box::from_raw(m) });
    }
}

/// # Safety
/// `m` is a live matrix handle.
#[no_mangle]
pub unsafe extern "C" fn dh_matrix_rows(m: *const DhMatrix) -> usize {
    unsafe { m.as_ref() }.map_or(0, |m| m.0.rows())
}

/// # Safety
/// `m` is a live matrix handle.
#[no_mangle]
pub unsafe extern "C" fn dh_matrix_cols(m: *const DhMatrix) -> usize {
    unsafe { m.as_ref() }.map_or(0, |m| m.0.cols())
}

/// Reduced degrevlex basis of the toric ideal of `a`, as a JSON array of
/// operators.
///
/// # Safety
/// `a` is a live matrix handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn dh_toric_ideal(a: *const DhMatrix, out: *mut *mut c_char) -> DhStatus {
    guard(|| {
        let a = unsafe { handle(a, "matrix") }?;
        let ideal = toric_ideal(&a.0)?;
        let v = serde_json::Value::Array(ideal.basis().iter().map(json::d_poly_json).collect());
        unsafe { write_string(out, json::to_text(&v)) }
    })
}

/// Parses an operator from its JSON encoding.
///
/// # Safety
/// `text` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn dh_operator_from_json(text: *const c_char, out: *mut *mut DhOperator) -> DhStatus {
    guard(|| {
        let v = parse_json(unsafe { read_str(text, "text") }?)?;
        let op = json::operator_from_json(&v)?;
        unsafe { write_out(out, DhOperator(op)) }
    })
}

/// # Safety
/// `op` is null or a live operator handle.
#[no_mangle]
pub unsafe extern "C" fn dh_operator_free(op: *mut DhOperator) {
    if !op.is_null() {
        // SAFETY: produced by `Box::into_raw` in this library.
        drop(unsafe { Box::from_raw(op) });
    }
}

/// The normal-ordered product `p * q`.
///
/// # Safety
/// `p` and `q` are live operator handles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn dh_operator_mul(p: *const DhOperator, q: *const DhOperator, out: *mut *mut DhOperator) -> DhStatus {
    guard(|| {
        let (p, q) = unsafe { (handle(p, "left operator")?, handle(q, "right operator")?) };
        let prod = dhyper::weyl::normal_product(&p.0, &q.0)?;
        unsafe { write_out(out, DhOperator(prod)) }
    })
}

/// JSON encoding of an operator.
///
/// # Safety
/// `op` is a live operator handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn dh_operator_to_json(op: *const DhOperator, out: *mut *mut c_char) -> DhStatus {
    guard(|| {
        let op = unsafe { handle(op, "operator") }?;
        unsafe { write_string(out, json::to_text(&json::operator_json(&op.0))) }
    })
}

/// Membership of `op` in the left ideal generated by `gens` (a JSON array
/// of operators), with a certificate as JSON.
///
/// # Safety
/// `gens` and `op` are NUL-terminated strings; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn dh_membership(gens: *const c_char, op: *const c_char, cap: u32, out: *mut *mut c_char) -> DhStatus {
    guard(|| {
        let gens = json::operators_from_json(&parse_json(unsafe { read_str(gens, "gens") }?)?)?;
        let op = json::operator_from_json(&parse_json(unsafe { read_str(op, "op") }?)?)?;
        let gb = groebner_weyl(&gens, TermOrder::Degrevlex, cap)?;
        let cert = gb.membership(&op)?;
        unsafe { write_string(out, json::to_text(&json::certificate_json(&cert))) }
    })
}

/// Runs a CLI command given as a JSON array of arguments (without the
/// program name) and returns its report. A failed verdict yields
/// `VerdictFailed` with the report still written.
///
/// # Safety
/// `args` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn dh_run(args: *const c_char, out: *mut *mut c_char) -> DhStatus {
    let mut failed = false;
    let status = guard(|| {
        let v = parse_json(unsafe { read_str(args, "args") }?)?;
        let list: Vec<String> = serde_json::from_value(v)
            .map_err(|_| Fail::Status(DhStatus::Parse, "args must be an array of strings".into()))?;
        let report = dhyper::cli::run_from(std::iter::once("dhyper".to_string()).chain(list))?;
        failed = report.exit_code != 0;
        unsafe { write_string(out, json::to_text(&report.to_json())) }
    });
    if status == DhStatus::Ok && failed {
        set_error("a verdict failed");
        return DhStatus::VerdictFailed;
    }
    status
}
