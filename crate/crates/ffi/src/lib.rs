//! C interface to `beads-core`.
//!
//! Objects cross the boundary as opaque handles created by `*_new` or
//! `*_parse` functions and released by the matching `*_free`. Every fallible
//! call returns a [`BeadsStatus`]; on failure the message is available from
//! [`beads_last_error`] until the next call on the same thread. Results are
//! JSON strings owned by the caller and released with [`beads_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use beads_core::algebra::HSeries;
use beads_core::cli::series_json;
use beads_core::diagram::dsl::{parse_bead_combo, parse_leg_combo};
use beads_core::diagram::{BeadDiagram, DiagramCombo, HermitianMatrixClass, LegDiagram};
use beads_core::lie::{CartanVector, LieAlgebraData};
use beads_core::verify::{run_suite, VerifyConfig};
use beads_core::weight::{weight_full, weight_group, weight_lie, weight_matrix_part};
use beads_core::Error;

pub const BEADS_ABI_VERSION: u32 = 1;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BeadsStatus {
    Ok = 0,
    VerifyFailed = 1,
    Parse = 2,
    Precondition = 3,
    NullPointer = 4,
    InvalidUtf8 = 5,
    Panic = 6,
}

pub struct BeadsAlgebra(LieAlgebraData);
pub struct BeadsLegCombo(DiagramCombo<LegDiagram>);
pub struct BeadsBeadCombo(DiagramCombo<BeadDiagram>);
pub struct BeadsMatrix(HermitianMatrixClass);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(BeadsStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = if e.is_parse() { BeadsStatus::Parse } else { BeadsStatus::Precondition };
        Failure(status, e.to_string())
    }
}

fn guard<F: FnOnce() -> Result<BeadsStatus, Failure>>(f: F) -> BeadsStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(Failure(s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            BeadsStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(BeadsStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(BeadsStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure(BeadsStatus::NullPointer, format!("{what} is null")))
}

unsafe fn emit<T>(out: *mut *mut T, value: T) -> Result<BeadsStatus, Failure> {
    if out.is_null() {
        return Err(Failure(BeadsStatus::NullPointer, "output pointer is null".into()));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(BeadsStatus::Ok)
}

unsafe fn emit_json(out: *mut *mut c_char, s: String) -> Result<BeadsStatus, Failure> {
    if out.is_null() {
        return Err(Failure(BeadsStatus::NullPointer, "output pointer is null".into()));
    }
    *out = CString::new(s).expect("json has no nul bytes").into_raw();
    Ok(BeadsStatus::Ok)
}

unsafe fn series_out(out: *mut *mut c_char, s: &HSeries) -> Result<BeadsStatus, Failure> {
    emit_json(out, series_json(s).to_string())
}

unsafe fn lambda_for(l: &LieAlgebraData, p: *const c_char) -> Result<CartanVector, Failure> {
    if p.is_null() {
        return Ok(CartanVector::rho(l.rank()));
    }
    Ok(text(p, "lambda")?.parse()?)
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `p` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn beads_algebra_free(p: *mut BeadsAlgebra) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `p` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn beads_leg_combo_free(p: *mut BeadsLegCombo) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `p` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn beads_bead_combo_free(p: *mut BeadsBeadCombo) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `p` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn beads_matrix_free(p: *mut BeadsMatrix) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

#[no_mangle]
pub extern "C" fn beads_abi_version() -> u32 {
    BEADS_ABI_VERSION
}

/// Message of the last failed call on this thread, or an empty string. The
/// pointer stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn beads_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn beads_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds `sl2`, `sl3`, ... by name.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn beads_algebra_new(name: *const c_char, out: *mut *mut BeadsAlgebra) -> BeadsStatus {
    guard(|| {
        let l = LieAlgebraData::by_name(text(name, "name")?)?;
        emit(out, BeadsAlgebra(l))
    })
}

/// # Safety
/// `alg` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn beads_algebra_rank(alg: *const BeadsAlgebra, out: *mut usize) -> BeadsStatus {
    guard(|| {
        let l = handle(alg, "algebra")?;
        if out.is_null() {
            return Err(Failure(BeadsStatus::NullPointer, "output pointer is null".into()));
        }
        *out = l.0.rank();
        Ok(BeadsStatus::Ok)
    })
}

/// Parses leg diagrams in the text DSL.
///
/// # Safety
/// `src` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn beads_leg_combo_parse(src: *const c_char, out: *mut *mut BeadsLegCombo) -> BeadsStatus {
    guard(|| emit(out, BeadsLegCombo(parse_leg_combo(text(src, "source")?)?)))
}

/// Parses beaded diagrams in the text DSL.
///
/// # Safety
/// `src` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn beads_bead_combo_parse(src: *const c_char, out: *mut *mut BeadsBeadCombo) -> BeadsStatus {
    guard(|| emit(out, BeadsBeadCombo(parse_bead_combo(text(src, "source")?)?)))
}

/// Parses a Hermitian matrix from `{"size":n,"entries":[[...]]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn beads_matrix_from_json(json: *const c_char, out: *mut *mut BeadsMatrix) -> BeadsStatus {
    guard(|| emit(out, BeadsMatrix(HermitianMatrixClass::from_json(text(json, "json")?)?)))
}

/// `W_g` as series JSON. A null `lambda` means rho.
///
/// # Safety
/// Handles must be live; `lambda` null or NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn beads_weight_lie(
    alg: *const BeadsAlgebra,
    combo: *const BeadsLegCombo,
    lambda: *const c_char,
    order: usize,
    out: *mut *mut c_char,
) -> BeadsStatus {
    guard(|| {
        let l = &handle(alg, "algebra")?.0;
        let lambda = lambda_for(l, lambda)?;
        series_out(out, &weight_lie(&handle(combo, "combo")?.0, l, &lambda, order)?)
    })
}

/// `W_G` at `e^{hλ}` as series JSON.
///
/// # Safety
/// Handles must be live; `lambda` null or NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn beads_weight_group(
    alg: *const BeadsAlgebra,
    combo: *const BeadsBeadCombo,
    lambda: *const c_char,
    order: usize,
    out: *mut *mut c_char,
) -> BeadsStatus {
    guard(|| {
        let l = &handle(alg, "algebra")?.0;
        let lambda = lambda_for(l, lambda)?;
        series_out(out, &weight_group(&handle(combo, "combo")?.0, l, &lambda, order)?)
    })
}

/// Matrix part as series JSON.
///
/// # Safety
/// Handles must be live; `lambda` null or NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn beads_weight_matrix(
    alg: *const BeadsAlgebra,
    matrix: *const BeadsMatrix,
    lambda: *const c_char,
    order: usize,
    out: *mut *mut c_char,
) -> BeadsStatus {
    guard(|| {
        let l = &handle(alg, "algebra")?.0;
        let lambda = lambda_for(l, lambda)?;
        series_out(out, &weight_matrix_part(&handle(matrix, "matrix")?.0, l, &lambda, order)?)
    })
}

/// Matrix part times diagram part as series JSON.
///
/// # Safety
/// Handles must be live; `lambda` null or NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn beads_weight_full(
    alg: *const BeadsAlgebra,
    matrix: *const BeadsMatrix,
    combo: *const BeadsBeadCombo,
    lambda: *const c_char,
    order: usize,
    out: *mut *mut c_char,
) -> BeadsStatus {
    guard(|| {
        let l = &handle(alg, "algebra")?.0;
        let lambda = lambda_for(l, lambda)?;
        let m = &handle(matrix, "matrix")?.0;
        series_out(out, &weight_full(m, &handle(combo, "combo")?.0, l, &lambda, order)?)
    })
}

/// Runs one verification suite over a comma-separated algebra list and
/// writes the report. Returns `VerifyFailed` when any case differs; the
/// report is written either way.
///
/// # Safety
/// Strings must be NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn beads_verify(
    suite: *const c_char,
    algebras: *const c_char,
    order: usize,
    seed: u64,
    out: *mut *mut c_char,
) -> BeadsStatus {
    guard(|| {
        let suite = text(suite, "suite")?;
        let algebras = text(algebras, "algebras")?
            .split(',')
            .map(|s| LieAlgebraData::by_name(s.trim()))
            .collect::<Result<Vec<_>, _>>()?;
        let cfg = VerifyConfig {
            algebras,
            degree: order,
            seed,
            timing: false,
        };
        let report = run_suite(suite, &cfg)?;
        emit_json(out, report.to_json())?;
        Ok(if report.pass { BeadsStatus::Ok } else { BeadsStatus::VerifyFailed })
    })
}
