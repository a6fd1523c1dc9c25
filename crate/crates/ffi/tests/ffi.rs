use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use beads_ffi::*;

const THETA: &str = "diagram theta {
  vertex u; vertex v;
  edge a u v; edge b u v; edge c u v;
  cyclic u (a b c); cyclic v (c b a);
}";

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { beads_string_free(s) };
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(beads_last_error()) }.to_str().unwrap().to_string()
}

fn sl2() -> *mut BeadsAlgebra {
    let name = CString::new("sl2").unwrap();
    let mut alg = ptr::null_mut();
    assert_eq!(unsafe { beads_algebra_new(name.as_ptr(), &mut alg) }, BeadsStatus::Ok);
    alg
}

#[test]
fn theta_through_both_engines() {
    let alg = sl2();
    let src = CString::new(THETA).unwrap();
    let mut legs = ptr::null_mut();
    let mut beads = ptr::null_mut();
    unsafe {
        assert_eq!(beads_leg_combo_parse(src.as_ptr(), &mut legs), BeadsStatus::Ok);
        assert_eq!(beads_bead_combo_parse(src.as_ptr(), &mut beads), BeadsStatus::Ok);
        let mut out = ptr::null_mut();
        assert_eq!(beads_weight_lie(alg, legs, ptr::null(), 3, &mut out), BeadsStatus::Ok);
        assert_eq!(take(out), r#"{"coeffs":["0","12","0","0"],"order":3}"#);
        assert_eq!(beads_weight_group(alg, beads, ptr::null(), 3, &mut out), BeadsStatus::Ok);
        assert_eq!(take(out), r#"{"coeffs":["0","12","0","0"],"order":3}"#);
        beads_leg_combo_free(legs);
        beads_bead_combo_free(beads);
        beads_algebra_free(alg);
    }
}

#[test]
fn matrix_part_of_trefoil() {
    let alg = sl2();
    let json = CString::new(r#"{"size":1,"entries":[["t - 1 + t^-1"]]}"#).unwrap();
    let lambda = CString::new("1").unwrap();
    let mut m = ptr::null_mut();
    unsafe {
        assert_eq!(beads_matrix_from_json(json.as_ptr(), &mut m), BeadsStatus::Ok);
        let mut out = ptr::null_mut();
        assert_eq!(beads_weight_matrix(alg, m, lambda.as_ptr(), 4, &mut out), BeadsStatus::Ok);
        assert_eq!(take(out), r#"{"coeffs":["1","0","-1","0","11/12"],"order":4}"#);
        let src = CString::new("").unwrap();
        let mut empty = ptr::null_mut();
        assert_eq!(beads_bead_combo_parse(src.as_ptr(), &mut empty), BeadsStatus::Ok);
        assert_eq!(beads_weight_full(alg, m, empty, lambda.as_ptr(), 4, &mut out), BeadsStatus::Ok);
        assert_eq!(take(out), r#"{"coeffs":["1","0","-1","0","11/12"],"order":4}"#);
        beads_bead_combo_free(empty);
        beads_matrix_free(m);
        beads_algebra_free(alg);
    }
}

#[test]
fn error_codes() {
    let mut alg = ptr::null_mut();
    let bad = CString::new("so5").unwrap();
    assert_eq!(unsafe { beads_algebra_new(bad.as_ptr(), &mut alg) }, BeadsStatus::Parse);
    assert!(last_error().contains("so5"));
    assert_eq!(unsafe { beads_algebra_new(ptr::null(), &mut alg) }, BeadsStatus::NullPointer);

    let json = CString::new(r#"{"size":1,"entries":[["t"]]}"#).unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { beads_matrix_from_json(json.as_ptr(), &mut m) }, BeadsStatus::Precondition);
    assert!(last_error().contains("NotHermitian"));

    let alg = sl2();
    let src = CString::new(THETA).unwrap();
    let lambda = CString::new("1,1").unwrap();
    let mut legs = ptr::null_mut();
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(beads_leg_combo_parse(src.as_ptr(), &mut legs), BeadsStatus::Ok);
        assert_eq!(beads_weight_lie(alg, legs, lambda.as_ptr(), 2, &mut out), BeadsStatus::Precondition);
        assert!(out.is_null());
        assert!(last_error().starts_with("DimensionMismatch"));
        let mut rank = 0usize;
        assert_eq!(beads_algebra_rank(alg, &mut rank), BeadsStatus::Ok);
        assert_eq!(rank, 1);
        assert_eq!(last_error(), "");
        beads_leg_combo_free(legs);
        beads_algebra_free(alg);
        beads_algebra_free(ptr::null_mut());
    }
}

#[test]
fn verify_report() {
    let suite = CString::new("wheels").unwrap();
    let algebras = CString::new("sl2,sl3").unwrap();
    let mut out = ptr::null_mut();
    let status = unsafe { beads_verify(suite.as_ptr(), algebras.as_ptr(), 6, 1, &mut out) };
    assert_eq!(status, BeadsStatus::Ok);
    let report = take(out);
    assert!(report.contains(r#""suite": "wheels""#));
    assert!(report.contains(r#""pass": true"#));
    assert_eq!(beads_abi_version(), BEADS_ABI_VERSION);
}

#[test]
fn header_is_valid_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/beads.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in ["beads_weight_lie", "beads_verify", "beads_last_error", "BEADS_STATUS_PRECONDITION"] {
        assert!(text.contains(name), "{name} missing from header");
    }
    let Ok(status) = Command::new("cc")
        .args(["-fsyntax-only", "-x", "c", "-std=c99", "-Wall", "-Werror"])
        .arg(&header)
        .status()
    else {
        return;
    };
    assert!(status.success());
}
