use std::ffi::{CStr, CString};
use std::ptr;

use eqsing_ffi::*;

fn cs(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn parse(s: &str) -> *mut EqsingPolynomial {
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { eqsing_polynomial_parse(cs(s).as_ptr(), 0, &mut p) }, EqsingStatus::Ok);
    p
}

fn text(p: *const EqsingPolynomial) -> String {
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(eqsing_polynomial_to_string(p, &mut s), EqsingStatus::Ok);
        let out = CStr::from_ptr(s).to_str().unwrap().to_string();
        eqsing_string_free(s);
        out
    }
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(eqsing_last_error()).to_str().unwrap().to_string() }
}

#[test]
fn polynomial_round_trip() {
    let p = parse("x1^6 + x2^5 + 2/3*x1*x2^2");
    let t = text(p);
    let q = parse(&t);
    assert_eq!(text(q), t);
    unsafe {
        eqsing_polynomial_free(p);
        eqsing_polynomial_free(q);
    }
}

#[test]
fn parse_error_sets_message() {
    let mut p = ptr::null_mut();
    let st = unsafe { eqsing_polynomial_parse(cs("x1^").as_ptr(), 0, &mut p) };
    assert_eq!(st, EqsingStatus::Parse);
    assert!(p.is_null());
    assert!(!last_error().is_empty());
}

#[test]
fn null_arguments_are_reported() {
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { eqsing_polynomial_parse(ptr::null(), 0, &mut p) }, EqsingStatus::NullPointer);
    let mut tau = 0u64;
    assert_eq!(unsafe { eqsing_polynomial_tjurina(ptr::null(), &mut tau) }, EqsingStatus::NullPointer);
    unsafe {
        eqsing_polynomial_free(ptr::null_mut());
        eqsing_spec_free(ptr::null_mut());
        eqsing_string_free(ptr::null_mut());
    }
}

#[test]
fn normal_form_by_a_variable_is_zero() {
    let f = parse("x1^2");
    let g = parse("x1");
    let gens = [g as *const EqsingPolynomial];
    let mut nf = ptr::null_mut();
    let st = unsafe { eqsing_normal_form(f, gens.as_ptr(), 1, cs("lp").as_ptr(), &mut nf) };
    assert_eq!(st, EqsingStatus::Ok);
    assert_eq!(text(nf), "0");
    let st = unsafe { eqsing_normal_form(f, gens.as_ptr(), 1, cs("ls").as_ptr(), &mut nf) };
    assert_eq!(st, EqsingStatus::Domain);
    let st = unsafe { eqsing_normal_form(f, gens.as_ptr(), 1, cs("zz").as_ptr(), &mut nf) };
    assert_eq!(st, EqsingStatus::Parse);
    unsafe {
        eqsing_polynomial_free(f);
        eqsing_polynomial_free(g);
    }
}

#[test]
fn spec_invariants() {
    let alpha = [6u32, 5];
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(eqsing_spec_new(alpha.as_ptr(), 2, 6, &mut s), EqsingStatus::Ok);
        let (mut tau, mut h, mut d) = (0u64, 0u64, 0u32);
        assert_eq!(eqsing_spec_tau(s, &mut tau), EqsingStatus::Ok);
        assert_eq!(eqsing_spec_h1(s, 6, &mut h), EqsingStatus::Ok);
        assert_eq!(eqsing_spec_degree(s, &mut d), EqsingStatus::Ok);
        assert_eq!((tau, h, d), (20, 1, 6));
        let mut p = ptr::null_mut();
        assert_eq!(eqsing_spec_polynomial(s, &mut p), EqsingStatus::Ok);
        let mut t = 0u64;
        assert_eq!(eqsing_polynomial_tjurina(p, &mut t), EqsingStatus::Ok);
        assert_eq!(t, 20);
        eqsing_polynomial_free(p);

        let mut json = ptr::null_mut();
        assert_eq!(eqsing_stratum_classify(s, 3, &mut json), EqsingStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(CStr::from_ptr(json).to_str().unwrap()).unwrap();
        assert_eq!(v["verdict"]["kind"], "NonReducedDouble");
        eqsing_string_free(json);
        eqsing_spec_free(s);
    }
}

#[test]
fn invalid_spec_is_a_domain_error() {
    let alpha = [1u32, 5];
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { eqsing_spec_new(alpha.as_ptr(), 2, 6, &mut s) }, EqsingStatus::Domain);
    assert!(last_error().contains("α"));
}

#[test]
fn header_declares_the_interface() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/eqsing.h")).unwrap();
    for name in [
        "typedef struct EqsingPolynomial EqsingPolynomial",
        "typedef struct EqsingSpec EqsingSpec",
        "EQSING_STATUS_OK = 0",
        "eqsing_polynomial_parse",
        "eqsing_normal_form",
        "eqsing_stratum_classify",
        "eqsing_last_error",
    ] {
        assert!(h.contains(name), "missing {name}");
    }
}
