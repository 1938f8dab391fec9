use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use nhom_ffi::*;
use serde_json::Value;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> Value {
    assert!(!s.is_null());
    let v = serde_json::from_str(CStr::from_ptr(s).to_str().unwrap()).unwrap();
    nhom_string_free(s);
    v
}

unsafe fn last_error() -> String {
    let p = nhom_last_error_message();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_string_lossy().into_owned()
}

const EV_XY_MINUS_W: &str = r#"{ "domain": "fun:x,y,w", "codomain": "Q", "matrix": [["1", "1", "-1"]] }"#;
const EV_XY: &str = r#"{ "domain": "fun:x,y,w", "codomain": "Q", "matrix": [["1", "1", "0"]] }"#;

#[test]
fn algebra_handles() {
    unsafe {
        let mut alg = ptr::null_mut();
        assert_eq!(nhom_algebra_new(cstr("fun:3").as_ptr(), &mut alg), NhomStatus::Ok);
        let mut dim = 0;
        assert_eq!(nhom_algebra_dim(alg, &mut dim), NhomStatus::Ok);
        assert_eq!(dim, 3);
        let mut count = 99;
        assert_eq!(nhom_algebra_validate(alg, &mut count, ptr::null_mut()), NhomStatus::Ok);
        assert_eq!(count, 0);

        let mut out = ptr::null_mut();
        assert_eq!(nhom_super_power_json(alg, 1, 1, 4096, &mut out), NhomStatus::Ok);
        assert_eq!(take(out)["dim"], 7);
        assert_eq!(nhom_symmetric_power_json(alg, 2, 4096, &mut out), NhomStatus::Ok);
        assert_eq!(take(out)["dim"], 6);
        assert_eq!(nhom_symmetric_power_json(alg, 8, 100, &mut out), NhomStatus::SizeBoundExceeded);

        assert_eq!(nhom_algebra_to_json(alg, &mut out), NhomStatus::Ok);
        let text = cstr(&take(out).to_string());
        let mut again = ptr::null_mut();
        assert_eq!(nhom_algebra_new(text.as_ptr(), &mut again), NhomStatus::Ok);
        nhom_algebra_free(again);
        nhom_algebra_free(alg);
    }
}

#[test]
fn non_associative_algebra_is_reported() {
    let spec = r#"{ "dim": 3, "labels": ["1", "u", "v"], "unit": ["1", "0", "0"], "mul": [
        [["1","0","0"], ["0","1","0"], ["0","0","1"]],
        [["0","1","0"], ["0","0","1"], ["0","0","0"]],
        [["0","0","1"], ["0","0","0"], ["0","1","0"]] ] }"#;
    unsafe {
        let mut alg = ptr::null_mut();
        assert_eq!(nhom_algebra_new(cstr(spec).as_ptr(), &mut alg), NhomStatus::Ok);
        let mut count = 0;
        let mut list = ptr::null_mut();
        assert_eq!(nhom_algebra_validate(alg, &mut count, &mut list), NhomStatus::Ok);
        assert!(count > 0);
        assert_eq!(take(list).as_array().unwrap().len(), count);
        nhom_algebra_free(alg);
    }
}

#[test]
fn map_checks() {
    unsafe {
        let mut f = ptr::null_mut();
        assert_eq!(nhom_map_from_json(cstr(EV_XY).as_ptr(), &mut f), NhomStatus::Ok);
        let mut passes = -1;
        assert_eq!(nhom_check_n_hom(f, 2, &mut passes, ptr::null_mut()), NhomStatus::Ok);
        assert_eq!(passes, 1);
        let mut report = ptr::null_mut();
        assert_eq!(nhom_check_n_hom(f, 3, &mut passes, &mut report), NhomStatus::Ok);
        assert_eq!(passes, 0);
        assert_eq!(take(report)["witness"]["kind"], "unit_image");

        let mut out = ptr::null_mut();
        assert_eq!(nhom_detect_degree(f, 6, &mut out), NhomStatus::Ok);
        assert_eq!(take(out)["verdict"]["polynomial"]["n"], 2);

        assert_eq!(nhom_char_series_json(f, cstr(r#"["2", "3", "5"]"#).as_ptr(), 3, &mut out), NhomStatus::Ok);
        // (1 + 2z)(1 + 3z) = 1 + 5z + 6z².
        assert_eq!(take(out), serde_json::json!([["1"], ["5"], ["6"], ["0"]]));

        let mut dom = ptr::null_mut();
        assert_eq!(nhom_map_domain(f, &mut dom), NhomStatus::Ok);
        nhom_algebra_free(dom);
        nhom_map_free(f);

        assert_eq!(nhom_map_from_json(cstr(EV_XY_MINUS_W).as_ptr(), &mut f), NhomStatus::Ok);
        assert_eq!(nhom_check_pq_hom(f, 2, 1, -1, 8, 0, &mut passes, &mut report), NhomStatus::Ok);
        assert_eq!(passes, 1);
        assert_eq!(take(report)["policy"]["k_max"], 7);
        assert_eq!(nhom_check_pq_hom(f, 1, 0, -1, 8, 0, &mut passes, ptr::null_mut()), NhomStatus::Ok);
        assert_eq!(passes, 0);
        nhom_map_free(f);
    }
}

#[test]
fn errors_set_status_and_message() {
    unsafe {
        let mut f = ptr::null_mut();
        assert_eq!(nhom_map_from_json(cstr("{ not json").as_ptr(), &mut f), NhomStatus::Parse);
        assert!(last_error().contains("line 1"));
        assert!(f.is_null());

        let bad = r#"{ "domain": "fun:2", "codomain": "Q", "matrix": [["1"]] }"#;
        assert_eq!(nhom_map_from_json(cstr(bad).as_ptr(), &mut f), NhomStatus::DimensionMismatch);

        assert_eq!(nhom_map_from_json(ptr::null(), &mut f), NhomStatus::NullPointer);
        let mut dim = 0;
        assert_eq!(nhom_algebra_dim(ptr::null(), &mut dim), NhomStatus::NullPointer);

        let invalid = [0xffu8, 0];
        let mut alg = ptr::null_mut();
        assert_eq!(nhom_algebra_new(invalid.as_ptr().cast(), &mut alg), NhomStatus::InvalidUtf8);

        assert_eq!(nhom_map_from_json(cstr(EV_XY).as_ptr(), &mut f), NhomStatus::Ok);
        let mut out = ptr::null_mut();
        assert_eq!(nhom_char_series_json(f, cstr(r#"["1"]"#).as_ptr(), 3, &mut out), NhomStatus::DimensionMismatch);
        nhom_map_free(f);

        nhom_string_free(ptr::null_mut());
        nhom_map_free(ptr::null_mut());
        nhom_algebra_free(ptr::null_mut());
    }
}

#[test]
fn header_is_generated_and_parses_as_c() {
    let header = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include").join("nhom.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in ["NhomStatus", "NhomAlgebra", "NhomMap", "nhom_check_pq_hom", "nhom_string_free"] {
        assert!(text.contains(name), "{name} missing from the header");
    }
    match Command::new("cc").args(["-fsyntax-only", "-x", "c"]).arg(&header).output() {
        Ok(out) => assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr)),
        Err(_) => eprintln!("no C compiler found; syntax check skipped"),
    }
}
