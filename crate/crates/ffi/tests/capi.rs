use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::ptr;

use rumer_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { rumer_string_free(s) };
    out
}

fn last_error() -> String {
    let p = rumer_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

fn rho(n: usize, m: usize, method: RumerCountMethod) -> Result<String, RumerStatus> {
    let mut out = ptr::null_mut();
    match unsafe { rumer_rho(n, m, method, &mut out) } {
        RumerStatus::Ok => Ok(take(out)),
        s => Err(s),
    }
}

fn parse(text: &str, n: usize) -> *mut RumerPolynomial {
    let c = CString::new(text).unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { rumer_polynomial_parse(c.as_ptr(), n, &mut p) }, RumerStatus::Ok);
    p
}

fn text_of(p: *const RumerPolynomial, as_json: bool) -> String {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { rumer_polynomial_to_string(p, as_json, &mut s) }, RumerStatus::Ok);
    take(s)
}

#[test]
fn counting_routes() {
    for method in [
        RumerCountMethod::Formula,
        RumerCountMethod::Product,
        RumerCountMethod::Recurrence,
        RumerCountMethod::Enumerate,
    ] {
        assert_eq!(rho(4, 2, method).unwrap(), "20");
    }
    assert_eq!(rho(2, 50, RumerCountMethod::Formula).unwrap(), "1");
    assert_eq!(rho(2, 3, RumerCountMethod::Product), Err(RumerStatus::InvalidArgument));
    assert!(!last_error().is_empty());
    assert_eq!(rho(0, 1, RumerCountMethod::Formula), Err(RumerStatus::InvalidArgument));

    let d = [1usize, 1, 1, 1, 1, 1];
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { rumer_n_recurrence(d.as_ptr(), d.len(), &mut out) }, RumerStatus::Ok);
    assert_eq!(take(out), "5");
    assert_eq!(unsafe { rumer_n_recurrence(ptr::null(), 3, &mut out) }, RumerStatus::NullPointer);
    assert_eq!(unsafe { rumer_n_recurrence(d.as_ptr(), 0, &mut out) }, RumerStatus::InvalidArgument);
}

#[test]
fn success_clears_last_error() {
    assert!(rho(2, 3, RumerCountMethod::Product).is_err());
    assert!(!rumer_last_error_message().is_null());
    rho(3, 1, RumerCountMethod::Formula).unwrap();
    assert!(rumer_last_error_message().is_null());
}

#[test]
fn null_out_pointers_are_rejected() {
    let s = unsafe { rumer_rho(3, 1, RumerCountMethod::Formula, ptr::null_mut()) };
    assert_eq!(s, RumerStatus::NullPointer);
    assert!(last_error().contains("null"));
    unsafe {
        rumer_string_free(ptr::null_mut());
        rumer_polynomial_free(ptr::null_mut());
        rumer_diagram_list_free(ptr::null_mut());
    }
    assert_eq!(unsafe { rumer_diagram_list_len(ptr::null()) }, 0);
}

#[test]
fn diagram_lists() {
    let mut list = ptr::null_mut();
    assert_eq!(unsafe { rumer_enumerate(4, 2, &mut list) }, RumerStatus::Ok);
    assert_eq!(unsafe { rumer_diagram_list_len(list) }, 20);
    unsafe { rumer_diagram_list_free(list) };

    let d = [1usize, 1, 1, 1];
    assert_eq!(unsafe { rumer_enumerate_multidegree(d.as_ptr(), d.len(), &mut list) }, RumerStatus::Ok);
    assert_eq!(unsafe { rumer_diagram_list_len(list) }, 2);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { rumer_diagram_list_get(list, 0, false, &mut s) }, RumerStatus::Ok);
    assert_eq!(take(s), "n=4; (1,2)(3,4)");
    assert_eq!(unsafe { rumer_diagram_list_get(list, 1, true, &mut s) }, RumerStatus::Ok);
    assert_eq!(take(s), r#"{"n":4,"edges":[[1,4],[2,3]]}"#);
    assert_eq!(unsafe { rumer_diagram_list_get(list, 2, false, &mut s) }, RumerStatus::IndexOutOfRange);
    assert!(last_error().contains("out of range"));
    unsafe { rumer_diagram_list_free(list) };
}

#[test]
fn straightening_through_handles() {
    let p = parse("[1,3][2,4]", 4);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { rumer_polynomial_straighten(p, 1_000_000, &mut s) }, RumerStatus::Ok);
    assert_eq!(text_of(s, false), "[1,2][3,4] + [1,4][2,3]");
    let mut same = false;
    assert_eq!(unsafe { rumer_polynomial_equal_by_expansion(p, s, &mut same) }, RumerStatus::Ok);
    assert!(same);

    let json = CString::new(text_of(s, true)).unwrap();
    let mut back = ptr::null_mut();
    assert_eq!(unsafe { rumer_polynomial_from_json(json.as_ptr(), &mut back) }, RumerStatus::Ok);
    assert_eq!(text_of(back, false), "[1,2][3,4] + [1,4][2,3]");

    let other = parse("[1,2][3,4]", 4);
    assert_eq!(unsafe { rumer_polynomial_equal_by_expansion(p, other, &mut same) }, RumerStatus::Ok);
    assert!(!same);
    let small = parse("[1,2]", 2);
    assert_eq!(
        unsafe { rumer_polynomial_equal_by_expansion(p, small, &mut same) },
        RumerStatus::InvalidArgument
    );

    let mut starved = ptr::null_mut();
    assert_eq!(unsafe { rumer_polynomial_straighten(p, 0, &mut starved) }, RumerStatus::FuelExhausted);
    assert!(starved.is_null());
    for h in [p, s, back, other, small] {
        unsafe { rumer_polynomial_free(h) };
    }
}

#[test]
fn parse_failures() {
    let mut p = ptr::null_mut();
    let bad = CString::new("[1,3][2,").unwrap();
    assert_eq!(unsafe { rumer_polynomial_parse(bad.as_ptr(), 4, &mut p) }, RumerStatus::ParseError);
    assert!(last_error().contains("position"));
    let out_of_range = CString::new("[1,7]").unwrap();
    assert_eq!(unsafe { rumer_polynomial_parse(out_of_range.as_ptr(), 4, &mut p) }, RumerStatus::ParseError);
    assert_eq!(unsafe { rumer_polynomial_parse(ptr::null(), 4, &mut p) }, RumerStatus::NullPointer);
    let json = CString::new("{\"n\":4}").unwrap();
    assert_eq!(unsafe { rumer_polynomial_from_json(json.as_ptr(), &mut p) }, RumerStatus::ParseError);
    assert!(p.is_null());
}

#[test]
fn reports_and_rendering() {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { rumer_verify_basis_json(4, 2, &mut s) }, RumerStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
    assert_eq!(v["pass"], serde_json::Value::Bool(true));
    assert_eq!(v["full_rank"].to_string(), "20");

    let d = [2usize, 1, 1];
    assert_eq!(unsafe { rumer_verify_psi_bijection_json(d.as_ptr(), d.len(), &mut s) }, RumerStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
    assert_eq!(v["bijection_ok"], serde_json::Value::Bool(true));

    let diagram = CString::new("n=4; (1,2)(3,4)").unwrap();
    assert_eq!(unsafe { rumer_render_svg(diagram.as_ptr(), &mut s) }, RumerStatus::Ok);
    let svg = take(s);
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("class=\"atom\"").count(), 4);
    let bad = CString::new("n=2; (1,1)").unwrap();
    assert_ne!(unsafe { rumer_render_svg(bad.as_ptr(), &mut s) }, RumerStatus::Ok);
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/rumer.h")).unwrap();
    for name in [
        "rumer_rho",
        "rumer_enumerate",
        "rumer_diagram_list_free",
        "rumer_polynomial_straighten",
        "rumer_last_error_message",
        "RUMER_STATUS_FUEL_EXHAUSTED",
        "typedef struct RumerPolynomial RumerPolynomial",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
