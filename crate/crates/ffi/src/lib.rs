//! C ABI for the `rumer` library.
//!
//! Every entry point returns a [`RumerStatus`]; results come back through out
//! pointers. Strings handed out by the library are NUL-terminated, owned by
//! the caller and released with [`rumer_string_free`]. Diagram lists and
//! polynomials are opaque handles released with their `_free` function. On
//! failure, [`rumer_last_error_message`] describes the most recent error on
//! the calling thread.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use rumer::bijection::verify_psi_bijection;
use rumer::bracket::{BracketPolynomial, Straightener};
use rumer::counting::{n_recurrence, rho_closed, rho_product, rho_sum_over_compositions};
use rumer::diagram::{
    count_rumer, enumerate_rumer, enumerate_rumer_by_multidegree, Multidegree, RumerDiagram,
    ValenceScheme,
};
use rumer::oracle::{expand, verify_basis};
use rumer::render::render_svg;
use rumer::Error;

/// Result codes shared by every function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RumerStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    IndexOutOfRange = 4,
    FuelExhausted = 5,
    Internal = 6,
}

/// Counting routes for [`rumer_rho`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RumerCountMethod {
    Formula = 0,
    Product = 1,
    Recurrence = 2,
    Enumerate = 3,
}

/// Opaque list of Rumer diagrams.
pub struct RumerDiagramList {
    items: Vec<RumerDiagram>,
}

/// Opaque integer bracket polynomial.
pub struct RumerPolynomial {
    inner: BracketPolynomial,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn fail(status: RumerStatus, msg: impl Into<String>) -> RumerStatus {
    set_error(msg);
    status
}

fn status_of(e: &Error) -> RumerStatus {
    match e {
        Error::Parse(_) => RumerStatus::ParseError,
        Error::FuelExhausted(_) => RumerStatus::FuelExhausted,
        Error::Internal(_) => RumerStatus::Internal,
        _ => RumerStatus::InvalidArgument,
    }
}

fn from_error(e: Error) -> RumerStatus {
    fail(status_of(&e), e.to_string())
}

/// Runs `f`, mapping panics to [`RumerStatus::Internal`].
fn guarded(f: impl FnOnce() -> RumerStatus) -> RumerStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => {
            if s == RumerStatus::Ok {
                LAST_ERROR.with(|e| *e.borrow_mut() = None);
            }
            s
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            fail(RumerStatus::Internal, msg)
        }
    }
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> RumerStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            RumerStatus::Ok
        }
        Err(_) => fail(RumerStatus::Internal, "string contains NUL"),
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, RumerStatus> {
    if p.is_null() {
        return Err(fail(RumerStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(RumerStatus::InvalidArgument, "string is not UTF-8"))
}

unsafe fn read_degrees(degrees: *const usize, len: usize) -> Result<Multidegree, RumerStatus> {
    if len == 0 {
        return Err(fail(RumerStatus::InvalidArgument, "empty multidegree"));
    }
    if degrees.is_null() {
        return Err(fail(RumerStatus::NullPointer, "null multidegree"));
    }
    Ok(Multidegree::new(std::slice::from_raw_parts(degrees, len).to_vec()))
}

macro_rules! check_out {
    ($($p:expr),+) => {
        $(if $p.is_null() {
            return fail(RumerStatus::NullPointer, concat!("null pointer: ", stringify!($p)));
        })+
    };
}

/// Message for the last failed call on this thread, or NULL. The pointer is
/// valid until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn rumer_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rumer_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `rho(n, m)` as a decimal string.
///
/// # Safety
/// `out` must be a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn rumer_rho(
    n: usize,
    m: usize,
    method: RumerCountMethod,
    out: *mut *mut c_char,
) -> RumerStatus {
    guarded(|| {
        check_out!(out);
        if n == 0 {
            return fail(RumerStatus::InvalidArgument, "n must be at least 1");
        }
        let value = match method {
            RumerCountMethod::Formula => rho_closed(n, m),
            RumerCountMethod::Product => match rho_product(n, m) {
                Ok(v) => v,
                Err(e) => return from_error(e),
            },
            RumerCountMethod::Recurrence => rho_sum_over_compositions(n, m),
            RumerCountMethod::Enumerate => count_rumer(n, m).into(),
        };
        write_string(out, value.to_string())
    })
}

/// `N(m_1, ..., m_len)` as a decimal string.
///
/// # Safety
/// `degrees` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rumer_n_recurrence(
    degrees: *const usize,
    len: usize,
    out: *mut *mut c_char,
) -> RumerStatus {
    guarded(|| {
        check_out!(out);
        let d = match read_degrees(degrees, len) {
            Ok(d) => d,
            Err(s) => return s,
        };
        write_string(out, n_recurrence(&d).to_string())
    })
}

/// All Rumer diagrams with `m` bonds on `n` atoms.
///
/// # Safety
/// `out` must be writable. Release the list with [`rumer_diagram_list_free`].
#[no_mangle]
pub unsafe extern "C" fn rumer_enumerate(
    n: usize,
    m: usize,
    out: *mut *mut RumerDiagramList,
) -> RumerStatus {
    guarded(|| {
        check_out!(out);
        if n == 0 {
            return fail(RumerStatus::InvalidArgument, "n must be at least 1");
        }
        let items = enumerate_rumer(n, m);
        *out = Box::into_raw(Box::new(RumerDiagramList { items }));
        RumerStatus::Ok
    })
}

/// All Rumer diagrams with the given per-atom valences.
///
/// # Safety
/// `degrees` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rumer_enumerate_multidegree(
    degrees: *const usize,
    len: usize,
    out: *mut *mut RumerDiagramList,
) -> RumerStatus {
    guarded(|| {
        check_out!(out);
        let d = match read_degrees(degrees, len) {
            Ok(d) => d,
            Err(s) => return s,
        };
        let items = enumerate_rumer_by_multidegree(&d);
        *out = Box::into_raw(Box::new(RumerDiagramList { items }));
        RumerStatus::Ok
    })
}

/// Number of diagrams in `list` (0 for NULL).
///
/// # Safety
/// `list` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rumer_diagram_list_len(list: *const RumerDiagramList) -> usize {
    list.as_ref().map_or(0, |l| l.items.len())
}

/// Diagram `index` in text form `n=4; (1,2)(3,4)` (`as_json = false`) or as
/// `{"n":4,"edges":[[1,2],[3,4]]}` (`as_json = true`).
///
/// # Safety
/// `list` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rumer_diagram_list_get(
    list: *const RumerDiagramList,
    index: usize,
    as_json: bool,
    out: *mut *mut c_char,
) -> RumerStatus {
    guarded(|| {
        check_out!(list, out);
        let list = &*list;
        let Some(d) = list.items.get(index) else {
            return fail(
                RumerStatus::IndexOutOfRange,
                format!("index {index} out of range for {} diagrams", list.items.len()),
            );
        };
        let s = if as_json {
            serde_json::to_string(d).expect("diagram serializes")
        } else {
            d.to_string()
        };
        write_string(out, s)
    })
}

/// # Safety
/// `list` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rumer_diagram_list_free(list: *mut RumerDiagramList) {
    if !list.is_null() {
        drop(Box::from_raw(list));
    }
}

/// Parses a bracket polynomial on `n` atoms, e.g. `"[1,3][2,4] - [1,2][3,4]"`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rumer_polynomial_parse(
    text: *const c_char,
    n: usize,
    out: *mut *mut RumerPolynomial,
) -> RumerStatus {
    guarded(|| {
        check_out!(out);
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        if n == 0 {
            return fail(RumerStatus::InvalidArgument, "n must be at least 1");
        }
        match BracketPolynomial::parse(text, n) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(RumerPolynomial { inner }));
                RumerStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Reads the JSON form `{"n":..,"terms":[{"coeff":..,"factors":[[i,j],..]}]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rumer_polynomial_from_json(
    json: *const c_char,
    out: *mut *mut RumerPolynomial,
) -> RumerStatus {
    guarded(|| {
        check_out!(out);
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match serde_json::from_str::<BracketPolynomial>(text) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(RumerPolynomial { inner }));
                RumerStatus::Ok
            }
            Err(e) => fail(RumerStatus::ParseError, e.to_string()),
        }
    })
}

/// Rewrites `p` in the Rumer basis using at most `fuel` quadratic rewrites.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rumer_polynomial_straighten(
    p: *const RumerPolynomial,
    fuel: u64,
    out: *mut *mut RumerPolynomial,
) -> RumerStatus {
    guarded(|| {
        check_out!(p, out);
        match Straightener::with_fuel(fuel).straighten(&(*p).inner) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(RumerPolynomial { inner }));
                RumerStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Text (`as_json = false`) or JSON form of `p`.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rumer_polynomial_to_string(
    p: *const RumerPolynomial,
    as_json: bool,
    out: *mut *mut c_char,
) -> RumerStatus {
    guarded(|| {
        check_out!(p, out);
        let inner = &(*p).inner;
        let s = if as_json {
            serde_json::to_string(inner).expect("polynomial serializes")
        } else {
            inner.to_string()
        };
        write_string(out, s)
    })
}

/// Whether `a` and `b` expand to the same polynomial in the atom coordinates.
///
/// # Safety
/// `a` and `b` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rumer_polynomial_equal_by_expansion(
    a: *const RumerPolynomial,
    b: *const RumerPolynomial,
    out: *mut bool,
) -> RumerStatus {
    guarded(|| {
        check_out!(a, b, out);
        let (a, b) = (&(*a).inner, &(*b).inner);
        if a.n() != b.n() {
            return fail(RumerStatus::InvalidArgument, "polynomials on different atom counts");
        }
        *out = expand(a) == expand(b);
        RumerStatus::Ok
    })
}

/// # Safety
/// `p` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rumer_polynomial_free(p: *mut RumerPolynomial) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Basis verification report for `(n, m)` as JSON.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rumer_verify_basis_json(
    n: usize,
    m: usize,
    out: *mut *mut c_char,
) -> RumerStatus {
    guarded(|| {
        check_out!(out);
        if n == 0 {
            return fail(RumerStatus::InvalidArgument, "n must be at least 1");
        }
        let report = verify_basis(n, m);
        write_string(out, serde_json::to_string(&report).expect("report serializes"))
    })
}

/// Merge-bijection report for a multidegree with at least two entries, as
/// JSON.
///
/// # Safety
/// `degrees` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rumer_verify_psi_bijection_json(
    degrees: *const usize,
    len: usize,
    out: *mut *mut c_char,
) -> RumerStatus {
    guarded(|| {
        check_out!(out);
        let d = match read_degrees(degrees, len) {
            Ok(d) => d,
            Err(s) => return s,
        };
        match verify_psi_bijection(&d) {
            Ok(r) => write_string(out, serde_json::to_string(&r).expect("report serializes")),
            Err(e) => from_error(e),
        }
    })
}

/// SVG drawing of a diagram given in text or JSON form.
///
/// # Safety
/// `diagram` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rumer_render_svg(
    diagram: *const c_char,
    out: *mut *mut c_char,
) -> RumerStatus {
    guarded(|| {
        check_out!(out);
        let text = match read_str(diagram) {
            Ok(t) => t.trim(),
            Err(s) => return s,
        };
        let scheme = if text.starts_with('{') {
            serde_json::from_str::<ValenceScheme>(text)
                .map_err(|e| fail(RumerStatus::ParseError, e.to_string()))
        } else {
            text.parse::<ValenceScheme>().map_err(from_error)
        };
        match scheme {
            Ok(s) => write_string(out, render_svg(&s)),
            Err(status) => status,
        }
    })
}
