//! C interface to `nhom`.
//!
//! Algebras and maps cross the boundary as opaque handles created from JSON
//! text in the formats the `nhom` command line reads. Every function returns
//! an [`NhomStatus`]; on anything but `NHOM_STATUS_OK` a message is available
//! from [`nhom_last_error_message`] on the same thread. Strings returned
//! through `char **` out-parameters are owned by the caller and released with
//! [`nhom_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;
use std::sync::Arc;

use serde_json::{json, Value};

use nhom::algebra::{super_power, symmetric_power, validate_algebra, AlgebraSpec, Element};
use nhom::charfn::{char_series, LinMap};
use nhom::classify::{check_n_hom, check_pq_hom, detect_poly_degree, SamplingPolicy};
use nhom::io::{self, Document};
use nhom::rational::{from_rats, Rat};
use nhom::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NhomStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Invalid = 4,
    DimensionMismatch = 5,
    AlgebraMismatch = 6,
    SizeBoundExceeded = 7,
    NotClosed = 8,
    Math = 9,
    Panic = 10,
}

/// A finite-dimensional commutative algebra over ℚ.
pub struct NhomAlgebra {
    inner: Arc<AlgebraSpec>,
}

/// A linear map between two algebras.
pub struct NhomMap {
    inner: LinMap,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn status_of(e: &Error) -> NhomStatus {
    match e {
        Error::Parse(_) | Error::UnknownLabel(_) | Error::DuplicateLabel(_) => NhomStatus::Parse,
        Error::DimensionMismatch { .. } | Error::OrderMismatch { .. } => NhomStatus::DimensionMismatch,
        Error::AlgebraMismatch(_) => NhomStatus::AlgebraMismatch,
        Error::SizeBoundExceeded { .. } => NhomStatus::SizeBoundExceeded,
        Error::NotClosed(_) => NhomStatus::NotClosed,
        Error::NotNHom { .. }
        | Error::NoSolution { .. }
        | Error::DivisionByZero(_)
        | Error::SingularElement
        | Error::NonZeroConstantTerm
        | Error::InsufficientDepth { .. } => NhomStatus::Math,
        Error::InvalidRep(_) | Error::Invalid(_) => NhomStatus::Invalid,
    }
}

struct Failure(NhomStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

/// Runs `body`, recording the message of any failure or panic.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> NhomStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => NhomStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            NhomStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(NhomStatus::NullPointer, format!("`{what}` is null"))
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|e| Failure(NhomStatus::InvalidUtf8, format!("`{what}`: {e}")))
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_json(out: *mut *mut c_char, value: &Value) -> Result<(), Failure> {
    let s = CString::new(value.to_string()).expect("JSON has no interior NUL");
    put(out, s.into_raw(), "out")
}

fn parse_value(s: &str) -> Result<Value, Failure> {
    Ok(io::parse_json(s, "<input>")?)
}

/// The message of the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn nhom_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn nhom_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds an algebra from a builtin name (`Q`, `fun:x,y`, `fun:3`, `trunc:3`)
/// or an algebra JSON object.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nhom_algebra_new(spec: *const c_char, out: *mut *mut NhomAlgebra) -> NhomStatus {
    guard(|| {
        let s = text(spec, "spec")?;
        let value = if s.trim_start().starts_with('{') { parse_value(s)? } else { Value::String(s.trim().into()) };
        let alg = io::resolve_algebra(&value, Path::new("."))?;
        put(out, Box::into_raw(Box::new(NhomAlgebra { inner: Arc::new(alg) })), "out")
    })
}

/// # Safety
/// `alg` must be null or a handle from this library, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn nhom_algebra_free(alg: *mut NhomAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// # Safety
/// `alg` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nhom_algebra_dim(alg: *const NhomAlgebra, out: *mut usize) -> NhomStatus {
    guard(|| put(out, borrow(alg, "alg")?.inner.dim(), "out"))
}

/// Counts failures of commutativity, associativity and the unit law.
/// `violations_json`, when not null, receives the list as JSON.
///
/// # Safety
/// `alg` must be a live handle; `count` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nhom_algebra_validate(
    alg: *const NhomAlgebra,
    count: *mut usize,
    violations_json: *mut *mut c_char,
) -> NhomStatus {
    guard(|| {
        let v = validate_algebra(&borrow(alg, "alg")?.inner);
        put(count, v.len(), "count")?;
        if !violations_json.is_null() {
            put_json(violations_json, &json!(v.iter().map(ToString::to_string).collect::<Vec<_>>()))?;
        }
        Ok(())
    })
}

/// The algebra as JSON.
///
/// # Safety
/// `alg` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nhom_algebra_to_json(alg: *const NhomAlgebra, out: *mut *mut c_char) -> NhomStatus {
    guard(|| put_json(out, &io::algebra_json(&borrow(alg, "alg")?.inner)))
}

/// `{ "domain": ..., "codomain": ..., "matrix": [[...]] }`, with algebras
/// given inline or by builtin name.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nhom_map_from_json(json: *const c_char, out: *mut *mut NhomMap) -> NhomStatus {
    guard(|| {
        let doc = Document::parse(text(json, "json")?, Path::new("."))?;
        let map = io::map_from_document(&doc)?;
        put(out, Box::into_raw(Box::new(NhomMap { inner: map })), "out")
    })
}

/// # Safety
/// `map` must be null or a handle from this library, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn nhom_map_free(map: *mut NhomMap) {
    if !map.is_null() {
        drop(Box::from_raw(map));
    }
}

/// A new handle for the domain of `map`.
///
/// # Safety
/// `map` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nhom_map_domain(map: *const NhomMap, out: *mut *mut NhomAlgebra) -> NhomStatus {
    guard(|| {
        let inner = borrow(map, "map")?.inner.domain().clone();
        put(out, Box::into_raw(Box::new(NhomAlgebra { inner })), "out")
    })
}

/// `R(f, a, z)` to `order`, as a JSON list of codomain elements. `element` is
/// a JSON list of rational strings in the domain basis.
///
/// # Safety
/// `map` must be a live handle, `element` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nhom_char_series_json(
    map: *const NhomMap,
    element: *const c_char,
    order: usize,
    out: *mut *mut c_char,
) -> NhomStatus {
    guard(|| {
        let f = &borrow(map, "map")?.inner;
        let coords: Vec<Rat> = io::parse_json(text(element, "element")?, "element")?;
        let a = Element::new(from_rats(coords));
        put_json(out, &io::series_json(&char_series(f, &a, order)?))
    })
}

/// Exhaustive n-homomorphism test. `passes` receives 1 or 0; `report_json`,
/// when not null, receives the verdict and witness.
///
/// # Safety
/// `map` must be a live handle; `passes` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nhom_check_n_hom(
    map: *const NhomMap,
    n: usize,
    passes: *mut i32,
    report_json: *mut *mut c_char,
) -> NhomStatus {
    guard(|| {
        let f = &borrow(map, "map")?.inner;
        let outcome = check_n_hom(f, n);
        put(passes, outcome.is_pass() as i32, "passes")?;
        if !report_json.is_null() {
            put_json(report_json, &io::outcome_json(&outcome, f.domain(), None))?;
        }
        Ok(())
    })
}

/// Smallest `n ≤ max_n` for which `map` is an n-homomorphism, as JSON.
///
/// # Safety
/// `map` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nhom_detect_degree(map: *const NhomMap, max_n: usize, out: *mut *mut c_char) -> NhomStatus {
    guard(|| {
        let f = &borrow(map, "map")?.inner;
        put_json(out, &io::hom_class_json(&detect_poly_degree(f, max_n), f.domain(), None))
    })
}

/// Sampled p|q-homomorphism test. A negative `k_max` selects `p + q + 4`.
///
/// # Safety
/// `map` must be a live handle; `passes` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nhom_check_pq_hom(
    map: *const NhomMap,
    p: usize,
    q: usize,
    k_max: i64,
    samples: usize,
    seed: u64,
    passes: *mut i32,
    report_json: *mut *mut c_char,
) -> NhomStatus {
    guard(|| {
        let f = &borrow(map, "map")?.inner;
        let k = if k_max < 0 { (p + q + 4) as isize } else { k_max as isize };
        let policy = SamplingPolicy { samples, seed };
        let outcome = check_pq_hom(f, p, q, k, &policy);
        put(passes, outcome.is_pass() as i32, "passes")?;
        if !report_json.is_null() {
            put_json(report_json, &io::outcome_json(&outcome, f.domain(), Some(io::policy_json(&policy, Some(k)))))?;
        }
        Ok(())
    })
}

/// `S^n A` as JSON.
///
/// # Safety
/// `alg` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nhom_symmetric_power_json(
    alg: *const NhomAlgebra,
    n: usize,
    size_bound: usize,
    out: *mut *mut c_char,
) -> NhomStatus {
    guard(|| {
        let s = symmetric_power(&borrow(alg, "alg")?.inner, n, size_bound)?;
        put_json(out, &io::subalgebra_json(&s))
    })
}

/// `S^{p|q} A` as JSON.
///
/// # Safety
/// `alg` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nhom_super_power_json(
    alg: *const NhomAlgebra,
    p: usize,
    q: usize,
    size_bound: usize,
    out: *mut *mut c_char,
) -> NhomStatus {
    guard(|| {
        let s = super_power(&borrow(alg, "alg")?.inner, p, q, size_bound)?;
        put_json(out, &io::subalgebra_json(&s))
    })
}
