//! C ABI over `chainlift`.
//!
//! Objects cross the boundary as opaque pointers created by `*_new` /
//! `*_parse` and released by the matching `*_free`. Every fallible call
//! returns a [`ChainliftStatus`]; on failure [`chainlift_last_error`] holds
//! a message for the calling thread. Strings returned to the caller are
//! owned by the caller and released with [`chainlift_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use chainlift::chain::verify_certificate_json;
use chainlift::session::{all_passed, parse_session, render_json, run_script, RunOptions};
use chainlift::{Ideal, MonomialOrder, PolyRing, Polynomial, Ring};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainliftStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    RingMismatch = 4,
    NotFound = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainliftOrder {
    Lex = 0,
    Grlex = 1,
    Grevlex = 2,
}

impl From<ChainliftOrder> for MonomialOrder {
    fn from(o: ChainliftOrder) -> Self {
        match o {
            ChainliftOrder::Lex => MonomialOrder::Lex,
            ChainliftOrder::Grlex => MonomialOrder::GrLex,
            ChainliftOrder::Grevlex => MonomialOrder::GrevLex,
        }
    }
}

/// A polynomial ring.
pub struct ChainliftRing(Ring);

/// A polynomial together with its ring.
pub struct ChainliftPoly(Polynomial);

/// An ideal of a polynomial ring.
pub struct ChainliftIdeal(Ideal);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(ChainliftStatus, String);

type FfiResult<T> = Result<T, Failure>;

fn fail<T>(status: ChainliftStatus, message: impl ToString) -> FfiResult<T> {
    Err(Failure(status, message.to_string()))
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', "?")).expect("nul bytes replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

/// Runs `f`, recording the error message and catching panics.
fn guard(f: impl FnOnce() -> FfiResult<()>) -> ChainliftStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ChainliftStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            ChainliftStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> FfiResult<&'a str> {
    if p.is_null() {
        return fail(ChainliftStatus::NullPointer, format!("{what} is null"));
    }
    CStr::from_ptr(p)
        .to_str()
        .or_else(|_| fail(ChainliftStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> FfiResult<&'a T> {
    p.as_ref().map_or_else(
        || fail(ChainliftStatus::NullPointer, format!("{what} is null")),
        Ok,
    )
}

unsafe fn put<T>(out: *mut T, value: T) -> FfiResult<()> {
    if out.is_null() {
        return fail(ChainliftStatus::NullPointer, "output pointer is null");
    }
    out.write(value);
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', "?"))
        .expect("nul bytes replaced")
        .into_raw()
}

/// Message of the last failed call on this thread, or NULL. The pointer is
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn chainlift_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn chainlift_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn chainlift_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates `K[vars]` from a comma-separated variable list. `characteristic`
/// is 0 or a prime below 2^31.
///
/// # Safety
/// `vars` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn chainlift_ring_new(
    vars: *const c_char,
    characteristic: u32,
    out: *mut *mut ChainliftRing,
) -> ChainliftStatus {
    guard(|| {
        let vars: Vec<&str> = str_arg(vars, "vars")?
            .split(',')
            .map(str::trim)
            .filter(|v| !v.is_empty())
            .collect();
        let ring =
            PolyRing::new(&vars, characteristic).or_else(|e| fail(ChainliftStatus::Parse, e))?;
        put(out, Box::into_raw(Box::new(ChainliftRing(ring))))
    })
}

/// # Safety
/// `ring` must come from [`chainlift_ring_new`] or be NULL.
#[no_mangle]
pub unsafe extern "C" fn chainlift_ring_free(ring: *mut ChainliftRing) {
    if !ring.is_null() {
        drop(Box::from_raw(ring));
    }
}

/// # Safety
/// `ring` must be live; `text` NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn chainlift_poly_parse(
    ring: *const ChainliftRing,
    text: *const c_char,
    out: *mut *mut ChainliftPoly,
) -> ChainliftStatus {
    guard(|| {
        let ring = ref_arg(ring, "ring")?;
        let p = chainlift::poly::parse_poly(str_arg(text, "text")?, &ring.0)
            .or_else(|e| fail(ChainliftStatus::Parse, e))?;
        put(out, Box::into_raw(Box::new(ChainliftPoly(p))))
    })
}

/// Canonical text of `poly`; free with [`chainlift_string_free`]. NULL if
/// `poly` is NULL.
///
/// # Safety
/// `poly` must be live or NULL.
#[no_mangle]
pub unsafe extern "C" fn chainlift_poly_to_string(poly: *const ChainliftPoly) -> *mut c_char {
    poly.as_ref()
        .map_or(ptr::null_mut(), |p| owned_string(p.0.to_string()))
}

/// # Safety
/// `poly` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn chainlift_poly_free(poly: *mut ChainliftPoly) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// The ideal generated by `n` polynomial strings.
///
/// # Safety
/// `gens` must point to `n` NUL-terminated strings (it may be NULL when
/// `n` is 0); `ring` must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn chainlift_ideal_new(
    ring: *const ChainliftRing,
    gens: *const *const c_char,
    n: usize,
    out: *mut *mut ChainliftIdeal,
) -> ChainliftStatus {
    guard(|| {
        let ring = ref_arg(ring, "ring")?;
        if n > 0 && gens.is_null() {
            return fail(ChainliftStatus::NullPointer, "gens is null");
        }
        let texts = (0..n)
            .map(|i| str_arg(*gens.add(i), "generator"))
            .collect::<FfiResult<Vec<&str>>>()?;
        let ideal = Ideal::parse(&ring.0, &texts).or_else(|e| fail(ChainliftStatus::Parse, e))?;
        put(out, Box::into_raw(Box::new(ChainliftIdeal(ideal))))
    })
}

/// # Safety
/// `ideal` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn chainlift_ideal_free(ideal: *mut ChainliftIdeal) {
    if !ideal.is_null() {
        drop(Box::from_raw(ideal));
    }
}

/// Canonical form of the ideal, e.g. `(X, Y^2*Z - 1)`.
///
/// # Safety
/// `ideal` must be live or NULL.
#[no_mangle]
pub unsafe extern "C" fn chainlift_ideal_to_string(ideal: *const ChainliftIdeal) -> *mut c_char {
    ideal.as_ref().map_or(ptr::null_mut(), |i| {
        owned_string(i.0.canonical().to_string())
    })
}

/// # Safety
/// Both handles live and in the same ring; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn chainlift_ideal_contains(
    ideal: *const ChainliftIdeal,
    poly: *const ChainliftPoly,
    out: *mut bool,
) -> ChainliftStatus {
    guard(|| {
        let ideal = ref_arg(ideal, "ideal")?;
        let poly = ref_arg(poly, "poly")?;
        let member = ideal
            .0
            .contains(&poly.0)
            .or_else(|e| fail(ChainliftStatus::RingMismatch, e))?;
        put(out, member)
    })
}

/// Reduced Gröbner basis, one element per line.
///
/// # Safety
/// `ideal` live; `out` writable. Free the result with
/// [`chainlift_string_free`].
#[no_mangle]
pub unsafe extern "C" fn chainlift_ideal_groebner(
    ideal: *const ChainliftIdeal,
    order: ChainliftOrder,
    out: *mut *mut c_char,
) -> ChainliftStatus {
    guard(|| {
        let ideal = ref_arg(ideal, "ideal")?;
        let gb = ideal.0.groebner(order.into());
        let lines: Vec<String> = gb.elements().iter().map(|g| g.to_string()).collect();
        put(out, owned_string(lines.join("\n")))
    })
}

/// Parses and runs a session. `task` selects one task or is NULL for all.
/// `out_json` receives the JSON report document; `out_passed` whether every
/// task passed. A session that runs but fails its tasks still returns
/// `CHAINLIFT_STATUS_OK`.
///
/// # Safety
/// `text` NUL-terminated; `task` NUL-terminated or NULL; outputs writable.
#[no_mangle]
pub unsafe extern "C" fn chainlift_session_run(
    text: *const c_char,
    task: *const c_char,
    out_json: *mut *mut c_char,
    out_passed: *mut bool,
) -> ChainliftStatus {
    guard(|| {
        let script =
            parse_session(str_arg(text, "text")?).or_else(|e| fail(ChainliftStatus::Parse, e))?;
        let task = if task.is_null() {
            None
        } else {
            Some(str_arg(task, "task")?.to_string())
        };
        let opts = RunOptions {
            task,
            ..RunOptions::default()
        };
        let reports = run_script(&script, &opts).or_else(|e| fail(ChainliftStatus::NotFound, e))?;
        if out_json.is_null() || out_passed.is_null() {
            return fail(ChainliftStatus::NullPointer, "output pointer is null");
        }
        put(out_passed, all_passed(&reports))?;
        put(out_json, owned_string(render_json(&reports)))
    })
}

/// Re-checks a certificate file's identity and stored hash.
///
/// # Safety
/// `json` NUL-terminated; `out_valid` writable.
#[no_mangle]
pub unsafe extern "C" fn chainlift_certificate_verify(
    json: *const c_char,
    out_valid: *mut bool,
) -> ChainliftStatus {
    guard(|| {
        let check = verify_certificate_json(str_arg(json, "json")?)
            .or_else(|e| fail(ChainliftStatus::Parse, e))?;
        put(out_valid, check.is_valid())
    })
}
