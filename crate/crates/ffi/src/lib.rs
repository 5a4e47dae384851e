//! C ABI over `gfp-core`.
//!
//! Handles (`GfpPoly`, `GfpFamily`) are opaque and owned by the caller once
//! returned; release them with the matching `_free` function. Strings handed
//! out by the library are released with [`gfp_string_free`]. Exact rationals
//! cross the boundary as `"p"` or `"p/q"` strings.
//!
//! Every fallible call returns a [`GfpStatus`]; on failure a message is
//! available from [`gfp_last_error_message`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gfp_core::verify::{self, SweepConfig};
use gfp_core::{closed_resultant, disc_closed, GfpError, Polynomial};

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GfpStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Polynomial or family text did not parse.
    Parse = 3,
    /// An argument was outside the operation's domain.
    InvalidArgument = 4,
    /// No closed form covers the requested members.
    NoClosedForm = 5,
    /// A closed form's hypothesis (e.g. constant g) does not hold.
    Hypothesis = 6,
    /// A verification sweep ran and found a counterexample.
    VerificationFailed = 7,
    /// The library panicked; this is a bug.
    Internal = 8,
}

/// Opaque polynomial with rational coefficients.
pub struct GfpPoly {
    inner: Polynomial,
}

/// Opaque generalized Fibonacci family.
pub struct GfpFamily {
    inner: gfp_core::GfpFamily,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(CString::new(msg).expect("nul bytes removed")));
}

fn status_of(err: &GfpError) -> GfpStatus {
    match err {
        GfpError::Parse { .. } | GfpError::UnknownFamily { .. } | GfpError::UnprimedPellLucas => {
            GfpStatus::Parse
        }
        GfpError::NoClosedForm(_) | GfpError::NoConjugate(_) | GfpError::NotConjugate { .. } => {
            GfpStatus::NoClosedForm
        }
        GfpError::Hypothesis(_) => GfpStatus::Hypothesis,
        _ => GfpStatus::InvalidArgument,
    }
}

struct Fail(GfpStatus);

impl From<GfpError> for Fail {
    fn from(e: GfpError) -> Self {
        set_error(e.to_string());
        Fail(status_of(&e))
    }
}

fn fail(status: GfpStatus, msg: &str) -> Fail {
    set_error(msg);
    Fail(status)
}

/// Runs `body`, turning errors and panics into status codes.
fn guard(body: impl FnOnce() -> Result<(), Fail>) -> GfpStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => GfpStatus::Ok,
        Ok(Err(Fail(status))) => status,
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            GfpStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(fail(GfpStatus::NullPointer, &format!("{what} is null")));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(GfpStatus::InvalidUtf8, &format!("{what} is not UTF-8")))
}

unsafe fn read_ref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref()
        .ok_or_else(|| fail(GfpStatus::NullPointer, &format!("{what} is null")))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(fail(GfpStatus::NullPointer, "output pointer is null"));
    }
    out.write(value);
    Ok(())
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("nul bytes removed")
        .into_raw()
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn gfp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn gfp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn gfp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a polynomial such as `"3*x^2 - x + 1/2"`.
///
/// # Safety
/// `text` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gfp_poly_parse(text: *const c_char, out: *mut *mut GfpPoly) -> GfpStatus {
    guard(|| {
        let text = read_str(text, "text")?;
        let inner: Polynomial = text.parse()?;
        write_out(out, Box::into_raw(Box::new(GfpPoly { inner })))
    })
}

/// Renders a polynomial; free the result with [`gfp_string_free`].
///
/// # Safety
/// `poly` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gfp_poly_to_string(
    poly: *const GfpPoly,
    out: *mut *mut c_char,
) -> GfpStatus {
    guard(|| {
        let poly = read_ref(poly, "poly")?;
        write_out(out, c_string(poly.inner.to_string()))
    })
}

/// Degree of `poly`; -1 for the zero polynomial.
///
/// # Safety
/// `poly` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gfp_poly_degree(poly: *const GfpPoly, out: *mut i64) -> GfpStatus {
    guard(|| {
        let poly = read_ref(poly, "poly")?;
        let deg = poly.inner.degree().map_or(-1, |d| d as i64);
        write_out(out, deg)
    })
}

/// Formal derivative as a new handle.
///
/// # Safety
/// `poly` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gfp_poly_derivative(
    poly: *const GfpPoly,
    out: *mut *mut GfpPoly,
) -> GfpStatus {
    guard(|| {
        let poly = read_ref(poly, "poly")?;
        let inner = poly.inner.derivative();
        write_out(out, Box::into_raw(Box::new(GfpPoly { inner })))
    })
}

/// Releases a polynomial handle. Null is ignored.
///
/// # Safety
/// `poly` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn gfp_poly_free(poly: *mut GfpPoly) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Looks up a family by built-in name (`"fibonacci"`, `"chebyshev-T"`, ...)
/// or inline spec (`"fib:<d>:<g>"`, `"lucas:<d>:<g>:<p0>"`).
///
/// # Safety
/// `spec` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gfp_family_new(
    spec: *const c_char,
    out: *mut *mut GfpFamily,
) -> GfpStatus {
    guard(|| {
        let spec = read_str(spec, "spec")?;
        let inner = gfp_core::GfpFamily::from_spec(spec)?;
        write_out(out, Box::into_raw(Box::new(GfpFamily { inner })))
    })
}

/// The `n`-th member of `family` as a new handle.
///
/// # Safety
/// `family` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gfp_family_generate(
    family: *const GfpFamily,
    n: usize,
    out: *mut *mut GfpPoly,
) -> GfpStatus {
    guard(|| {
        let family = read_ref(family, "family")?;
        let inner = family.inner.generate(n);
        write_out(out, Box::into_raw(Box::new(GfpPoly { inner })))
    })
}

/// Releases a family handle. Null is ignored.
///
/// # Safety
/// `family` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn gfp_family_free(family: *mut GfpFamily) {
    if !family.is_null() {
        drop(Box::from_raw(family));
    }
}

/// Sylvester resultant `Res(p, q)` as a rational string.
///
/// # Safety
/// `p` and `q` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gfp_resultant(
    p: *const GfpPoly,
    q: *const GfpPoly,
    out: *mut *mut c_char,
) -> GfpStatus {
    guard(|| {
        let (p, q) = (read_ref(p, "p")?, read_ref(q, "q")?);
        let r = gfp_core::resultant(&p.inner, &q.inner)?;
        write_out(out, c_string(r.to_string()))
    })
}

/// Discriminant of a non-constant polynomial as a rational string.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gfp_discriminant(p: *const GfpPoly, out: *mut *mut c_char) -> GfpStatus {
    guard(|| {
        let p = read_ref(p, "p")?;
        let r = gfp_core::discriminant(&p.inner)?;
        write_out(out, c_string(r.to_string()))
    })
}

/// Closed-form `Res(G1_i, G2_j)` for members of one family or of a
/// conjugate pair.
///
/// # Safety
/// `first` and `second` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gfp_closed_resultant(
    first: *const GfpFamily,
    i: u64,
    second: *const GfpFamily,
    j: u64,
    out: *mut *mut c_char,
) -> GfpStatus {
    guard(|| {
        let (a, b) = (read_ref(first, "first")?, read_ref(second, "second")?);
        let r = closed_resultant(&a.inner, i, &b.inner, j)?;
        write_out(out, c_string(r.value.to_string()))
    })
}

/// Closed-form discriminant of the `n`-th member; needs `deg d = 1` and
/// constant `g`.
///
/// # Safety
/// `family` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gfp_closed_discriminant(
    family: *const GfpFamily,
    n: u64,
    out: *mut *mut c_char,
) -> GfpStatus {
    guard(|| {
        let family = read_ref(family, "family")?;
        let r = disc_closed(&family.inner, n)?;
        write_out(out, c_string(r.to_string()))
    })
}

/// Runs the verification sweep up to `max_n` and writes the reports as JSON
/// lines to `out_json`.
///
/// `identities` is a comma-separated list of identity ids, or null for all.
/// Returns [`GfpStatus::VerificationFailed`] (with the reports still
/// written) if any identity fails.
///
/// # Safety
/// `identities` must be null or a valid C string; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gfp_verify_json(
    identities: *const c_char,
    max_n: u64,
    jobs: usize,
    out_json: *mut *mut c_char,
) -> GfpStatus {
    let mut all_passed = true;
    let status = guard(|| {
        if out_json.is_null() {
            return Err(fail(GfpStatus::NullPointer, "out_json is null"));
        }
        let names: Vec<String> = if identities.is_null() {
            Vec::new()
        } else {
            read_str(identities, "identities")?
                .split(',')
                .map(|s| s.trim().to_string())
                .filter(|s| !s.is_empty())
                .collect()
        };
        let cfg = SweepConfig {
            max_n,
            jobs,
            ..SweepConfig::default()
        };
        let reports = verify::run_named(&cfg, &names)?;
        all_passed = reports.iter().all(|r| r.passed);
        let mut text = String::new();
        for r in &reports {
            text.push_str(&r.to_json());
            text.push('\n');
        }
        write_out(out_json, c_string(text))
    });
    if status == GfpStatus::Ok && !all_passed {
        set_error("verification found counterexamples");
        return GfpStatus::VerificationFailed;
    }
    status
}
