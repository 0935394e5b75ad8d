//! C ABI over `cwl`.
//!
//! Links and paths are opaque handles owned by the caller and released with
//! the matching `_free`. Every rational result comes back as a heap string
//! `"p/q"` (or `"p"`) that must be released with [`cwl_string_free`].
//! Functions return a [`CwlStatus`]; on anything but `CWL_STATUS_OK` the
//! out-parameter is untouched and [`cwl_last_error_message`] describes the
//! failure.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cwl::linalg::parse_rational;
use cwl::{Error, FramedLink, HomotopyPath, LensSpace};
use num_bigint::BigInt;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CwlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    NotRationalHomologySphere = 5,
    Undefined = 6,
    DegenerateChain = 7,
    OutOfRange = 8,
    Panic = 99,
}

/// Opaque framed link.
pub struct CwlLink(FramedLink);

/// Opaque homotopy path (a link plus crossing-change steps).
pub struct CwlPath(HomotopyPath);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Fail(CwlStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse { .. } => CwlStatus::Parse,
            Error::Domain(_) => CwlStatus::Domain,
            Error::NotRationalHomologySphere => CwlStatus::NotRationalHomologySphere,
            Error::CassonWalkerUndefined => CwlStatus::Undefined,
            Error::DegenerateChain(_) => CwlStatus::DegenerateChain,
        };
        Fail(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> CwlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CwlStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            CwlStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(CwlStatus::NullPointer, format!("{what} is null"))
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Fail(CwlStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(h: *const T, what: &str) -> Result<&'a T, Fail> {
    h.as_ref().ok_or_else(|| null(what))
}

unsafe fn put_string(out: *mut *mut c_char, value: impl ToString) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("out"));
    }
    // Rational and BigInt display never contain NUL.
    *out = CString::new(value.to_string()).unwrap().into_raw();
    Ok(())
}

/// Message for the most recent failure on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn cwl_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cwl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `.lnk` text into a new link handle.
///
/// # Safety
/// `lnk` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cwl_link_parse(lnk: *const c_char, out: *mut *mut CwlLink) -> CwlStatus {
    guard(|| {
        let t = text(lnk, "lnk")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let link = cwl::parse_link(t)?;
        *out = Box::into_raw(Box::new(CwlLink(link)));
        Ok(())
    })
}

/// # Safety
/// `link` must come from [`cwl_link_parse`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cwl_link_free(link: *mut CwlLink) {
    if !link.is_null() {
        drop(Box::from_raw(link));
    }
}

/// # Safety
/// `link` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cwl_link_components(link: *const CwlLink, out: *mut usize) -> CwlStatus {
    guard(|| {
        let l = handle(link, "link")?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = l.0.n();
        Ok(())
    })
}

/// Casson-Walker-Lescop invariant of the surgered manifold.
///
/// # Safety
/// `link` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cwl_link_lambda(link: *const CwlLink, out: *mut *mut c_char) -> CwlStatus {
    guard(|| {
        let l = handle(link, "link")?;
        put_string(out, cwl::lescop_lambda(&l.0))
    })
}

/// Casson-Walker invariant; fails with
/// `CWL_STATUS_NOT_RATIONAL_HOMOLOGY_SPHERE` when `|H_1|` is infinite.
///
/// # Safety
/// `link` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cwl_link_walker(link: *const CwlLink, out: *mut *mut c_char) -> CwlStatus {
    guard(|| {
        let l = handle(link, "link")?;
        put_string(out, cwl::walker_lambda(&l.0)?)
    })
}

/// `|H_1|` as a decimal string, `"0"` when infinite.
///
/// # Safety
/// `link` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cwl_link_h1(link: *const CwlLink, out: *mut *mut c_char) -> CwlStatus {
    guard(|| {
        let l = handle(link, "link")?;
        put_string(out, cwl::h1_order(&l.0))
    })
}

/// Parses a path file (link block followed by `path`/`step` lines).
///
/// # Safety
/// `text_in` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cwl_path_parse(text_in: *const c_char, out: *mut *mut CwlPath) -> CwlStatus {
    guard(|| {
        let t = text(text_in, "text")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let path = cwl::parse_path(t)?;
        *out = Box::into_raw(Box::new(CwlPath(path)));
        Ok(())
    })
}

/// # Safety
/// `path` must come from [`cwl_path_parse`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cwl_path_free(path: *mut CwlPath) {
    if !path.is_null() {
        drop(Box::from_raw(path));
    }
}

/// # Safety
/// `path` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cwl_path_steps(path: *const CwlPath, out: *mut usize) -> CwlStatus {
    guard(|| {
        let p = handle(path, "path")?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = p.0.steps.len();
        Ok(())
    })
}

/// Lambda change across step `index` (0-based).
///
/// # Safety
/// `path` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cwl_path_step_delta(
    path: *const CwlPath,
    index: usize,
    out: *mut *mut c_char,
) -> CwlStatus {
    guard(|| {
        let p = handle(path, "path")?;
        let deltas = cwl::moves::step_deltas(&p.0)?;
        let d = deltas.get(index).ok_or_else(|| {
            Fail(
                CwlStatus::OutOfRange,
                format!("step {index} out of range ({} steps)", deltas.len()),
            )
        })?;
        put_string(out, d)
    })
}

/// Total lambda change along the path.
///
/// # Safety
/// `path` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cwl_path_delta(path: *const CwlPath, out: *mut *mut c_char) -> CwlStatus {
    guard(|| {
        let p = handle(path, "path")?;
        put_string(out, cwl::path_delta(&p.0)?)
    })
}

/// Dedekind sum `s(p, q)`, `q > 0`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cwl_dedekind(p: i64, q: i64, out: *mut *mut c_char) -> CwlStatus {
    guard(|| put_string(out, cwl::dedekind_fast(&BigInt::from(p), &BigInt::from(q))?))
}

/// Lambda of the lens space `L(p, q)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cwl_lens_lambda(p: i64, q: i64, out: *mut *mut c_char) -> CwlStatus {
    guard(|| {
        let lens = LensSpace::from_i64(p, q)?;
        put_string(out, cwl::lens_lambda(&lens))
    })
}

/// Lambda of surgery on `T(n)` with framings `(s, -s)`; `s` is `"p/q"`.
///
/// # Safety
/// `s` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cwl_tn_lambda(n: i64, s: *const c_char, out: *mut *mut c_char) -> CwlStatus {
    guard(|| {
        let t = text(s, "s")?;
        let s = parse_rational(t)
            .ok_or_else(|| Fail(CwlStatus::Parse, format!("malformed rational `{t}`")))?;
        let path = cwl::tn_path(n, s)?;
        put_string(out, cwl::mirror_lambda(&path)?)
    })
}
