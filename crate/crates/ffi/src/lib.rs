//! C ABI for arrowlab.
//!
//! Colorings are opaque `ArrowlabColoring` handles owned by the caller and
//! released with `arrowlab_coloring_free`. Every fallible function returns an
//! `ArrowlabStatus`; on failure `arrowlab_last_error` describes the problem.
//! Strings returned by the library are released with `arrowlab_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use arrowlab::arrows::{decide_arrow, ArrowError, ArrowKind, ArrowQuery, Engine};
use arrowlab::colorings::{load_coloring, random_coloring, save_coloring, ColorValue, Coloring};
use arrowlab::ordinal::{parse_ordinal, Ordinal, OrdinalDomain};
use arrowlab::walks::{rho, varrho};
use arrowlab::wellconn::{is_well_connected, max_wc};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArrowlabStatus {
    /// Success; for predicates, the positive answer.
    Ok = 0,
    /// Success with a negative answer (fails, refuted).
    Negative = 1,
    /// A required pointer was null.
    NullPointer = 2,
    /// An argument or input text was rejected.
    InvalidArgument = 3,
    /// A search guard (size limit or node budget) was hit.
    ResourceGuard = 4,
    /// A bug: a panic or an internal consistency failure.
    Internal = 5,
}

/// Which partition arrow to decide.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArrowlabKind {
    Classical = 0,
    Hc = 1,
    Wc = 2,
}

/// Search engine for `arrowlab_decide_arrow`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArrowlabEngine {
    Backtrack = 0,
    Exhaustive = 1,
}

/// Opaque coloring handle.
pub struct ArrowlabColoring {
    inner: Coloring,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(ArrowlabStatus, String);

impl Failure {
    fn invalid(e: impl std::fmt::Display) -> Self {
        Failure(ArrowlabStatus::InvalidArgument, e.to_string())
    }

    fn null(what: &str) -> Self {
        Failure(ArrowlabStatus::NullPointer, format!("{what} is null"))
    }
}

impl From<ArrowError> for Failure {
    fn from(e: ArrowError) -> Self {
        let status = match e {
            _ if e.is_resource_guard() => ArrowlabStatus::ResourceGuard,
            ArrowError::Internal(_) => ArrowlabStatus::Internal,
            _ => ArrowlabStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<ArrowlabStatus, Failure>) -> ArrowlabStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            ArrowlabStatus::Internal
        }
    }
}

unsafe fn coloring<'a>(c: *const ArrowlabColoring) -> Result<&'a Coloring, Failure> {
    c.as_ref()
        .map(|h| &h.inner)
        .ok_or_else(|| Failure::null("coloring"))
}

unsafe fn c_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure::null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure::invalid(format!("{what} is not UTF-8")))
}

unsafe fn ordinal(s: *const c_char, what: &str) -> Result<Ordinal, Failure> {
    parse_ordinal(c_str(s, what)?).map_err(Failure::invalid)
}

unsafe fn emit<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::null(what));
    }
    out.write(value);
    Ok(())
}

fn handle(c: Coloring) -> *mut ArrowlabColoring {
    Box::into_raw(Box::new(ArrowlabColoring { inner: c }))
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next library call on the same thread.
#[no_mangle]
pub extern "C" fn arrowlab_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn arrowlab_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses coloring file text.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn arrowlab_coloring_load(
    text: *const c_char,
    out: *mut *mut ArrowlabColoring,
) -> ArrowlabStatus {
    guard(|| {
        let c = load_coloring(c_str(text, "text")?).map_err(Failure::invalid)?;
        emit(out, handle(c), "out")?;
        Ok(ArrowlabStatus::Ok)
    })
}

/// Seeded random coloring of `[n]^2` with `arity` colors.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn arrowlab_coloring_random(
    n: usize,
    arity: u64,
    seed: u64,
    out: *mut *mut ArrowlabColoring,
) -> ArrowlabStatus {
    guard(|| {
        let c = random_coloring(n, arity, seed).map_err(Failure::invalid)?;
        emit(out, handle(c), "out")?;
        Ok(ArrowlabStatus::Ok)
    })
}

/// Dense coloring of `[n]^2` from `n(n-1)/2` colors listed column by column:
/// `c(0,1), c(0,2), c(1,2), c(0,3), ...`.
///
/// # Safety
/// `colors` must point to `n(n-1)/2` values and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn arrowlab_coloring_from_matrix(
    n: usize,
    arity: u64,
    colors: *const u64,
    out: *mut *mut ArrowlabColoring,
) -> ArrowlabStatus {
    guard(|| {
        let len = n * n.saturating_sub(1) / 2;
        if colors.is_null() && len > 0 {
            return Err(Failure::null("colors"));
        }
        let values: Vec<ColorValue> = if len == 0 {
            Vec::new()
        } else {
            std::slice::from_raw_parts(colors, len)
                .iter()
                .map(|&k| ColorValue::Scalar(k))
                .collect()
        };
        let domain = OrdinalDomain::initial(n).map_err(Failure::invalid)?;
        let c = Coloring::dense(domain, arity, values).map_err(Failure::invalid)?;
        emit(out, handle(c), "out")?;
        Ok(ArrowlabStatus::Ok)
    })
}

/// Releases a coloring. Null is ignored.
///
/// # Safety
/// `c` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn arrowlab_coloring_free(c: *mut ArrowlabColoring) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Number of domain elements, or 0 for a null handle.
///
/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn arrowlab_coloring_size(c: *const ArrowlabColoring) -> usize {
    c.as_ref().map_or(0, |h| h.inner.len())
}

/// Color index of the pair at domain positions `i < j`.
///
/// # Safety
/// `c` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn arrowlab_coloring_eval(
    c: *const ArrowlabColoring,
    i: usize,
    j: usize,
    out: *mut u64,
) -> ArrowlabStatus {
    guard(|| {
        let c = coloring(c)?;
        if i >= j || j >= c.len() {
            return Err(Failure::invalid(format!(
                "need i < j < {}, got ({i}, {j})",
                c.len()
            )));
        }
        emit(out, c.eval_index(i, j).index(), "out")?;
        Ok(ArrowlabStatus::Ok)
    })
}

/// Coloring file text; release with `arrowlab_string_free`.
///
/// # Safety
/// `c` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn arrowlab_coloring_save(
    c: *const ArrowlabColoring,
    out: *mut *mut c_char,
) -> ArrowlabStatus {
    guard(|| {
        let s = save_coloring(coloring(c)?).map_err(Failure::invalid)?;
        let s = CString::new(s).map_err(Failure::invalid)?;
        emit(out, s.into_raw(), "out")?;
        Ok(ArrowlabStatus::Ok)
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn arrowlab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Size of the largest set well-connected in scalar color `color`.
///
/// # Safety
/// `c` must be a live handle and `out_size` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn arrowlab_max_wc(
    c: *const ArrowlabColoring,
    color: u64,
    out_size: *mut usize,
) -> ArrowlabStatus {
    guard(|| {
        let c = coloring(c)?;
        let all = max_wc(c, c.domain()).map_err(Failure::invalid)?;
        let size = all
            .iter()
            .find(|m| m.color.index() == color)
            .map_or(usize::from(!c.is_empty()), |m| m.size);
        emit(out_size, size, "out_size")?;
        Ok(ArrowlabStatus::Ok)
    })
}

/// Whether the vertices at the given domain positions form a set that is
/// well-connected in `color`. Returns `Ok` or `Negative`.
///
/// # Safety
/// `c` must be a live handle and `positions` must point to `len` values.
#[no_mangle]
pub unsafe extern "C" fn arrowlab_wc_check(
    c: *const ArrowlabColoring,
    color: u64,
    positions: *const usize,
    len: usize,
) -> ArrowlabStatus {
    guard(|| {
        let c = coloring(c)?;
        if positions.is_null() {
            return Err(Failure::null("positions"));
        }
        let set = std::slice::from_raw_parts(positions, len)
            .iter()
            .map(|&p| {
                c.domain()
                    .get(p)
                    .ok_or_else(|| Failure::invalid(format!("position {p} out of range")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let cert = is_well_connected(c, ColorValue::Scalar(color), &set, c.domain())
            .map_err(Failure::invalid)?;
        Ok(if cert.accepted() {
            ArrowlabStatus::Ok
        } else {
            ArrowlabStatus::Negative
        })
    })
}

/// Decides `n -> (m)^2_colors` deterministically. Returns `Ok` when the arrow
/// holds and `Negative` when it fails; in the latter case a counterexample is
/// stored in `out_counterexample` if that pointer is non-null. A
/// `node_budget` of 0 means unlimited.
///
/// # Safety
/// `out_counterexample` must be null or a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn arrowlab_decide_arrow(
    kind: ArrowlabKind,
    n: usize,
    m: usize,
    colors: usize,
    engine: ArrowlabEngine,
    node_budget: u64,
    out_counterexample: *mut *mut ArrowlabColoring,
) -> ArrowlabStatus {
    guard(|| {
        let kind = match kind {
            ArrowlabKind::Classical => ArrowKind::Classical,
            ArrowlabKind::Hc => ArrowKind::Hc,
            ArrowlabKind::Wc => ArrowKind::Wc,
        };
        let engine = match engine {
            ArrowlabEngine::Backtrack => Engine::Backtrack,
            ArrowlabEngine::Exhaustive => Engine::Exhaustive,
        };
        let mut q = ArrowQuery::new(kind, n, m, colors).with_engine(engine);
        q.node_budget = (node_budget > 0).then_some(node_budget);
        let v = decide_arrow(&q)?;
        if let (Some(cex), false) = (v.counterexample, out_counterexample.is_null()) {
            out_counterexample.write(handle(cex));
        }
        Ok(if v.holds {
            ArrowlabStatus::Ok
        } else {
            ArrowlabStatus::Negative
        })
    })
}

/// `rho(a, b)` for ordinal expressions `a < b`.
///
/// # Safety
/// `a` and `b` must be NUL-terminated strings and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn arrowlab_rho(
    a: *const c_char,
    b: *const c_char,
    out: *mut u64,
) -> ArrowlabStatus {
    guard(|| {
        let r = rho(&ordinal(a, "a")?, &ordinal(b, "b")?).map_err(Failure::invalid)?;
        emit(out, r, "out")?;
        Ok(ArrowlabStatus::Ok)
    })
}

/// `varrho(a, b) = (rho, count)` for ordinal expressions `a < b`.
///
/// # Safety
/// `a` and `b` must be NUL-terminated strings; the outputs must be valid.
#[no_mangle]
pub unsafe extern "C" fn arrowlab_varrho(
    a: *const c_char,
    b: *const c_char,
    out_rho: *mut u64,
    out_count: *mut u64,
) -> ArrowlabStatus {
    guard(|| {
        let (r, k) = varrho(&ordinal(a, "a")?, &ordinal(b, "b")?).map_err(Failure::invalid)?;
        if out_count.is_null() {
            return Err(Failure::null("out_count"));
        }
        emit(out_rho, r, "out_rho")?;
        out_count.write(k);
        Ok(ArrowlabStatus::Ok)
    })
}
