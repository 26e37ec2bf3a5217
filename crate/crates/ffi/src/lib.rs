//! C interface to `selfapproach`.
//!
//! Polygons and paths are opaque handles created and released through
//! this API. Every call returns an [`SaStatus`]; on failure a description
//! is available from [`sa_last_error_message`] on the same thread.
//! Strings handed out by the library are released with [`sa_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use selfapproach::geom::{Point, Polygon};
use selfapproach::path::{eval_path, path_length, verify_normal_property, verify_triples, SAPath};
use selfapproach::polygon_sa::{is_self_approaching_polygon, Verdict};
use selfapproach::shortest::{shortest_sa_path, SAPathResult, ShortestError};

/// Result codes. Zero is success.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidPolygon = 2,
    InvalidArgument = 3,
    OutsidePolygon = 4,
    /// No self-approaching path exists; the witness is available as JSON.
    NotReachable = 5,
    SolverFailure = 6,
    InvalidJson = 7,
    /// A Rust panic was caught at the boundary.
    Internal = 8,
}

/// Opaque validated polygon.
pub struct SaPolygon {
    inner: Polygon,
}

/// Opaque path.
pub struct SaPath {
    inner: SAPath,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).expect("NULs removed"));
}

/// Runs `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (SaStatus, String)>) -> SaStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            SaStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal error (panic)");
            SaStatus::Internal
        }
    }
}

fn null(what: &str) -> (SaStatus, String) {
    (SaStatus::NullPointer, format!("{what} is null"))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, (SaStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("NULs removed").into_raw()
}

/// Description of the last failure on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn sa_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Static name of a status code.
#[no_mangle]
pub extern "C" fn sa_status_name(status: SaStatus) -> *const c_char {
    let s: &'static CStr = match status {
        SaStatus::Ok => c"ok",
        SaStatus::NullPointer => c"null pointer",
        SaStatus::InvalidPolygon => c"invalid polygon",
        SaStatus::InvalidArgument => c"invalid argument",
        SaStatus::OutsidePolygon => c"point outside polygon",
        SaStatus::NotReachable => c"not reachable",
        SaStatus::SolverFailure => c"solver failure",
        SaStatus::InvalidJson => c"invalid JSON",
        SaStatus::Internal => c"internal error",
    };
    s.as_ptr()
}

/// Builds a polygon from `n` points given as `xy[2i], xy[2i+1]`.
///
/// # Safety
/// `xy` must point to `2 n` doubles and `out` to writable storage.
#[no_mangle]
pub unsafe extern "C" fn sa_polygon_new(xy: *const f64, n: usize, out: *mut *mut SaPolygon) -> SaStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        if xy.is_null() {
            return Err(null("xy"));
        }
        let raw = std::slice::from_raw_parts(xy, 2 * n);
        let pts: Vec<Point> = raw.chunks_exact(2).map(|c| Point::new(c[0], c[1])).collect();
        let inner = Polygon::new(&pts).map_err(|e| (SaStatus::InvalidPolygon, e.to_string()))?;
        *out = Box::into_raw(Box::new(SaPolygon { inner }));
        Ok(())
    })
}

/// Releases a polygon; null is ignored.
///
/// # Safety
/// `p` must come from [`sa_polygon_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sa_polygon_free(p: *mut SaPolygon) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Number of vertices after normalization (collinear runs removed).
///
/// # Safety
/// `p` must be a live polygon handle or null.
#[no_mangle]
pub unsafe extern "C" fn sa_polygon_vertex_count(p: *const SaPolygon) -> usize {
    p.as_ref().map_or(0, |p| p.inner.len())
}

/// Decides whether the polygon is self-approaching. `out_tests`, when not
/// null, receives the number of intersection tests the sweep made.
///
/// # Safety
/// `p` must be a live polygon handle; outputs must be writable or null.
#[no_mangle]
pub unsafe extern "C" fn sa_polygon_is_self_approaching(
    p: *const SaPolygon,
    out_yes: *mut bool,
    out_tests: *mut usize,
) -> SaStatus {
    guard(|| {
        let p = deref(p, "polygon")?;
        if out_yes.is_null() {
            return Err(null("out_yes"));
        }
        let report = is_self_approaching_polygon(&p.inner);
        *out_yes = report.verdict == Verdict::Yes;
        if !out_tests.is_null() {
            *out_tests = report.total_tests();
        }
        Ok(())
    })
}

/// Shortest self-approaching path from `(sx, sy)` to `(tx, ty)`.
///
/// On `Ok`, `*out_path` receives a path handle. On `NotReachable`, the
/// path is null and `*out_json` (when not null) receives the witness as
/// JSON; on `Ok` it receives the path JSON.
///
/// # Safety
/// `p` must be a live polygon handle; outputs must be writable or null.
#[no_mangle]
pub unsafe extern "C" fn sa_shortest_path(
    p: *const SaPolygon,
    sx: f64,
    sy: f64,
    tx: f64,
    ty: f64,
    out_path: *mut *mut SaPath,
    out_json: *mut *mut c_char,
) -> SaStatus {
    guard(|| {
        let p = deref(p, "polygon")?;
        if out_path.is_null() {
            return Err(null("out_path"));
        }
        *out_path = ptr::null_mut();
        if !out_json.is_null() {
            *out_json = ptr::null_mut();
        }
        let result = shortest_sa_path(&p.inner, Point::new(sx, sy), Point::new(tx, ty)).map_err(|e| match e {
            ShortestError::EndpointOutside(q) => {
                (SaStatus::OutsidePolygon, format!("point {q} lies outside the polygon"))
            }
            ShortestError::Solver(f) => (SaStatus::SolverFailure, f.to_string()),
        })?;
        match result {
            SAPathResult::Path { path } => {
                if !out_json.is_null() {
                    *out_json = into_c_string(serde_json::to_string(&path).expect("path serializes"));
                }
                *out_path = Box::into_raw(Box::new(SaPath { inner: path }));
                Ok(())
            }
            r @ SAPathResult::NotReachable { .. } => {
                if !out_json.is_null() {
                    *out_json = into_c_string(serde_json::to_string(&r).expect("witness serializes"));
                }
                Err((SaStatus::NotReachable, "no self-approaching path exists".into()))
            }
        }
    })
}

/// Parses a path from its JSON form.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sa_path_from_json(json: *const c_char, out: *mut *mut SaPath) -> SaStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        if json.is_null() {
            return Err(null("json"));
        }
        let text = CStr::from_ptr(json).to_str().map_err(|e| (SaStatus::InvalidJson, e.to_string()))?;
        let inner: SAPath = serde_json::from_str(text).map_err(|e| (SaStatus::InvalidJson, e.to_string()))?;
        inner.validate().map_err(|e| (SaStatus::InvalidArgument, e.to_string()))?;
        *out = Box::into_raw(Box::new(SaPath { inner }));
        Ok(())
    })
}

/// Serializes a path; release the string with [`sa_string_free`].
///
/// # Safety
/// `p` must be a live path handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sa_path_to_json(p: *const SaPath, out: *mut *mut c_char) -> SaStatus {
    guard(|| {
        let p = deref(p, "path")?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = into_c_string(serde_json::to_string(&p.inner).expect("path serializes"));
        Ok(())
    })
}

/// Number of pieces (segments and involute pieces).
///
/// # Safety
/// `p` must be a live path handle or null.
#[no_mangle]
pub unsafe extern "C" fn sa_path_piece_count(p: *const SaPath) -> usize {
    p.as_ref().map_or(0, |p| p.inner.pieces.len())
}

/// Total arc length.
///
/// # Safety
/// `p` must be a live path handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sa_path_length(p: *const SaPath, out: *mut f64) -> SaStatus {
    guard(|| {
        let p = deref(p, "path")?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = path_length(&p.inner);
        Ok(())
    })
}

/// Point at arc length `s` from the source.
///
/// # Safety
/// `p` must be a live path handle; outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn sa_path_eval(p: *const SaPath, s: f64, out_x: *mut f64, out_y: *mut f64) -> SaStatus {
    guard(|| {
        let p = deref(p, "path")?;
        if out_x.is_null() || out_y.is_null() {
            return Err(null("output"));
        }
        let q = eval_path(&p.inner, s).map_err(|e| (SaStatus::InvalidArgument, e.to_string()))?;
        *out_x = q.x;
        *out_y = q.y;
        Ok(())
    })
}

/// Checks the self-approaching property (normal and triple tests) and,
/// when `poly` is not null, containment.
///
/// # Safety
/// `p` must be a live path handle, `poly` a live polygon handle or null,
/// and `out_pass` writable.
#[no_mangle]
pub unsafe extern "C" fn sa_path_verify(
    p: *const SaPath,
    poly: *const SaPolygon,
    samples_per_piece: usize,
    tol: f64,
    out_pass: *mut bool,
) -> SaStatus {
    guard(|| {
        let p = deref(p, "path")?;
        if out_pass.is_null() {
            return Err(null("out_pass"));
        }
        if !(tol.is_finite() && tol >= 0.0) || samples_per_piece < 2 {
            return Err((SaStatus::InvalidArgument, "need tol >= 0 and at least 2 samples per piece".into()));
        }
        let poly = poly.as_ref().map(|q| &q.inner);
        let a = verify_normal_property(&p.inner, poly, samples_per_piece, tol);
        let b = verify_triples(&p.inner, samples_per_piece, tol);
        *out_pass = a.passed && b.passed;
        Ok(())
    })
}

/// Releases a path; null is ignored.
///
/// # Safety
/// `p` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sa_path_free(p: *mut SaPath) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sa_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
