//! C ABI over the graph, generation and measurement parts of `funcsample`.
//!
//! Every fallible call returns an [`FsStatus`]; on failure the message is
//! kept per thread and can be copied out with [`fs_last_error_message`].
//! Handles are opaque and must be released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;
use std::slice;
use std::sync::OnceLock;

use funcsample::graph::DirectedGraph;
use funcsample::metrics::{measure_all, MeasureOptions, MeasurementReport, Metric};
use funcsample::spatial::{generate, GenerationSpec};
use funcsample::{lif, stats, Error};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DegenerateGraph = 3,
    Infeasible = 4,
    Numerical = 5,
    Io = 6,
    Parse = 7,
    /// The requested value exists but is undefined (e.g. zero-variance assortativity).
    Undefined = 8,
    Internal = 9,
}

pub struct FsGraph(DirectedGraph);

pub struct FsReport(MeasurementReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(err: &Error) -> FsStatus {
    match err {
        Error::DegenerateGraph(_) => FsStatus::DegenerateGraph,
        Error::InfeasibleDensity { .. } => FsStatus::Infeasible,
        Error::NumericalDivergence { .. }
        | Error::Singularity { .. }
        | Error::ConstantSignal { .. } => FsStatus::Numerical,
        Error::Io { .. } => FsStatus::Io,
        Error::Parse { .. } => FsStatus::Parse,
        _ => FsStatus::InvalidArgument,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (FsStatus, String)>) -> FsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FsStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            FsStatus::Internal
        }
    }
}

fn lift(err: Error) -> (FsStatus, String) {
    (status_of(&err), err.to_string())
}

fn null(what: &str) -> (FsStatus, String) {
    (FsStatus::NullPointer, format!("{what} is null"))
}

/// Copies the calling thread's last error message into `buf` (NUL
/// terminated, truncated to `len`). Returns the full message length in
/// bytes, or 0 when there is none.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn fs_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else { return 0 };
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// Builds a directed graph from `m` edges `src[k] -> dst[k]`.
///
/// # Safety
/// `src` and `dst` must point to `m` readable values (or be null when
/// `m == 0`); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fs_graph_from_edges(
    n: usize,
    src: *const usize,
    dst: *const usize,
    m: usize,
    out: *mut *mut FsGraph,
) -> FsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if m > 0 && (src.is_null() || dst.is_null()) {
            return Err(null("edge array"));
        }
        let (s, d) = if m == 0 {
            (&[][..], &[][..])
        } else {
            (slice::from_raw_parts(src, m), slice::from_raw_parts(dst, m))
        };
        let g =
            DirectedGraph::from_edges(n, s.iter().copied().zip(d.iter().copied())).map_err(lift)?;
        *out = Box::into_raw(Box::new(FsGraph(g)));
        Ok(())
    })
}

/// Reads a graph in the text edge-list format.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fs_graph_load(path: *const c_char, out: *mut *mut FsGraph) -> FsStatus {
    guard(|| {
        if path.is_null() || out.is_null() {
            return Err(null("argument"));
        }
        let path = CStr::from_ptr(path)
            .to_str()
            .map_err(|_| (FsStatus::InvalidArgument, "path is not UTF-8".to_string()))?;
        let f = funcsample::io::load_graph(Path::new(path)).map_err(lift)?;
        *out = Box::into_raw(Box::new(FsGraph(f.graph)));
        Ok(())
    })
}

/// Generates a spatial network in the unit semi-sphere.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fs_spatial_generate(
    n: usize,
    alpha: f64,
    beta: f64,
    seed: u64,
    out: *mut *mut FsGraph,
) -> FsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let net = generate(GenerationSpec {
            n,
            alpha,
            beta,
            seed,
        })
        .map_err(lift)?;
        *out = Box::into_raw(Box::new(FsGraph(net.graph)));
        Ok(())
    })
}

/// # Safety
/// `g` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn fs_graph_free(g: *mut FsGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle or null (which yields 0).
#[no_mangle]
pub unsafe extern "C" fn fs_graph_node_count(g: *const FsGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.node_count())
}

/// # Safety
/// `g` must be a live handle or null (which yields 0).
#[no_mangle]
pub unsafe extern "C" fn fs_graph_edge_count(g: *const FsGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.edge_count())
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fs_graph_density(g: *const FsGraph, out: *mut f64) -> FsStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null("graph"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = g.0.density().map_err(lift)?;
        Ok(())
    })
}

/// Evaluates the full metric catalog.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fs_measure(g: *const FsGraph, out: *mut *mut FsReport) -> FsStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null("graph"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let r = measure_all(&g.0, "ffi", &MeasureOptions::default()).map_err(lift)?;
        *out = Box::into_raw(Box::new(FsReport(r)));
        Ok(())
    })
}

/// # Safety
/// `r` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn fs_report_free(r: *mut FsReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

fn metric_names() -> &'static [CString] {
    static NAMES: OnceLock<Vec<CString>> = OnceLock::new();
    NAMES.get_or_init(|| {
        Metric::catalog()
            .iter()
            .map(|m| CString::new(m.name()).expect("metric names have no NUL"))
            .collect()
    })
}

/// Number of metrics in the catalog; report indices run from 0 to this - 1.
#[no_mangle]
pub extern "C" fn fs_metric_count() -> usize {
    metric_names().len()
}

/// Static name of catalog entry `index`, or null when out of range.
#[no_mangle]
pub extern "C" fn fs_metric_name(index: usize) -> *const c_char {
    metric_names()
        .get(index)
        .map_or(ptr::null(), |s| s.as_ptr())
}

/// Value of catalog entry `index`. Returns `FS_STATUS_UNDEFINED` (and
/// writes NaN) for undefined values.
///
/// # Safety
/// `r` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fs_report_value(
    r: *const FsReport,
    index: usize,
    out: *mut f64,
) -> FsStatus {
    guard(|| {
        let r = r.as_ref().ok_or_else(|| null("report"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let metric = *Metric::catalog().get(index).ok_or_else(|| {
            (
                FsStatus::InvalidArgument,
                format!("metric index {index} out of range"),
            )
        })?;
        match r.0.get(metric) {
            Some(v) => {
                *out = v;
                Ok(())
            }
            None => {
                *out = f64::NAN;
                Err((
                    FsStatus::Undefined,
                    format!("{metric} is undefined for this graph"),
                ))
            }
        }
    })
}

/// Two-sided Welch t-test.
///
/// # Safety
/// `a` and `b` must point to `na` and `nb` readable values; `t` and `p`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn fs_welch_t_test(
    a: *const f64,
    na: usize,
    b: *const f64,
    nb: usize,
    t: *mut f64,
    p: *mut f64,
) -> FsStatus {
    guard(|| {
        if a.is_null() || b.is_null() || t.is_null() || p.is_null() {
            return Err(null("argument"));
        }
        let r = stats::welch_t_test(slice::from_raw_parts(a, na), slice::from_raw_parts(b, nb))
            .map_err(lift)?;
        *t = r.t;
        *p = r.p;
        Ok(())
    })
}

/// Alpha-function synaptic kernel `(x / mu) exp(1 - x / mu)`, 0 for `x < 0`.
#[no_mangle]
pub extern "C" fn fs_alpha_kernel(x: f64, mu: f64) -> f64 {
    lif::alpha_kernel(x, mu)
}
