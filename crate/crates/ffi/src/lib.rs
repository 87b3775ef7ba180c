//! C ABI over `oct-core`.
//!
//! Graphs and reports are opaque heap handles owned by the caller and
//! released with their `_free` function. Every fallible call returns an
//! [`OctStatus`]; on failure, [`oct_last_error`] describes the cause. Panics
//! never cross the boundary.
//!
//! Timeouts are in seconds, and a value that is not positive means no
//! limit. An iteration budget of zero means no limit.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use oct_core::heuristics::{ensemble, EnsembleConfig};
use oct_core::ic::{solve_ic, IcConfig};
use oct_core::ilp::{model_for, Form};
use oct_core::io::{read_graph, InputFormat, LabelOrder};
use oct_core::oracle::brute_force_oct;
use oct_core::reductions::{reduce_fixpoint, solve_lifted};
use oct_core::vc::{solve_oct_via_vc, VcConfig};
use oct_core::{verify_oct, Graph, OctError, SolverReport};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OctStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Refused = 4,
    Contract = 5,
    Config = 6,
    Integration = 7,
    Io = 8,
    Panic = 9,
}

/// LP formulation selector for [`oct_export_lp`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OctForm {
    Direct = 0,
    Cover = 1,
}

/// Opaque graph handle.
pub struct OctGraph(Graph);

/// Opaque solver report handle.
pub struct OctReport(SolverReport);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &OctError) -> OctStatus {
    match e {
        OctError::Parse { .. } => OctStatus::Parse,
        OctError::Refused { .. } => OctStatus::Refused,
        OctError::InvalidArgument(_) => OctStatus::InvalidArgument,
        OctError::Contract(_) => OctStatus::Contract,
        OctError::Config(_) => OctStatus::Config,
        OctError::Integration { .. } => OctStatus::Integration,
        OctError::Io(_) => OctStatus::Io,
    }
}

/// Failure inside an exported call.
enum Fail {
    Null,
    Core(OctError),
}

impl From<OctError> for Fail {
    fn from(e: OctError) -> Self {
        Fail::Core(e)
    }
}

/// Runs `f`, turning errors and panics into a status and a last-error
/// message.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> OctStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            OctStatus::Ok
        }
        Ok(Err(Fail::Null)) => {
            set_error("null pointer argument");
            OctStatus::NullPointer
        }
        Ok(Err(Fail::Core(e))) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(&format!("panic: {msg}"));
            OctStatus::Panic
        }
    }
}

fn null() -> Fail {
    Fail::Null
}

unsafe fn slice<'a, T>(data: *const T, len: usize) -> Result<&'a [T], Fail> {
    if len == 0 {
        Ok(&[])
    } else if data.is_null() {
        Err(null())
    } else {
        Ok(std::slice::from_raw_parts(data, len))
    }
}

unsafe fn graph<'a>(g: *const OctGraph) -> Result<&'a Graph, Fail> {
    g.as_ref().map(|g| &g.0).ok_or_else(null)
}

fn seconds(t: f64) -> Option<f64> {
    (t > 0.0).then_some(t)
}

fn limit(k: u64) -> Option<u64> {
    (k > 0).then_some(k)
}

unsafe fn emit_report(r: SolverReport, out: *mut *mut OctReport) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null());
    }
    *out = Box::into_raw(Box::new(OctReport(r)));
    Ok(())
}

/// Message of the last failed call on this thread, or an empty string. The
/// pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn oct_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn oct_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a graph on `n` vertices from `m` edges stored as `2 * m`
/// consecutive endpoints. Duplicates and self-loops are rejected.
#[no_mangle]
pub unsafe extern "C" fn oct_graph_new(
    n: usize,
    edges: *const usize,
    m: usize,
    out: *mut *mut OctGraph,
) -> OctStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let len = m
            .checked_mul(2)
            .ok_or_else(|| OctError::InvalidArgument("edge count overflow".into()))?;
        let flat = slice(edges, len)?;
        let g = Graph::from_edges(n, flat.chunks_exact(2).map(|e| (e[0], e[1])))?;
        *out = Box::into_raw(Box::new(OctGraph(g)));
        Ok(())
    })
}

/// Parses a canonical, edge-list or QUBO file held in memory. Labels are
/// relabeled numerically where they are integers.
#[no_mangle]
pub unsafe extern "C" fn oct_graph_parse(
    bytes: *const u8,
    len: usize,
    out: *mut *mut OctGraph,
) -> OctStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let (g, _) = read_graph(slice(bytes, len)?, InputFormat::Auto, LabelOrder::Numeric)?;
        *out = Box::into_raw(Box::new(OctGraph(g)));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn oct_graph_free(g: *mut OctGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Vertex count, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn oct_graph_vertex_count(g: *const OctGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.n())
}

/// Edge count, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn oct_graph_edge_count(g: *const OctGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.m())
}

/// Sets `*ok` to whether deleting the `len` vertices at `s` leaves `g`
/// bipartite.
#[no_mangle]
pub unsafe extern "C" fn oct_verify(
    g: *const OctGraph,
    s: *const usize,
    len: usize,
    ok: *mut bool,
) -> OctStatus {
    guard(|| {
        let g = graph(g)?;
        let s = slice(s, len)?;
        if ok.is_null() {
            return Err(null());
        }
        if let Some(&v) = s.iter().find(|&&v| v >= g.n()) {
            return Err(OctError::InvalidArgument(format!("vertex {v} out of range")).into());
        }
        *ok = verify_oct(g, s);
        Ok(())
    })
}

/// Heuristic ensemble. With neither a timeout nor an iteration budget, one
/// round of every heuristic runs.
#[no_mangle]
pub unsafe extern "C" fn oct_solve_heuristic(
    g: *const OctGraph,
    seed: u64,
    timeout: f64,
    iterations: u64,
    out: *mut *mut OctReport,
) -> OctStatus {
    guard(|| {
        let g = graph(g)?;
        let cfg = EnsembleConfig {
            iteration_limit: limit(iterations),
            ..EnsembleConfig::new(seconds(timeout), seed)
        };
        emit_report(ensemble(g, &cfg), out)
    })
}

/// Iterative compression at ordering `level` 0, 1 or 2. When `reduce` is
/// set the graph is preprocessed first and the solution lifted back.
#[no_mangle]
pub unsafe extern "C" fn oct_solve_ic(
    g: *const OctGraph,
    level: u8,
    seed: u64,
    timeout: f64,
    iterations: u64,
    reduce: bool,
    out: *mut *mut OctReport,
) -> OctStatus {
    guard(|| {
        let g = graph(g)?;
        let cfg = IcConfig {
            iteration_limit: limit(iterations),
            ..IcConfig::new(level, seconds(timeout), seed)
        };
        let r = if reduce {
            solve_lifted(g, &reduce_fixpoint(g), |h| solve_ic(h, &cfg))?
        } else {
            solve_ic(g, &cfg)?
        };
        emit_report(r, out)
    })
}

/// Exact solve through vertex cover, optionally capped at `node_limit`
/// search nodes.
#[no_mangle]
pub unsafe extern "C" fn oct_solve_vc(
    g: *const OctGraph,
    seed: u64,
    timeout: f64,
    node_limit: u64,
    out: *mut *mut OctReport,
) -> OctStatus {
    guard(|| {
        let g = graph(g)?;
        let cfg = VcConfig {
            timeout: seconds(timeout),
            node_limit: limit(node_limit),
            initial: None,
        };
        emit_report(solve_oct_via_vc(g, &cfg, seed)?, out)
    })
}

/// Brute-force optimum; [`OctStatus::Refused`] above `cap` vertices.
#[no_mangle]
pub unsafe extern "C" fn oct_oracle(g: *const OctGraph, cap: usize, opt: *mut usize) -> OctStatus {
    guard(|| {
        let g = graph(g)?;
        if opt.is_null() {
            return Err(null());
        }
        *opt = brute_force_oct(g, cap)?.0;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn oct_report_free(r: *mut OctReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Bounds and optimality flag; any output pointer may be null.
#[no_mangle]
pub unsafe extern "C" fn oct_report_bounds(
    r: *const OctReport,
    lower: *mut usize,
    upper: *mut usize,
    optimal: *mut bool,
) -> OctStatus {
    guard(|| {
        let r = &r.as_ref().ok_or_else(null)?.0;
        if let Some(l) = lower.as_mut() {
            *l = r.lower;
        }
        if let Some(u) = upper.as_mut() {
            *u = r.upper;
        }
        if let Some(o) = optimal.as_mut() {
            *o = r.optimal;
        }
        Ok(())
    })
}

/// Solution size, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn oct_report_size(r: *const OctReport) -> usize {
    r.as_ref().map_or(0, |r| r.0.solution.len())
}

/// Wall-clock seconds spent, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn oct_report_elapsed(r: *const OctReport) -> f64 {
    r.as_ref().map_or(0.0, |r| r.0.elapsed)
}

/// Copies the sorted solution into `buf`, which must hold
/// [`oct_report_size`] entries.
#[no_mangle]
pub unsafe extern "C" fn oct_report_vertices(
    r: *const OctReport,
    buf: *mut usize,
    capacity: usize,
) -> OctStatus {
    guard(|| {
        let s = &r.as_ref().ok_or_else(null)?.0.solution.vertices;
        if s.len() > capacity {
            return Err(OctError::InvalidArgument(format!(
                "buffer holds {capacity} entries, solution has {}",
                s.len()
            ))
            .into());
        }
        if !s.is_empty() {
            if buf.is_null() {
                return Err(null());
            }
            ptr::copy_nonoverlapping(s.as_ptr(), buf, s.len());
        }
        Ok(())
    })
}

/// LP-format model as a NUL-terminated string, released with
/// [`oct_string_free`].
#[no_mangle]
pub unsafe extern "C" fn oct_export_lp(
    g: *const OctGraph,
    form: OctForm,
    out: *mut *mut c_char,
) -> OctStatus {
    guard(|| {
        let g = graph(g)?;
        if out.is_null() {
            return Err(null());
        }
        let form = match form {
            OctForm::Direct => Form::Oct,
            OctForm::Cover => Form::Vc,
        };
        let text = CString::new(model_for(g, form).to_lp())
            .map_err(|e| OctError::Contract(e.to_string()))?;
        *out = text.into_raw();
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn oct_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
