//! C ABI over `spectra-core`.
//!
//! Graphs and colorings cross the boundary as opaque handles that the caller
//! releases with the matching `*_free` function. Every fallible call returns a
//! [`SpectraCode`]; on failure, [`spectra_last_error`] describes what went
//! wrong on the calling thread. Strings returned through `out` parameters are
//! owned by the caller and released with [`spectra_string_free`].

use std::cell::RefCell;
use std::collections::BTreeSet;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::time::Duration;

use spectra_core::analysis;
use spectra_core::coloring::{self, EdgeColoring};
use spectra_core::constructions;
use spectra_core::graph::{Graph, GraphLike};
use spectra_core::search::{self, SearchBudget, SearchOutcome};

/// Result codes shared by every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectraCode {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidGraph = 3,
    InvalidColoring = 4,
    SearchFailed = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

/// Opaque graph handle.
pub struct SpectraGraph(Graph);

/// Opaque edge-coloring handle.
pub struct SpectraColoring(EdgeColoring);

/// Search limits. Zero means unbounded for `max_nodes` and `max_millis`;
/// `workers` below 1 is treated as 1.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct SpectraBudget {
    pub max_nodes: u64,
    pub max_millis: u64,
    pub workers: u32,
}

/// Summary of a solve. `exact` is false when the budget ran out, in which
/// case `value` is the best found.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct SpectraOutcome {
    pub exact: bool,
    pub value: u64,
    pub nodes: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl ToString) {
    let text = CString::new(msg.to_string().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

/// Message for the most recent failure on this thread. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn spectra_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

fn guard<F>(f: F) -> SpectraCode
where
    F: FnOnce() -> Result<(), (SpectraCode, String)>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SpectraCode::Ok,
        Ok(Err((code, msg))) => {
            set_error(msg);
            code
        }
        Err(_) => {
            set_error("internal panic");
            SpectraCode::Panic
        }
    }
}

fn fail<E: ToString>(code: SpectraCode) -> impl FnOnce(E) -> (SpectraCode, String) {
    move |e| (code, e.to_string())
}

fn null(what: &str) -> (SpectraCode, String) {
    (SpectraCode::NullPointer, format!("{what} is null"))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, (SpectraCode, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), (SpectraCode, String)> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn to_budget(b: Option<&SpectraBudget>) -> SearchBudget {
    match b {
        None => SearchBudget::default(),
        Some(b) => SearchBudget {
            max_nodes: (b.max_nodes > 0).then_some(b.max_nodes),
            max_time: (b.max_millis > 0).then(|| Duration::from_millis(b.max_millis)),
            parallel_width: (b.workers as usize).max(1),
        },
    }
}

unsafe fn boxed_graph(out: *mut *mut SpectraGraph, g: Graph) -> Result<(), (SpectraCode, String)> {
    write_out(out, Box::into_raw(Box::new(SpectraGraph(g))), "out")
}

unsafe fn boxed_coloring(out: *mut *mut SpectraColoring, c: EdgeColoring) -> Result<(), (SpectraCode, String)> {
    write_out(out, Box::into_raw(Box::new(SpectraColoring(c))), "out")
}

unsafe fn out_string(out: *mut *mut c_char, s: String) -> Result<(), (SpectraCode, String)> {
    let c = CString::new(s).map_err(fail(SpectraCode::InvalidArgument))?;
    write_out(out, c.into_raw(), "out")
}

/// Builds `K_{m,n}` (`|Y| = m`, `|X| = n`).
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn spectra_graph_complete_bipartite(
    m: usize,
    n: usize,
    out: *mut *mut SpectraGraph,
) -> SpectraCode {
    guard(|| {
        boxed_graph(
            out,
            Graph::complete_bipartite(m, n).map_err(fail(SpectraCode::InvalidArgument))?,
        )
    })
}

/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn spectra_graph_cycle(k: usize, out: *mut *mut SpectraGraph) -> SpectraCode {
    guard(|| boxed_graph(out, Graph::cycle(k).map_err(fail(SpectraCode::InvalidArgument))?))
}

/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn spectra_graph_path(k: usize, out: *mut *mut SpectraGraph) -> SpectraCode {
    guard(|| boxed_graph(out, Graph::path(k).map_err(fail(SpectraCode::InvalidArgument))?))
}

/// Parses the graph JSON form.
///
/// # Safety
/// `json` must be a NUL-terminated UTF-8 string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spectra_graph_from_json(json: *const c_char, out: *mut *mut SpectraGraph) -> SpectraCode {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(fail(SpectraCode::InvalidArgument))?;
        boxed_graph(
            out,
            Graph::from_json_str(text).map_err(fail(SpectraCode::InvalidGraph))?,
        )
    })
}

/// # Safety
/// `g` must be a live graph handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spectra_graph_to_json(g: *const SpectraGraph, out: *mut *mut c_char) -> SpectraCode {
    guard(|| {
        let g = deref(g, "graph")?;
        let text = serde_json::to_string(&g.0.to_json()).map_err(fail(SpectraCode::InvalidGraph))?;
        out_string(out, text)
    })
}

/// # Safety
/// `g` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn spectra_graph_free(g: *mut SpectraGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Vertex count, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn spectra_graph_vertex_count(g: *const SpectraGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.vertex_count())
}

/// Edge count, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn spectra_graph_edge_count(g: *const SpectraGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.edge_count())
}

/// Wraps `len` colors (indexed by edge) with declared color count `t`.
///
/// # Safety
/// `colors` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spectra_coloring_new(
    t: u32,
    colors: *const u32,
    len: usize,
    out: *mut *mut SpectraColoring,
) -> SpectraCode {
    guard(|| {
        if colors.is_null() && len > 0 {
            return Err(null("colors"));
        }
        let slice = if len == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(colors, len)
        };
        let c = EdgeColoring::new(t, slice.to_vec()).map_err(fail(SpectraCode::InvalidColoring))?;
        boxed_coloring(out, c)
    })
}

/// # Safety
/// `c` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn spectra_coloring_free(c: *mut SpectraColoring) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Declared color count, or 0 for a null handle.
///
/// # Safety
/// `c` must be null or a live coloring handle.
#[no_mangle]
pub unsafe extern "C" fn spectra_coloring_t(c: *const SpectraColoring) -> u32 {
    c.as_ref().map_or(0, |c| c.0.t())
}

/// Copies the colors into `buf`. `len` always receives the edge count; the
/// call fails with `BufferTooSmall` when `cap` is less than that.
///
/// # Safety
/// `c` must be a live handle, `buf` writable for `cap` values, `len` writable.
#[no_mangle]
pub unsafe extern "C" fn spectra_coloring_colors(
    c: *const SpectraColoring,
    buf: *mut u32,
    cap: usize,
    len: *mut usize,
) -> SpectraCode {
    guard(|| {
        let c = deref(c, "coloring")?;
        let colors = c.0.colors();
        write_out(len, colors.len(), "len")?;
        if cap < colors.len() {
            return Err((
                SpectraCode::BufferTooSmall,
                format!("need room for {} colors", colors.len()),
            ));
        }
        if buf.is_null() && !colors.is_empty() {
            return Err(null("buf"));
        }
        ptr::copy_nonoverlapping(colors.as_ptr(), buf, colors.len());
        Ok(())
    })
}

/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spectra_coloring_to_json(c: *const SpectraColoring, out: *mut *mut c_char) -> SpectraCode {
    guard(|| {
        let c = deref(c, "coloring")?;
        out_string(
            out,
            serde_json::to_string(&c.0).map_err(fail(SpectraCode::InvalidColoring))?,
        )
    })
}

/// The staircase coloring `(x_i, y_j) -> i + j - 1` of `K_{m,n}`, `m >= n`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spectra_staircase(m: usize, n: usize, out: *mut *mut SpectraColoring) -> SpectraCode {
    guard(|| {
        boxed_coloring(
            out,
            constructions::staircase_coloring(m, n).map_err(fail(SpectraCode::InvalidArgument))?,
        )
    })
}

/// Block coloring of `K_{m,n}` interval on `Y` with `t = n * q`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spectra_block_interval_on_y(
    m: usize,
    n: usize,
    q: usize,
    out: *mut *mut SpectraColoring,
) -> SpectraCode {
    guard(|| {
        boxed_coloring(
            out,
            constructions::block_interval_on_y(m, n, q).map_err(fail(SpectraCode::InvalidArgument))?,
        )
    })
}

/// One collapse step of a harmonic coloring.
///
/// # Safety
/// `g` and `c` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spectra_collapse_step(
    g: *const SpectraGraph,
    c: *const SpectraColoring,
    out: *mut *mut SpectraColoring,
) -> SpectraCode {
    guard(|| {
        let (g, c) = (deref(g, "graph")?, deref(c, "coloring")?);
        boxed_coloring(
            out,
            constructions::collapse_step(&g.0, &c.0).map_err(fail(SpectraCode::InvalidColoring))?,
        )
    })
}

/// Validates `c` on `g` and writes the number of interval vertices.
///
/// # Safety
/// `g` and `c` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spectra_interval_count(
    g: *const SpectraGraph,
    c: *const SpectraColoring,
    out: *mut usize,
) -> SpectraCode {
    guard(|| {
        let (g, c) = (deref(g, "graph")?, deref(c, "coloring")?);
        write_out(
            out,
            coloring::interval_count(&g.0, &c.0).map_err(fail(SpectraCode::InvalidColoring))?,
            "out",
        )
    })
}

/// # Safety
/// `g` and `c` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spectra_is_harmonic(
    g: *const SpectraGraph,
    c: *const SpectraColoring,
    out: *mut bool,
) -> SpectraCode {
    guard(|| {
        let (g, c) = (deref(g, "graph")?, deref(c, "coloring")?);
        write_out(
            out,
            coloring::is_harmonic(&g.0, &c.0).map_err(fail(SpectraCode::InvalidColoring))?,
            "out",
        )
    })
}

unsafe fn finish_outcome(
    o: SearchOutcome,
    out: *mut SpectraOutcome,
    witness: *mut *mut SpectraColoring,
) -> Result<(), (SpectraCode, String)> {
    write_out(
        out,
        SpectraOutcome {
            exact: o.status.is_exact(),
            value: o.value as u64,
            nodes: o.nodes_visited,
        },
        "out",
    )?;
    if !witness.is_null() {
        witness.write(match o.witness {
            Some(w) => Box::into_raw(Box::new(SpectraColoring(w))),
            None => ptr::null_mut(),
        });
    }
    Ok(())
}

/// Fewest interval vertices over proper `t`-colorings. `budget` may be null
/// (unbounded). `witness` may be null; otherwise it receives a new handle or
/// null when no witness was found.
///
/// # Safety
/// Pointers must be null where allowed or valid.
#[no_mangle]
pub unsafe extern "C" fn spectra_mu1(
    g: *const SpectraGraph,
    t: u32,
    budget: *const SpectraBudget,
    out: *mut SpectraOutcome,
    witness: *mut *mut SpectraColoring,
) -> SpectraCode {
    guard(|| {
        let g = deref(g, "graph")?;
        let o = search::mu1(&g.0, t, &to_budget(budget.as_ref())).map_err(fail(SpectraCode::SearchFailed))?;
        finish_outcome(o, out, witness)
    })
}

/// Most interval vertices over proper `t`-colorings. Same conventions as
/// [`spectra_mu1`].
///
/// # Safety
/// Pointers must be null where allowed or valid.
#[no_mangle]
pub unsafe extern "C" fn spectra_mu2(
    g: *const SpectraGraph,
    t: u32,
    budget: *const SpectraBudget,
    out: *mut SpectraOutcome,
    witness: *mut *mut SpectraColoring,
) -> SpectraCode {
    guard(|| {
        let g = deref(g, "graph")?;
        let o = search::mu2(&g.0, t, &to_budget(budget.as_ref())).map_err(fail(SpectraCode::SearchFailed))?;
        finish_outcome(o, out, witness)
    })
}

/// Looks for a `t`-coloring interval at each of the `len` listed vertices.
/// `out.value` is 1 when found, 0 otherwise.
///
/// # Safety
/// `vertices` must point to `len` readable values (may be null if `len` is
/// 0); other pointers as in [`spectra_mu1`].
#[no_mangle]
pub unsafe extern "C" fn spectra_feasible_interval_on(
    g: *const SpectraGraph,
    vertices: *const usize,
    len: usize,
    t: u32,
    budget: *const SpectraBudget,
    out: *mut SpectraOutcome,
    witness: *mut *mut SpectraColoring,
) -> SpectraCode {
    guard(|| {
        let g = deref(g, "graph")?;
        if vertices.is_null() && len > 0 {
            return Err(null("vertices"));
        }
        let r: BTreeSet<usize> = if len == 0 {
            BTreeSet::new()
        } else {
            std::slice::from_raw_parts(vertices, len).iter().copied().collect()
        };
        let o = search::feasible_interval_on(&g.0, &r, t, &to_budget(budget.as_ref()))
            .map_err(fail(SpectraCode::SearchFailed))?;
        finish_outcome(o, out, witness)
    })
}

/// Which closed form [`spectra_closed_form`] evaluates.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectraClosedForm {
    Mu21 = 0,
    LowerW = 1,
    UpperW = 2,
    WY = 3,
}

/// Evaluates a closed form for `K_{m,n}`; `(m, n)` may come in either order.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spectra_closed_form(
    form: SpectraClosedForm,
    m: usize,
    n: usize,
    out: *mut usize,
) -> SpectraCode {
    guard(|| {
        let v = match form {
            SpectraClosedForm::Mu21 => analysis::mu21_closed_form(m, n),
            SpectraClosedForm::LowerW => analysis::w_closed(m, n),
            SpectraClosedForm::UpperW => analysis::big_w_closed(m, n),
            SpectraClosedForm::WY => analysis::wy_closed(m, n),
        }
        .map_err(fail(SpectraCode::InvalidArgument))?;
        write_out(out, v, "out")
    })
}

/// Runs the verification sweep and returns the report as JSON. `failures`
/// (may be null) receives the number of failed claims.
///
/// # Safety
/// `out` must be writable; `budget` and `failures` may be null.
#[no_mangle]
pub unsafe extern "C" fn spectra_verify_json(
    max_m: usize,
    max_n: usize,
    budget: *const SpectraBudget,
    out: *mut *mut c_char,
    failures: *mut usize,
) -> SpectraCode {
    guard(|| {
        let report = analysis::verify_suite(max_m, max_n, &to_budget(budget.as_ref()))
            .map_err(fail(SpectraCode::InvalidArgument))?;
        if !failures.is_null() {
            failures.write(report.count(analysis::ClaimStatus::Fail));
        }
        out_string(
            out,
            serde_json::to_string(&report).map_err(fail(SpectraCode::InvalidArgument))?,
        )
    })
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn spectra_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
