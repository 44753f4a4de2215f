//! C interface to zonocube.
//!
//! Objects are opaque handles owned by the caller and released with the
//! matching `*_free` function. Every fallible call returns a [`ZcStatus`];
//! on failure [`zc_last_error_message`] describes the problem. Strings
//! returned by the library are released with [`zc_string_free`].

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

use zonocube::digraph::class_digraph;
use zonocube::enumerate::{enumerate, Budget, Class};
use zonocube::geometry::core;
use zonocube::io::{emit_cubillage, emit_digraph, parse_cubillage, LabelMode};
use zonocube::morphisms::reduce_middle;
use zonocube::{Cubillage, EdgeKind, Error, FlipDigraph};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZcStatus {
    Ok = 0,
    InvalidInput = 1,
    Precondition = 2,
    BudgetExceeded = 3,
    BarrelHole = 4,
    Internal = 5,
    NullPointer = 6,
    OutOfRange = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZcClass {
    All = 0,
    Symmetric = 1,
    Skew = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZcEdgeKind {
    TypeA = 0,
    Simple = 1,
    Double = 2,
    Barrel = 3,
}

/// A validated cubillage.
pub struct ZcCubillage(Cubillage);

/// A flip digraph together with the class it was built from.
pub struct ZcDigraph {
    graph: FlipDigraph,
    class: Class,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let text = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

fn status_of(err: &Error) -> ZcStatus {
    match err {
        Error::InvalidInput(_) | Error::FlipRejected(_) | Error::NotClosed { .. } => ZcStatus::InvalidInput,
        Error::Precondition(_) => ZcStatus::Precondition,
        Error::BudgetExceeded { .. } => ZcStatus::BudgetExceeded,
        Error::BarrelHole { .. } => ZcStatus::BarrelHole,
        Error::LiftInconsistency { .. } | Error::Internal(_) => ZcStatus::Internal,
    }
}

/// Runs `f`, recording any error or panic as the last error.
fn guard(f: impl FnOnce() -> Result<(), (ZcStatus, String)>) -> ZcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ZcStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            ZcStatus::Internal
        }
    }
}

fn lib_err(e: Error) -> (ZcStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (ZcStatus, String) {
    (ZcStatus::NullPointer, format!("{what} is null"))
}

fn class_of(class: ZcClass) -> Class {
    match class {
        ZcClass::All => Class::All,
        ZcClass::Symmetric => Class::Symmetric,
        ZcClass::Skew => Class::Skew,
    }
}

fn budget_of(budget: u64) -> Budget {
    if budget == 0 {
        Budget::from_env()
    } else {
        Budget(budget)
    }
}

fn into_c_string(text: String) -> *mut c_char {
    CString::new(text).expect("JSON has no interior nul").into_raw()
}

/// Message of the most recent failure on this thread; valid until the next
/// call into the library. Never null.
#[no_mangle]
pub extern "C" fn zc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn zc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses and validates a cubillage document.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zc_cubillage_from_json(json: *const c_char, out: *mut *mut ZcCubillage) -> ZcStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| (ZcStatus::InvalidInput, format!("document is not UTF-8: {e}")))?;
        let q = parse_cubillage(text).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(ZcCubillage(q)));
        Ok(())
    })
}

/// The standard (`antistandard = false`) or antistandard cubillage.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zc_cubillage_new(
    n: usize,
    d: usize,
    antistandard: bool,
    out: *mut *mut ZcCubillage,
) -> ZcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let q = if antistandard { Cubillage::antistandard(n, d) } else { Cubillage::standard(n, d) };
        *out = Box::into_raw(Box::new(ZcCubillage(q.map_err(lib_err)?)));
        Ok(())
    })
}

/// # Safety
/// `q` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn zc_cubillage_free(q: *mut ZcCubillage) {
    if !q.is_null() {
        drop(Box::from_raw(q));
    }
}

/// Canonical JSON of the cubillage; free with [`zc_string_free`].
///
/// # Safety
/// `q` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zc_cubillage_to_json(
    q: *const ZcCubillage,
    symmetric_labels: bool,
    out: *mut *mut c_char,
) -> ZcStatus {
    guard(|| {
        let q = q.as_ref().ok_or_else(|| null("cubillage"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let mode = if symmetric_labels { LabelMode::Symmetric } else { LabelMode::Natural };
        *out = into_c_string(emit_cubillage(&q.0, mode));
        Ok(())
    })
}

/// Number of inversions.
///
/// # Safety
/// `q` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zc_cubillage_rank(q: *const ZcCubillage, out: *mut usize) -> ZcStatus {
    guard(|| {
        let q = q.as_ref().ok_or_else(|| null("cubillage"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = q.0.rank();
        Ok(())
    })
}

/// Whether the cubillage is fixed (`symmetric`) or complemented (`skew`) by
/// the color involution.
///
/// # Safety
/// `q` must be a live handle; `symmetric` and `skew` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zc_cubillage_symmetry(
    q: *const ZcCubillage,
    symmetric: *mut bool,
    skew: *mut bool,
) -> ZcStatus {
    guard(|| {
        let q = q.as_ref().ok_or_else(|| null("cubillage"))?;
        let symmetric = symmetric.as_mut().ok_or_else(|| null("symmetric"))?;
        let skew = skew.as_mut().ok_or_else(|| null("skew"))?;
        let class = q.0.symmetry_class();
        *symmetric = class.symmetric;
        *skew = class.skew_symmetric;
        Ok(())
    })
}

/// Deletes the middle color of a symmetric cubillage with odd `n`.
///
/// # Safety
/// `q` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zc_reduce_middle(q: *const ZcCubillage, out: *mut *mut ZcCubillage) -> ZcStatus {
    map_cubillage(q, out, reduce_middle)
}

/// Core of a symmetric cubillage with `n` and `d` even.
///
/// # Safety
/// `q` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zc_core(q: *const ZcCubillage, out: *mut *mut ZcCubillage) -> ZcStatus {
    map_cubillage(q, out, core)
}

unsafe fn map_cubillage(
    q: *const ZcCubillage,
    out: *mut *mut ZcCubillage,
    f: fn(&Cubillage) -> zonocube::Result<Cubillage>,
) -> ZcStatus {
    guard(|| {
        let q = q.as_ref().ok_or_else(|| null("cubillage"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let image = f(&q.0).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(ZcCubillage(image)));
        Ok(())
    })
}

/// Size of a class. A `budget` of 0 selects the default.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zc_enumerate_count(
    n: usize,
    d: usize,
    class: ZcClass,
    budget: u64,
    out: *mut usize,
) -> ZcStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = enumerate(n, d, class_of(class), budget_of(budget)).map_err(lib_err)?.len();
        Ok(())
    })
}

/// Flip digraph of the `All` or `Symmetric` class. A `budget` of 0 selects
/// the default.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zc_digraph_build(
    n: usize,
    d: usize,
    class: ZcClass,
    budget: u64,
    out: *mut *mut ZcDigraph,
) -> ZcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let class = class_of(class);
        let graph = class_digraph(n, d, class, budget_of(budget)).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(ZcDigraph { graph, class }));
        Ok(())
    })
}

/// # Safety
/// `g` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn zc_digraph_free(g: *mut ZcDigraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle; `nodes` and `edges` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zc_digraph_size(g: *const ZcDigraph, nodes: *mut usize, edges: *mut usize) -> ZcStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null("digraph"))?;
        *nodes.as_mut().ok_or_else(|| null("nodes"))? = g.graph.nodes().len();
        *edges.as_mut().ok_or_else(|| null("edges"))? = g.graph.edges().len();
        Ok(())
    })
}

/// The `index`-th edge in canonical order.
///
/// # Safety
/// `g` must be a live handle; `src`, `dst` and `kind` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zc_digraph_edge(
    g: *const ZcDigraph,
    index: usize,
    src: *mut usize,
    dst: *mut usize,
    kind: *mut ZcEdgeKind,
) -> ZcStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null("digraph"))?;
        let e =
            g.graph.edges().get(index).ok_or_else(|| (ZcStatus::OutOfRange, format!("edge {index} does not exist")))?;
        *src.as_mut().ok_or_else(|| null("src"))? = e.src;
        *dst.as_mut().ok_or_else(|| null("dst"))? = e.dst;
        *kind.as_mut().ok_or_else(|| null("kind"))? = match e.kind {
            EdgeKind::TypeA => ZcEdgeKind::TypeA,
            EdgeKind::Simple => ZcEdgeKind::Simple,
            EdgeKind::Double => ZcEdgeKind::Double,
            EdgeKind::Barrel => ZcEdgeKind::Barrel,
        };
        Ok(())
    })
}

/// A copy of the `index`-th node.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zc_digraph_node(g: *const ZcDigraph, index: usize, out: *mut *mut ZcCubillage) -> ZcStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null("digraph"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let q =
            g.graph.nodes().get(index).ok_or_else(|| (ZcStatus::OutOfRange, format!("node {index} does not exist")))?;
        *out = Box::into_raw(Box::new(ZcCubillage(q.clone())));
        Ok(())
    })
}

/// Canonical digraph document; free with [`zc_string_free`].
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zc_digraph_to_json(g: *const ZcDigraph, out: *mut *mut c_char) -> ZcStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null("digraph"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = into_c_string(emit_digraph(&g.graph, g.class));
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use std::ptr;

    use super::*;

    #[test]
    fn errors_are_recorded() {
        let mut q = ptr::null_mut();
        let status = unsafe { zc_cubillage_new(3, 7, false, &mut q) };
        assert_eq!(status, ZcStatus::InvalidInput);
        assert!(q.is_null());
        let msg = unsafe { CStr::from_ptr(zc_last_error_message()) }.to_str().unwrap();
        assert!(msg.contains("d <= n"), "{msg}");
    }

    #[test]
    fn null_handles_are_rejected() {
        let mut rank = 0;
        assert_eq!(unsafe { zc_cubillage_rank(ptr::null(), &mut rank) }, ZcStatus::NullPointer);
        unsafe { zc_cubillage_free(ptr::null_mut()) };
        unsafe { zc_string_free(ptr::null_mut()) };
    }
}
