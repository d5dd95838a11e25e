//! C interface to the depth engines.
//!
//! Every fallible function returns a [`DlStatus`] and writes results through
//! out-pointers. On failure the message is kept per thread and can be read
//! with [`dl_last_error_message`]. Handles are opaque and must be released
//! with their `_free` function; strings returned by the library are released
//! with [`dl_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use depthlab::cli::sequence::{sequence_depth, SequenceDepth};
use depthlab::exact_matrix::IntMatrix;
use depthlab::hopf::{depth_interval, module_depth_over_r, small_quantum, taft, HopfAlgebra, HopfSubalgebra};
use depthlab::matrix_depth::{
    bipartite_odd_depth, branch_matrix, min_h_depth, min_odd_depth, module_depth_h, InclusionData,
};
use depthlab::report::DepthReport;
use depthlab::DepthError;

/// Status codes; the nonzero values match the command-line exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    Unsupported = 3,
    CapExceeded = 4,
    Panic = 5,
}

/// An inclusion matrix with optional trivial-character row.
pub struct DlInclusion {
    data: InclusionData,
}

/// A Hopf algebra with a Hopf subalgebra.
pub struct DlHopfPair {
    h: HopfAlgebra,
    r: HopfSubalgebra,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(e: DepthError) -> DlStatus {
    set_error(&e.to_string());
    match e.exit_code() {
        3 => DlStatus::Unsupported,
        4 => DlStatus::CapExceeded,
        _ => DlStatus::InvalidInput,
    }
}

fn null(what: &str) -> DlStatus {
    set_error(&format!("{what} is null"));
    DlStatus::NullPointer
}

/// Runs `f`, turning panics into [`DlStatus::Panic`].
fn guard(f: impl FnOnce() -> DlStatus) -> DlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => {
            if s == DlStatus::Ok {
                set_error("");
            }
            s
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            set_error(&format!("internal error: {msg}"));
            DlStatus::Panic
        }
    }
}

fn write_handle<T>(out: *mut *mut T, value: T) -> DlStatus {
    // SAFETY: callers check `out` for null first.
    unsafe { *out = Box::into_raw(Box::new(value)) };
    DlStatus::Ok
}

fn write_depth(
    inc: *const DlInclusion,
    out: *mut u64,
    f: fn(&InclusionData) -> depthlab::Result<DepthReport>,
) -> DlStatus {
    guard(|| {
        if inc.is_null() {
            return null("inclusion");
        }
        if out.is_null() {
            return null("out");
        }
        // SAFETY: non-null handle created by this library.
        let inc = unsafe { &*inc };
        match f(&inc.data) {
            Ok(r) => {
                unsafe { *out = r.value() };
                DlStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Builds an inclusion matrix from `rows * cols` entries in row-major order.
///
/// # Safety
/// `entries` must point to `rows * cols` readable values and `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn dl_inclusion_from_entries(
    rows: usize,
    cols: usize,
    entries: *const u64,
    out: *mut *mut DlInclusion,
) -> DlStatus {
    guard(|| {
        if entries.is_null() {
            return null("entries");
        }
        if out.is_null() {
            return null("out");
        }
        let Some(len) = rows.checked_mul(cols) else {
            return fail(DepthError::invalid("matrix size overflows"));
        };
        let values = std::slice::from_raw_parts(entries, len);
        let built = IntMatrix::new(rows, cols, values.iter().map(|&x| x.into()).collect())
            .and_then(InclusionData::new);
        match built {
            Ok(data) => write_handle(out, DlInclusion { data }),
            Err(e) => fail(e),
        }
    })
}

/// The branching matrix of `S_n` in `S_(n+1)`, with the trivial row set.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dl_inclusion_branch(n: usize, out: *mut *mut DlInclusion) -> DlStatus {
    guard(|| {
        if out.is_null() {
            return null("out");
        }
        match branch_matrix(n) {
            Ok(data) => write_handle(out, DlInclusion { data }),
            Err(e) => fail(e),
        }
    })
}

/// Marks row `row` as the trivial character of the subalgebra.
///
/// # Safety
/// `inc` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn dl_inclusion_set_triv_row(inc: *mut DlInclusion, row: usize) -> DlStatus {
    guard(|| {
        if inc.is_null() {
            return null("inclusion");
        }
        let inc = &mut *inc;
        match inc.data.clone().with_triv_row(row) {
            Ok(d) => {
                inc.data = d;
                DlStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `inc` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dl_inclusion_free(inc: *mut DlInclusion) {
    if !inc.is_null() {
        drop(Box::from_raw(inc));
    }
}

/// # Safety
/// `inc` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dl_min_odd_depth(inc: *const DlInclusion, out: *mut u64) -> DlStatus {
    write_depth(inc, out, min_odd_depth)
}

/// # Safety
/// `inc` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dl_min_h_depth(inc: *const DlInclusion, out: *mut u64) -> DlStatus {
    write_depth(inc, out, min_h_depth)
}

/// Needs the trivial row to be set.
///
/// # Safety
/// `inc` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dl_module_depth_h(inc: *const DlInclusion, out: *mut u64) -> DlStatus {
    write_depth(inc, out, module_depth_h)
}

/// # Safety
/// `inc` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dl_bipartite_odd_depth(inc: *const DlInclusion, out: *mut u64) -> DlStatus {
    write_depth(inc, out, bipartite_odd_depth)
}

/// All matrix reports as a JSON array; free the string with
/// [`dl_string_free`].
///
/// # Safety
/// `inc` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dl_report_json(inc: *const DlInclusion, out: *mut *mut c_char) -> DlStatus {
    guard(|| {
        if inc.is_null() {
            return null("inclusion");
        }
        if out.is_null() {
            return null("out");
        }
        let data = &(*inc).data;
        let mut reports = Vec::new();
        let mut push = |r: depthlab::Result<DepthReport>, optional: bool| match r {
            Ok(r) => {
                reports.push(r);
                Ok(())
            }
            Err(_) if optional => Ok(()),
            Err(e) => Err(e),
        };
        let all = push(min_odd_depth(data), false)
            .and_then(|_| push(min_h_depth(data), false))
            .and_then(|_| push(module_depth_h(data), data.triv_row().is_none()))
            .and_then(|_| push(bipartite_odd_depth(data), true));
        if let Err(e) = all {
            return fail(e);
        }
        let text = serde_json::to_string(&reports).expect("serializable reports");
        *out = CString::new(text).expect("json has no nul").into_raw();
        DlStatus::Ok
    })
}

/// The Taft algebra `H_n` over its group subalgebra, `2 <= n <= 6`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dl_taft_new(n: usize, out: *mut *mut DlHopfPair) -> DlStatus {
    guard(|| {
        if out.is_null() {
            return null("out");
        }
        match taft(n) {
            Ok((h, r)) => write_handle(out, DlHopfPair { h, r }),
            Err(e) => fail(e),
        }
    })
}

/// The small quantum group of dimension `d^3` over its Borel part.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dl_small_quantum_new(d: usize, out: *mut *mut DlHopfPair) -> DlStatus {
    guard(|| {
        if out.is_null() {
            return null("out");
        }
        match small_quantum(d) {
            Ok((h, r)) => write_handle(out, DlHopfPair { h, r }),
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `pair` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dl_hopf_pair_free(pair: *mut DlHopfPair) {
    if !pair.is_null() {
        drop(Box::from_raw(pair));
    }
}

/// Module depth of `V = H / R^+ H` over the subalgebra.
///
/// # Safety
/// `pair` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dl_hopf_module_depth(pair: *const DlHopfPair, out: *mut u64) -> DlStatus {
    guard(|| {
        if pair.is_null() {
            return null("pair");
        }
        if out.is_null() {
            return null("out");
        }
        let p = &*pair;
        match module_depth_over_r(&p.h, &p.r) {
            Ok(r) => {
                *out = r.value();
                DlStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// The interval `[lo, hi]` containing the minimum depth of the pair.
///
/// # Safety
/// `pair` must be a live handle; `lo` and `hi` writable.
#[no_mangle]
pub unsafe extern "C" fn dl_hopf_depth_interval(pair: *const DlHopfPair, lo: *mut u64, hi: *mut u64) -> DlStatus {
    guard(|| {
        if pair.is_null() {
            return null("pair");
        }
        if lo.is_null() || hi.is_null() {
            return null("out");
        }
        let p = &*pair;
        match depth_interval(&p.h, &p.r) {
            Ok(r) => {
                *lo = r.value.lo();
                *hi = r.value.hi();
                DlStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Divisibility depth of a sequence prefix. When no depth is found within
/// the probe window, `*exceeds_probe` is set and `*depth` holds the largest
/// `m` tested.
///
/// # Safety
/// `values` must point to `len` readable values; `depth` and
/// `exceeds_probe` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dl_sequence_depth(
    values: *const u64,
    len: usize,
    probe: usize,
    depth: *mut u64,
    exceeds_probe: *mut bool,
) -> DlStatus {
    guard(|| {
        if values.is_null() {
            return null("values");
        }
        if depth.is_null() || exceeds_probe.is_null() {
            return null("out");
        }
        let a = std::slice::from_raw_parts(values, len);
        match sequence_depth(a, probe) {
            Ok(SequenceDepth::Depth(m)) => {
                *depth = m as u64;
                *exceeds_probe = false;
                DlStatus::Ok
            }
            Ok(SequenceDepth::ExceedsProbe { largest_m_tested }) => {
                *depth = largest_m_tested as u64;
                *exceeds_probe = true;
                DlStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Message of the last failed call on this thread, empty after a success.
/// The pointer is valid until the next call into the library.
#[no_mangle]
pub extern "C" fn dl_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn dl_version() -> *const c_char {
    static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(s) => s,
        Err(_) => panic!("version string"),
    };
    VERSION.as_ptr()
}
