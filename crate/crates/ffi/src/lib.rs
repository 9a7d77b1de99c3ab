//! C ABI over the `hirzebruch` crate.
//!
//! Diagrams and diagram sets cross the boundary as opaque heap handles
//! (`HhDiagram`, `HhDiagramSet`) that the caller releases with the matching
//! `*_free` function. Every fallible call returns an [`HhStatus`]; on failure
//! `hh_last_error_message` describes what went wrong on the calling thread.
//! Randomized procedures take the prime and master seed explicitly so that
//! results are reproducible from C.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use hirzebruch::cli::Generator;
use hirzebruch::cremona::{spec_check, HirzebruchQuery, SpecVerdict};
use hirzebruch::reduction::{self, ReductionOutcome};
use hirzebruch::speciality::{self, ChVerdict, CheckConfig};
use hirzebruch::{tails, Diagram, DiagramSet, Error};

/// Opaque diagram handle.
pub struct HhDiagram(Diagram);

/// Opaque handle to an ordered set of diagrams.
pub struct HhDiagramSet(DiagramSet);

/// Result codes. Zero is success.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HhStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    /// The diagram admits no further reduction.
    NotReducible = 4,
    /// Tail enumeration met a diagram that stays too long.
    EnumError = 5,
    IoError = 6,
    /// An internal invariant failed; the message has details.
    Internal = 7,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> HhStatus {
    match e {
        Error::Parse { .. } | Error::InvalidDiagram(_) => HhStatus::ParseError,
        Error::Enum { .. } => HhStatus::EnumError,
        Error::Io { .. } => HhStatus::IoError,
        Error::UnsupportedParameter(_) | Error::BadModulus { .. } | Error::DimensionMismatch { .. } => {
            HhStatus::InvalidArgument
        }
        _ => HhStatus::Internal,
    }
}

fn fail(status: HhStatus, msg: impl Into<String>) -> HhStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> HhStatus {
    fail(status_of(&e), e.to_string())
}

/// Runs `f`, turning panics into `HhStatus::Internal`.
fn guard(f: impl FnOnce() -> HhStatus) -> HhStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(HhStatus::Internal, msg)
        }
    }
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, HhStatus> {
    p.as_ref()
        .ok_or_else(|| fail(HhStatus::NullPointer, "null pointer argument"))
}

unsafe fn c_str<'a>(p: *const c_char) -> Result<&'a str, HhStatus> {
    if p.is_null() {
        return Err(fail(HhStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(HhStatus::InvalidArgument, "string is not UTF-8"))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> HhStatus {
    *out = Box::into_raw(Box::new(value));
    HhStatus::Ok
}

fn config(prime: u64, seed: u64) -> Result<CheckConfig, HhStatus> {
    CheckConfig::new(prime, seed).map_err(from_error)
}

macro_rules! try_ffi {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn hh_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Frees a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn hh_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

// ---- diagrams

/// Builds a diagram from `len` layers; trailing zeros are dropped.
#[no_mangle]
pub unsafe extern "C" fn hh_diagram_new(
    layers: *const u32,
    len: usize,
    out: *mut *mut HhDiagram,
) -> HhStatus {
    guard(|| {
        if out.is_null() || (layers.is_null() && len > 0) {
            return fail(HhStatus::NullPointer, "null pointer argument");
        }
        let v = if len == 0 {
            Vec::new()
        } else {
            std::slice::from_raw_parts(layers, len).to_vec()
        };
        put(out, HhDiagram(Diagram::new(v)))
    })
}

/// Parses the text form, e.g. `"5,5,4,2"` or `""` for the empty diagram.
#[no_mangle]
pub unsafe extern "C" fn hh_diagram_parse(text: *const c_char, out: *mut *mut HhDiagram) -> HhStatus {
    guard(|| {
        if out.is_null() {
            return fail(HhStatus::NullPointer, "null output pointer");
        }
        let text = try_ffi!(c_str(text));
        match text.parse::<Diagram>() {
            Ok(d) => put(out, HhDiagram(d)),
            Err(e) => from_error(e),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn hh_diagram_free(d: *mut HhDiagram) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Number of stored layers.
#[no_mangle]
pub unsafe extern "C" fn hh_diagram_len(d: *const HhDiagram) -> usize {
    d.as_ref().map_or(0, |d| d.0.len())
}

/// Total number of cells.
#[no_mangle]
pub unsafe extern "C" fn hh_diagram_size(d: *const HhDiagram) -> u64 {
    d.as_ref().map_or(0, |d| d.0.size())
}

/// Copies up to `cap` layers into `buf`; `*len` receives the full count.
#[no_mangle]
pub unsafe extern "C" fn hh_diagram_layers(
    d: *const HhDiagram,
    buf: *mut u32,
    cap: usize,
    len: *mut usize,
) -> HhStatus {
    guard(|| {
        let d = try_ffi!(deref(d));
        let layers = d.0.layers();
        if !len.is_null() {
            *len = layers.len();
        }
        if !buf.is_null() {
            let n = layers.len().min(cap);
            ptr::copy_nonoverlapping(layers.as_ptr(), buf, n);
        }
        HhStatus::Ok
    })
}

/// Text form of the diagram; free with `hh_string_free`.
#[no_mangle]
pub unsafe extern "C" fn hh_diagram_to_string(d: *const HhDiagram) -> *mut c_char {
    match d.as_ref() {
        Some(d) => CString::new(d.0.to_string()).map_or(ptr::null_mut(), CString::into_raw),
        None => ptr::null_mut(),
    }
}

// ---- reduction

unsafe fn reduction_result(r: ReductionOutcome, out: *mut *mut HhDiagram) -> HhStatus {
    match r {
        ReductionOutcome::Reduced(d) => put(out, HhDiagram(d)),
        ReductionOutcome::NotReducible => fail(HhStatus::NotReducible, "diagram is not reducible"),
    }
}

/// One m-reduction step.
#[no_mangle]
pub unsafe extern "C" fn hh_reduce(m: u32, d: *const HhDiagram, out: *mut *mut HhDiagram) -> HhStatus {
    guard(|| {
        let d = try_ffi!(deref(d));
        if out.is_null() {
            return fail(HhStatus::NullPointer, "null output pointer");
        }
        reduction_result(reduction::reduce(m, &d.0), out)
    })
}

/// `k` successive m-reductions.
#[no_mangle]
pub unsafe extern "C" fn hh_sequence_reduce(
    m: u32,
    k: u32,
    d: *const HhDiagram,
    out: *mut *mut HhDiagram,
) -> HhStatus {
    guard(|| {
        let d = try_ffi!(deref(d));
        if out.is_null() {
            return fail(HhStatus::NullPointer, "null output pointer");
        }
        reduction_result(reduction::sequence_reduce(m, k, &d.0), out)
    })
}

/// Reduces until no further m-reduction applies.
#[no_mangle]
pub unsafe extern "C" fn hh_top_reduce(m: u32, d: *const HhDiagram, out: *mut *mut HhDiagram) -> HhStatus {
    guard(|| {
        let d = try_ffi!(deref(d));
        if out.is_null() {
            return fail(HhStatus::NullPointer, "null output pointer");
        }
        put(out, HhDiagram(reduction::top_reduce(m, &d.0)))
    })
}

// ---- sets

#[no_mangle]
pub extern "C" fn hh_set_new() -> *mut HhDiagramSet {
    Box::into_raw(Box::new(HhDiagramSet(DiagramSet::new())))
}

#[no_mangle]
pub unsafe extern "C" fn hh_set_free(s: *mut HhDiagramSet) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

#[no_mangle]
pub unsafe extern "C" fn hh_set_len(s: *const HhDiagramSet) -> usize {
    s.as_ref().map_or(0, |s| s.0.len())
}

/// Inserts a copy of `d`; `*inserted` is 1 when it was new.
#[no_mangle]
pub unsafe extern "C" fn hh_set_insert(
    s: *mut HhDiagramSet,
    d: *const HhDiagram,
    inserted: *mut i32,
) -> HhStatus {
    guard(|| {
        let d = try_ffi!(deref(d));
        let Some(s) = s.as_mut() else {
            return fail(HhStatus::NullPointer, "null set");
        };
        let new = s.0.insert(d.0.clone());
        if !inserted.is_null() {
            *inserted = i32::from(new);
        }
        HhStatus::Ok
    })
}

/// Copy of the `index`-th member in set order.
#[no_mangle]
pub unsafe extern "C" fn hh_set_get(
    s: *const HhDiagramSet,
    index: usize,
    out: *mut *mut HhDiagram,
) -> HhStatus {
    guard(|| {
        let s = try_ffi!(deref(s));
        if out.is_null() {
            return fail(HhStatus::NullPointer, "null output pointer");
        }
        match s.0.iter().nth(index) {
            Some(d) => put(out, HhDiagram(d.clone())),
            None => fail(HhStatus::InvalidArgument, format!("index {index} out of range")),
        }
    })
}

/// Reads a diagram file.
#[no_mangle]
pub unsafe extern "C" fn hh_set_read(path: *const c_char, out: *mut *mut HhDiagramSet) -> HhStatus {
    guard(|| {
        let path = try_ffi!(c_str(path));
        if out.is_null() {
            return fail(HhStatus::NullPointer, "null output pointer");
        }
        match DiagramSet::read(Path::new(path)) {
            Ok(s) => put(out, HhDiagramSet(s)),
            Err(e) => from_error(e),
        }
    })
}

/// Writes a diagram file.
#[no_mangle]
pub unsafe extern "C" fn hh_set_write(s: *const HhDiagramSet, path: *const c_char) -> HhStatus {
    guard(|| {
        let s = try_ffi!(deref(s));
        let path = try_ffi!(c_str(path));
        match s.0.write(Path::new(path)) {
            Ok(()) => HhStatus::Ok,
            Err(e) => from_error(e),
        }
    })
}

// ---- tails and generators

unsafe fn tails_result(
    run: hirzebruch::Result<tails::TailsRun>,
    out: *mut *mut HhDiagramSet,
    entries: *mut usize,
) -> HhStatus {
    if out.is_null() {
        return fail(HhStatus::NullPointer, "null output pointer");
    }
    match run {
        Ok(run) => {
            if !entries.is_null() {
                *entries = run.entries;
            }
            put(out, HhDiagramSet(run.tails))
        }
        Err(e) => from_error(e),
    }
}

/// h-D-admissible tails of `seed`; `entries` (nullable) receives the
/// number of reduction steps taken.
#[no_mangle]
pub unsafe extern "C" fn hh_h_tails(
    m: u32,
    h: u32,
    seed: *const HhDiagram,
    out: *mut *mut HhDiagramSet,
    entries: *mut usize,
) -> HhStatus {
    guard(|| {
        let seed = try_ffi!(deref(seed));
        tails_result(tails::h_tails(m, h, &seed.0), out, entries)
    })
}

/// All admissible tails of the layers of `d` followed by `m - 1` free ones.
#[no_mangle]
pub unsafe extern "C" fn hh_tails_enum(
    m: u32,
    d: *const HhDiagram,
    out: *mut *mut HhDiagramSet,
    entries: *mut usize,
) -> HhStatus {
    guard(|| {
        let d = try_ffi!(deref(d));
        tails_result(tails::tails_enum(m, &d.0), out, entries)
    })
}

/// Runs a set generator by its batch name (`"setbign"`, `"setpb"`, ...).
#[no_mangle]
pub unsafe extern "C" fn hh_generate(
    name: *const c_char,
    params: *const u32,
    len: usize,
    out: *mut *mut HhDiagramSet,
) -> HhStatus {
    guard(|| {
        let name = try_ffi!(c_str(name));
        if out.is_null() || (params.is_null() && len > 0) {
            return fail(HhStatus::NullPointer, "null pointer argument");
        }
        let params = if len == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(params, len)
        };
        let Some(g) = Generator::from_params(name, params) else {
            return fail(
                HhStatus::InvalidArgument,
                format!("unknown generator {name} with {len} parameters"),
            );
        };
        match g.family() {
            Ok(f) => put(out, HhDiagramSet(f.set)),
            Err(e) => from_error(e),
        }
    })
}

// ---- speciality

/// Randomized non-speciality test of `L(D; m^r)`; `*non_special` is 1 on
/// success and 0 when not decided.
#[no_mangle]
pub unsafe extern "C" fn hh_ns(
    m: u32,
    r: u64,
    d: *const HhDiagram,
    tries: u32,
    prime: u64,
    seed: u64,
    non_special: *mut i32,
) -> HhStatus {
    guard(|| {
        let d = try_ffi!(deref(d));
        let cfg = try_ffi!(config(prime, seed));
        if non_special.is_null() {
            return fail(HhStatus::NullPointer, "null output pointer");
        }
        *non_special = i32::from(speciality::ns(m, r, &d.0, tries, &cfg).is_non_special());
        HhStatus::Ok
    })
}

/// Members of `set` that pass the check at `r` and `r + 1`.
#[no_mangle]
pub unsafe extern "C" fn hh_check(
    m: u32,
    set: *const HhDiagramSet,
    tries: u32,
    prime: u64,
    seed: u64,
    kept: *mut *mut HhDiagramSet,
) -> HhStatus {
    guard(|| {
        let set = try_ffi!(deref(set));
        let cfg = try_ffi!(config(prime, seed));
        if kept.is_null() {
            return fail(HhStatus::NullPointer, "null output pointer");
        }
        put(kept, HhDiagramSet(speciality::check_set(m, &set.0, tries, &cfg)))
    })
}

/// Two-phase reduce-and-check campaign; `*ok` is 1 when every member is
/// certified.
#[no_mangle]
pub unsafe extern "C" fn hh_ch(
    m: u32,
    set: *const HhDiagramSet,
    u: u32,
    v: u32,
    prime: u64,
    seed: u64,
    ok: *mut i32,
) -> HhStatus {
    guard(|| {
        let set = try_ffi!(deref(set));
        let cfg = try_ffi!(config(prime, seed));
        if ok.is_null() {
            return fail(HhStatus::NullPointer, "null output pointer");
        }
        *ok = i32::from(speciality::ch(m, &set.0, u, v, &cfg).verdict == ChVerdict::Ok);
        HhStatus::Ok
    })
}

/// Values of `r` not certified for `L_n(a, b; m^r)`. Up to `cap` values go
/// to `buf`; `*len` receives the full count.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn hh_finalnba(
    m: u32,
    n: u32,
    a: u32,
    b: u32,
    prime: u64,
    seed: u64,
    buf: *mut u64,
    cap: usize,
    len: *mut usize,
) -> HhStatus {
    guard(|| {
        let cfg = try_ffi!(config(prime, seed));
        match speciality::finalnba(m, n, a, b, &cfg) {
            Ok(rs) => {
                if !len.is_null() {
                    *len = rs.len();
                }
                if !buf.is_null() {
                    ptr::copy_nonoverlapping(rs.as_ptr(), buf, rs.len().min(cap));
                }
                HhStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

// ---- Cremona

/// Expected dimension of `L_n(a, b; m^r)`, at least -1.
#[no_mangle]
pub extern "C" fn hh_edim(m: u32, n: u32, a: u32, b: u32, r: u32) -> i64 {
    HirzebruchQuery { m, n, a, b, r }.edim()
}

/// (-1)-speciality test via Cremona reduction. `*special` is 1 when the
/// system is shown (-1)-special and 0 when no shift exhibits it.
#[no_mangle]
pub unsafe extern "C" fn hh_spec_check(
    m: u32,
    n: u32,
    a: u32,
    b: u32,
    r: u32,
    special: *mut i32,
) -> HhStatus {
    guard(|| {
        if special.is_null() {
            return fail(HhStatus::NullPointer, "null output pointer");
        }
        match spec_check(HirzebruchQuery { m, n, a, b, r }) {
            Ok(rep) => {
                *special = i32::from(rep.verdict == SpecVerdict::MinusOneSpecial);
                HhStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}
