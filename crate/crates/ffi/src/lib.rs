//! C ABI for the complex group testing library.
//!
//! Every object crosses the boundary as an opaque handle created by a
//! `cgt_*_new`-style constructor and released by the matching `cgt_*_free`.
//! Functions return [`CgtStatus`]; on any non-OK status a human-readable
//! message is retrievable with [`cgt_last_error`] (per thread). Buffers are
//! always caller-allocated: item getters write up to `cap` entries and
//! report how many the full answer needs.
//!
//! The generated header lives at `include/cmplxgt.h` and is refreshed by the
//! build script.

// the safety contract (valid handles, caller-owned buffers) is stated once
// in the module docs rather than per function
#![allow(clippy::missing_safety_doc)]

use cmplxgt::decode::{algorithm1, algorithm2, DecodeError, DecodeResult};
use cmplxgt::matrix::{
    build_t, kautz_singleton, random_disjunct, read_gtmat_file, verify_disjunct, write_gtmat_file,
    BinaryMatrix, ComposedMatrix, ConstructOptions, DisjunctParams, MatrixError, VerifyBudget,
};
use cmplxgt::model::{
    encode, inject_errors, random_complex_set, read_gtout_file, read_gtset_file, write_gtout_file,
    write_gtset_file, ComplexSet, ErrorBudget, ModelError, OutcomeVector, TestMode,
};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CgtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ConstructionFailed = 3,
    VerificationFailed = 4,
    BudgetExceeded = 5,
    ParseError = 6,
    IoError = 7,
    DecodeFailed = 8,
    Internal = 9,
}

/// Test channel semantics.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CgtMode {
    Ccmplx = 0,
    Gcmplx = 1,
}

impl From<CgtMode> for TestMode {
    fn from(m: CgtMode) -> TestMode {
        match m {
            CgtMode::Ccmplx => TestMode::Ccmplx,
            CgtMode::Gcmplx => TestMode::Gcmplx,
        }
    }
}

/// Opaque binary measurement matrix.
pub struct CgtMatrix(BinaryMatrix);
/// Opaque hidden complex family.
pub struct CgtComplexSet(ComplexSet);
/// Opaque composed test design.
pub struct CgtDesign(ComposedMatrix);
/// Opaque outcome vector.
pub struct CgtOutcome(OutcomeVector);
/// Opaque decoding result.
pub struct CgtResult(DecodeResult);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl std::fmt::Display) {
    let text = CString::new(msg.to_string()).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

fn matrix_status(e: &MatrixError) -> CgtStatus {
    match e {
        MatrixError::InvalidParams(_) | MatrixError::DimensionMismatch(_) => {
            CgtStatus::InvalidArgument
        }
        MatrixError::BudgetExceeded { .. } => CgtStatus::BudgetExceeded,
        MatrixError::ConstructionFailed { .. } | MatrixError::Infeasible { .. } => {
            CgtStatus::ConstructionFailed
        }
        MatrixError::Parse { .. } => CgtStatus::ParseError,
        MatrixError::Io(_) => CgtStatus::IoError,
    }
}

fn model_status(e: &ModelError) -> CgtStatus {
    match e {
        ModelError::Parse { .. } => CgtStatus::ParseError,
        ModelError::Io(_) => CgtStatus::IoError,
        _ => CgtStatus::InvalidArgument,
    }
}

fn decode_status(e: &DecodeError) -> CgtStatus {
    match e {
        DecodeError::InconsistentPool(_) => CgtStatus::DecodeFailed,
        _ => CgtStatus::InvalidArgument,
    }
}

fn guarded(f: impl FnOnce() -> CgtStatus) -> CgtStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic crossed the boundary");
            CgtStatus::Internal
        }
    }
}

unsafe fn path_from(ptr: *const c_char) -> Result<PathBuf, CgtStatus> {
    if ptr.is_null() {
        set_error("path is null");
        return Err(CgtStatus::NullPointer);
    }
    match CStr::from_ptr(ptr).to_str() {
        Ok(s) => Ok(PathBuf::from(s)),
        Err(_) => {
            set_error("path is not valid UTF-8");
            Err(CgtStatus::InvalidArgument)
        }
    }
}

/// Copies the last error message (NUL-terminated) into `buf` and returns the
/// byte count the full message needs, including the terminator. Call with a
/// null `buf` to query the size.
#[no_mangle]
pub unsafe extern "C" fn cgt_last_error(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        let bytes = msg.as_bytes_with_nul();
        if !buf.is_null() && cap > 0 {
            let n = bytes.len().min(cap);
            std::ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, n);
            // guarantee termination even when truncated
            *buf.add(n - 1) = 0;
        }
        bytes.len()
    })
}

// ---------------------------------------------------------------------------
// matrices

/// Builds a random (d, r; z]-disjunct matrix over `n` items, verified before
/// return (exhaustively within the default budget, sampled above it).
#[no_mangle]
pub unsafe extern "C" fn cgt_matrix_random_disjunct(
    n: usize,
    d: usize,
    r: usize,
    z: usize,
    seed: u64,
    out: *mut *mut CgtMatrix,
) -> CgtStatus {
    guarded(|| {
        if out.is_null() {
            set_error("output handle is null");
            return CgtStatus::NullPointer;
        }
        let params = match DisjunctParams::new(d, r, z) {
            Ok(p) => p,
            Err(e) => {
                set_error(&e);
                return matrix_status(&e);
            }
        };
        match random_disjunct(n, &params, seed, &ConstructOptions::default()) {
            Ok(built) => {
                *out = Box::into_raw(Box::new(CgtMatrix(built.matrix)));
                CgtStatus::Ok
            }
            Err(e) => {
                set_error(&e);
                matrix_status(&e)
            }
        }
    })
}

/// Builds the deterministic code-concatenation d-disjunct matrix.
#[no_mangle]
pub unsafe extern "C" fn cgt_matrix_kautz_singleton(
    n: usize,
    d: usize,
    out: *mut *mut CgtMatrix,
) -> CgtStatus {
    guarded(|| {
        if out.is_null() {
            set_error("output handle is null");
            return CgtStatus::NullPointer;
        }
        match kautz_singleton(n, d, &ConstructOptions::default()) {
            Ok(built) => {
                *out = Box::into_raw(Box::new(CgtMatrix(built.matrix)));
                CgtStatus::Ok
            }
            Err(e) => {
                set_error(&e);
                matrix_status(&e)
            }
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn cgt_matrix_identity(n: usize, out: *mut *mut CgtMatrix) -> CgtStatus {
    guarded(|| {
        if out.is_null() || n == 0 {
            set_error("need a non-null handle and n >= 1");
            return if out.is_null() {
                CgtStatus::NullPointer
            } else {
                CgtStatus::InvalidArgument
            };
        }
        *out = Box::into_raw(Box::new(CgtMatrix(BinaryMatrix::identity(n))));
        CgtStatus::Ok
    })
}

#[no_mangle]
pub unsafe extern "C" fn cgt_matrix_rows(m: *const CgtMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.rows())
}

#[no_mangle]
pub unsafe extern "C" fn cgt_matrix_cols(m: *const CgtMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.cols())
}

/// Entry at (row, col): 0 or 1, or -1 on a null handle or out-of-range index.
#[no_mangle]
pub unsafe extern "C" fn cgt_matrix_get(m: *const CgtMatrix, row: usize, col: usize) -> i32 {
    match m.as_ref() {
        Some(m) if row < m.0.rows() && col < m.0.cols() => m.0.get(row, col) as i32,
        _ => -1,
    }
}

/// Exhaustively decides (d, r; z]-disjunctness; `is_disjunct` receives the
/// verdict. Fails with `BUDGET_EXCEEDED` when the pair count tops the cap.
#[no_mangle]
pub unsafe extern "C" fn cgt_matrix_verify(
    m: *const CgtMatrix,
    d: usize,
    r: usize,
    z: usize,
    max_pair_checks: u64,
    is_disjunct: *mut bool,
) -> CgtStatus {
    guarded(|| {
        let (Some(m), false) = (m.as_ref(), is_disjunct.is_null()) else {
            set_error("matrix or output pointer is null");
            return CgtStatus::NullPointer;
        };
        let params = match DisjunctParams::new(d, r, z) {
            Ok(p) => p,
            Err(e) => {
                set_error(&e);
                return matrix_status(&e);
            }
        };
        let budget = VerifyBudget {
            max_pair_checks: max_pair_checks as u128,
        };
        match verify_disjunct(&m.0, &params, &budget) {
            Ok(out) => {
                *is_disjunct = out.is_disjunct();
                CgtStatus::Ok
            }
            Err(e) => {
                set_error(&e);
                matrix_status(&e)
            }
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn cgt_matrix_read_file(
    path: *const c_char,
    out: *mut *mut CgtMatrix,
) -> CgtStatus {
    guarded(|| {
        if out.is_null() {
            set_error("output handle is null");
            return CgtStatus::NullPointer;
        }
        let path = match path_from(path) {
            Ok(p) => p,
            Err(s) => return s,
        };
        match read_gtmat_file(&path) {
            Ok((m, _)) => {
                *out = Box::into_raw(Box::new(CgtMatrix(m)));
                CgtStatus::Ok
            }
            Err(e) => {
                set_error(&e);
                matrix_status(&e)
            }
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn cgt_matrix_write_file(
    m: *const CgtMatrix,
    path: *const c_char,
) -> CgtStatus {
    guarded(|| {
        let Some(m) = m.as_ref() else {
            set_error("matrix handle is null");
            return CgtStatus::NullPointer;
        };
        let path = match path_from(path) {
            Ok(p) => p,
            Err(s) => return s,
        };
        match write_gtmat_file(&m.0, &[], &path) {
            Ok(()) => CgtStatus::Ok,
            Err(e) => {
                set_error(&e);
                matrix_status(&e)
            }
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn cgt_matrix_free(m: *mut CgtMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

// ---------------------------------------------------------------------------
// complex sets

/// Builds a complex family from flattened item arrays. `items` holds the
/// concatenated complexes, `lens[i]` the length of complex `i`, `thresholds`
/// the per-complex trigger counts.
#[no_mangle]
pub unsafe extern "C" fn cgt_complex_set_new(
    n: usize,
    items: *const u32,
    lens: *const usize,
    thresholds: *const u32,
    count: usize,
    out: *mut *mut CgtComplexSet,
) -> CgtStatus {
    guarded(|| {
        if out.is_null() || items.is_null() || lens.is_null() || thresholds.is_null() {
            set_error("null array or handle");
            return CgtStatus::NullPointer;
        }
        let lens = std::slice::from_raw_parts(lens, count);
        let total: usize = lens.iter().sum();
        let flat = std::slice::from_raw_parts(items, total);
        let ths = std::slice::from_raw_parts(thresholds, count).to_vec();
        let mut complexes = Vec::with_capacity(count);
        let mut offset = 0;
        for &len in lens {
            complexes.push(flat[offset..offset + len].to_vec());
            offset += len;
        }
        match ComplexSet::new(n, complexes, ths) {
            Ok(set) => {
                *out = Box::into_raw(Box::new(CgtComplexSet(set)));
                CgtStatus::Ok
            }
            Err(e) => {
                set_error(&e);
                model_status(&e)
            }
        }
    })
}

/// Draws a random valid family: `s` complexes of size at most `r` over a
/// d-item pool with thresholds up to `u_max`.
#[no_mangle]
pub unsafe extern "C" fn cgt_complex_set_random(
    n: usize,
    d: usize,
    r: usize,
    s: usize,
    u_max: u32,
    seed: u64,
    out: *mut *mut CgtComplexSet,
) -> CgtStatus {
    guarded(|| {
        if out.is_null() {
            set_error("output handle is null");
            return CgtStatus::NullPointer;
        }
        match random_complex_set(n, d, r, s, u_max, seed) {
            Ok(set) => {
                *out = Box::into_raw(Box::new(CgtComplexSet(set)));
                CgtStatus::Ok
            }
            Err(e) => {
                set_error(&e);
                model_status(&e)
            }
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn cgt_complex_set_count(set: *const CgtComplexSet) -> usize {
    set.as_ref().map_or(0, |s| s.0.count())
}

#[no_mangle]
pub unsafe extern "C" fn cgt_complex_set_threshold(set: *const CgtComplexSet, idx: usize) -> u32 {
    match set.as_ref() {
        Some(s) if idx < s.0.count() => s.0.threshold(idx),
        _ => 0,
    }
}

#[no_mangle]
pub unsafe extern "C" fn cgt_complex_set_complex_len(
    set: *const CgtComplexSet,
    idx: usize,
) -> usize {
    match set.as_ref() {
        Some(s) if idx < s.0.count() => s.0.complex(idx).len(),
        _ => 0,
    }
}

/// Copies complex `idx` into `buf` (up to `cap` items); returns the full
/// item count.
#[no_mangle]
pub unsafe extern "C" fn cgt_complex_set_complex_items(
    set: *const CgtComplexSet,
    idx: usize,
    buf: *mut u32,
    cap: usize,
) -> usize {
    match set.as_ref() {
        Some(s) if idx < s.0.count() => {
            let items = s.0.complex(idx);
            if !buf.is_null() {
                let n = items.len().min(cap);
                std::ptr::copy_nonoverlapping(items.as_ptr(), buf, n);
            }
            items.len()
        }
        _ => 0,
    }
}

#[no_mangle]
pub unsafe extern "C" fn cgt_complex_set_read_file(
    path: *const c_char,
    out: *mut *mut CgtComplexSet,
) -> CgtStatus {
    guarded(|| {
        if out.is_null() {
            set_error("output handle is null");
            return CgtStatus::NullPointer;
        }
        let path = match path_from(path) {
            Ok(p) => p,
            Err(s) => return s,
        };
        match read_gtset_file(&path) {
            Ok(set) => {
                *out = Box::into_raw(Box::new(CgtComplexSet(set)));
                CgtStatus::Ok
            }
            Err(e) => {
                set_error(&e);
                model_status(&e)
            }
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn cgt_complex_set_write_file(
    set: *const CgtComplexSet,
    path: *const c_char,
) -> CgtStatus {
    guarded(|| {
        let Some(s) = set.as_ref() else {
            set_error("set handle is null");
            return CgtStatus::NullPointer;
        };
        let path = match path_from(path) {
            Ok(p) => p,
            Err(st) => return st,
        };
        match write_gtset_file(&s.0, &path) {
            Ok(()) => CgtStatus::Ok,
            Err(e) => {
                set_error(&e);
                model_status(&e)
            }
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn cgt_complex_set_free(set: *mut CgtComplexSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

// ---------------------------------------------------------------------------
// composed designs

/// Composes an outer and an inner matrix into the full block design.
#[no_mangle]
pub unsafe extern "C" fn cgt_design_new(
    outer: *const CgtMatrix,
    inner: *const CgtMatrix,
    out: *mut *mut CgtDesign,
) -> CgtStatus {
    guarded(|| {
        let (Some(g), Some(m)) = (outer.as_ref(), inner.as_ref()) else {
            set_error("matrix handle is null");
            return CgtStatus::NullPointer;
        };
        if out.is_null() {
            set_error("output handle is null");
            return CgtStatus::NullPointer;
        }
        match build_t(&g.0, &m.0) {
            Ok(t) => {
                *out = Box::into_raw(Box::new(CgtDesign(t)));
                CgtStatus::Ok
            }
            Err(e) => {
                set_error(&e);
                matrix_status(&e)
            }
        }
    })
}

/// Total test count, (2k + 1) * h.
#[no_mangle]
pub unsafe extern "C" fn cgt_design_test_count(t: *const CgtDesign) -> usize {
    t.as_ref().map_or(0, |t| t.0.test_count())
}

#[no_mangle]
pub unsafe extern "C" fn cgt_design_blocks(t: *const CgtDesign) -> usize {
    t.as_ref().map_or(0, |t| t.0.block_count())
}

#[no_mangle]
pub unsafe extern "C" fn cgt_design_inner_rows(t: *const CgtDesign) -> usize {
    t.as_ref().map_or(0, |t| t.0.inner_rows())
}

#[no_mangle]
pub unsafe extern "C" fn cgt_design_free(t: *mut CgtDesign) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

// ---------------------------------------------------------------------------
// outcomes

/// Simulates all tests of the design against the hidden family.
#[no_mangle]
pub unsafe extern "C" fn cgt_encode(
    design: *const CgtDesign,
    set: *const CgtComplexSet,
    mode: CgtMode,
    out: *mut *mut CgtOutcome,
) -> CgtStatus {
    guarded(|| {
        let (Some(t), Some(d)) = (design.as_ref(), set.as_ref()) else {
            set_error("design or set handle is null");
            return CgtStatus::NullPointer;
        };
        if out.is_null() {
            set_error("output handle is null");
            return CgtStatus::NullPointer;
        }
        match encode(&t.0, &d.0, mode.into()) {
            Ok(y) => {
                *out = Box::into_raw(Box::new(CgtOutcome(y)));
                CgtStatus::Ok
            }
            Err(e) => {
                set_error(&e);
                model_status(&e)
            }
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn cgt_outcome_len(y: *const CgtOutcome) -> usize {
    y.as_ref().map_or(0, |y| y.0.len())
}

/// Bit `i` of the flat outcome vector; -1 on bad input.
#[no_mangle]
pub unsafe extern "C" fn cgt_outcome_get(y: *const CgtOutcome, i: usize) -> i32 {
    match y.as_ref() {
        Some(y) if i < y.0.len() => y.0.get_flat(i) as i32,
        _ => -1,
    }
}

/// Flips `e` distinct random bits in place. `positions` (optional, `cap`
/// entries) receives the flip sites; `written` the number stored.
#[no_mangle]
pub unsafe extern "C" fn cgt_outcome_inject_errors(
    y: *mut CgtOutcome,
    e: usize,
    seed: u64,
    positions: *mut usize,
    cap: usize,
    written: *mut usize,
) -> CgtStatus {
    guarded(|| {
        let Some(out) = y.as_mut() else {
            set_error("outcome handle is null");
            return CgtStatus::NullPointer;
        };
        match inject_errors(&out.0, &ErrorBudget::random(e), seed) {
            Ok((corrupted, flips)) => {
                out.0 = corrupted;
                if !positions.is_null() {
                    let n = flips.len().min(cap);
                    std::ptr::copy_nonoverlapping(flips.as_ptr(), positions, n);
                }
                if !written.is_null() {
                    *written = flips.len();
                }
                CgtStatus::Ok
            }
            Err(e) => {
                set_error(&e);
                model_status(&e)
            }
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn cgt_outcome_read_file(
    path: *const c_char,
    out: *mut *mut CgtOutcome,
) -> CgtStatus {
    guarded(|| {
        if out.is_null() {
            set_error("output handle is null");
            return CgtStatus::NullPointer;
        }
        let path = match path_from(path) {
            Ok(p) => p,
            Err(s) => return s,
        };
        match read_gtout_file(&path) {
            Ok(y) => {
                *out = Box::into_raw(Box::new(CgtOutcome(y)));
                CgtStatus::Ok
            }
            Err(e) => {
                set_error(&e);
                model_status(&e)
            }
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn cgt_outcome_write_file(
    y: *const CgtOutcome,
    path: *const c_char,
) -> CgtStatus {
    guarded(|| {
        let Some(y) = y.as_ref() else {
            set_error("outcome handle is null");
            return CgtStatus::NullPointer;
        };
        let path = match path_from(path) {
            Ok(p) => p,
            Err(s) => return s,
        };
        match write_gtout_file(&y.0, &path) {
            Ok(()) => CgtStatus::Ok,
            Err(e) => {
                set_error(&e);
                model_status(&e)
            }
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn cgt_outcome_free(y: *mut CgtOutcome) {
    if !y.is_null() {
        drop(Box::from_raw(y));
    }
}

// ---------------------------------------------------------------------------
// decoding

/// Runs the classical (CCMPLX) or generalized (GCMPLX) decoder.
#[no_mangle]
pub unsafe extern "C" fn cgt_decode(
    outcome: *const CgtOutcome,
    design: *const CgtDesign,
    z: usize,
    mode: CgtMode,
    out: *mut *mut CgtResult,
) -> CgtStatus {
    guarded(|| {
        let (Some(y), Some(t)) = (outcome.as_ref(), design.as_ref()) else {
            set_error("outcome or design handle is null");
            return CgtStatus::NullPointer;
        };
        if out.is_null() {
            set_error("output handle is null");
            return CgtStatus::NullPointer;
        }
        let decoded = match mode {
            CgtMode::Ccmplx => algorithm1(&y.0, &t.0, z),
            CgtMode::Gcmplx => algorithm2(&y.0, &t.0, z),
        };
        match decoded {
            Ok(r) => {
                *out = Box::into_raw(Box::new(CgtResult(r)));
                CgtStatus::Ok
            }
            Err(e) => {
                set_error(&e);
                decode_status(&e)
            }
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn cgt_result_complex_count(r: *const CgtResult) -> usize {
    r.as_ref().map_or(0, |r| r.0.complexes.len())
}

#[no_mangle]
pub unsafe extern "C" fn cgt_result_complex_len(r: *const CgtResult, idx: usize) -> usize {
    match r.as_ref() {
        Some(r) if idx < r.0.complexes.len() => r.0.complexes[idx].len(),
        _ => 0,
    }
}

/// Copies recovered complex `idx` into `buf` (up to `cap` items); returns
/// the full item count.
#[no_mangle]
pub unsafe extern "C" fn cgt_result_complex_items(
    r: *const CgtResult,
    idx: usize,
    buf: *mut u32,
    cap: usize,
) -> usize {
    match r.as_ref() {
        Some(r) if idx < r.0.complexes.len() => {
            let items = &r.0.complexes[idx];
            if !buf.is_null() {
                let n = items.len().min(cap);
                std::ptr::copy_nonoverlapping(items.as_ptr(), buf, n);
            }
            items.len()
        }
        _ => 0,
    }
}

/// Serializes the full result (complexes, per-block dispositions, frequency
/// table) as JSON into `buf`; returns the byte count needed including the
/// NUL terminator.
#[no_mangle]
pub unsafe extern "C" fn cgt_result_to_json(
    r: *const CgtResult,
    buf: *mut c_char,
    cap: usize,
) -> usize {
    let Some(r) = r.as_ref() else {
        return 0;
    };
    let json = r.0.to_json();
    let bytes = json.as_bytes();
    let needed = bytes.len() + 1;
    if !buf.is_null() && cap > 0 {
        let n = bytes.len().min(cap - 1);
        std::ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, n);
        *buf.add(n) = 0;
    }
    needed
}

#[no_mangle]
pub unsafe extern "C" fn cgt_result_free(r: *mut CgtResult) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}
